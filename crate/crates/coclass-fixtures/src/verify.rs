//! Row-by-row comparison of fixture tables against metabelian skeletons.
//!
//! A row with a selector describes the classes of its parameter tuples; a
//! row without one counts vertices of the table's scope at its order. Rows
//! with the same selector and the same comparable fields are pooled and
//! their counts added. Selectors with free letters stand for the classes
//! not named by an explicit selector of the same table.

use crate::pattern::{expand, has_free};
use crate::{sigma_digit, FixtureError, FixtureSet, KappaMode, Row, Scope, TableFixture};
use coclass_families::FamilyParams;
use coclass_invariants::{compute, AbelianType, Bounds, GroupInvariants, Tkt};
use coclass_tree::{continuation, Skeleton, SkeletonConfig, TreeError};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

/// Fields compared only through the fixtures.
pub const OUT_OF_SCOPE: [&str; 4] = ["mu", "nu", "aut", "identifier"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowResult {
    pub table: String,
    /// Row index in the table, or None for table-level checks.
    pub row: Option<usize>,
    pub label: String,
    pub status: Status,
    /// Field-level differences on failure, reason on skip.
    pub detail: Vec<String>,
    /// Fields present in the row but not compared.
    pub skipped_fields: Vec<String>,
    /// Printed values replaced by a correction.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub erratum: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub results: Vec<RowResult>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

impl Report {
    pub fn push(&mut self, r: RowResult) {
        self.results.push(r);
    }

    pub fn tally(&self) -> Tally {
        let mut t = Tally::default();
        for r in &self.results {
            match r.status {
                Status::Pass => t.pass += 1,
                Status::Fail => t.fail += 1,
                Status::Skip => t.skip += 1,
            }
        }
        t
    }

    pub fn table_tally(&self, id: &str) -> Tally {
        Report { results: self.results.iter().filter(|r| r.table == id).cloned().collect() }.tally()
    }

    pub fn ok(&self) -> bool {
        self.tally().fail == 0
    }

    pub fn tap(&self) -> String {
        let mut out = format!("1..{}\n", self.results.len());
        for (i, r) in self.results.iter().enumerate() {
            let at = r.row.map_or("table".to_string(), |k| format!("row {}", k + 1));
            let head = format!("{} {} - {} {}: {}", if r.status == Status::Fail { "not ok" } else { "ok" }, i + 1, r.table, at, r.label);
            let mut head = head;
            if let Some(e) = &r.erratum {
                head.push_str(&format!(" [erratum: {e}]"));
            }
            match r.status {
                Status::Pass if r.skipped_fields.is_empty() => writeln!(out, "{head}").unwrap(),
                Status::Pass => writeln!(out, "{head} # skipped fields: {}", r.skipped_fields.join(",")).unwrap(),
                Status::Skip => writeln!(out, "{head} # SKIP {}", r.detail.join("; ")).unwrap(),
                Status::Fail => {
                    writeln!(out, "{head}").unwrap();
                    for d in &r.detail {
                        writeln!(out, "#   {d}").unwrap();
                    }
                }
            }
        }
        out
    }

    /// Totals, per-table totals and the failing rows.
    pub fn summary_json(&self) -> serde_json::Value {
        let mut ids: Vec<&str> = self.results.iter().map(|r| r.table.as_str()).collect();
        ids.dedup();
        let tables: serde_json::Map<String, serde_json::Value> =
            ids.iter().map(|id| (id.to_string(), serde_json::to_value(self.table_tally(id)).unwrap())).collect();
        let failures: Vec<&RowResult> = self.results.iter().filter(|r| r.status == Status::Fail).collect();
        serde_json::json!({ "total": self.tally(), "tables": tables, "failures": failures })
    }
}

/// Skeletons per coclass and the declared tree roots of each forest.
pub struct Context {
    pub skeletons: BTreeMap<u32, Skeleton>,
    pub roots: BTreeMap<u32, Vec<FamilyParams>>,
}

impl Context {
    pub fn new(skeletons: Vec<Skeleton>, roots: BTreeMap<u32, Vec<FamilyParams>>) -> Self {
        Context { skeletons: skeletons.into_iter().map(|s| (s.r, s)).collect(), roots }
    }

    /// Tree roots from the census forests and the table scopes.
    pub fn declared_roots(set: &FixtureSet) -> Result<BTreeMap<u32, Vec<FamilyParams>>, FixtureError> {
        let mut roots: BTreeMap<u32, BTreeSet<FamilyParams>> = BTreeMap::new();
        let sel = |s: &str| expand(s).map_err(|e| FixtureError::Invalid { table: "roots".into(), msg: e.to_string() });
        if let Some(c) = &set.census {
            for f in &c.forests {
                for r in &f.roots {
                    roots.entry(f.r).or_default().extend(sel(&r.select)?);
                }
            }
        }
        for t in &set.tables {
            if let Scope::Tree(s) = &t.scope {
                roots.entry(t.coclass).or_default().extend(sel(s)?);
            }
        }
        Ok(roots.into_iter().map(|(r, s)| (r, s.into_iter().collect())).collect())
    }

    /// Order bound per coclass needed by the tables.
    pub fn required_bounds(set: &FixtureSet) -> BTreeMap<u32, u32> {
        let mut need: BTreeMap<u32, u32> = BTreeMap::new();
        let mut bump = |r: u32, lo: u32| {
            let b = need.entry(r).or_insert(lo);
            *b = (*b).max(lo);
        };
        for t in &set.tables {
            for row in &t.rows {
                match row.select.as_deref().map(expand) {
                    Some(Ok(tuples)) => tuples.iter().for_each(|p| bump(p.coclass(), p.log_order())),
                    _ => bump(t.coclass, row.lo),
                }
            }
        }
        need
    }

    /// Build every skeleton the tables need. `log` receives progress lines.
    pub fn for_fixtures(set: &FixtureSet, cfg: SkeletonConfig, mut log: impl FnMut(String)) -> Result<Self, TreeError> {
        let roots = Context::declared_roots(set).map_err(|e| TreeError::Unsupported(e.to_string()))?;
        let mut skeletons = Vec::new();
        for (r, bound) in Context::required_bounds(set) {
            log(format!("building coclass {r} skeleton up to lo {bound}"));
            let sk = Skeleton::build(r, bound, cfg)?;
            log(format!("coclass {r}: {} classes", sk.nodes.len()));
            skeletons.push(sk);
        }
        Ok(Context::new(skeletons, roots))
    }

    /// Vertices on the continuation chains of the declared roots.
    fn mainline(&self, r: u32) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let Some(sk) = self.skeletons.get(&r) else { return out };
        for root in self.roots.get(&r).into_iter().flatten() {
            let mut lo = root.log_order();
            while let Some(id) = continuation(root, lo).or((lo == root.log_order()).then_some(*root)).and_then(|p| sk.find(&p)) {
                out.insert(id);
                lo += 1;
            }
            if let Some(id) = sk.find(root) {
                out.insert(id);
            }
        }
        out
    }
}

/// Parent steps to the nearest mainline or top vertex.
fn depth(sk: &Skeleton, mainline: &BTreeSet<usize>, mut v: usize) -> u32 {
    let mut d = 0;
    while !mainline.contains(&v) && !sk.nodes[v].top {
        match sk.nodes[v].parent {
            Some(p) => {
                v = p;
                d += 1;
            }
            None => break,
        }
    }
    d
}

/// Type name without the action star and the r/i suffix.
fn type_base(s: &str) -> &str {
    let s = s.trim().trim_end_matches('*');
    match s.strip_suffix(['r', 'i']) {
        Some(b) if b.ends_with(|c: char| c.is_ascii_digit()) => b,
        _ => s,
    }
}

/// A class as seen by the comparison.
struct Probe<'a> {
    inv: &'a GroupInvariants,
    dp: u32,
    parent: Option<usize>,
}

enum Cmp {
    Match,
    /// Field names and expected/computed values that differ.
    Differ(Vec<String>),
}

/// Compare one class against one row; fields whose computed value is
/// undetermined are reported in `undecided` and treated as matching.
fn compare(row: &Row, mode: KappaMode, c: &Probe, undecided: &mut BTreeSet<String>) -> Cmp {
    let f = &row.fields;
    let inv = c.inv;
    let mut diffs = Vec::new();
    let mut check = |name: &str, ok: bool, exp: &dyn std::fmt::Display, got: &dyn std::fmt::Display| {
        if !ok {
            diffs.push(format!("{name}: expected {exp}, got {got}"));
        }
    };
    if let Some(v) = f.dl {
        check("dl", v == inv.dl, &v, &inv.dl);
    }
    if let Some(v) = f.k {
        check("k", v == inv.k, &v, &inv.k);
    }
    if let Some(v) = f.dp {
        check("dp", v == c.dp, &v, &c.dp);
    }
    for (name, exp, got) in [("zeta", &f.zeta, &inv.zeta), ("tau1", &f.tau1, &inv.tau1), ("tau2", &f.tau2, &inv.tau2)] {
        if let Some(s) = exp {
            let e: AbelianType = s.parse().expect("validated on load");
            check(name, e == *got, s, got);
        }
    }
    if let Some(s) = &f.kappa {
        let e: Tkt = s.parse().expect("validated on load");
        let ok = match mode {
            KappaMode::Exact => e == inv.kappa,
            KappaMode::Equivalent => e.equivalent(&inv.kappa),
        };
        check("kappa", ok, s, &inv.kappa);
    }
    if let Some(s) = &f.ty {
        let got = inv.kappa.type_name().unwrap_or("?");
        let ok = if s.trim() == "G or H" {
            ["G.16", "G.19", "H.4"].contains(&got)
        } else {
            type_base(s) == got
        };
        check("type", ok, s, &got);
    }
    if let Some(s) = &f.sigma {
        let e = sigma_digit(s).expect("validated on load");
        match inv.sigma() {
            Some(g) => check("sigma", e == g, s, &g),
            None => {
                undecided.insert("sigma".into());
            }
        }
    }
    if diffs.is_empty() {
        Cmp::Match
    } else {
        Cmp::Differ(diffs)
    }
}

fn present_out_of_scope(row: &Row) -> Vec<String> {
    let f = &row.fields;
    let mut out = Vec::new();
    if f.mu.is_some() {
        out.push("mu".to_string());
    }
    if f.nu.is_some() {
        out.push("nu".to_string());
    }
    if f.aut.is_some() {
        out.push("aut".to_string());
    }
    if row.identifier.is_some() {
        out.push("identifier".to_string());
    }
    out
}

/// Comparable part of a row, used to pool rows.
fn projection(row: &Row, mode: KappaMode) -> String {
    let f = &row.fields;
    let sig = f.sigma.as_deref().and_then(sigma_digit);
    format!(
        "{:?}|{:?}|{:?}|{:?}|{:?}|{:?}|{:?}|{:?}|{:?}|{:?}",
        f.dl, f.k, f.dp, f.zeta, f.tau1, f.tau2, f.kappa, mode, f.ty.as_deref().map(type_base), sig
    )
}

struct Group {
    rows: Vec<usize>,
    count: u32,
}

/// Check a pool of candidate classes against row groups, recording per-row
/// results. Returns the candidates matched by some group.
fn check_groups<'a>(
    table: &TableFixture,
    groups: &BTreeMap<String, Group>,
    cands: &[usize],
    probe: &dyn Fn(usize) -> Probe<'a>,
    out: &mut BTreeMap<usize, RowResult>,
) -> BTreeSet<usize> {
    let mut covered = BTreeSet::new();
    for g in groups.values() {
        let first = &table.rows[g.rows[0]];
        let mode = first.kappa_mode.unwrap_or(table.kappa_mode);
        let mut undecided = BTreeSet::new();
        let mut matched = 0u32;
        let mut by_parent: BTreeMap<Option<usize>, u32> = BTreeMap::new();
        let mut best: Option<Vec<String>> = None;
        for &c in cands {
            let pr = probe(c);
            match compare(first, mode, &pr, &mut undecided) {
                Cmp::Match => {
                    matched += 1;
                    *by_parent.entry(pr.parent).or_default() += 1;
                    covered.insert(c);
                }
                Cmp::Differ(d) => {
                    if best.as_ref().is_none_or(|b| d.len() < b.len()) {
                        best = Some(d);
                    }
                }
            }
        }
        let ok = if first.per_parent {
            !by_parent.is_empty() && by_parent.values().all(|&n| n == g.count)
        } else {
            matched == g.count
        };
        let (status, detail) = if ok {
            (Status::Pass, Vec::new())
        } else {
            let got = if first.per_parent {
                format!("{:?} over {} parents", by_parent.values().collect::<Vec<_>>(), by_parent.len())
            } else {
                matched.to_string()
            };
            let mut d = vec![format!("count{}: expected {}, got {got}", if first.per_parent { " per parent" } else { "" }, g.count)];
            if let Some(b) = best {
                d.push(format!("closest candidate: {}", b.join("; ")));
            }
            (Status::Fail, d)
        };
        for &i in &g.rows {
            let row = &table.rows[i];
            let mut skipped = present_out_of_scope(row);
            skipped.extend(undecided.iter().cloned());
            out.insert(
                i,
                RowResult { table: table.id.clone(), row: Some(i), label: row.label(), status, detail: detail.clone(), skipped_fields: skipped, erratum: None },
            );
        }
    }
    covered
}

/// Verify every table of the set.
pub fn verify_tables(set: &FixtureSet, ctx: &Context) -> Report {
    let mut report = Report::default();
    for t in &set.tables {
        verify_table(t, ctx, &mut report);
    }
    report
}

fn fail(table: &str, label: String, detail: Vec<String>) -> RowResult {
    RowResult { table: table.to_string(), row: None, label, status: Status::Fail, detail, skipped_fields: Vec::new(), erratum: None }
}

/// Verify one table, appending one result per row plus table-level checks.
pub fn verify_table(t: &TableFixture, ctx: &Context, report: &mut Report) {
    let mut results: BTreeMap<usize, RowResult> = BTreeMap::new();
    let mainlines: BTreeMap<u32, BTreeSet<usize>> = ctx.skeletons.keys().map(|&r| (r, ctx.mainline(r))).collect();
    let probe_in = |r: u32| {
        let sk = &ctx.skeletons[&r];
        let ml = &mainlines[&r];
        move |c: usize| Probe { inv: &sk.nodes[c].inv, dp: depth(sk, ml, c), parent: sk.nodes[c].parent }
    };

    // selector rows, resolved per coclass
    let mut by_sel: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, row) in t.rows.iter().enumerate() {
        if let Some(s) = &row.select {
            by_sel.entry(s).or_default().push(i);
        }
    }
    // invariants of the first tuple of the selector in each class, since
    // positional fields depend on the presentation
    let mut classes: BTreeMap<&str, (u32, BTreeMap<usize, GroupInvariants>)> = BTreeMap::new();
    for (&sel, rows) in &by_sel {
        let tuples = expand(sel).expect("validated on load");
        let r = tuples[0].coclass();
        let Some(sk) = ctx.skeletons.get(&r) else {
            for &i in rows {
                results.insert(i, fail(&t.id, t.rows[i].label(), vec![format!("no coclass {r} skeleton")]));
            }
            continue;
        };
        let mut ids = BTreeMap::new();
        let mut missing = Vec::new();
        for p in &tuples {
            match sk.find(p) {
                Some(id) if ids.contains_key(&id) => {}
                Some(id) => match named_invariants(sk, id, p) {
                    Ok(inv) => {
                        ids.insert(id, inv);
                    }
                    Err(e) => missing.push(format!("{p} ({e})")),
                },
                None if has_free(sel) => {}
                None => missing.push(p.to_string()),
            }
        }
        if !missing.is_empty() {
            for &i in rows {
                let mut r = fail(&t.id, t.rows[i].label(), vec![format!("unresolved: {}", missing.join(", "))]);
                r.row = Some(i);
                results.insert(i, r);
            }
            continue;
        }
        classes.insert(sel, (r, ids));
    }
    let claimed: BTreeSet<(u32, usize)> =
        classes.iter().filter(|(s, _)| !has_free(s)).flat_map(|(_, (r, ids))| ids.keys().map(move |&i| (*r, i))).collect();
    let mut named: BTreeSet<(u32, usize)> = claimed.clone();
    let mut covered: BTreeSet<(u32, usize)> = BTreeSet::new();
    let mut pools: Vec<(&str, u32, Vec<usize>)> = Vec::new();
    for (&sel, (r, ids)) in &classes {
        let cands: Vec<usize> = if has_free(sel) {
            ids.keys().copied().filter(|&i| !claimed.contains(&(*r, i))).collect()
        } else {
            ids.keys().copied().collect()
        };
        named.extend(cands.iter().map(|&i| (*r, i)));
        let mut groups: BTreeMap<String, Group> = BTreeMap::new();
        for &i in &by_sel[sel] {
            let row = &t.rows[i];
            let g = groups.entry(projection(row, row.kappa_mode.unwrap_or(t.kappa_mode))).or_insert(Group { rows: Vec::new(), count: 0 });
            g.rows.push(i);
            g.count += row.count;
        }
        let sk = &ctx.skeletons[r];
        let ml = &mainlines[r];
        let probe = |c: usize| Probe { inv: ids.get(&c).unwrap_or(&sk.nodes[c].inv), dp: depth(sk, ml, c), parent: sk.nodes[c].parent };
        covered.extend(check_groups(t, &groups, &cands, &probe, &mut results).into_iter().map(|c| (*r, c)));
        pools.push((sel, *r, cands));
    }
    // overlapping selectors: a class may be accounted for by another row
    for (sel, r, cands) in pools {
        let left: Vec<String> =
            cands.iter().filter(|&&c| !covered.contains(&(r, c))).map(|&c| ctx.skeletons[&r].nodes[c].params.to_string()).collect();
        if !left.is_empty() {
            report_extra(&mut results, &by_sel[sel], format!("classes matched by no row: {}", left.join(", ")));
        }
    }

    // cumulative rows
    let r = t.coclass;
    let mut agg: BTreeMap<u32, BTreeMap<String, Group>> = BTreeMap::new();
    for (i, row) in t.rows.iter().enumerate() {
        if row.select.is_some() {
            continue;
        }
        if row.fields.dl.is_some_and(|d| d >= 3) {
            results.insert(
                i,
                RowResult {
                    table: t.id.clone(),
                    row: Some(i),
                    label: row.label(),
                    status: Status::Skip,
                    detail: vec!["non-metabelian vertices are not constructed".into()],
                    skipped_fields: Vec::new(),
                    erratum: None,
                },
            );
            continue;
        }
        let g = agg.entry(row.lo).or_default().entry(projection(row, row.kappa_mode.unwrap_or(t.kappa_mode))).or_insert(Group {
            rows: Vec::new(),
            count: 0,
        });
        g.rows.push(i);
        g.count += row.count;
    }
    let pool = scope_pool(t, ctx);
    let mut agg_hit: BTreeSet<usize> = BTreeSet::new();
    match (&pool, agg.is_empty()) {
        (_, true) => {}
        (Err(e), false) => {
            for &i in agg.values().flat_map(|g| g.values()).flat_map(|g| g.rows.iter()) {
                let mut f = fail(&t.id, t.rows[i].label(), vec![e.clone()]);
                f.row = Some(i);
                results.insert(i, f);
            }
        }
        (Ok(pool), false) => {
            let sk = &ctx.skeletons[&r];
            for (&lo, groups) in &agg {
                let cands: Vec<usize> =
                    pool.iter().copied().filter(|&v| sk.nodes[v].inv.lo == lo && !named.contains(&(r, v))).collect();
                let hit = check_groups(t, groups, &cands, &probe_in(r), &mut results);
                agg_hit.extend(hit.iter().copied());
                let left: Vec<usize> = cands.iter().copied().filter(|c| !hit.contains(c)).collect();
                if !left.is_empty() {
                    let rows: Vec<usize> = groups.values().flat_map(|g| g.rows.iter().copied()).collect();
                    let names: Vec<String> = left.iter().map(|&c| sk.nodes[c].params.to_string()).collect();
                    report_extra(&mut results, &rows, format!("lo {lo}: vertices matched by no row: {}", names.join(", ")));
                }
            }
        }
    }

    // every scope vertex of a fully listed layer is accounted for; the top
    // layer of a tree table only lists the deepest vertices
    let mut extra = Vec::new();
    if let Ok(pool) = &pool {
        let sk = &ctx.skeletons[&r];
        let los: BTreeSet<u32> = t.rows.iter().map(|row| row.lo).collect();
        let top = los.last().copied();
        for &lo in &los {
            if matches!(t.scope, Scope::Tree(_)) && Some(lo) == top {
                continue;
            }
            let layer: Vec<usize> = pool.iter().copied().filter(|&v| sk.nodes[v].inv.lo == lo).collect();
            let missed: Vec<String> = layer
                .iter()
                .filter(|&&v| !named.contains(&(r, v)) && !agg_hit.contains(&v))
                .map(|&v| sk.nodes[v].params.to_string())
                .collect();
            let label = format!("coverage of {} metabelian vertices at lo {lo}", layer.len());
            extra.push(if missed.is_empty() {
                RowResult { status: Status::Pass, ..fail(&t.id, label, Vec::new()) }
            } else {
                fail(&t.id, label, vec![format!("listed by no row: {}", missed.join(", "))])
            });
        }
    }
    for r in results.values_mut() {
        if let Some(e) = r.row.and_then(|i| t.rows[i].erratum.as_ref()) {
            let printed: Vec<String> = e.printed.iter().map(|(k, v)| format!("{k}={v}")).collect();
            r.erratum = Some(format!("printed {}", printed.join(", ")));
        }
    }
    report.results.extend(results.into_values());
    report.results.extend(extra);
}

/// Invariants of the presentation given by `p`, a member of class `id`.
fn named_invariants(sk: &Skeleton, id: usize, p: &FamilyParams) -> Result<GroupInvariants, String> {
    let node = &sk.nodes[id];
    if node.params == *p {
        return Ok(node.inv.clone());
    }
    let g = p.build().map_err(|e| e.to_string())?;
    let inv = compute(&g, Bounds { gi: 0, v4: 0 }).map_err(|e| e.to_string())?;
    Ok(GroupInvariants { gi: node.inv.gi, v4: node.inv.v4, ..inv })
}

/// Mark rows failed with an extra message.
fn report_extra(results: &mut BTreeMap<usize, RowResult>, rows: &[usize], msg: String) {
    for i in rows {
        if let Some(r) = results.get_mut(i) {
            r.status = Status::Fail;
            r.detail.push(msg.clone());
        }
    }
}

/// Metabelian vertices in the scope of a table.
fn scope_pool(t: &TableFixture, ctx: &Context) -> Result<Vec<usize>, String> {
    let sk = ctx.skeletons.get(&t.coclass).ok_or_else(|| format!("no coclass {} skeleton", t.coclass))?;
    match &t.scope {
        Scope::Tree(s) => {
            let root = expand(s).map_err(|e| e.to_string())?;
            let id = sk.find(&root[0]).ok_or_else(|| format!("tree root {s} not in skeleton"))?;
            Ok(sk.descendants(id))
        }
        Scope::Sporadic(r) => {
            let roots = ctx.roots.get(r).ok_or_else(|| format!("no tree roots declared for forest {r}"))?;
            let ids: Vec<usize> = roots.iter().filter_map(|p| sk.find(p)).collect();
            if ids.len() != roots.len() {
                return Err(format!("some roots of forest {r} are not in the skeleton"));
            }
            Ok(sk.complement(&ids))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_bases() {
        assert_eq!(type_base("b.10*"), "b.10");
        assert_eq!(type_base("G.16r"), "G.16");
        assert_eq!(type_base("H.4i"), "H.4");
        assert_eq!(type_base("a.1*"), "a.1");
        assert_eq!(type_base("d.19"), "d.19");
    }
}
