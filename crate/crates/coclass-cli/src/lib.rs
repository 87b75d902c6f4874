//! The `coclass` command line: argument types, selector resolution and the
//! subcommands. Commands return their standard output as a string so that
//! runs can be compared byte for byte.

use clap::{Args, Parser, Subcommand, ValueEnum};
use coclass_families::FamilyParams;
use coclass_fixtures::{FixtureSet, Report};
use coclass_forest::{build_forest, co_periodicity_check, default_bound, ledger, Verdict};
use coclass_invariants::{compute, Bounds};
use coclass_isotest::{isomorphic_prepared, IsoVerdict, Prepared, DEFAULT_BOUND};
use coclass_pc::{check_consistency, Element};
use coclass_tree::{detect_periodicity, trees_phi_isomorphic, PeriodicityVerdict, Skeleton, SkeletonConfig, StructuredTree, TransformLaw};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "coclass", version, about = "Finite 3-groups of coclass r with abelianization C3xC3: invariants, trees, forests")]
pub struct Cli {
    #[command(flatten)]
    pub opts: RunConfig,
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Largest logarithmic order constructed.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub bound: Option<u32>,
    /// Logarithmic order up to which exhaustive isomorphism search is allowed.
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND, value_parser = clap::value_parser!(u32).range(1..))]
    pub iso_bound: u32,
    /// Logarithmic order up to which the GI and V4 flags are decided.
    #[arg(long, global = true, default_value_t = 24, value_parser = clap::value_parser!(u32).range(1..))]
    pub gi_bound: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Fixture file or directory; the built-in tables when absent.
    #[arg(long, global = true)]
    pub fixtures: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: Option<u32>,
    /// Write standard output to this file instead.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// No progress messages on standard error.
    #[arg(long, short, global = true)]
    pub quiet: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Law {
    Identity,
    #[value(name = "d23-d19")]
    D23D19,
    CoclassStep,
}

impl Law {
    fn law(self) -> TransformLaw {
        match self {
            Law::Identity => TransformLaw::identity(),
            Law::D23D19 => TransformLaw::d23_to_d19(),
            Law::CoclassStep => TransformLaw::coclass_step(),
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Invariants of one group.
    Group { selector: String },
    /// Descendant tree of a root in its metabelian skeleton.
    Tree { root: String },
    /// Check fixture tables against computed invariants.
    Verify {
        /// Only this table.
        #[arg(long)]
        table: Option<String>,
    },
    /// Branch periodicity of a tree.
    Periodicity {
        root: String,
        #[arg(long, default_value_t = coclass_forest::MAX_PERIOD)]
        max_len: u32,
    },
    /// Coclass forest F(r) with its census ledger.
    Forest {
        r: u32,
        /// Also check co-periodicity against F(s), s = r or r + 2.
        #[arg(long)]
        against: Option<u32>,
        /// Branches per tree compared by --against.
        #[arg(long, default_value_t = 2)]
        branches: u32,
    },
    /// Isomorphism of two groups, or of their trees with --tree.
    Iso {
        a: String,
        b: String,
        #[arg(long)]
        tree: bool,
        #[arg(long, value_enum, default_value_t = Law::Identity)]
        law: Law,
    },
}

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unreadable input: exit 2.
    Input(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

/// Output of a successful or failed run; `code` is the exit status.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

impl RunConfig {
    fn skeleton_config(&self) -> SkeletonConfig {
        SkeletonConfig { iso_bound: self.iso_bound, bounds: Bounds { gi: self.gi_bound, v4: self.gi_bound } }
    }

    fn fixture_set(&self) -> Result<FixtureSet, CliError> {
        match &self.fixtures {
            Some(p) => FixtureSet::load(p).map_err(input),
            None => FixtureSet::builtin().map_err(input),
        }
    }
}

fn normalize_identifier(s: &str) -> String {
    s.replace(['⟨', '〈'], "<").replace(['⟩', '〉'], ">").replace('\u{2212}', "-").replace(' ', "")
}

/// Resolve a selector: G-notation, C3xC3, P<n> for a trunk vertex,
/// T<r>R<i> or T<r>P<n> for a declared tree root, or an identifier string
/// recorded in the fixtures.
pub fn resolve(sel: &str, set: &FixtureSet) -> Result<FamilyParams, CliError> {
    let t = sel.trim();
    let trunk = |n: &str| -> Result<FamilyParams, CliError> {
        let n: u32 = n.parse().map_err(|_| input(format!("bad trunk vertex {sel}")))?;
        if n < 3 || n % 2 == 0 {
            return Err(input(format!("trunk vertices are P_n for odd n >= 3, got {sel}")));
        }
        Ok(coclass_forest::trunk_vertex((n - 1) / 2))
    };
    if t.starts_with('<') || t.starts_with('⟨') || t.starts_with('〈') || t.contains('#') {
        let want = normalize_identifier(t);
        let census = set.census.as_ref().ok_or_else(|| input("no census fixture loaded"))?;
        let found = census
            .trunk
            .iter()
            .map(|v| (&v.identifier, &v.select))
            .chain(census.forests.iter().flat_map(|f| f.roots.iter().map(|x| (&x.identifier, &x.select))))
            .find(|(id, _)| id.as_deref().map(normalize_identifier).as_deref() == Some(want.as_str()));
        let (_, s) = found.ok_or_else(|| input(format!("identifier {t} not in the fixtures")))?;
        return s.parse().map_err(input);
    }
    if let Some(rest) = t.strip_prefix('T') {
        let split = rest.find(['R', 'P']).ok_or_else(|| input(format!("bad tree selector {sel}")))?;
        let r: u32 = rest[..split].parse().map_err(|_| input(format!("bad tree selector {sel}")))?;
        let tail = &rest[split..];
        if let Some(n) = tail.strip_prefix('P') {
            let p = trunk(n)?;
            if p.coclass() != r {
                return Err(input(format!("{} has coclass {}, not {r}", tail, p.coclass())));
            }
            return Ok(p);
        }
        let census = set.census.as_ref().ok_or_else(|| input("no census fixture loaded"))?;
        let f = census.forest(r).ok_or_else(|| input(format!("no roots declared for F({r})")))?;
        let root = f.roots.iter().find(|x| x.name == tail).ok_or_else(|| input(format!("F({r}) has no root {tail}")))?;
        return root.select.parse().map_err(input);
    }
    if let Some(n) = t.strip_prefix('P') {
        return trunk(n);
    }
    t.parse().map_err(input)
}

fn word(e: &Element) -> String {
    let parts: Vec<String> = e
        .exps
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| if x == 1 { format!("g{}", i + 1) } else { format!("g{}^{x}", i + 1) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

pub fn run(cli: &Cli, log: &mut dyn FnMut(&str)) -> Result<Outcome, CliError> {
    let o = &cli.opts;
    if let Some(j) = o.jobs {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j as usize).build_global();
    }
    let out = match &cli.cmd {
        Command::Group { selector } => cmd_group(o, selector)?,
        Command::Tree { root } => cmd_tree(o, root, log)?,
        Command::Verify { table } => return cmd_verify(o, table.as_deref(), log),
        Command::Periodicity { root, max_len } => cmd_periodicity(o, root, *max_len, log)?,
        Command::Forest { r, against, branches } => return cmd_forest(o, *r, *against, *branches, log),
        Command::Iso { a, b, tree, law } => return cmd_iso(o, a, b, *tree, *law, log),
    };
    Ok(Outcome { code: 0, stdout: out })
}

fn no_dot(o: &RunConfig, what: &str) -> Result<(), CliError> {
    if o.format == Format::Dot {
        return Err(input(format!("{what} has no dot output")));
    }
    Ok(())
}

pub fn cmd_group(o: &RunConfig, sel: &str) -> Result<String, CliError> {
    no_dot(o, "group")?;
    let set = o.fixture_set()?;
    let p = resolve(sel, &set)?;
    let g = p.build().map_err(input)?;
    let cons = check_consistency(&g).is_consistent();
    let inv = compute(&g, Bounds { gi: o.gi_bound, v4: o.gi_bound }).map_err(input)?;
    let ty = inv.kappa.type_name().unwrap_or("?");
    let sigma = inv.sigma().map_or("?".to_string(), |s| s.to_string());
    if o.format == Format::Json {
        let v = serde_json::json!({
            "params": p.to_string(),
            "consistent": cons,
            "type": ty,
            "sigma": inv.sigma(),
            "invariants": inv,
        });
        return Ok(format!("{}\n", serde_json::to_string_pretty(&v).expect("json")));
    }
    let mut s = String::new();
    let _ = writeln!(s, "group {p}");
    let _ = writeln!(s, "consistent {}", if cons { "yes" } else { "no" });
    let _ = writeln!(s, "lo {}", inv.lo);
    let _ = writeln!(s, "class {}", inv.cl);
    let _ = writeln!(s, "coclass {}", inv.cc);
    let _ = writeln!(s, "derived length {}", inv.dl);
    let _ = writeln!(s, "zeta {}", inv.zeta);
    let _ = writeln!(s, "kappa {} {ty}", inv.kappa);
    let _ = writeln!(s, "tau {};{};{};{}", inv.tau[0], inv.tau[1], inv.tau[2], inv.tau[3]);
    let _ = writeln!(s, "tau(1) {}", inv.tau1);
    let _ = writeln!(s, "tau2 {}", inv.tau2);
    let _ = writeln!(s, "defect {}", inv.k);
    let _ = writeln!(s, "sigma {sigma}");
    Ok(s)
}

/// Trees of the given roots, each `extra` orders beyond the bound, sharing
/// skeletons between roots of one coclass and bound.
fn build_trees(o: &RunConfig, roots: &[(&str, u32)], log: &mut dyn FnMut(&str)) -> Result<Vec<StructuredTree>, CliError> {
    let set = o.fixture_set()?;
    let mut skeletons: BTreeMap<(u32, u32), Skeleton> = BTreeMap::new();
    let mut out = Vec::new();
    for &(sel, extra) in roots {
        let p = resolve(sel, &set)?;
        let r = p.coclass();
        let bound = o.bound.unwrap_or_else(|| default_bound(r).max(p.log_order() + 3)) + extra;
        if bound <= p.log_order() {
            return Err(input(format!("bound {bound} does not exceed the root order 3^{}", p.log_order())));
        }
        if !skeletons.contains_key(&(r, bound)) {
            log(&format!("building coclass {r} skeleton up to lo {bound}"));
            let sk = Skeleton::build(r, bound, o.skeleton_config()).map_err(input)?;
            log(&format!("coclass {r}: {} classes", sk.nodes.len()));
            skeletons.insert((r, bound), sk);
        }
        let mut t = skeletons[&(r, bound)].tree(&p, sel).map_err(input)?;
        if let PeriodicityVerdict::Periodic(q) = detect_periodicity(&t, coclass_forest::MAX_PERIOD) {
            t.periodicity = Some(q);
        }
        out.push(t);
    }
    Ok(out)
}

fn build_tree(o: &RunConfig, sel: &str, log: &mut dyn FnMut(&str)) -> Result<StructuredTree, CliError> {
    Ok(build_trees(o, &[(sel, 0)], log)?.remove(0))
}

fn tree_summary(t: &StructuredTree) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "tree {} root {} bound {}", t.name, t.vertices[t.root].params, t.window);
    let _ = writeln!(s, "vertices {}", t.len());
    let complete = t.complete_branches();
    let branches: Vec<String> = t
        .mainline()
        .iter()
        .map(|&m| {
            let e = t.vertices[m].lo();
            let n = t.branch(e).vertices.len();
            if complete.contains(&e) {
                format!("{e}:{n}")
            } else {
                format!("{e}:{n}*")
            }
        })
        .collect();
    let _ = writeln!(s, "branches {}", branches.join(" "));
    let _ = writeln!(s, "depth {}", t.depth());
    let _ = writeln!(s, "width {}", t.width());
    match t.periodicity {
        Some(p) => {
            let _ = writeln!(s, "periodicity pre={} len={} start={}", p.pre, p.len, p.start);
        }
        None => {
            let _ = writeln!(s, "periodicity none in window");
        }
    }
    if let Some(ic) = t.information_content() {
        let _ = writeln!(s, "information content {ic}");
    }
    s
}

pub fn cmd_tree(o: &RunConfig, root: &str, log: &mut dyn FnMut(&str)) -> Result<String, CliError> {
    let t = build_tree(o, root, log)?;
    Ok(match o.format {
        Format::Text => tree_summary(&t),
        Format::Json => format!("{}\n", t.to_json()),
        Format::Dot => t.to_dot(),
    })
}

pub fn cmd_periodicity(o: &RunConfig, root: &str, max_len: u32, log: &mut dyn FnMut(&str)) -> Result<String, CliError> {
    no_dot(o, "periodicity")?;
    let t = build_tree(o, root, log)?;
    let v = detect_periodicity(&t, max_len);
    if o.format == Format::Json {
        let j = serde_json::json!({ "root": root, "bound": t.window, "verdict": v });
        return Ok(format!("{}\n", serde_json::to_string_pretty(&j).expect("json")));
    }
    Ok(match v {
        PeriodicityVerdict::Periodic(p) => format!("{root}: pre={} len={} start={}\n", p.pre, p.len, p.start),
        PeriodicityVerdict::NotYetPeriodic { complete } => {
            let c: Vec<String> = complete.iter().map(u32::to_string).collect();
            format!("{root}: not yet periodic up to lo {} (complete branches {})\n", t.window, c.join(" "))
        }
    })
}

fn render_report(o: &RunConfig, rep: &Report) -> String {
    match o.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&rep.summary_json()).expect("json")),
        _ => {
            let t = rep.tally();
            format!("{}# pass {} fail {} skip {}\n", rep.tap(), t.pass, t.fail, t.skip)
        }
    }
}

pub fn cmd_verify(o: &RunConfig, table: Option<&str>, log: &mut dyn FnMut(&str)) -> Result<Outcome, CliError> {
    no_dot(o, "verify")?;
    let mut set = o.fixture_set()?;
    if let Some(id) = table {
        set.tables.retain(|t| t.id == id);
        if set.tables.is_empty() {
            return Err(input(format!("no table {id}")));
        }
    }
    let ctx = coclass_fixtures::Context::for_fixtures(&set, o.skeleton_config(), |m| log(&m)).map_err(input)?;
    let rep = coclass_fixtures::verify_tables(&set, &ctx);
    let stdout = render_report(o, &rep);
    Ok(Outcome { code: if rep.ok() { 0 } else { 1 }, stdout })
}

pub fn cmd_forest(o: &RunConfig, r: u32, against: Option<u32>, nbranches: u32, log: &mut dyn FnMut(&str)) -> Result<Outcome, CliError> {
    no_dot(o, "forest")?;
    let set = o.fixture_set()?;
    let census = set.census.as_ref().ok_or_else(|| input("no census fixture loaded"))?;
    let fx = census.forest(r).ok_or_else(|| input(format!("no roots declared for F({r})")))?;
    let bound = o.bound.unwrap_or_else(|| default_bound(r));
    log(&format!("building F({r}) up to lo {bound}"));
    let f = build_forest(r, bound, &fx.roots, o.skeleton_config()).map_err(input)?;
    log(&format!("F({r}): {} metabelian vertices", f.skeleton.nodes.len()));
    let mut code = 0;
    let mut problems = Vec::new();
    let led = match ledger(&f, fx) {
        Ok(l) => Some(l),
        Err(e) => {
            code = 1;
            problems.push(e.to_string());
            None
        }
    };
    let co = match against {
        None => None,
        Some(s) => {
            let law = match s.checked_sub(r) {
                Some(0) => TransformLaw::identity(),
                Some(2) => TransformLaw::coclass_step(),
                _ => return Err(input(format!("co-periodicity runs from F({r}) to F({r}) or F({})", r + 2))),
            };
            let gx = census.forest(s).ok_or_else(|| input(format!("no roots declared for F({s})")))?;
            let sb = bound + (s - r) * 2;
            log(&format!("building F({s}) up to lo {sb}"));
            let g = build_forest(s, sb, &gx.roots, o.skeleton_config()).map_err(input)?;
            let v = co_periodicity_check(&f, &g, &law, nbranches);
            if v.verdict != Verdict::Match {
                code = 1;
            }
            Some(v)
        }
    };
    let stdout = if o.format == Format::Json {
        let mut j = f.to_json();
        j["ledger"] = serde_json::to_value(&led).expect("json");
        j["co_periodicity"] = serde_json::to_value(&co).expect("json");
        j["problems"] = serde_json::to_value(&problems).expect("json");
        format!("{}\n", serde_json::to_string_pretty(&j).expect("json"))
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "forest F({r}) bound {bound}");
        if let Some(p) = f.trunk {
            let _ = writeln!(s, "trunk {p}");
        }
        for (ri, t) in f.roots.iter().zip(&f.trees) {
            let per = t.periodicity.map_or("none in window".to_string(), |p| format!("pre={} len={} start={}", p.pre, p.len, p.start));
            let _ = writeln!(s, "root {} {} {} vertices {} depth {} periodicity {per}", ri.name, ri.params, ri.ty, t.len(), t.depth());
        }
        let c = coclass_forest::sporadic_census(&f);
        let _ = writeln!(
            s,
            "sporadic metabelian {} = isolated {} + roots {} + distinguished {} + sigma0 {}",
            c.metabelian, c.isolated, c.roots, c.distinguished, c.sigma0
        );
        if let Some(l) = &led {
            let _ = writeln!(s, "sporadic total {} = {} + {} + {}", l.s, l.sporadic.metabelian, l.nonmetabelian_tops, l.nonmetabelian_children);
            let classes: Vec<String> = l.classes.iter().map(|c| format!("[{}]", c.join(","))).collect();
            let _ = writeln!(s, "tree classes {}", classes.join(" "));
            let _ = writeln!(s, "ledger {}", l.equation());
            for n in &l.notes {
                let _ = writeln!(s, "note {n}");
            }
        }
        if let Some(v) = &co {
            let _ = writeln!(s, "co-periodicity F({}) -> F({}): {:?}", v.r_source, v.r_target, v.verdict);
            for b in &v.branches {
                let _ = writeln!(s, "  {} B({}) -> {} B({}): {:?}", b.source, b.e_source, b.target, b.e_target, b.verdict);
            }
            let _ = writeln!(s, "  sporadic {:?} ({} and {} vertices)", v.sporadic, v.sporadic_sizes.0, v.sporadic_sizes.1);
            for r in &v.reasons {
                let _ = writeln!(s, "  {r}");
            }
        }
        for p in &problems {
            let _ = writeln!(s, "error {p}");
        }
        s
    };
    Ok(Outcome { code, stdout })
}

pub fn cmd_iso(o: &RunConfig, a: &str, b: &str, tree: bool, law: Law, log: &mut dyn FnMut(&str)) -> Result<Outcome, CliError> {
    no_dot(o, "iso")?;
    if tree {
        let l = law.law();
        let mut ts = build_trees(o, &[(a, 0), (b, l.lo.max(0) as u32)], log)?;
        let tb = ts.pop().expect("two trees");
        let ta = ts.pop().expect("two trees");
        let v = trees_phi_isomorphic(&ta, &tb, &l);
        let stdout = if o.format == Format::Json {
            let j = serde_json::json!({ "a": a, "b": b, "law": format!("{law:?}"), "isomorphic": v.isomorphic, "lossy": v.lossy, "sizes": [ta.len(), tb.len()] });
            format!("{}\n", serde_json::to_string_pretty(&j).expect("json"))
        } else {
            let what = if v.isomorphic { "match" } else { "no match" };
            let strict = if v.isomorphic && law == Law::Identity { "strict " } else { "" };
            format!("{a} ~ {b}: {strict}{what} ({} and {} vertices{})\n", ta.len(), tb.len(), if v.lossy { ", sigma dropped" } else { "" })
        };
        return Ok(Outcome { code: if v.isomorphic { 0 } else { 1 }, stdout });
    }
    if law != Law::Identity {
        return Err(input("--law applies to --tree only"));
    }
    let set = o.fixture_set()?;
    let pa = resolve(a, &set)?;
    let pb = resolve(b, &set)?;
    let ga = Prepared::new(pa.build().map_err(input)?).map_err(input)?;
    let gb = Prepared::new(pb.build().map_err(input)?).map_err(input)?;
    let v = isomorphic_prepared(&ga, &gb, o.iso_bound);
    let (label, code) = match &v {
        IsoVerdict::Yes(_) => ("isomorphic", 0),
        IsoVerdict::No => ("not isomorphic", 1),
        IsoVerdict::Undetermined => ("undetermined", 1),
    };
    let stdout = if o.format == Format::Json {
        let cert = match &v {
            IsoVerdict::Yes(c) => serde_json::json!({ "x": word(&c.x_image), "y": word(&c.y_image) }),
            _ => serde_json::Value::Null,
        };
        let j = serde_json::json!({ "a": pa.to_string(), "b": pb.to_string(), "verdict": label, "certificate": cert });
        format!("{}\n", serde_json::to_string_pretty(&j).expect("json"))
    } else {
        let mut s = format!("{pa} ~ {pb}: {label}\n");
        if let IsoVerdict::Yes(c) = &v {
            let _ = writeln!(s, "x -> {}\ny -> {}", word(&c.x_image), word(&c.y_image));
        }
        s
    };
    Ok(Outcome { code, stdout })
}

/// Parse arguments, run, and write the output. Returns the exit status.
pub fn main_with(args: impl IntoIterator<Item = std::ffi::OsString>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let quiet = cli.opts.quiet;
    let mut log = |m: &str| {
        if !quiet {
            eprintln!("{m}");
        }
    };
    let outcome = match run(&cli, &mut log) {
        Ok(o) => o,
        Err(e) => {
            let CliError::Input(m) = &e;
            eprintln!("error: {m}");
            return e.code();
        }
    };
    match &cli.opts.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.stdout) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{}", outcome.stdout),
    }
    outcome.code
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identifiers_normalize() {
        assert_eq!(normalize_identifier("⟨2187, 64⟩−#2;33"), "<2187,64>-#2;33");
        assert_eq!(normalize_identifier("〈729,37〉"), "<729,37>");
    }

    #[test]
    fn words() {
        assert_eq!(word(&Element::from_exps(vec![0, 0, 0])), "1");
        assert_eq!(word(&Element::from_exps(vec![1, 0, 2])), "g1*g3^2");
    }

    #[test]
    fn trunk_selectors() {
        let set = FixtureSet { tables: Vec::new(), census: None };
        assert_eq!(resolve("P5", &set).unwrap().to_string(), "G(4,5;0;0,0,0,0)");
        assert!(resolve("P4", &set).is_err());
        assert!(resolve("T2R1", &set).is_err());
        assert_eq!(resolve("C3xC3", &set).unwrap(), FamilyParams::Abelian);
    }
}
