//! Co-periodicity F(r) -> F(r+2) on metabelian skeletons, checked branch
//! by branch inside the constructed windows.

use crate::Forest;
use coclass_tree::code::{subtree_code, CodeOptions};
use coclass_tree::{branches_phi_isomorphic, Side, StructuredTree, TransformLaw, VertexSpec};
use serde::Serialize;
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Match,
    Mismatch,
    Undetermined,
}

impl Verdict {
    fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Mismatch, _) | (_, Mismatch) => Mismatch,
            (Undetermined, _) | (_, Undetermined) => Undetermined,
            _ => Match,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchCheck {
    pub source: String,
    pub target: String,
    pub e_source: u32,
    pub e_target: u32,
    pub sizes: (usize, usize),
    pub verdict: Verdict,
    /// Action flags were left out.
    pub lossy: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoPeriodicity {
    pub r_source: u32,
    pub r_target: u32,
    pub branches: Vec<BranchCheck>,
    pub sporadic: Verdict,
    /// Sporadic vertices compared on each side.
    pub sporadic_sizes: (usize, usize),
    pub verdict: Verdict,
    pub reasons: Vec<String>,
}

/// Sporadic subtree below a top vertex, cut at lo `max_lo`.
fn sporadic_tree(f: &Forest, top: usize, max_lo: u32) -> StructuredTree {
    let sk = &f.skeleton;
    let ids: Vec<usize> = sk.descendants(top).into_iter().filter(|&v| sk.nodes[v].inv.lo <= max_lo).collect();
    let local: HashMap<usize, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let rows = ids
        .iter()
        .map(|&v| VertexSpec {
            label: sk.nodes[v].inv.clone(),
            params: sk.nodes[v].params.to_string(),
            parent: if v == top { None } else { sk.nodes[v].parent.map(|p| local[&p]) },
        })
        .collect();
    StructuredTree::new(format!("{}", sk.nodes[top].params), rows, max_lo).expect("descendants form a tree")
}

fn sporadic_codes(f: &Forest, max_lo: u32, law: &TransformLaw, side: Side, drop_sigma: bool) -> (Vec<String>, usize) {
    let sk = &f.skeleton;
    let opt = CodeOptions { drop_sigma };
    let mut n = 0;
    let mut codes: Vec<String> = f
        .sporadic
        .iter()
        .copied()
        .filter(|&v| sk.nodes[v].parent.is_none() && sk.nodes[v].inv.lo <= max_lo)
        .map(|v| {
            let t = sporadic_tree(f, v, max_lo);
            n += t.len();
            subtree_code(&t, t.root, &|_| true, law, side, &opt)
        })
        .collect();
    codes.sort();
    (codes, n)
}

/// Compare the first `nbranches` branches of paired trees and the
/// sporadic parts of `a` and `b` under `law`. Roots are paired by
/// position; different root counts are a mismatch.
pub fn co_periodicity_check(a: &Forest, b: &Forest, law: &TransformLaw, nbranches: u32) -> CoPeriodicity {
    let mut reasons = Vec::new();
    let mut out = CoPeriodicity {
        r_source: a.r,
        r_target: b.r,
        branches: Vec::new(),
        sporadic: Verdict::Undetermined,
        sporadic_sizes: (0, 0),
        verdict: Verdict::Mismatch,
        reasons: Vec::new(),
    };
    if a.roots.len() != b.roots.len() {
        reasons.push(format!("F({}) has {} roots, F({}) has {}", a.r, a.roots.len(), b.r, b.roots.len()));
        out.reasons = reasons;
        return out;
    }
    let shift = law.lo;
    let mut verdict = Verdict::Match;
    for ((ra, ta), (rb, tb)) in a.roots.iter().zip(&a.trees).zip(b.roots.iter().zip(&b.trees)) {
        if ta.n_star() as i64 + shift != tb.n_star() as i64 {
            reasons.push(format!("{} at lo {} does not map to {} at lo {}", ra.name, ta.n_star(), rb.name, tb.n_star()));
            verdict = Verdict::Mismatch;
            continue;
        }
        let (ca, cb) = (ta.complete_branches(), tb.complete_branches());
        for i in 0..nbranches {
            let ea = ta.n_star() + i;
            let eb = tb.n_star() + i;
            let (ba, bb) = (ta.branch(ea), tb.branch(eb));
            let mut check = BranchCheck {
                source: ra.name.clone(),
                target: rb.name.clone(),
                e_source: ea,
                e_target: eb,
                sizes: (ba.vertices.len(), bb.vertices.len()),
                verdict: Verdict::Undetermined,
                lossy: false,
            };
            if !ca.contains(&ea) || !cb.contains(&eb) {
                reasons.push(format!("{}: branch {ea} or {eb} not complete in the window", ra.name));
            } else {
                let v = branches_phi_isomorphic(ta, &ba, tb, &bb, law);
                check.lossy = v.lossy;
                check.verdict = if v.isomorphic { Verdict::Match } else { Verdict::Mismatch };
                if !v.isomorphic {
                    reasons.push(format!("{}: B({ea}) and B({eb}) differ", ra.name));
                }
            }
            verdict = verdict.and(check.verdict);
            out.branches.push(check);
        }
    }
    // sporadic parts over the common window
    let w = (a.bound as i64).min(b.bound as i64 - shift);
    if w < 0 {
        reasons.push("no common window for the sporadic parts".into());
    } else {
        let w = w as u32;
        let lossy = [a, b].iter().any(|f| f.sporadic.iter().any(|&v| f.skeleton.nodes[v].inv.sigma().is_none()));
        let (sa, na) = sporadic_codes(a, w, law, Side::Source, lossy);
        let (sb, nb) = sporadic_codes(b, (w as i64 + shift) as u32, law, Side::Target, lossy);
        out.sporadic_sizes = (na, nb);
        out.sporadic = if sa == sb { Verdict::Match } else { Verdict::Mismatch };
        if sa != sb {
            reasons.push(format!("sporadic parts differ ({na} and {nb} vertices)"));
        }
    }
    out.verdict = verdict.and(out.sporadic);
    out.reasons = reasons;
    out
}
