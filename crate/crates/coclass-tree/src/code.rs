//! Canonical codes of labelled rooted trees (AHU), with labels passed
//! through a transformation law.
//!
//! Codes are the full nested strings, so equal codes mean isomorphic
//! labelled trees with no hashing involved.

use crate::law::{LabelRecord, TransformLaw};
use crate::tree::{Branch, StructuredTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Labels are mapped through the law.
    Source,
    /// Labels only get the law's merges.
    Target,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeOptions {
    /// Leave the action flag out of the labels.
    pub drop_sigma: bool,
}

impl Default for CodeOptions {
    fn default() -> Self {
        CodeOptions { drop_sigma: false }
    }
}

fn label(t: &StructuredTree, v: usize, law: &TransformLaw, side: Side, opt: &CodeOptions) -> String {
    let rec = LabelRecord::of(&t.vertices[v].label);
    let rec = match side {
        Side::Source => law.apply(&rec),
        Side::Target => law.target(&rec),
    };
    rec.text(!opt.drop_sigma)
}

/// Code of the subtree below `v`, descending only into vertices accepted by
/// `keep`.
pub fn subtree_code(
    t: &StructuredTree,
    v: usize,
    keep: &dyn Fn(usize) -> bool,
    law: &TransformLaw,
    side: Side,
    opt: &CodeOptions,
) -> String {
    let mut kids: Vec<String> = t.vertices[v]
        .children
        .iter()
        .copied()
        .filter(|&c| keep(c))
        .map(|c| subtree_code(t, c, keep, law, side, opt))
        .collect();
    kids.sort();
    let mut s = String::from("(");
    s.push_str(&label(t, v, law, side, opt));
    for k in kids {
        s.push_str(&k);
    }
    s.push(')');
    s
}

/// Code of a whole tree.
pub fn canonical_code(t: &StructuredTree, law: &TransformLaw, side: Side) -> String {
    subtree_code(t, t.root, &|_| true, law, side, &CodeOptions::default())
}

/// Code of a branch: its mainline root and everything off the mainline.
pub fn branch_code(t: &StructuredTree, b: &Branch, law: &TransformLaw, side: Side, opt: &CodeOptions) -> String {
    if b.vertices.is_empty() {
        return String::new();
    }
    subtree_code(t, b.root, &|c| !t.vertices[c].mainline, law, side, opt)
}

/// Whether any vertex of the set has an undetermined action flag.
pub fn has_undetermined_sigma(t: &StructuredTree, vs: &[usize]) -> bool {
    vs.iter().any(|&v| t.vertices[v].label.sigma().is_none())
}

/// Verdict of a phi-isomorphism test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiVerdict {
    pub isomorphic: bool,
    /// Sigma was dropped because some flag was undetermined.
    pub lossy: bool,
}

/// phi-isomorphism of branches: the law maps a's labels onto b's.
pub fn branches_phi_isomorphic(
    ta: &StructuredTree,
    a: &Branch,
    tb: &StructuredTree,
    b: &Branch,
    law: &TransformLaw,
) -> PhiVerdict {
    let lossy = has_undetermined_sigma(ta, &a.vertices) || has_undetermined_sigma(tb, &b.vertices);
    let opt = CodeOptions { drop_sigma: lossy };
    let isomorphic = a.vertices.len() == b.vertices.len()
        && !a.vertices.is_empty()
        && branch_code(ta, a, law, Side::Source, &opt) == branch_code(tb, b, law, Side::Target, &opt);
    PhiVerdict { isomorphic, lossy }
}

/// phi-isomorphism of whole trees.
pub fn trees_phi_isomorphic(a: &StructuredTree, b: &StructuredTree, law: &TransformLaw) -> PhiVerdict {
    let all_a: Vec<usize> = (0..a.len()).collect();
    let all_b: Vec<usize> = (0..b.len()).collect();
    let lossy = has_undetermined_sigma(a, &all_a) || has_undetermined_sigma(b, &all_b);
    let opt = CodeOptions { drop_sigma: lossy };
    let isomorphic = a.len() == b.len()
        && subtree_code(a, a.root, &|_| true, law, Side::Source, &opt)
            == subtree_code(b, b.root, &|_| true, law, Side::Target, &opt);
    PhiVerdict { isomorphic, lossy }
}
