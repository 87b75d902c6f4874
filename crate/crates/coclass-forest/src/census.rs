//! Sporadic census, classes of isomorphic trees and the ledger of
//! information contents.

use crate::{Forest, ForestError};
use coclass_fixtures::{ForestFixture, PeriodicityFixture};
use coclass_tree::{trees_phi_isomorphic, Periodicity, TransformLaw};
use serde::Serialize;

/// Metabelian sporadic vertices by position.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SporadicCensus {
    /// Tops without children.
    pub isolated: u32,
    /// Tops with children.
    pub roots: u32,
    /// Children of tops with positive action flag.
    pub distinguished: u32,
    /// Children of tops with sigma = 0.
    pub sigma0: u32,
    /// Children of tops with undetermined flag.
    pub undetermined: u32,
    /// Vertices two or more steps below a top.
    pub deeper: u32,
    pub metabelian: u32,
}

pub fn sporadic_census(f: &Forest) -> SporadicCensus {
    let sk = &f.skeleton;
    let mut c = SporadicCensus::default();
    for &v in &f.sporadic {
        let nd = &sk.nodes[v];
        c.metabelian += 1;
        match nd.parent {
            None if sk.children(v).is_empty() => c.isolated += 1,
            None => c.roots += 1,
            Some(p) if sk.nodes[p].parent.is_none() => match nd.inv.sigma() {
                Some(0) => c.sigma0 += 1,
                Some(_) => c.distinguished += 1,
                None => c.undetermined += 1,
            },
            Some(_) => c.deeper += 1,
        }
    }
    c
}

/// Laws under which two trees of one forest count as the same tree.
pub fn class_laws() -> Vec<TransformLaw> {
    vec![TransformLaw::identity(), TransformLaw::d23_to_d19()]
}

/// Roots grouped by isomorphism of their trees, in root order.
pub fn tree_classes(f: &Forest) -> Vec<Vec<String>> {
    let laws = class_laws();
    let same = |i: usize, j: usize| {
        let (a, b) = (&f.trees[i], &f.trees[j]);
        laws.iter().any(|l| trees_phi_isomorphic(a, b, l).isomorphic || trees_phi_isomorphic(b, a, l).isomorphic)
    };
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..f.trees.len() {
        match classes.iter_mut().find(|c| same(c[0], i)) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    classes.into_iter().map(|c| c.into_iter().map(|i| f.roots[i].name.clone()).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchCount {
    pub e: u32,
    pub total: u32,
    /// Fixture value.
    pub metabelian: u32,
    /// Computed, None when the branch is not complete in the window.
    pub computed: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeIc {
    pub root: String,
    pub periodicity: PeriodicityFixture,
    /// The window was too small to detect the period; the fixture value is used.
    pub periodicity_from_fixture: bool,
    pub branches: Vec<BranchCount>,
    pub ic: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusLedger {
    pub r: u32,
    pub bound: u32,
    pub sporadic: SporadicCensus,
    pub nonmetabelian_tops: u32,
    pub nonmetabelian_children: u32,
    /// #F_0(r).
    pub s: u32,
    pub trees: Vec<TreeIc>,
    pub classes: Vec<Vec<String>>,
    /// Sum of the ICs of one tree per class.
    pub t: u32,
    pub total: u32,
    pub notes: Vec<String>,
}

fn period_fixture(p: Periodicity) -> PeriodicityFixture {
    PeriodicityFixture { pre: p.pre, len: p.len, start: p.start }
}

/// Combine the computed skeleton with the fixture counts. Any disagreement
/// between computed and recorded data is a conflict.
pub fn ledger(f: &Forest, fx: &ForestFixture) -> Result<CensusLedger, ForestError> {
    if fx.r != f.r {
        return Err(ForestError::Fixture(format!("census of F({}) applied to F({})", fx.r, f.r)));
    }
    let mut conflicts = Vec::new();
    let mut notes = Vec::new();
    let sp = sporadic_census(f);
    let want = &fx.sporadic;
    for (name, got, exp) in [
        ("isolated", sp.isolated, want.isolated),
        ("roots", sp.roots, want.roots),
        ("distinguished", sp.distinguished, want.distinguished),
        ("sigma0", sp.sigma0, want.sigma0),
        ("metabelian", sp.metabelian, want.metabelian),
    ] {
        if got != exp {
            conflicts.push(format!("sporadic {name}: fixture {exp}, computed {got}"));
        }
    }
    if sp.undetermined + sp.deeper > 0 {
        conflicts.push(format!("sporadic part has {} undetermined and {} deeper vertices", sp.undetermined, sp.deeper));
    }
    let mut trees = Vec::new();
    for (ri, t) in f.roots.iter().zip(&f.trees) {
        let tf = fx
            .trees
            .iter()
            .find(|x| x.root == ri.name)
            .ok_or_else(|| ForestError::Fixture(format!("tree {} of F({})", ri.name, f.r)))?;
        let from_fixture = match t.periodicity {
            Some(p) => {
                if period_fixture(p) != tf.periodicity {
                    conflicts.push(format!("{}: periodicity fixture {:?}, computed {:?}", ri.name, tf.periodicity, p));
                }
                false
            }
            None => {
                notes.push(format!("{}: periodicity not detectable up to lo {}, fixture value used", ri.name, f.bound));
                true
            }
        };
        let complete = t.complete_branches();
        let mut branches = Vec::new();
        for b in &tf.branches {
            let computed = complete.contains(&b.e).then(|| t.branch(b.e).vertices.len() as u32);
            if let Some(c) = computed {
                if c != b.metabelian {
                    conflicts.push(format!("{}: branch {} has {c} metabelian vertices, fixture {}", ri.name, b.e, b.metabelian));
                }
            }
            branches.push(BranchCount { e: b.e, total: b.total, metabelian: b.metabelian, computed });
        }
        let p = tf.periodicity;
        let n_star = t.n_star();
        let mut ic = 0;
        for e in n_star..p.start + p.len {
            let b = tf
                .branches
                .iter()
                .find(|b| b.e == e)
                .ok_or_else(|| ForestError::Fixture(format!("{}: branch {e} of F({})", ri.name, f.r)))?;
            ic += b.total;
        }
        if ic != tf.ic {
            conflicts.push(format!("{}: information content {ic} from the branches, fixture {}", ri.name, tf.ic));
        }
        trees.push(TreeIc { root: ri.name.clone(), periodicity: p, periodicity_from_fixture: from_fixture, branches, ic });
    }
    let classes = tree_classes(f);
    let norm = |c: &[Vec<String>]| {
        let mut v: Vec<Vec<String>> = c
            .iter()
            .map(|x| {
                let mut x = x.clone();
                x.sort();
                x
            })
            .collect();
        v.sort();
        v
    };
    if norm(&classes) != norm(&fx.tree_classes) {
        conflicts.push(format!("tree classes: fixture {:?}, computed {:?}", fx.tree_classes, classes));
    }
    if !conflicts.is_empty() {
        return Err(ForestError::Conflict(conflicts));
    }
    let s = sp.metabelian + want.nonmetabelian_tops + want.nonmetabelian_children;
    if s != want.total {
        return Err(ForestError::Conflict(vec![format!("sporadic total {s}, fixture {}", want.total)]));
    }
    let t: u32 = classes.iter().map(|c| trees.iter().find(|x| x.root == c[0]).map_or(0, |x| x.ic)).sum();
    let total = s + t;
    if total != fx.ic {
        return Err(ForestError::Conflict(vec![format!("total {total}, fixture {}", fx.ic)]));
    }
    Ok(CensusLedger {
        r: f.r,
        bound: f.bound,
        sporadic: sp,
        nonmetabelian_tops: want.nonmetabelian_tops,
        nonmetabelian_children: want.nonmetabelian_children,
        s,
        trees,
        classes,
        t,
        total,
        notes,
    })
}

impl CensusLedger {
    /// "total = s + (ic + ic + ...)" over the class representatives.
    pub fn equation(&self) -> String {
        let parts: Vec<String> = self
            .classes
            .iter()
            .filter_map(|c| self.trees.iter().find(|x| x.root == c[0]).map(|x| x.ic.to_string()))
            .collect();
        format!("{} = {} + ({})", self.total, self.s, parts.join("+"))
    }
}
