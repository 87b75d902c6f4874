//! Coclass forests F(r): the main trunk, the split into coclass trees and
//! the sporadic part, co-periodicity between F(r) and F(r+2), and the
//! ledger of information contents.

pub mod census;
pub mod coperiod;
pub mod trunk;

pub use census::{ledger, sporadic_census, tree_classes, CensusLedger, SporadicCensus, TreeIc};
pub use coperiod::{co_periodicity_check, BranchCheck, CoPeriodicity, Verdict};
pub use trunk::{main_trunk, trunk_descendants, trunk_tau2, trunk_vertex, TrunkVertex};

use coclass_families::FamilyParams;
use coclass_fixtures::RootFixture;
use coclass_isotest::{isomorphic_prepared, Prepared};
use coclass_tree::{detect_periodicity, PeriodicityVerdict, Skeleton, SkeletonConfig, StructuredTree, TreeError};
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum ForestError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Invariant(#[from] coclass_invariants::InvariantError),
    #[error(transparent)]
    Pc(#[from] coclass_pc::PcError),
    #[error("root {name}: {msg}")]
    Root { name: String, msg: String },
    #[error("vertices without parent class: {}", .0.join(", "))]
    Orphans(Vec<String>),
    #[error("order bound {bound} too small: {msg}")]
    Bound { bound: u32, msg: String },
    #[error("fixture conflict:\n  {}", .0.join("\n  "))]
    Conflict(Vec<String>),
    #[error("no fixture for {0}")]
    Fixture(String),
}

/// Longest period searched for.
pub const MAX_PERIOD: u32 = 3;

/// A declared tree root and its skeleton vertex.
#[derive(Clone, Debug, Serialize)]
pub struct RootInfo {
    pub name: String,
    pub params: FamilyParams,
    pub node: usize,
    #[serde(rename = "type")]
    pub ty: String,
    pub identifier: Option<String>,
}

pub struct Forest {
    pub r: u32,
    pub bound: u32,
    pub skeleton: Skeleton,
    /// P_{2r-1} for r >= 2.
    pub trunk: Option<FamilyParams>,
    pub roots: Vec<RootInfo>,
    /// One tree per root, in root order.
    pub trees: Vec<StructuredTree>,
    /// Vertices in no declared tree.
    pub sporadic: Vec<usize>,
}

/// Default order bound: three to four branches per tree.
pub fn default_bound(r: u32) -> u32 {
    if r == 1 {
        9
    } else {
        2 * r + 6
    }
}

/// Metabelian skeleton of F(r) up to lo `bound`, with the declared roots
/// checked against the trunk.
pub fn build_forest(r: u32, bound: u32, roots: &[RootFixture], cfg: SkeletonConfig) -> Result<Forest, ForestError> {
    if r == 0 {
        return Err(ForestError::Bound { bound, msg: "coclass must be positive".into() });
    }
    let lo_min = if r == 1 { 2 } else { 2 * r + 1 };
    if bound <= lo_min {
        return Err(ForestError::Bound { bound, msg: format!("roots of F({r}) have lo {lo_min}") });
    }
    let skeleton = Skeleton::build(r, bound, cfg)?;
    if !skeleton.orphans.is_empty() {
        return Err(ForestError::Orphans(skeleton.orphans.clone()));
    }
    let trunk = (r >= 2).then(|| trunk_vertex(r - 1));
    let trunk_group = match &trunk {
        Some(p) => Some(Prepared::new(p.build().map_err(TreeError::from)?)?),
        None => None,
    };
    let mut infos = Vec::new();
    for rf in roots {
        let bad = |msg: String| ForestError::Root { name: rf.name.clone(), msg };
        let params: FamilyParams = rf.select.parse().map_err(|e| bad(format!("{e}")))?;
        if params.coclass() != r || params.log_order() != lo_min {
            return Err(bad(format!("{params} is not a top vertex of F({r})")));
        }
        let node = skeleton.find(&params).ok_or_else(|| bad(format!("{params} not constructed")))?;
        let v = &skeleton.nodes[node];
        if let Some(tg) = &trunk_group {
            if !v.top || v.step != 2 {
                return Err(bad(format!("step {} from its parent, expected 2", v.step)));
            }
            let q = v.parent_group.clone().ok_or_else(|| bad("no parent".into()))?;
            if !isomorphic_prepared(&Prepared::new(q)?, tg, cfg.iso_bound).is_yes() {
                return Err(bad(format!("parent is not {}", trunk.unwrap())));
            }
        }
        let got = v.inv.kappa.type_name().unwrap_or("?");
        if got != rf.ty {
            return Err(bad(format!("type {got}, declared {}", rf.ty)));
        }
        if skeleton.children(node).is_empty() {
            return Err(bad("not capable within the bound".into()));
        }
        infos.push(RootInfo { name: rf.name.clone(), params, node, ty: rf.ty.clone(), identifier: rf.identifier.clone() });
    }
    let mut trees = Vec::new();
    for ri in &infos {
        let mut t = skeleton.tree(&ri.params, &ri.name)?;
        if let PeriodicityVerdict::Periodic(p) = detect_periodicity(&t, MAX_PERIOD) {
            t.periodicity = Some(p);
        }
        trees.push(t);
    }
    let ids: Vec<usize> = infos.iter().map(|ri| ri.node).collect();
    let sporadic = skeleton.complement(&ids);
    Ok(Forest { r, bound, skeleton, trunk, roots: infos, trees, sporadic })
}

impl Forest {
    pub fn tree(&self, name: &str) -> Option<&StructuredTree> {
        self.roots.iter().position(|r| r.name == name).map(|i| &self.trees[i])
    }

    /// Forest summary for export; the ledger is added by the caller.
    pub fn to_json(&self) -> serde_json::Value {
        let trees: Vec<serde_json::Value> = self
            .roots
            .iter()
            .zip(&self.trees)
            .map(|(ri, t)| {
                let branches: Vec<serde_json::Value> = (t.n_star()..=self.bound)
                    .map(|e| {
                        let b = t.branch(e);
                        serde_json::json!({ "e": e, "size": b.vertices.len(), "complete": t.complete_branches().contains(&e) })
                    })
                    .collect();
                serde_json::json!({
                    "root": ri.name,
                    "params": ri.params.to_string(),
                    "type": ri.ty,
                    "vertices": t.len(),
                    "depth": t.depth(),
                    "periodicity": t.periodicity,
                    "branches": branches,
                })
            })
            .collect();
        serde_json::json!({
            "r": self.r,
            "bound": self.bound,
            "trunk": self.trunk.map(|p| p.to_string()),
            "roots": self.roots,
            "trees": trees,
            "sporadic": sporadic_census(self),
            "vertices": self.skeleton.nodes.len(),
        })
    }
}
