//! The main trunk P_3 <- P_5 <- P_7 <- ... and the step-2 bifurcations
//! that seed the forests.

use crate::ForestError;
use coclass_families::{BlackburnParams, FamilyParams, NebelungParams};
use coclass_fixtures::DescendantCounts;
use coclass_invariants::{compute, AbelianType, Bounds, GroupInvariants, Tkt};
use coclass_isotest::{isomorphic_prepared, Prepared};
use coclass_pc::{lower_central_series, quotient};
use coclass_tree::{Skeleton, SkeletonConfig, TreeError};
use serde::Serialize;

/// P_{2j+1}: G(3;0;0,0) for j = 1, the all-zero Nebelung group with
/// m = j + 2 and n = 2j + 1 otherwise.
pub fn trunk_vertex(j: u32) -> FamilyParams {
    assert!(j >= 1, "trunk starts at j = 1");
    if j == 1 {
        FamilyParams::Blackburn(BlackburnParams::new(3, 0, 0, 0))
    } else {
        FamilyParams::Nebelung(NebelungParams::zero(j + 2, 2 * j + 1))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TrunkVertex {
    pub j: u32,
    pub params: FamilyParams,
    pub inv: GroupInvariants,
    /// Parent two class steps down is P_{2j-1}; None for j = 1.
    pub parent_ok: Option<bool>,
    /// Failed checks, empty when the vertex behaves as stated.
    pub problems: Vec<String>,
}

impl TrunkVertex {
    pub fn ok(&self) -> bool {
        self.problems.is_empty()
    }
}

/// The regular second derived type A(3,j) x A(3,j-1) of P_{2j+1}.
pub fn trunk_tau2(j: u32) -> AbelianType {
    AbelianType::nearly_homocyclic(j).times(&AbelianType::nearly_homocyclic(j - 1))
}

/// Build and check P_{2j+1} for j in the range.
pub fn main_trunk(js: std::ops::RangeInclusive<u32>, cfg: SkeletonConfig) -> Result<Vec<TrunkVertex>, ForestError> {
    let mut out: Vec<TrunkVertex> = Vec::new();
    let mut prev: Option<Prepared> = None;
    for j in js {
        let params = trunk_vertex(j);
        let g = params.build().map_err(TreeError::from)?;
        let inv = compute(&g, Bounds { gi: cfg.bounds.gi.min(2 * j + 1), v4: cfg.bounds.v4.min(2 * j + 1) })?;
        let mut problems = Vec::new();
        let want_kappa: Tkt = if j == 1 { "(0000)" } else { "(0043)" }.parse().expect("literal");
        if !inv.kappa.equivalent(&want_kappa) {
            problems.push(format!("kappa {} not in the class of {want_kappa}", inv.kappa));
        }
        if inv.cl != j + 1 {
            problems.push(format!("class {}, expected {}", inv.cl, j + 1));
        }
        if inv.cc != j {
            problems.push(format!("coclass {}, expected {j}", inv.cc));
        }
        if inv.tau1 != AbelianType::nearly_homocyclic(j + 1) {
            problems.push(format!("tau(1) = {}, expected {}", inv.tau1, AbelianType::nearly_homocyclic(j + 1)));
        }
        if inv.tau2 != trunk_tau2(j) {
            problems.push(format!("tau2 = {}, expected {}", inv.tau2, trunk_tau2(j)));
        }
        // pi^2(P_{2j+1}) = P_{2j-1}: the last lower central term has order 3^2
        let parent_ok = match &prev {
            None => None,
            Some(p) => {
                let lcs = lower_central_series(&g);
                let last = &lcs[lcs.len() - 2];
                let ok = last.order_log() == 2 && {
                    let q = Prepared::new(quotient(&g, last)?.presentation)?;
                    isomorphic_prepared(&q, p, cfg.iso_bound).is_yes()
                };
                if !ok {
                    problems.push(format!("parent is not P_{}", 2 * j - 1));
                }
                Some(ok)
            }
        };
        prev = Some(Prepared::new(g)?);
        out.push(TrunkVertex { j, params, inv, parent_ok, problems });
    }
    Ok(out)
}

/// Metabelian descendant numbers of P_{2j+1}: step-1 children (n1, with
/// c1 capable) in the coclass-j skeleton and step-2 children (n2, with c2
/// capable) among the tops of the coclass-(j+1) skeleton. `lower` must
/// reach lo 2j+3 and `upper` lo 2j+4.
pub fn trunk_descendants(j: u32, lower: &Skeleton, upper: &Skeleton, cfg: SkeletonConfig) -> Result<DescendantCounts, ForestError> {
    let lo = 2 * j + 1;
    if lower.r != j || upper.r != j + 1 {
        return Err(ForestError::Bound { bound: lo, msg: format!("skeletons of coclass {j} and {} needed", j + 1) });
    }
    if lower.bound < lo + 2 || upper.bound < lo + 3 {
        return Err(ForestError::Bound {
            bound: lower.bound.min(upper.bound),
            msg: format!("descendants of P_{lo} need lo {} and {}", lo + 2, lo + 3),
        });
    }
    let p = trunk_vertex(j);
    let node = lower.find(&p).ok_or_else(|| ForestError::Root { name: format!("P_{lo}"), msg: "not constructed".into() })?;
    let kids = lower.children(node);
    let n1 = kids.len() as u32;
    let c1 = kids.iter().filter(|&&c| !lower.children(c).is_empty()).count() as u32;
    let pg = &lower.nodes[node].group;
    let mut n2 = 0;
    let mut c2 = 0;
    for &v in upper.layer(lo + 2) {
        let nd = &upper.nodes[v];
        if !nd.top || nd.step != 2 {
            continue;
        }
        let Some(q) = &nd.parent_group else { continue };
        if isomorphic_prepared(&Prepared::new(q.clone())?, pg, cfg.iso_bound).is_yes() {
            n2 += 1;
            if !upper.children(v).is_empty() {
                c2 += 1;
            }
        }
    }
    Ok(DescendantCounts { n1, c1, n2, c2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trunk_params() {
        assert_eq!(trunk_vertex(1).to_string(), "G(3;0;0,0)");
        assert_eq!(trunk_vertex(3).to_string(), "G(5,7;0;0,0,0,0)");
        assert_eq!(trunk_vertex(5).log_order(), 11);
        assert_eq!(trunk_vertex(5).coclass(), 5);
    }

    #[test]
    fn regular_tau2() {
        assert_eq!(trunk_tau2(1).to_string(), "1");
        assert_eq!(trunk_tau2(3).to_string(), "21³");
        assert_eq!(trunk_tau2(4).order_log(), 7);
    }

    #[test]
    fn first_vertices() {
        let t = main_trunk(1..=3, SkeletonConfig::default()).unwrap();
        assert!(t.iter().all(|v| v.ok()), "{:?}", t.iter().map(|v| &v.problems).collect::<Vec<_>>());
        assert_eq!(t[0].parent_ok, None);
        assert_eq!(t[2].inv.tau1.to_string(), "2²");
    }
}
