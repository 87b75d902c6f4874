//! Metabelian skeleton of a coclass forest: the pairwise non-isomorphic
//! groups of the parametrized families, joined by parent edges.

use crate::tree::{StructuredTree, VertexSpec};
use crate::TreeError;
use coclass_families::{family_params, FamilyError, FamilyParams, NebelungParams};
use coclass_invariants::{compute, gi_v4_flags, Bounds, GroupInvariants};
use coclass_isotest::{dedup_prepared, isomorphic_prepared, Fingerprint, IsoVerdict, Prepared, DEFAULT_BOUND};
use coclass_pc::{lower_central_series, quotient, PcPresentation};
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Copy, Debug)]
pub struct SkeletonConfig {
    pub iso_bound: u32,
    pub bounds: Bounds,
}

impl Default for SkeletonConfig {
    fn default() -> Self {
        SkeletonConfig { iso_bound: DEFAULT_BOUND, bounds: Bounds::default() }
    }
}

pub struct SkeletonNode {
    /// Least parameter tuple of the class.
    pub params: FamilyParams,
    pub members: Vec<FamilyParams>,
    pub inv: GroupInvariants,
    pub group: Prepared,
    /// Parent inside the skeleton.
    pub parent: Option<usize>,
    /// Logarithmic order of the last lower central term.
    pub step: u32,
    /// The parent has smaller coclass, so lies outside the skeleton.
    pub top: bool,
    pub parent_group: Option<PcPresentation>,
    /// Some isomorphism test in the class was undetermined.
    pub undetermined: bool,
}

pub struct Skeleton {
    pub r: u32,
    pub bound: u32,
    pub nodes: Vec<SkeletonNode>,
    /// Vertices whose parent class was not found.
    pub orphans: Vec<String>,
    by_lo: BTreeMap<u32, Vec<usize>>,
}

/// The same parameters one step further along: (m, n) -> (m+k, n+k).
pub fn continuation(p: &FamilyParams, lo: u32) -> Option<FamilyParams> {
    match *p {
        FamilyParams::Abelian => (lo >= 3).then(|| FamilyParams::Blackburn(coclass_families::BlackburnParams::new(lo, 0, 0, 0))),
        FamilyParams::Blackburn(b) => {
            Some(FamilyParams::Blackburn(coclass_families::BlackburnParams::new(lo, b.a, b.z, b.w)))
        }
        FamilyParams::Nebelung(q) => {
            let m = (q.m + lo).checked_sub(q.n)?;
            Some(FamilyParams::Nebelung(NebelungParams { m, n: lo, ..q }))
        }
    }
}

impl Skeleton {
    /// All groups of coclass r from the families with lo <= bound.
    pub fn build(r: u32, bound: u32, cfg: SkeletonConfig) -> Result<Self, TreeError> {
        let mut params_by_lo: BTreeMap<u32, Vec<FamilyParams>> = BTreeMap::new();
        for f in family_params(r, bound) {
            params_by_lo.entry(f.log_order()).or_default().push(f);
        }
        let mut sk = Skeleton { r, bound, nodes: Vec::new(), orphans: Vec::new(), by_lo: BTreeMap::new() };
        let mut by_fp: HashMap<Fingerprint, Vec<usize>> = HashMap::new();
        for (lo, params) in params_by_lo {
            let mut pool = Vec::new();
            for f in params {
                match f.build() {
                    Ok(p) => pool.push((f, Prepared::new(p)?)),
                    Err(FamilyError::Degenerate(_)) => {}
                    Err(e) => return Err(e.into()),
                }
            }
            for (class, group) in dedup_prepared(pool, cfg.iso_bound) {
                let inv = match &group.inv {
                    Some(base) => {
                        let (gi, v4) = gi_v4_flags(&group.p, cfg.bounds);
                        GroupInvariants { gi, v4, ..base.clone() }
                    }
                    None => compute(&group.p, cfg.bounds)?,
                };
                let lcs = lower_central_series(&group.p);
                let (step, parent_group) = if lcs.len() >= 3 {
                    let last = &lcs[lcs.len() - 2];
                    (last.order_log() as u32, Some(quotient(&group.p, last)?.presentation))
                } else {
                    (lo, None)
                };
                let id = sk.nodes.len();
                let mut node = SkeletonNode {
                    params: class.rep,
                    members: class.members,
                    inv,
                    group,
                    parent: None,
                    step,
                    top: true,
                    parent_group,
                    undetermined: class.undetermined,
                };
                if let Some(q) = &node.parent_group {
                    // a parent of the same coclass is one step down
                    if step == 1 {
                        node.top = false;
                        let plo = q.ngens() as u32;
                        let qp = Prepared::new(q.clone())?;
                        let found = by_fp.get(&qp.fingerprint).and_then(|cands| {
                            cands.iter().copied().find(|&c| {
                                sk.nodes[c].inv.lo == plo
                                    && matches!(isomorphic_prepared(&qp, &sk.nodes[c].group, cfg.iso_bound), IsoVerdict::Yes(_))
                            })
                        });
                        match found {
                            Some(pid) => node.parent = Some(pid),
                            None => sk.orphans.push(node.params.to_string()),
                        }
                    }
                }
                by_fp.entry(node.group.fingerprint.clone()).or_default().push(id);
                sk.by_lo.entry(lo).or_default().push(id);
                sk.nodes.push(node);
            }
        }
        Ok(sk)
    }

    pub fn lo_min(&self) -> Option<u32> {
        self.by_lo.keys().next().copied()
    }

    pub fn layer(&self, lo: u32) -> &[usize] {
        self.by_lo.get(&lo).map_or(&[], |v| v.as_slice())
    }

    /// Node whose class contains the parameters.
    pub fn find(&self, p: &FamilyParams) -> Option<usize> {
        self.layer(p.log_order()).iter().copied().find(|&i| self.nodes[i].members.contains(p))
    }

    pub fn children(&self, id: usize) -> Vec<usize> {
        (id + 1..self.nodes.len()).filter(|&c| self.nodes[c].parent == Some(id)).collect()
    }

    /// The node and all its descendants, parents before children.
    pub fn descendants(&self, id: usize) -> Vec<usize> {
        let mut out = vec![id];
        let mut i = 0;
        while i < out.len() {
            let v = out[i];
            out.extend(self.children(v));
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// Vertices that are not descendants of any of the given roots.
    pub fn complement(&self, roots: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.nodes.len()];
        for &r in roots {
            for v in self.descendants(r) {
                inside[v] = true;
            }
        }
        (0..self.nodes.len()).filter(|&v| !inside[v]).collect()
    }

    /// The descendant tree of the class of `root`, with the mainline
    /// following the parameters of `root` upwards.
    pub fn tree(&self, root: &FamilyParams, name: &str) -> Result<StructuredTree, TreeError> {
        let rid = self.find(root).ok_or_else(|| TreeError::Missing(root.to_string()))?;
        let ids = self.descendants(rid);
        let local: HashMap<usize, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let rows = ids
            .iter()
            .map(|&v| VertexSpec {
                label: self.nodes[v].inv.clone(),
                params: self.nodes[v].params.to_string(),
                parent: if v == rid { None } else { self.nodes[v].parent.map(|p| local[&p]) },
            })
            .collect();
        let mut t = StructuredTree::new(name, rows, self.bound)?;
        let mut path = vec![rid];
        let mut lo = root.log_order();
        loop {
            let cur = *path.last().unwrap();
            let kids = self.children(cur);
            let seeded = continuation(root, lo + 1).and_then(|c| self.find(&c)).filter(|c| kids.contains(c));
            let next = seeded.or_else(|| {
                let capable: Vec<usize> = kids.iter().copied().filter(|&c| !self.children(c).is_empty()).collect();
                (capable.len() == 1).then(|| capable[0])
            });
            match next {
                Some(n) => path.push(n),
                None => break,
            }
            lo += 1;
        }
        let lpath: Vec<usize> = path.iter().map(|v| local[v]).collect();
        t.set_mainline(&lpath)?;
        Ok(t)
    }
}
