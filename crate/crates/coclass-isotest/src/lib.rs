//! Isomorphism tests for 2-generator 3-groups with G/G' = C3 x C3.
//!
//! Metabelian inputs are decided exactly for every order by the linear
//! solver in `coclass_invariants::morphism`; a positive answer always
//! carries generator images that are re-checked against every relation.
//! Other inputs fall back to an exhaustive search below an order bound.

pub mod oracle;

use coclass_invariants::morphism::{gl23, respects_relations, GenWords, Mat2};
use coclass_invariants::structure::same_line;
use coclass_invariants::{compute, compute_with_lines, AbelianType, Coset, Bounds, GroupInvariants, InvariantError, MetabelianFrame, Tkt};
use coclass_pc::{Element, PcPresentation};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

/// Logarithmic order up to which element statistics enter the fingerprint.
pub const SMALL_DATA_BOUND: u32 = 7;

/// Default bound for the exhaustive fallback.
pub const DEFAULT_BOUND: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fingerprint {
    pub lo: u32,
    pub cl: u32,
    pub cc: u32,
    pub dl: u32,
    pub zeta: AbelianType,
    pub kappa_class: Tkt,
    pub tau: Vec<AbelianType>,
    pub tau2: AbelianType,
    pub k: u8,
    /// Bound used for the element statistics below.
    pub small_bound: u32,
    /// (log order, count) over all elements, when lo <= small_bound.
    pub order_histogram: Option<Vec<(u32, u64)>>,
    /// (log size, count) over conjugacy classes, when lo <= small_bound.
    pub class_sizes: Option<Vec<(u32, u64)>>,
}

impl Fingerprint {
    pub fn from_invariants(inv: &GroupInvariants, p: &PcPresentation) -> Self {
        let small = inv.lo <= SMALL_DATA_BOUND;
        Fingerprint {
            lo: inv.lo,
            cl: inv.cl,
            cc: inv.cc,
            dl: inv.dl,
            zeta: inv.zeta.clone(),
            kappa_class: inv.kappa.class_rep(),
            tau: inv.tau_multiset(),
            tau2: inv.tau2.clone(),
            k: inv.k,
            small_bound: SMALL_DATA_BOUND,
            order_histogram: small.then(|| order_histogram(p)),
            class_sizes: small.then(|| class_sizes(p)),
        }
    }
}

fn order_histogram(p: &PcPresentation) -> Vec<(u32, u64)> {
    let mut h = BTreeMap::new();
    for g in p.elements() {
        *h.entry(p.order_log_of(&g)).or_insert(0u64) += 1;
    }
    h.into_iter().collect()
}

fn class_sizes(p: &PcPresentation) -> Vec<(u32, u64)> {
    let n = p.ngens();
    let total = 3usize.pow(n as u32);
    let gens: Vec<Element> = (0..n).map(|i| p.gen(i)).collect();
    let mut seen = vec![false; total];
    let mut h = BTreeMap::new();
    for start in 0..total {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![Element::from_index(n, start as u64)];
        let mut size = 0u64;
        while let Some(g) = stack.pop() {
            size += 1;
            for s in &gens {
                let c = p.conj(&g, s);
                let i = c.index() as usize;
                if !seen[i] {
                    seen[i] = true;
                    stack.push(c);
                }
            }
        }
        let mut l = 0u32;
        let mut s = size;
        while s > 1 {
            s /= 3;
            l += 1;
        }
        *h.entry(l).or_insert(0u64) += 1;
    }
    h.into_iter().collect()
}

pub fn fingerprint(p: &PcPresentation) -> Result<Fingerprint, InvariantError> {
    let inv = compute(p, Bounds { gi: 0, v4: 0 })?;
    Ok(Fingerprint::from_invariants(&inv, p))
}

/// Images of x and y defining an isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoCertificate {
    pub x_image: Element,
    pub y_image: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    Yes(IsoCertificate),
    No,
    /// Fingerprints agree but no certified decision was possible.
    Undetermined,
}

impl IsoVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoVerdict::Yes(_))
    }
}

/// Re-check a certificate: the images satisfy every relation of g, and
/// generate h modulo its Frattini subgroup.
pub fn verify_certificate(g: &PcPresentation, h: &PcPresentation, c: &IsoCertificate) -> bool {
    if g.ngens() != h.ngens() || g.ngens() < 2 {
        return g.ngens() == h.ngens() && g.ngens() < 2;
    }
    let Ok(fh) = coclass_invariants::Frame::new(h) else { return false };
    let (a, b) = (fh.coset(&c.x_image), fh.coset(&c.y_image));
    let det = (a.0 as i32 * b.1 as i32 - a.1 as i32 * b.0 as i32).rem_euclid(3);
    if det == 0 {
        return false;
    }
    let imgs = GenWords::new(g).evaluate(h, &c.x_image, &c.y_image);
    respects_relations(g, h, &imgs)
}

/// A group prepared for repeated isomorphism tests.
pub struct Prepared {
    pub p: PcPresentation,
    pub fingerprint: Fingerprint,
    /// Invariants without the action flags, when computed here.
    pub inv: Option<GroupInvariants>,
    lines: Option<[Coset; 4]>,
    frame: Option<MetabelianFrame>,
}

impl Prepared {
    pub fn new(p: PcPresentation) -> Result<Self, InvariantError> {
        let (inv, lines) = compute_with_lines(&p, Bounds { gi: 0, v4: 0 })?;
        let fingerprint = Fingerprint::from_invariants(&inv, &p);
        let frame = MetabelianFrame::new(&p);
        Ok(Prepared { p, fingerprint, inv: Some(inv), lines: Some(lines), frame })
    }

    pub fn with_fingerprint(p: PcPresentation, fingerprint: Fingerprint) -> Self {
        let frame = MetabelianFrame::new(&p);
        Prepared { p, fingerprint, inv: None, lines: None, frame }
    }

    /// Matrices that may be induced by an isomorphism to `other`: each
    /// maximal subgroup must go to one with the same abelian type, and
    /// transfer kernels must correspond.
    pub fn candidate_matrices(&self, other: &Prepared) -> Vec<Mat2> {
        let all = gl23();
        let (Some(la), Some(lb), Some(ia), Some(ib)) = (&self.lines, &other.lines, &self.inv, &other.inv) else {
            return all;
        };
        let pos = |lines: &[Coset; 4], c: Coset| lines.iter().position(|&l| same_line(l, c)).unwrap();
        all.into_iter()
            .filter(|s| {
                let img = |c: Coset| -> Coset {
                    let a = (c.0 as u32 * s[0][0] as u32 + c.1 as u32 * s[1][0] as u32) % 3;
                    let b = (c.0 as u32 * s[0][1] as u32 + c.1 as u32 * s[1][1] as u32) % 3;
                    (a as u8, b as u8)
                };
                (0..4).all(|i| {
                    let j = pos(lb, img(la[i]));
                    if ia.tau[i] != ib.tau[j] {
                        return false;
                    }
                    match (ia.kappa.0[i], ib.kappa.0[j]) {
                        (0, 0) => true,
                        (0, _) | (_, 0) => false,
                        (t, u) => pos(lb, img(la[t as usize - 1])) == u as usize - 1,
                    }
                })
            })
            .collect()
    }
}

/// Isomorphism test between prepared groups.
pub fn isomorphic_prepared(a: &Prepared, b: &Prepared, bound: u32) -> IsoVerdict {
    if a.fingerprint != b.fingerprint {
        return IsoVerdict::No;
    }
    if let (Some(fa), Some(fb)) = (&a.frame, &b.frame) {
        for s in a.candidate_matrices(b) {
            if let Some((x, y)) = fa.isomorphism_to(fb, &s) {
                let c = IsoCertificate { x_image: x, y_image: y };
                debug_assert!(verify_certificate(&a.p, &b.p, &c));
                return IsoVerdict::Yes(c);
            }
        }
        return IsoVerdict::No;
    }
    if a.p.ngens() as u32 <= bound {
        return exhaustive(&a.p, &b.p);
    }
    IsoVerdict::Undetermined
}

pub fn isomorphic(p1: &PcPresentation, p2: &PcPresentation, bound: u32) -> Result<IsoVerdict, InvariantError> {
    if p1.ngens() != p2.ngens() {
        return Ok(IsoVerdict::No);
    }
    let a = Prepared::new(p1.clone())?;
    let b = Prepared::new(p2.clone())?;
    Ok(isomorphic_prepared(&a, &b, bound))
}

// Try every pair of images in the right cosets, checking relations.
fn exhaustive(g: &PcPresentation, h: &PcPresentation) -> IsoVerdict {
    let words = GenWords::new(g);
    let Ok(fh) = coclass_invariants::Frame::new(h) else { return IsoVerdict::No };
    let elems: Vec<Element> = h.elements().collect();
    for x in &elems {
        let a = fh.coset(x);
        if a == (0, 0) {
            continue;
        }
        for y in &elems {
            let b = fh.coset(y);
            if (a.0 as i32 * b.1 as i32 - a.1 as i32 * b.0 as i32).rem_euclid(3) == 0 {
                continue;
            }
            let imgs = words.evaluate(h, x, y);
            if respects_relations(g, h, &imgs) {
                return IsoVerdict::Yes(IsoCertificate { x_image: x.clone(), y_image: y.clone() });
            }
        }
    }
    IsoVerdict::No
}

/// One isomorphism class of a pool.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoClass<K> {
    pub rep: K,
    pub members: Vec<K>,
    pub undetermined: bool,
}

/// Group a keyed pool into isomorphism classes; the least key represents
/// each class. Output is sorted by representative key.
pub fn dedup<K: Ord + Clone + Send + Sync>(
    pool: Vec<(K, PcPresentation)>,
    bound: u32,
) -> Result<Vec<IsoClass<K>>, InvariantError> {
    let prepared: Vec<(K, Prepared)> = pool
        .into_par_iter()
        .map(|(k, p)| Prepared::new(p).map(|pr| (k, pr)))
        .collect::<Result<_, _>>()?;
    Ok(dedup_prepared(prepared, bound).into_iter().map(|(c, _)| c).collect())
}

/// As `dedup`, also returning the prepared representative of each class.
pub fn dedup_prepared<K: Ord + Clone + Send + Sync>(
    mut prepared: Vec<(K, Prepared)>,
    bound: u32,
) -> Vec<(IsoClass<K>, Prepared)> {
    prepared.sort_by(|a, b| a.0.cmp(&b.0));
    let mut buckets: HashMap<Fingerprint, Vec<(K, Prepared)>> = HashMap::new();
    for (k, p) in prepared {
        buckets.entry(p.fingerprint.clone()).or_default().push((k, p));
    }
    let mut bucket_list: Vec<Vec<(K, Prepared)>> = buckets.into_values().collect();
    bucket_list.sort_by(|a, b| a[0].0.cmp(&b[0].0));
    let mut out: Vec<(IsoClass<K>, Prepared)> = bucket_list
        .into_par_iter()
        .flat_map_iter(|bucket| {
            let mut reps: Vec<(IsoClass<K>, Prepared)> = Vec::new();
            for (k, p) in bucket {
                let mut placed = false;
                let mut undetermined = false;
                for (cls, rp) in reps.iter_mut() {
                    match isomorphic_prepared(&p, rp, bound) {
                        IsoVerdict::Yes(_) => {
                            cls.members.push(k.clone());
                            placed = true;
                            break;
                        }
                        IsoVerdict::No => {}
                        IsoVerdict::Undetermined => undetermined = true,
                    }
                }
                if !placed {
                    reps.push((IsoClass { rep: k.clone(), members: vec![k], undetermined }, p));
                }
            }
            reps
        })
        .collect();
    out.sort_by(|a, b| a.0.rep.cmp(&b.0.rep));
    out
}
