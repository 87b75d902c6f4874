use crate::element::Element;
use crate::presentation::PcPresentation;
use std::collections::BTreeSet;

/// Subgroup given by an induced pcgs: at most one generator per leading
/// depth, with leading exponent 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedSubgroup {
    table: Vec<Option<Element>>,
    // u^-1 and u^-2 for each table entry, used by sift
    inv1: Vec<Option<Element>>,
    inv2: Vec<Option<Element>>,
    limit: usize,
}

impl InducedSubgroup {
    pub fn trivial(n: usize) -> Self {
        Self::trivial_mod(n, n)
    }

    fn trivial_mod(n: usize, limit: usize) -> Self {
        InducedSubgroup { table: vec![None; n], inv1: vec![None; n], inv2: vec![None; n], limit }
    }

    pub fn whole(p: &PcPresentation) -> Self {
        let mut s = Self::trivial(p.ngens());
        for i in 0..p.ngens() {
            s.insert(p, p.gen(i));
        }
        s
    }

    /// Ambient number of pc generators.
    pub fn ambient(&self) -> usize {
        self.table.len()
    }

    pub fn order_log(&self) -> usize {
        self.table.iter().filter(|t| t.is_some()).count()
    }

    pub fn depth_set(&self) -> BTreeSet<usize> {
        self.table.iter().enumerate().filter_map(|(d, t)| t.as_ref().map(|_| d)).collect()
    }

    pub fn depths(&self) -> Vec<usize> {
        self.depth_set().into_iter().collect()
    }

    /// Generators in increasing depth order.
    pub fn gens(&self) -> Vec<Element> {
        self.table.iter().flatten().cloned().collect()
    }

    pub fn gen_at(&self, depth: usize) -> Option<&Element> {
        self.table[depth].as_ref()
    }

    pub fn is_trivial(&self) -> bool {
        self.order_log() == 0
    }

    /// Remove leading exponents at occupied depths; stops at the first
    /// depth that cannot be eliminated.
    pub fn sift(&self, p: &PcPresentation, w: &Element) -> Element {
        let mut r = w.clone();
        r.truncate_at(self.limit);
        for d in 0..self.limit {
            let e = r.exps[d];
            if e == 0 {
                continue;
            }
            let u = match e {
                1 => self.inv1[d].as_ref(),
                _ => self.inv2[d].as_ref(),
            };
            match u {
                Some(u) => {
                    p.mul_assign(&mut r.exps, &u.exps);
                    r.truncate_at(self.limit);
                }
                None => return r,
            }
        }
        r
    }

    pub fn contains(&self, p: &PcPresentation, w: &Element) -> bool {
        self.sift(p, w).is_identity()
    }

    /// Add a sifted residue as a new table entry; returns its depth.
    fn insert(&mut self, p: &PcPresentation, r: Element) -> Option<usize> {
        let mut r = self.sift(p, &r);
        let (d, e) = r.leading()?;
        if e == 2 {
            r = p.mul(&r, &r);
            r.truncate_at(self.limit);
        }
        let mut i1 = p.inv(&r);
        i1.truncate_at(self.limit);
        let mut i2 = p.mul(&i1, &i1);
        i2.truncate_at(self.limit);
        self.table[d] = Some(r);
        self.inv1[d] = Some(i1);
        self.inv2[d] = Some(i2);
        Some(d)
    }

    /// Exponents (e_1, .., e_k) with w = u_1^e_1 ... u_k^e_k over `gens()`,
    /// or None when w is not in the subgroup.
    pub fn express(&self, p: &PcPresentation, w: &Element) -> Option<Vec<u8>> {
        let mut r = w.clone();
        let mut out = Vec::new();
        for d in 0..self.ambient() {
            let e = r.exps[d];
            if self.table[d].is_none() {
                if e != 0 {
                    return None;
                }
                continue;
            }
            out.push(e);
            if e != 0 {
                // peel u^e off the left
                let ui = if e == 1 { &self.inv1[d] } else { &self.inv2[d] };
                let mut t = ui.clone().unwrap();
                p.mul_assign(&mut t.exps, &r.exps);
                r = t;
            }
        }
        if r.is_identity() {
            Some(out)
        } else {
            None
        }
    }

    pub fn is_subgroup_of(&self, p: &PcPresentation, other: &InducedSubgroup) -> bool {
        self.table.iter().flatten().all(|u| other.contains(p, u))
    }

    /// All elements; only for small subgroups.
    pub fn elements(&self, p: &PcPresentation) -> Vec<Element> {
        let mut out = vec![p.identity()];
        for u in self.table.iter().flatten().rev() {
            let u2 = p.mul(u, u);
            let mut next = Vec::with_capacity(out.len() * 3);
            for w in &out {
                next.push(w.clone());
                next.push(p.mul(u, w));
                next.push(p.mul(&u2, w));
            }
            out = next;
        }
        out
    }
}

/// Options for subgroup closure.
#[derive(Clone, Debug, Default)]
pub struct CloseOptions<'a> {
    /// Close under conjugation by these elements.
    pub conjugate_by: Option<&'a [Element]>,
    /// Work modulo the pc-series term G_limit.
    pub limit: Option<usize>,
    /// Stop once the subgroup reaches this logarithmic order.
    pub target_log: Option<usize>,
}

/// Smallest subgroup (normal closure if requested) containing the seeds.
pub fn close_subgroup(p: &PcPresentation, seeds: &[Element], normal: bool) -> InducedSubgroup {
    let all: Vec<Element> = (0..p.ngens()).map(|i| p.gen(i)).collect();
    let opts = CloseOptions { conjugate_by: if normal { Some(&all) } else { None }, ..Default::default() };
    close_with(p, seeds, &opts)
}

pub fn close_with(p: &PcPresentation, seeds: &[Element], opts: &CloseOptions) -> InducedSubgroup {
    let n = p.ngens();
    let limit = opts.limit.unwrap_or(n).min(n);
    let mut s = InducedSubgroup::trivial_mod(n, limit);
    let mut queue: Vec<Element> = seeds.iter().rev().cloned().collect();
    let trunc = |mut w: Element| {
        w.truncate_at(limit);
        w
    };
    while let Some(w) = queue.pop() {
        let Some(d) = s.insert(p, w) else { continue };
        if opts.target_log.is_some_and(|t| s.order_log() >= t) {
            break;
        }
        let r = s.table[d].clone().unwrap();
        queue.push(trunc(p.pow(&r, 3)));
        for u in s.table.iter().flatten() {
            if *u != r {
                queue.push(trunc(p.comm(&r, u)));
            }
        }
        if let Some(cs) = opts.conjugate_by {
            for g in cs {
                queue.push(trunc(p.comm(&r, g)));
            }
        }
    }
    s
}

/// A minimal generating set: pc generators outside the Frattini subgroup.
pub fn minimal_generators(p: &PcPresentation) -> Vec<Element> {
    let n = p.ngens();
    let mut seeds = Vec::new();
    for i in 0..n {
        seeds.push(p.power_rel(i).clone());
        for j in i + 1..n {
            seeds.push(p.comm_rel(j, i).clone());
        }
    }
    let phi = close_subgroup(p, &seeds, true);
    let ds = phi.depth_set();
    (0..n).filter(|d| !ds.contains(d)).map(|d| p.gen(d)).collect()
}

/// Centralizer of a set of elements, computed layer by layer down the pc series.
pub fn centralizer(p: &PcPresentation, s: &[Element]) -> InducedSubgroup {
    let n = p.ngens();
    let mut cur: Vec<Element> = Vec::new();
    let mut cur_log = 0usize;
    for k in 0..n {
        let limit = k + 1;
        let mut gens: Vec<Element> = cur.clone();
        gens.push(p.gen(k));
        let mut log = cur_log + 1;
        for x in s {
            let vals: Vec<u8> = gens.iter().map(|d| p.comm(d, x).exps[k]).collect();
            let Some(piv) = vals.iter().position(|&v| v != 0) else { continue };
            // normalize the pivot so that its value is 1
            let pv = if vals[piv] == 1 { gens[piv].clone() } else { p.mul(&gens[piv], &gens[piv]) };
            let pv2 = p.mul(&pv, &pv);
            let pinv = [p.identity(), p.inv(&pv), p.inv(&pv2)];
            let ppow = [p.identity(), pv.clone(), pv2];
            let mut schreier = Vec::new();
            for (g, &c) in gens.iter().zip(&vals) {
                for a in 0..3usize {
                    let b = (a + c as usize) % 3;
                    let mut w = ppow[a].clone();
                    p.mul_assign(&mut w.exps, &g.exps);
                    p.mul_assign(&mut w.exps, &pinv[b].exps);
                    w.truncate_at(limit);
                    if !w.is_identity() {
                        schreier.push(w);
                    }
                }
            }
            let mut cube = p.pow(&pv, 3);
            cube.truncate_at(limit);
            schreier.push(cube);
            log -= 1;
            let opts = CloseOptions { limit: Some(limit), target_log: Some(log), ..Default::default() };
            let sub = close_with(p, &schreier, &opts);
            debug_assert_eq!(sub.order_log(), log);
            gens = sub.gens();
        }
        cur = gens;
        cur_log = log;
    }
    let opts = CloseOptions { target_log: Some(cur_log), ..Default::default() };
    close_with(p, &cur, &opts)
}
