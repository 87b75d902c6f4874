use crate::element::Element;
use crate::presentation::PcPresentation;
use crate::subgroup::{centralizer, close_with, minimal_generators, CloseOptions, InducedSubgroup};
use crate::PcError;

fn all_gens(p: &PcPresentation) -> Vec<Element> {
    (0..p.ngens()).map(|i| p.gen(i)).collect()
}

/// Normal closure in G of the seeds.
pub fn normal_closure(p: &PcPresentation, seeds: &[Element]) -> InducedSubgroup {
    let gens = minimal_generators(p);
    normal_closure_by(p, seeds, &gens)
}

fn normal_closure_by(p: &PcPresentation, seeds: &[Element], gens: &[Element]) -> InducedSubgroup {
    let opts = CloseOptions { conjugate_by: Some(gens), ..Default::default() };
    close_with(p, seeds, &opts)
}

/// [U, V] for subgroups U, V with V normal (or U, V both normal).
pub fn commutator_subgroup(p: &PcPresentation, u: &InducedSubgroup, v: &InducedSubgroup) -> InducedSubgroup {
    let gens = minimal_generators(p);
    let mut seeds = Vec::new();
    for a in u.gens() {
        for b in v.gens() {
            seeds.push(p.comm(&a, &b));
        }
    }
    normal_closure_by(p, &seeds, &gens)
}

/// γ_1 = G ⊃ γ_2 ⊃ ... ⊃ γ_{c+1} = 1.
pub fn lower_central_series(p: &PcPresentation) -> Vec<InducedSubgroup> {
    let gens = minimal_generators(p);
    let mut out = vec![InducedSubgroup::whole(p)];
    loop {
        let last = out.last().unwrap();
        if last.is_trivial() {
            break;
        }
        let mut seeds = Vec::new();
        for u in last.gens() {
            for g in &gens {
                seeds.push(p.comm(&u, g));
            }
        }
        let next = normal_closure_by(p, &seeds, &gens);
        debug_assert!(next.order_log() < last.order_log());
        out.push(next);
    }
    out
}

/// G ⊃ G' ⊃ G'' ⊃ ... ⊃ 1.
pub fn derived_series(p: &PcPresentation) -> Vec<InducedSubgroup> {
    let gens = minimal_generators(p);
    let mut out = vec![InducedSubgroup::whole(p)];
    loop {
        let last = out.last().unwrap();
        if last.is_trivial() {
            break;
        }
        let g = last.gens();
        let mut seeds = Vec::new();
        for (i, a) in g.iter().enumerate() {
            for b in &g[..i] {
                seeds.push(p.comm(a, b));
            }
        }
        let next = normal_closure_by(p, &seeds, &gens);
        out.push(next);
    }
    out
}

pub fn nilpotency_class(p: &PcPresentation) -> usize {
    lower_central_series(p).len() - 1
}

pub fn derived_length(p: &PcPresentation) -> usize {
    derived_series(p).len() - 1
}

pub fn centre(p: &PcPresentation) -> InducedSubgroup {
    centralizer(p, &minimal_generators(p))
}

/// Whether a subgroup is normal in G.
pub fn is_normal(p: &PcPresentation, n: &InducedSubgroup) -> bool {
    let gens = all_gens(p);
    n.gens().iter().all(|u| gens.iter().all(|g| n.contains(p, &p.conj(u, g))))
}

/// Quotient presentation G/N with its projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub presentation: PcPresentation,
    kernel: InducedSubgroup,
    // ambient depths that survive, in order
    keep: Vec<usize>,
}

impl Quotient {
    /// Image of an element of G in G/N.
    pub fn project(&self, g: &PcPresentation, w: &Element) -> Element {
        let r = reduce(g, &self.kernel, w);
        Element::from_exps(self.keep.iter().map(|&d| r.exps[d]).collect())
    }

    /// Preimage word of a quotient element (zeros at kernel depths).
    pub fn lift(&self, g: &PcPresentation, w: &Element) -> Element {
        let mut out = g.identity();
        for (k, &d) in self.keep.iter().enumerate() {
            out.exps[d] = w.exps[k];
        }
        out
    }

    pub fn kept_depths(&self) -> &[usize] {
        &self.keep
    }
}

// Coset representative with zero exponents at the kernel depths.
fn reduce(p: &PcPresentation, n: &InducedSubgroup, w: &Element) -> Element {
    let mut r = w.clone();
    for d in 0..p.ngens() {
        let e = r.exps[d];
        if e == 0 {
            continue;
        }
        if let Some(u) = n.gen_at(d) {
            let k = 3 - e as i64;
            let uk = p.pow(u, k);
            p.mul_assign(&mut r.exps, &uk.exps);
        }
    }
    r
}

pub fn quotient(p: &PcPresentation, n: &InducedSubgroup) -> Result<Quotient, PcError> {
    if !is_normal(p, n) {
        return Err(PcError::NotNormal);
    }
    let ds = n.depth_set();
    let keep: Vec<usize> = (0..p.ngens()).filter(|d| !ds.contains(d)).collect();
    let names = keep.iter().map(|&d| p.names()[d].clone()).collect();
    let restrict = |w: &Element| Element::from_exps(keep.iter().map(|&d| w.exps[d]).collect());
    let power = keep.iter().map(|&d| restrict(&reduce(p, n, p.power_rel(d)))).collect();
    let comm = keep
        .iter()
        .enumerate()
        .map(|(b, &db)| {
            keep[..b].iter().map(|&da| restrict(&reduce(p, n, p.comm_rel(db, da)))).collect()
        })
        .collect();
    let presentation = PcPresentation::new(names, power, comm)?;
    Ok(Quotient { presentation, kernel: n.clone(), keep })
}
