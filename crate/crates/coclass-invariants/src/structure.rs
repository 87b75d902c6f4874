//! Maximal subgroups, transfers, two-step centralizer and defect.

use coclass_pc::{
    abelian_invariants, commutator_subgroup, lower_central_series, quotient, Element, InducedSubgroup,
    PcPresentation, Quotient,
};

use crate::abelian::AbelianType;
use crate::tkt::Tkt;
use crate::InvariantError;

/// A point of G/G' = F_3^2 in coordinates of the two generators outside G'.
pub type Coset = (u8, u8);

/// Lines of F_3^2 through the origin, spanned by y, x, xy, xy^2.
pub const LINES: [Coset; 4] = [(0, 1), (1, 0), (1, 1), (1, 2)];

pub fn same_line(a: Coset, b: Coset) -> bool {
    (a.0 as i32 * b.1 as i32 - a.1 as i32 * b.0 as i32).rem_euclid(3) == 0
}

/// Cached structure of a 2-generator 3-group with G/G' = C3 x C3.
pub struct Frame<'a> {
    pub p: &'a PcPresentation,
    pub lcs: Vec<InducedSubgroup>,
    abel: Quotient,
    // pc depths of the two generators outside G'
    gdepth: [usize; 2],
}

impl<'a> Frame<'a> {
    pub fn new(p: &'a PcPresentation) -> Result<Self, InvariantError> {
        let lcs = lower_central_series(p);
        let g2 = if lcs.len() > 1 { lcs[1].clone() } else { InducedSubgroup::trivial(p.ngens()) };
        let abel = quotient(p, &g2).map_err(InvariantError::Pc)?;
        let q = &abel.presentation;
        let elementary = (0..q.ngens()).all(|i| q.power_rel(i).is_identity());
        if q.ngens() != 2 || !elementary {
            return Err(InvariantError::NotC3xC3);
        }
        let kd = abel.kept_depths();
        let gdepth = [kd[0], kd[1]];
        Ok(Frame { p, lcs, abel, gdepth })
    }

    pub fn class(&self) -> usize {
        self.lcs.len() - 1
    }

    /// gamma_i for i >= 1 (trivial beyond the class).
    pub fn gamma(&self, i: usize) -> InducedSubgroup {
        self.lcs.get(i - 1).cloned().unwrap_or_else(|| InducedSubgroup::trivial(self.p.ngens()))
    }

    pub fn derived(&self) -> InducedSubgroup {
        self.gamma(2)
    }

    pub fn coset(&self, w: &Element) -> Coset {
        let e = self.abel.project(self.p, w);
        (e.exps[0], e.exps[1])
    }

    /// The representative x^a y^b.
    pub fn lift(&self, c: Coset) -> Element {
        let p = self.p;
        let x = p.pow(&p.gen(self.gdepth[0]), c.0 as i64);
        let y = p.pow(&p.gen(self.gdepth[1]), c.1 as i64);
        p.mul(&x, &y)
    }

    pub fn cosets() -> impl Iterator<Item = Coset> {
        (0..3u8).flat_map(|a| (0..3u8).map(move |b| (a, b)))
    }

    /// The subgroup <g, G'> for the line spanned by `c`.
    pub fn maximal_for(&self, c: Coset) -> InducedSubgroup {
        let mut seeds = vec![self.lift(c)];
        seeds.extend(self.derived().gens());
        coclass_pc::close_subgroup(self.p, &seeds, false)
    }

    /// Cosets g with [g, gamma_2] inside gamma_4.
    pub fn chi2_cosets(&self) -> Vec<Coset> {
        let g2 = self.gamma(2).gens();
        let g4 = self.gamma(4);
        Self::cosets()
            .filter(|&c| {
                let g = self.lift(c);
                g2.iter().all(|u| g4.contains(self.p, &self.p.comm(&g, u)))
            })
            .collect()
    }

    pub fn chi2(&self) -> InducedSubgroup {
        let mut seeds: Vec<Element> = self.chi2_cosets().into_iter().map(|c| self.lift(c)).collect();
        seeds.extend(self.derived().gens());
        coclass_pc::close_subgroup(self.p, &seeds, false)
    }

    /// Lines of the four maximal subgroups in canonical order.
    pub fn canonical_lines(&self) -> [Coset; 4] {
        let mut lines = LINES;
        if self.class() >= 3 {
            let ch = self.chi2_cosets();
            if ch.len() == 3 {
                let l = ch.into_iter().find(|&c| c != (0, 0)).unwrap();
                let pos = lines.iter().position(|&m| same_line(m, l)).unwrap();
                lines[..=pos].rotate_right(1);
            }
        }
        lines
    }

    pub fn maximal_subgroups(&self) -> [InducedSubgroup; 4] {
        self.canonical_lines().map(|c| self.maximal_for(c))
    }

    /// T_U(g) for each of the 9 cosets, as elements of U.
    pub fn transfer(&self, line: Coset) -> Vec<(Coset, Element)> {
        let p = self.p;
        let f = |c: Coset| (line.0 as i32 * c.1 as i32 - line.1 as i32 * c.0 as i32).rem_euclid(3);
        let tc = if f((1, 0)) != 0 { (1, 0) } else { (0, 1) };
        let t = self.lift(tc);
        let ft = f(tc);
        let tp = [p.identity(), t.clone(), p.mul(&t, &t)];
        let tinv = [p.identity(), p.inv(&tp[1]), p.inv(&tp[2])];
        Self::cosets()
            .map(|c| {
                let g = self.lift(c);
                // f(t)^-1 = f(t) in F_3
                let k = (f(c) * ft).rem_euclid(3) as usize;
                let mut out = p.identity();
                for i in 0..3 {
                    let j = (i + k) % 3;
                    let mut w = tp[i].clone();
                    p.mul_assign(&mut w.exps, &g.exps);
                    p.mul_assign(&mut w.exps, &tinv[j].exps);
                    p.mul_assign(&mut out.exps, &w.exps);
                }
                (c, out)
            })
            .collect()
    }

    /// Kernel of the transfer to the maximal subgroup on `line`.
    pub fn transfer_kernel(&self, line: Coset, u_derived: &InducedSubgroup) -> Vec<Coset> {
        self.transfer(line)
            .into_iter()
            .filter(|(_, t)| u_derived.contains(self.p, t))
            .map(|(c, _)| c)
            .collect()
    }

    /// Transfer kernel type and target type under the canonical order.
    pub fn tkt_ttt(&self) -> Result<(Tkt, [AbelianType; 4]), InvariantError> {
        let lines = self.canonical_lines();
        let mut kappa = [0u8; 4];
        let mut tau: [AbelianType; 4] = Default::default();
        for (i, &l) in lines.iter().enumerate() {
            let u = self.maximal_for(l);
            let ud = commutator_subgroup(self.p, &u, &u);
            tau[i] = AbelianType::new(abelian_invariants(self.p, &u));
            let ker = self.transfer_kernel(l, &ud);
            kappa[i] = match ker.len() {
                9 => 0,
                3 => {
                    let c = ker.into_iter().find(|&c| c != (0, 0)).unwrap();
                    lines.iter().position(|&m| same_line(m, c)).unwrap() as u8 + 1
                }
                k => return Err(InvariantError::Transfer(format!("kernel of size {k}"))),
            };
        }
        Ok((Tkt(kappa), tau))
    }

    /// Defect of commutativity k from [chi_2, gamma_2] = gamma_{c+1-k}.
    pub fn defect(&self) -> Result<u8, InvariantError> {
        let c = self.class();
        if c < 3 {
            return Ok(0);
        }
        let chi = self.chi2();
        let cm = commutator_subgroup(self.p, &chi, &self.gamma(2));
        for j in (2..=c + 1).rev() {
            let g = self.gamma(j);
            if g.order_log() == cm.order_log() && cm.is_subgroup_of(self.p, &g) {
                return u8::try_from(c + 1 - j).map_err(|_| InvariantError::Defect);
            }
        }
        Err(InvariantError::Defect)
    }
}
