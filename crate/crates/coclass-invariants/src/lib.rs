//! Per-group invariants: abelian types, transfer kernel and target types,
//! centre, defect of commutativity and action flags.

pub mod abelian;
pub mod morphism;
pub mod structure;
pub mod tkt;

pub use abelian::AbelianType;
pub use morphism::{gl23, reflections, Mat2, MetabelianFrame, MINUS_ONE};
pub use structure::{Coset, Frame};
pub use tkt::Tkt;

use coclass_pc::{abelian_invariants, centre, derived_series, InducedSubgroup, PcError, PcPresentation};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("commutator quotient is not C3 x C3")]
    NotC3xC3,
    #[error("transfer: {0}")]
    Transfer(String),
    #[error("[chi_2, gamma_2] is not a term of the lower central series")]
    Defect,
    #[error(transparent)]
    Pc(#[from] PcError),
}

/// yes / no / not decided within the configured order bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tri {
    Yes,
    No,
    Undetermined,
}

impl Tri {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }
}

/// Fields that only come from tables, never computed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FixtureFields {
    pub mu: Option<u32>,
    pub nu: Option<u32>,
    pub aut_order: Option<String>,
    pub ri: Option<bool>,
    pub identifier: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupInvariants {
    pub lo: u32,
    pub cl: u32,
    pub cc: u32,
    pub dl: u32,
    pub zeta: AbelianType,
    pub kappa: Tkt,
    pub tau: [AbelianType; 4],
    pub tau1: AbelianType,
    pub tau2: AbelianType,
    pub k: u8,
    pub gi: Tri,
    pub v4: Tri,
    #[serde(default)]
    pub fixture: FixtureFields,
}

impl GroupInvariants {
    /// sigma = 2 for GI and V4, 1 for GI only, 0 for neither.
    pub fn sigma(&self) -> Option<u8> {
        match (self.gi, self.v4) {
            (Tri::Yes, Tri::Yes) => Some(2),
            (Tri::Yes, Tri::No) => Some(1),
            (Tri::No, _) => Some(0),
            _ => None,
        }
    }

    /// The multiset of TTT components, sorted.
    pub fn tau_multiset(&self) -> Vec<AbelianType> {
        let mut t = self.tau.to_vec();
        t.sort();
        t
    }
}

impl fmt::Display for GroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sigma = self.sigma().map_or("?".to_string(), |s| s.to_string());
        let ty = self.kappa.type_name().unwrap_or("?");
        write!(
            f,
            "lo={} cl={} cc={} dl={} ζ={} κ={} {} τ=[{};{};{};{}] τ₂={} k={} σ={}",
            self.lo,
            self.cl,
            self.cc,
            self.dl,
            self.zeta,
            self.kappa,
            ty,
            self.tau[0],
            self.tau[1],
            self.tau[2],
            self.tau[3],
            self.tau2,
            self.k,
            sigma
        )
    }
}

/// Bounds (logarithmic orders) for the action flags.
#[derive(Clone, Copy, Debug)]
pub struct Bounds {
    pub gi: u32,
    pub v4: u32,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { gi: 24, v4: 24 }
    }
}

pub fn abelian_type(p: &PcPresentation, u: &InducedSubgroup) -> AbelianType {
    AbelianType::new(abelian_invariants(p, u))
}

/// Maximal subgroups in canonical order.
pub fn maximal_subgroups(p: &PcPresentation) -> Result<[InducedSubgroup; 4], InvariantError> {
    Ok(Frame::new(p)?.maximal_subgroups())
}

pub fn tkt(p: &PcPresentation) -> Result<Tkt, InvariantError> {
    Ok(Frame::new(p)?.tkt_ttt()?.0)
}

pub fn defect(p: &PcPresentation) -> Result<u8, InvariantError> {
    Frame::new(p)?.defect()
}

/// GI and V4 flags; undetermined above the bounds or for presentations
/// outside the metabelian 2-generator shape.
pub fn gi_v4_flags(p: &PcPresentation, bounds: Bounds) -> (Tri, Tri) {
    let lo = p.ngens() as u32;
    if lo > bounds.gi {
        return (Tri::Undetermined, Tri::Undetermined);
    }
    let Some(fr) = MetabelianFrame::new(p) else {
        return (Tri::Undetermined, Tri::Undetermined);
    };
    let gi = fr.has_automorphism(&MINUS_ONE);
    if !gi {
        return (Tri::No, Tri::No);
    }
    if lo > bounds.v4 {
        return (Tri::Yes, Tri::Undetermined);
    }
    let v4 = reflections().iter().any(|s| fr.has_automorphism(s));
    (Tri::Yes, Tri::from_bool(v4))
}

/// All computable invariants of a group with G/G' = C3 x C3.
pub fn compute(p: &PcPresentation, bounds: Bounds) -> Result<GroupInvariants, InvariantError> {
    Ok(compute_with_lines(p, bounds)?.0)
}

/// As `compute`, also returning the lines of G/G' that index kappa and tau.
pub fn compute_with_lines(p: &PcPresentation, bounds: Bounds) -> Result<(GroupInvariants, [Coset; 4]), InvariantError> {
    let fr = Frame::new(p)?;
    let lines = fr.canonical_lines();
    let lo = p.ngens() as u32;
    let cl = fr.class() as u32;
    let ds = derived_series(p);
    let dl = (ds.len() - 1) as u32;
    let zeta = abelian_type(p, &centre(p));
    let (kappa, tau) = fr.tkt_ttt()?;
    let tau2 = if ds.len() > 1 { abelian_type(p, &ds[1]) } else { AbelianType::trivial() };
    let k = fr.defect()?;
    let (gi, v4) = gi_v4_flags(p, bounds);
    Ok((GroupInvariants {
        lo,
        cl,
        cc: lo - cl,
        dl,
        zeta,
        kappa,
        tau1: tau[0].clone(),
        tau,
        tau2,
        k,
        gi,
        v4,
        fixture: FixtureFields::default(),
    }, lines))
}
