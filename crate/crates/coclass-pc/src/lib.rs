//! Polycyclic power-commutator presentations for finite 3-groups.

pub mod consistency;
pub mod element;
pub mod presentation;
pub mod series;
pub mod snf;
pub mod subgroup;
pub mod text;

pub use consistency::{check_consistency, ConsistencyReport, Overlap};
pub use element::Element;
pub use presentation::PcPresentation;
pub use series::{
    centre, commutator_subgroup, derived_length, derived_series, is_normal, lower_central_series,
    nilpotency_class, normal_closure, quotient, Quotient,
};
pub use subgroup::{centralizer, close_subgroup, close_with, minimal_generators, CloseOptions, InducedSubgroup};

/// Exact integer matrices for abelian invariants.
pub type IntMatrix = snf::Matrix<i128>;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum PcError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("inconsistent presentation: {0}")]
    Inconsistent(String),
}

/// Collect the product of two normal words.
pub fn collect(p: &PcPresentation, left: &Element, right: &Element) -> Result<Element, PcError> {
    p.validate(left)?;
    p.validate(right)?;
    Ok(p.mul(left, right))
}

pub fn invert(p: &PcPresentation, w: &Element) -> Result<Element, PcError> {
    p.validate(w)?;
    Ok(p.inv(w))
}

pub fn commutator(p: &PcPresentation, a: &Element, b: &Element) -> Element {
    p.comm(a, b)
}

pub fn sift(p: &PcPresentation, u: &InducedSubgroup, w: &Element) -> Element {
    u.sift(p, w)
}

/// Logarithmic abelian invariants of U/U', weakly decreasing.
pub fn abelian_invariants(p: &PcPresentation, u: &InducedSubgroup) -> Vec<u32> {
    let gens = u.gens();
    let t = gens.len();
    if t == 0 {
        return Vec::new();
    }
    let mut rows: IntMatrix = Vec::new();
    let vec_of = |w: &Element| -> Vec<i128> {
        u.express(p, w).expect("relation lies in the subgroup").iter().map(|&e| e as i128).collect()
    };
    for (j, g) in gens.iter().enumerate() {
        let mut r: Vec<i128> = vec_of(&p.pow(g, 3)).iter().map(|&e| -e).collect();
        r[j] += 3;
        rows.push(r);
        for h in &gens[..j] {
            rows.push(vec_of(&p.comm(g, h)));
        }
    }
    snf::abelian_logs(&rows, t, 3i128.pow(t as u32 + 1))
}
