//! Structured descendant trees: branches, layers, canonical codes,
//! transformation laws, periodicity and the descendant-number formulas,
//! plus the builder that assembles metabelian skeletons from the families.

pub mod code;
pub mod formula;
pub mod law;
pub mod period;
pub mod skeleton;
pub mod tree;

pub use code::{branch_code, branches_phi_isomorphic, canonical_code, trees_phi_isomorphic, PhiVerdict, Side};
pub use formula::{branch_size_formula, descendants_of, width_formula, Descendants};
pub use law::{LabelRecord, TransformLaw};
pub use period::{detect_periodicity, PeriodicityVerdict};
pub use skeleton::{continuation, Skeleton, SkeletonConfig, SkeletonNode};
pub use tree::{Branch, Periodicity, StructuredTree, Vertex, VertexSpec};

#[derive(Debug, thiserror::Error)]
pub enum TreeError {
    #[error("malformed tree: {0}")]
    Structure(String),
    #[error("no vertex for {0}")]
    Missing(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Family(#[from] coclass_families::FamilyError),
    #[error(transparent)]
    Invariant(#[from] coclass_invariants::InvariantError),
    #[error(transparent)]
    Pc(#[from] coclass_pc::PcError),
}
