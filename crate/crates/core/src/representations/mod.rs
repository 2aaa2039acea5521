//! Group construction representations on finite abelian groups.

pub mod construction;
pub mod cycle;
pub mod decompose;
pub mod extend;
pub mod graph;
pub mod group;
pub mod normalize;

pub use construction::{
    commuting_failure, from_commuting_words, from_commuting_words_in_order, words_commute,
    GroupConstruction, GroupConstructionJson, Violation, ViolationKind,
};
pub use cycle::{cycle_construction, CycleResult};
pub use decompose::{decompose, full_symmetry_subgroup, DecompositionReport};
pub use extend::{extend_to_group, extend_with_symmetry, restrict_to_box, PartialConstruction};
pub use graph::{to_atomic_graph, AtomicGraph};
pub use group::FiniteAbelianGroup;
pub use normalize::{equivalence_gauge, normalize_scalars};
