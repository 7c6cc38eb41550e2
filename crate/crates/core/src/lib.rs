//! Labelled quiver mutation, structural classification, and bounded
//! exploration of mutation graphs.

pub mod classify;
pub mod format;
pub mod generate;
pub mod graph;
pub mod quiver;
pub mod sequence;
pub mod verify;
pub mod vertex_set;

pub use classify::{classify, ClassificationReport, ClassifyError, NodeClass, PreforkTriple};
pub use graph::{
    escape_fork_region, escape_prefork_region, explore, forkless_part, mutation_finiteness, preforkless_part, Budget,
    BudgetReason, BudgetSnapshot, ExplorationResult, Finiteness, ForkEscape, GraphError, MutationGraph, PartStatus,
    PreforkEscape,
};
pub use quiver::{swap_permutation, AcyclicOrdering, Quiver, QuiverError};
pub use sequence::{reduce_sequence, MutationSequence, ParseSequenceError};
pub use vertex_set::VertexSet;
