//! Regularity departure analysis: when and by how much adjacency and
//! normalised-Laplacian spectral embeddings of a graph disagree.

pub mod agreement;
pub mod baseline;
pub mod datasets;
pub mod dcsbm;
pub mod error;
pub mod exec;
pub mod experiments;
pub mod graph;
pub mod spectral;
pub mod tadpole;

pub use agreement::{classify_scalar_family, verify_perfect_agreement, FamilyClassification};
pub use baseline::{bound_report, spectral_baseline, BaselineDecomposition, BoundReport};
pub use error::{Error, Result};
pub use exec::Execution;
pub use graph::{AdjacencyMatrix, DegreeProfile};
pub use spectral::{subspace_disagreement, top_k_by_magnitude, EmbeddingSubspace};
