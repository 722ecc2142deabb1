//! Dynkin type recognition for positive definite symmetric quasi-Cartan
//! matrices and their signed bigraphs.
//!
//! Two independent routes are provided: the inflations method
//! ([`inflations::inflations_method`]) and structural recognizers for the A
//! family (block trees, [`blocks`]) and the D family (cycle gluings and vertex
//! identification, [`dcycle`]). Every positive result carries a
//! [`flation::FlationWitness`] that can be re-checked with
//! [`inflations::verify_witness`].

pub mod bigraph;
pub mod blocks;
pub mod classify;
pub mod dcycle;
pub mod dynkin;
pub mod flation;
pub mod format;
pub mod inflations;
pub mod matrix;
pub mod oracle;

pub use classify::{classify, classify_matrix, ClassifyError, Method};
pub use inflations::{ClassificationResult, Route};
pub use bigraph::{Bigraph, BigraphError, Edge, LineStyle};
pub use dynkin::{DynkinType, Family};
pub use flation::{FlationStep, FlationWitness};
pub use matrix::{IntMatrix, QuasiCartanMatrix};
