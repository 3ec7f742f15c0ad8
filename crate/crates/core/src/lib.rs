//! Executable constructions around size-Ramsey numbers of path powers:
//! graph operators, the pseudorandom class generator and verifier, path
//! partitioners, colouring analysers, embedders and the induction-step
//! driver.

#![allow(clippy::result_large_err)]

pub mod class_p;
pub mod colouring;
pub mod embed;
pub mod graph;
pub mod partition;
pub mod pipeline;
pub mod rational;
pub mod subsets;

pub use colouring::EdgeColouring;
pub use embed::Embedding;
pub use graph::{BlowupMap, Graph, PathWitness, Vertex};
pub use rational::Rational;
