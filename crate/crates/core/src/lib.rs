//! Inverse K-theory on finite, level-truncated Γ-categories.
//!
//! The crate evaluates the functor 𝒫 from Γ-categories to permutative
//! categories on objects, multimorphisms, linearity constraints and
//! modifications, and checks the relevant coherence laws exhaustively on
//! bounded pieces of the (infinite) categories involved.

pub mod cat;
pub mod error;
pub mod fixtures;
pub mod fskel;
pub mod groth;
pub mod gamma;
pub mod indexing;
pub mod io;
pub mod permlin;
pub mod pinv;
pub mod report;
pub mod ringcat;

pub use error::{Error, Result};
