//! Exact computations with finite-dimensional coquasi Hopf algebras.
//!
//! Structures are given by structure constants over ℚ or 𝔽_p. Every axiom,
//! dual, Hopf module and Radford-formula ingredient is computed exactly and
//! checked by full summation over basis tuples.

pub mod cli;
pub mod coalg;
pub mod comod;
pub mod cqbialg;
pub mod engine;
pub mod error;
pub mod hopfmod;
pub mod linalg;
pub mod par;
pub mod radford;
pub mod report;
pub mod zoo;

pub use error::{Error, Result};
