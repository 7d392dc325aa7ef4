//! Entanglement entropy in (1+1)-dimensional critical and near-critical
//! systems: closed-form conformal predictions, the replica-geometry toolkit
//! behind them, and exact lattice solvers for the transverse-field Ising chain
//! and the harmonic chain.

pub mod analysis;
pub mod boson;
pub mod cft;
pub mod error;
pub mod ising;
pub mod lanczos;
pub mod replica;
pub mod sweep;

pub use error::{Error, Result};
