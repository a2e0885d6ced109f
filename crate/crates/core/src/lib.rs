//! Exact construction of the `det^{S^r}` maps and the q-particle r-equilibrium problem.
//!
//! Everything here runs over the rationals with arbitrary precision; there is no
//! floating-point path. The crate is `no_std` and only needs `alloc`.
//!
//! * [`combinat`] indexes rows and columns by colexicographically ranked subsets.
//! * [`exact`] holds the matrix type and fraction-free determinant, rank and kernel.
//! * [`tensors`] models force systems, coefficient systems and vector configurations.
//! * [`detsr`] builds the square system whose determinant is `det^{S^r}`.
//! * [`equilibrium`] decides the equilibrium problem directly and by the determinant.
//! * [`witnesses`] generates the worked examples, SL_d actions and random witnesses.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod combinat;
pub mod detsr;
pub mod equilibrium;
mod error;
pub mod exact;
pub mod tensors;
pub mod witnesses;

pub use combinat::{Sign, SortedTuple};
pub use detsr::{SignRule, SystemMatrix};
pub use equilibrium::{ConsistencyReport, EquilibriumSystem};
pub use error::{Error, Result};
pub use exact::{ExactMatrix, ExactRational};
pub use tensors::{CoefficientSystem, ForceSystem, VectorConfiguration};
pub use witnesses::WitnessReport;
