//! Exact verification of gap bounds derived from a mixed Vandermonde
//! determinant identity: divisors in residue classes, lattice points on
//! conics `X² + dY² = R`, polynomial divisors, and the overlapping
//! inequalities. No floating point is used in any decision.

pub mod cli;
pub mod conic;
pub mod error;
pub mod gaps;
pub mod overlap;
pub mod report;
pub mod rings;
pub mod vandermonde;

pub use error::{Error, Result};
