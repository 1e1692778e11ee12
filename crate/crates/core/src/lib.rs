//! Exact-arithmetic verification engine for derived-category computations:
//! Borel-Bott-Weil cohomology on Grassmannians, Hirzebruch-Riemann-Roch Euler
//! pairings, and a replayable mutation calculus for semiorthogonal
//! decompositions tracked on numerical K-lattices.

pub mod bbw;
pub mod checks;
pub mod chow;
pub mod error;
pub mod kmut;
pub mod notation;
pub mod replay;
pub mod snf;
pub mod symmetric;
pub mod varieties;
pub mod weights;

pub use error::{Error, Result};
