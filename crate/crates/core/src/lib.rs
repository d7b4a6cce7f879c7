//! Generalized rank weights and weight spectra of Gabidulin rank-metric codes
//! and q-matroids.
//!
//! The production path runs entirely on the lattice of q-cycles of the dual
//! q-matroid: Möbius values on its rank-collapsed quotients give virtual Betti
//! numbers, which determine every generalized weight polynomial. The
//! [`oracle`] module contains independent brute-force routes used to check
//! that path on small instances.

pub mod analysis;
pub mod error;
pub mod field;
pub mod input;
pub mod lattice;
pub mod linalg;
pub mod oracle;
pub mod qmatroid;
pub mod report;
pub mod spectra;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, FieldElement, FieldTower};
pub use lattice::{BettiTable, CycleLattice};
pub use linalg::{Ambient, Mat, Subspace};
pub use qmatroid::{GabidulinCode, QMatroid};
pub use spectra::{SpectrumTable, WeightPolynomial};

/// Default cap on the number of subspaces a single enumeration may visit.
pub const DEFAULT_SUBSPACE_CAP: u64 = 10_000_000;

/// Default cap on the number of codewords a brute-force oracle may visit.
pub const DEFAULT_CODEWORD_CAP: u64 = 1 << 24;
