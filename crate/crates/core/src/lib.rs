//! Exact GF(p) linear algebra, bilinear structures, class-2 and table
//! groups, and finite model checks for the associated group axioms.

pub mod bilinear;
pub mod comprehensive;
pub mod error;
pub mod format;
pub mod fplinalg;
pub mod groups;
pub mod modelcheck;
pub mod rng;

pub use bilinear::{AxiomVerdict, BilinearStructure, Counterexample, Fraction};
pub use comprehensive::{AbelianPGroup, Height, StarInstance};
pub use error::{Error, Result};
pub use fplinalg::{MatrixFp, PrimeField, Subspace, VectorFp};
pub use groups::{CheckMode, Class2Group, FiniteGroup, SeriesReport, TableGroup};
pub use modelcheck::{CentralizerRecord, ChainReport};
pub use rng::Lcg64;
