//! Macaulay bases of graded submodules of free modules over polynomial rings.
//!
//! A Macaulay basis of a submodule `M` is a generating set whose leading forms
//! generate the leading-form module of `M`. Groebner bases (monomial gradings)
//! and H-bases (total degree) are the two classical special cases.

pub mod apps;
pub mod coeff;
pub mod error;
pub mod grading;
pub mod polymod;
pub mod gradlin;
pub mod macbasis;
pub mod parse;
pub mod reduce;
pub mod sample;
pub mod symmetry;

pub use coeff::{FieldSpec, Scalar};
pub use error::{Error, Result};
pub use grading::{Degree, ModuleGrading, RingGrading, TieOrder};
pub use parse::Ring;
pub use polymod::{ModuleElement, Monomial, Polynomial};
