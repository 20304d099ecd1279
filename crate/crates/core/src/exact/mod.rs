//! Exact integer and rational primitives: polynomials, matrices, Hermite normal
//! form, sparse multivariate polynomials, resultants and small number theory.

pub mod arith;
pub mod hnf;
pub mod matrix;
pub mod mpoly;
pub mod poly;
pub mod resultant;

pub use hnf::{echelon, hnf, left_kernel, row_lattice, Echelon};
pub use matrix::{IntMat, Matrix, RatMat};
pub use mpoly::{det_division_free, CommRing, MPoly};
pub use poly::{IntPoly, RatPoly};
pub use resultant::{discriminant, resultant, resultant_generic, sylvester};

use num_bigint::BigInt;
use num_rational::BigRational;

pub fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn rat(x: BigInt) -> BigRational {
    BigRational::from_integer(x)
}
