//! Exact arithmetic: rationals, dense polynomials over Q and F_p, integer
//! factorization of small-degree polynomials, cyclotomic fields and matrices.

pub mod cyclo;
pub mod fp;
pub mod linalg;
pub mod numfield;
pub mod nt;
pub mod poly;
pub mod zfactor;

pub use cyclo::{CycMat, CycloNum};
pub use nt::{euler_phi, mult_order, padic_val, real_quadratic_subfield};
pub use poly::RatPoly;

/// Rational number with arbitrary-precision numerator and denominator.
pub type Rat = num_rational::BigRational;
/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;

/// Rational from a machine integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Rational `n/d`, reduced.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}
