//! Exact rational and univariate-polynomial linear algebra.
//!
//! Everything here works over the field of rationals with arbitrary-precision
//! numerators and denominators. Nothing is approximated; two values compare
//! equal only when they are equal.

mod matrix;
mod poly;
mod polymat;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

pub use matrix::{JordanChain, RatMatrix};
pub use poly::{RootSplit, UniPoly};
pub use polymat::{poly_matrix_pivots, PolyMatrix};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NonSquare { rows: usize, cols: usize },
    #[error("{0} is not an eigenvalue")]
    NotEigenvalue(Rational),
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Shorthand for `n/d`. Panics on a zero denominator.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p` for integers, `p/q` otherwise.
pub fn rational_to_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` with an optional leading sign.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Scales a vector so its first nonzero entry is one.
pub(crate) fn normalize_leading(v: &mut [Rational]) {
    if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
        if !lead.is_one() {
            for x in v.iter_mut() {
                *x = &*x / &lead;
            }
        }
    }
}
