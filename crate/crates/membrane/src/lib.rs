//! Iterated integrals over two-dimensional membranes.
//!
//! Three layers, validated against each other:
//!
//! * exact shuffle combinatorics of bi-permuted words and their graded
//!   Hopf algebra ([`perm`], [`word`], [`series`], [`hopf`], [`indexed`]);
//! * numerical and exact evaluation of iterated integrals over
//!   simplex-product domains, membranes and their compositions ([`quad`]);
//! * theta functions and completed (multiple) Dedekind zeta values for the
//!   rationals, imaginary quadratic and real quadratic fields of class
//!   number one ([`zeta`]).

pub mod checks;
pub mod error;
pub mod hopf;
pub mod indexed;
pub mod json;
pub mod perm;
pub mod quad;
pub mod series;
pub mod util;
pub mod word;
pub mod zeta;

pub use error::{Error, Result};
pub use perm::{concat_perm, is_shuffle, restricted_shuffles, shuffles, triple_shuffles};
pub use perm::{GroundSet, Permutation};
pub use word::{canonicalize, IndexedMonomial, MonomialClass, Word};

/// Exact coefficient scalar used whenever the data is polynomial.
pub type Rational = num_rational::BigRational;

/// Series over monomial classes with exact rational coefficients.
pub type RationalSeries = series::FormalSeries<MonomialClass, Rational>;

/// Series over monomial classes with floating-point coefficients.
pub type NumericSeries = series::FormalSeries<MonomialClass, f64>;

/// Indexed-monomial series (split-aware carrier), exact coefficients.
pub type RationalIndexedSeries = series::FormalSeries<IndexedMonomial, Rational>;

/// Indexed-monomial series, floating-point coefficients.
pub type NumericIndexedSeries = series::FormalSeries<IndexedMonomial, f64>;

/// Convert an exact rational to f64 (for reports and tolerances).
pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
