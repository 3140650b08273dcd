//! Exact scalar arithmetic: rationals, elements of cyclotomic fields and
//! fraction-free linear algebra over the rationals.

mod cyclo;
mod matrix;
mod upoly;

pub use cyclo::{cyclo_arith, root_of_unity, ArithOp, CycloElem, CyclotomicField};
pub use matrix::{det_fraction_free, solve_exact, ExactMatrix};
pub use upoly::{cyclotomic_polynomial, IntPoly};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt::Debug;

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Coefficient field of a [`crate::bipoly::BiPoly`].
///
/// Elements of a cyclotomic field carry their field, so the "zero" and "one"
/// of a kind are produced from an existing value (`zero_like`, `one_like`).
pub trait Scalar: Clone + PartialEq + Debug + Send + Sync {
    fn is_zero_elem(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn times_int(&self, k: i64) -> Self;
    /// Complex conjugation.
    fn conj(&self) -> Self;
    /// Whether the two values live in the same field.
    fn compatible(&self, other: &Self) -> bool;
    /// The value as a rational, when it is one.
    fn to_rational(&self) -> Option<Rational>;
}

impl Scalar for Rational {
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn times_int(&self, k: i64) -> Self {
        self * BigInt::from(k)
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn compatible(&self, _other: &Self) -> bool {
        true
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

/// `num/den`, or just `num` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub(crate) fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
        .abs()
}
