//! Exact rational scalars and the dense polynomial algebra used by every
//! conversion route. Nothing in here touches floating point.

mod binomial;
mod bipoly;
mod poly;

pub use binomial::{binomial, binomial_row, rational_binomial};
pub use bipoly::BiPolynomial;
pub use poly::Polynomial;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `"3/5"`, `"-5"` or `"0"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    text.trim()
        .parse::<Rational>()
        .map_err(|e| Error::Document(format!("invalid rational `{text}`: {e}")))
}

pub fn sum<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values.into_iter().fold(Rational::zero(), |acc, v| acc + v)
}

pub fn is_one(value: &Rational) -> bool {
    value.is_one()
}

/// `∫₀¹ t^{n−k}(1−t)^k dt = 1/((n+1)·C(n,k))`.
pub fn beta_integral(n: usize, k: usize) -> Result<Rational> {
    if k > n {
        return Err(Error::precondition(format!(
            "beta integral requires 0 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    let denom = binomial(n, k) * BigInt::from(n + 1);
    Ok(Rational::new(BigInt::one(), denom))
}
