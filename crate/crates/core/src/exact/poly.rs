use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{binomial_row, Rational};
use crate::error::{Error, Result};

/// Dense univariate polynomial over the rationals.
///
/// The coefficient list always has `degree_bound + 1` entries. Trailing zeros
/// are kept: the bound is the ambient degree that reflections are taken with
/// respect to, which is generally larger than the effective degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients. An empty list is the
    /// zero polynomial with degree bound 0.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Rational::zero());
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn zero(degree_bound: usize) -> Self {
        Polynomial {
            coeffs: vec![Rational::zero(); degree_bound + 1],
        }
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial { coeffs: vec![c] }
    }

    /// `c·x^k` with degree bound `k`.
    pub fn monomial(k: usize, c: Rational) -> Self {
        let mut p = Self::zero(k);
        p.coeffs[k] = c;
        p
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(1, Rational::one())
    }

    pub fn degree_bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `x^k`; zero past the degree bound.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Index of the highest nonzero coefficient, `None` for the zero polynomial.
    pub fn effective_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.effective_degree().is_none()
    }

    /// Re-expresses the polynomial with a different degree bound. Fails when
    /// the effective degree does not fit.
    pub fn with_degree_bound(mut self, bound: usize) -> Result<Self> {
        if let Some(deg) = self.effective_degree() {
            if deg > bound {
                return Err(Error::DegreeTooLarge {
                    degree: deg,
                    n: bound,
                });
            }
        }
        self.coeffs.resize(bound + 1, Rational::zero());
        Ok(self)
    }

    /// Equality of the underlying functions, ignoring degree bounds.
    pub fn same_values(&self, other: &Polynomial) -> bool {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len).all(|k| self.coeff(k) == other.coeff(k))
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() == 1 {
            return Polynomial::zero(0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
            .collect();
        Polynomial { coeffs }
    }

    /// The antiderivative vanishing at zero.
    pub fn antiderivative_from_zero(&self) -> Polynomial {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c / Rational::from_integer(BigInt::from(k + 1))),
        );
        Polynomial { coeffs }
    }

    /// The `n`-reflection `x^n·p(1/x)`: the coefficients of `x^k` and
    /// `x^{n−k}` trade places. The result has degree bound `n`.
    pub fn reflect(&self, n: usize) -> Result<Polynomial> {
        let mut coeffs = self.clone().with_degree_bound(n)?.coeffs;
        coeffs.reverse();
        Ok(Polynomial { coeffs })
    }

    /// `p(x+1)`, expanded with binomial coefficients.
    pub fn shift_plus_one(&self) -> Polynomial {
        let bound = self.degree_bound();
        let mut out = vec![Rational::zero(); bound + 1];
        for (j, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let row = binomial_row(j);
            for (k, c) in row.iter().enumerate() {
                out[k] += a * Rational::from_integer(c.clone());
            }
        }
        Polynomial { coeffs: out }
    }

    /// `p(q(x))` by Horner's scheme.
    pub fn compose(&self, inner: &Polynomial) -> Polynomial {
        let bound = self.degree_bound() * inner.degree_bound();
        let mut acc = Polynomial::zero(0);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Polynomial::constant(c.clone());
        }
        acc.with_degree_bound(bound)
            .expect("composition degree within product bound")
    }

    pub fn scale(&self, factor: &Rational) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Multiplies by `x^k`, raising the degree bound by `k`.
    pub fn shift_degree(&self, k: usize) -> Polynomial {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    /// `(x+1)^n` with degree bound `n`.
    pub fn one_plus_x_pow(n: usize) -> Polynomial {
        Polynomial {
            coeffs: binomial_row(n)
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        Polynomial { coeffs }
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        Polynomial { coeffs }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Polynomial { coeffs }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}
