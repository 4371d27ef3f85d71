use num_bigint::BigInt;
use num_traits::Zero;

use super::{binomial_row, Polynomial, Rational};
use crate::error::{Error, Result};

/// Polynomial in `t` whose coefficients are polynomials in `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPolynomial {
    coefficients_in_t: Vec<Polynomial>,
}

impl BiPolynomial {
    pub fn new(mut coefficients_in_t: Vec<Polynomial>) -> Self {
        if coefficients_in_t.is_empty() {
            coefficients_in_t.push(Polynomial::zero(0));
        }
        BiPolynomial { coefficients_in_t }
    }

    /// A polynomial in `x` viewed as constant in `t`.
    pub fn constant_in_t(p: Polynomial) -> Self {
        Self::new(vec![p])
    }

    pub fn degree_bound_t(&self) -> usize {
        self.coefficients_in_t.len() - 1
    }

    pub fn t_coeff(&self, k: usize) -> Option<&Polynomial> {
        self.coefficients_in_t.get(k)
    }

    pub fn effective_degree_t(&self) -> Option<usize> {
        self.coefficients_in_t.iter().rposition(|p| !p.is_zero())
    }

    /// `p((t−1)·x + 1)`.
    ///
    /// With `p(y+1) = Σ b_k y^k` this is `Σ_k b_k x^k (t−1)^k`, so the
    /// coefficient of `t^i x^k` is `b_k·C(k,i)·(−1)^{k−i}`. Both degree bounds
    /// equal the degree bound of `p`.
    pub fn substitute_affine(p: &Polynomial) -> Self {
        let bound = p.degree_bound();
        let shifted = p.shift_plus_one();
        let mut rows = vec![Polynomial::zero(bound); bound + 1];
        let mut cells: Vec<Vec<Rational>> = vec![vec![Rational::zero(); bound + 1]; bound + 1];
        for (k, b) in shifted.coeffs().iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            for (i, c) in binomial_row(k).iter().enumerate() {
                let mut term = b * Rational::from_integer(c.clone());
                if (k - i) % 2 == 1 {
                    term = -term;
                }
                cells[i][k] += term;
            }
        }
        for (row, cell) in rows.iter_mut().zip(cells) {
            *row = Polynomial::new(cell);
        }
        BiPolynomial::new(rows)
    }

    pub fn map_x(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Self {
        BiPolynomial::new(self.coefficients_in_t.iter().map(f).collect())
    }

    /// Multiplies by `x^k`.
    pub fn mul_x_pow(&self, k: usize) -> Self {
        self.map_x(|p| p.shift_degree(k))
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        self.map_x(|p| p.scale(factor))
    }

    /// Reflection with respect to `t`: the coefficient polynomials of `t^k`
    /// and `t^{n−k}` trade places.
    pub fn reflect_in_t(&self, n: usize) -> Result<Self> {
        if let Some(deg) = self.effective_degree_t() {
            if deg > n {
                return Err(Error::DegreeTooLarge { degree: deg, n });
            }
        }
        let x_bound = self
            .coefficients_in_t
            .iter()
            .map(Polynomial::degree_bound)
            .max()
            .unwrap_or(0);
        let mut rows: Vec<Polynomial> = (0..=n)
            .map(|k| {
                self.coefficients_in_t
                    .get(k)
                    .cloned()
                    .unwrap_or_else(|| Polynomial::zero(x_bound))
            })
            .collect();
        rows.reverse();
        Ok(BiPolynomial::new(rows))
    }

    /// `∫₀¹ f(t,x) dt`, term by term with `t^k ↦ 1/(k+1)`.
    pub fn integrate_t_unit(&self) -> Polynomial {
        self.coefficients_in_t
            .iter()
            .enumerate()
            .fold(Polynomial::zero(0), |acc, (k, p)| {
                let weight = Rational::new(1.into(), BigInt::from(k + 1));
                &acc + &p.scale(&weight)
            })
    }
}
