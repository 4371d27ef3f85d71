//! Signatures read off the reliability polynomial `h(x)` by reflection,
//! shifting, differentiation and integration, and the reverse reconstruction
//! of `h` and `h′` from signatures.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial_row, rational_binomial, BiPolynomial, Polynomial, Rational};
use crate::signature::{Role, SignatureVector, TailSignature};

/// Validates `h(0) = 0`, `h(1) = 1` and `deg h ≤ n`, returning `h` with degree
/// bound exactly `n`.
pub fn reliability_polynomial(h: &Polynomial, n: usize) -> Result<Polynomial> {
    if n == 0 {
        return Err(Error::precondition("a system needs at least one component"));
    }
    let h = h.clone().with_degree_bound(n)?;
    let at_zero = h.coeff(0);
    if !at_zero.is_zero() {
        return Err(Error::precondition(format!("h(0) = {at_zero}, expected 0")));
    }
    let at_one = h.eval(&Rational::one());
    if !at_one.is_one() {
        return Err(Error::precondition(format!("h(1) = {at_one}, expected 1")));
    }
    Ok(h)
}

/// `(Rⁿh)(x+1) = Σ C(n,k) S̄ₖ xᵏ`.
pub fn reflected_shift(h: &Polynomial, n: usize) -> Result<Polynomial> {
    let h = reliability_polynomial(h, n)?;
    Ok(h.reflect(n)?.shift_plus_one())
}

/// `(Rⁿ⁻¹h′)(x+1) = Σ k C(n,k) sₖ xᵏ⁻¹`.
pub fn reflected_derivative_shift(h: &Polynomial, n: usize) -> Result<Polynomial> {
    let h = reliability_polynomial(h, n)?;
    Ok(h.derivative().reflect(n - 1)?.shift_plus_one())
}

pub fn tail_from_polynomial(h: &Polynomial, n: usize) -> Result<TailSignature> {
    tail_from_polynomial_with_role(h, n, Role::Structure)
}

pub(crate) fn tail_from_polynomial_with_role(
    h: &Polynomial,
    n: usize,
    role: Role,
) -> Result<TailSignature> {
    let a = reflected_shift(h, n)?;
    let row = binomial_row(n);
    let tail = (0..=n)
        .map(|k| a.coeff(k) / Rational::from_integer(row[k].clone()))
        .collect();
    TailSignature::with_role(tail, role)
}

pub fn signature_from_polynomial(h: &Polynomial, n: usize) -> Result<SignatureVector> {
    signature_from_polynomial_with_role(h, n, Role::Structure)
}

pub(crate) fn signature_from_polynomial_with_role(
    h: &Polynomial,
    n: usize,
    role: Role,
) -> Result<SignatureVector> {
    let a = reflected_derivative_shift(h, n)?;
    let row = binomial_row(n);
    let s = (1..=n)
        .map(|k| a.coeff(k - 1) / Rational::from_integer(&row[k] * BigInt::from(k)))
        .collect();
    SignatureVector::with_role(s, role)
}

/// `Σ C(n,k) sₖ xᵏ = ∫₀ˣ (Rⁿ⁻¹h′)(t+1) dt`.
pub fn binomial_signature_gf(h: &Polynomial, n: usize) -> Result<Polynomial> {
    Ok(reflected_derivative_shift(h, n)?.antiderivative_from_zero())
}

/// `Σ sₖ xᵏ = ∫₀¹ x·R^{n−1}_t((Rⁿ⁻¹h′)((t−1)x+1)) dt`, evaluated
/// symbolically on a polynomial in `(t, x)`.
pub fn signature_gf_via_integral(h: &Polynomial, n: usize) -> Result<Polynomial> {
    let h = reliability_polynomial(h, n)?;
    let reflected = h.derivative().reflect(n - 1)?;
    let integrand = BiPolynomial::substitute_affine(&reflected)
        .mul_x_pow(1)
        .reflect_in_t(n - 1)?;
    integrand.integrate_t_unit().with_degree_bound(n)
}

/// `Σ S̄ₖ xᵏ = ∫₀¹ (n+1)·Rⁿ_t((Rⁿh)((t−1)x+1)) dt`.
pub fn tail_gf_via_integral(h: &Polynomial, n: usize) -> Result<Polynomial> {
    let h = reliability_polynomial(h, n)?;
    let factor = Rational::from_integer(BigInt::from(n + 1));
    let integrand = BiPolynomial::substitute_affine(&h.reflect(n)?)
        .scale(&factor)
        .reflect_in_t(n)?;
    integrand.integrate_t_unit().with_degree_bound(n)
}

/// Signature read off the integral generating function.
pub fn signature_via_integral(h: &Polynomial, n: usize) -> Result<SignatureVector> {
    let gf = signature_gf_via_integral(h, n)?;
    SignatureVector::new((1..=n).map(|k| gf.coeff(k)).collect())
}

pub fn tail_via_integral(h: &Polynomial, n: usize) -> Result<TailSignature> {
    let gf = tail_gf_via_integral(h, n)?;
    TailSignature::new((0..=n).map(|k| gf.coeff(k)).collect())
}

/// `Σ sₖ xᵏ` with degree bound `n`.
pub fn signature_gf(s: &SignatureVector) -> Polynomial {
    let mut coeffs = vec![Rational::zero()];
    coeffs.extend(s.values().iter().cloned());
    Polynomial::new(coeffs)
}

/// `Σ S̄ₖ xᵏ` with degree bound `n`.
pub fn tail_gf(tail: &TailSignature) -> Polynomial {
    Polynomial::new(tail.values().to_vec())
}

fn one_minus_x_powers(n: usize) -> Vec<Polynomial> {
    let one_minus_x = Polynomial::from_ints(&[1, -1]);
    let mut powers = Vec::with_capacity(n + 1);
    powers.push(Polynomial::from_ints(&[1]));
    for k in 1..=n {
        let next = &powers[k - 1] * &one_minus_x;
        powers.push(next);
    }
    powers
}

/// Bernstein basis `C(n,k)·xᵏ(1−x)ⁿ⁻ᵏ`, `k = 0..=n`.
fn bernstein_basis(n: usize) -> Vec<Polynomial> {
    let powers = one_minus_x_powers(n);
    let row = binomial_row(n);
    (0..=n)
        .map(|k| {
            powers[n - k]
                .shift_degree(k)
                .scale(&Rational::from_integer(row[k].clone()))
        })
        .collect()
}

/// `h(x) = Σₖ S̄ₙ₋ₖ C(n,k) xᵏ(1−x)ⁿ⁻ᵏ`.
pub fn polynomial_from_tail_bernstein(tail: &TailSignature) -> Polynomial {
    let n = tail.n();
    bernstein_basis(n)
        .iter()
        .enumerate()
        .fold(Polynomial::zero(n), |acc, (k, b)| {
            &acc + &b.scale(tail.get(n - k))
        })
}

/// Runs `D_{j,k} = x·D_{j+1,k−1} + (1−x)·D_{j,k−1}` over polynomial cells,
/// in place on one row, and returns the head of the last column.
fn operator_table(mut row: Vec<Polynomial>) -> Polynomial {
    let x = Polynomial::x();
    let one_minus_x = Polynomial::from_ints(&[1, -1]);
    let len = row.len();
    for k in 1..len {
        for j in 0..len - k {
            row[j] = &(&x * &row[j + 1]) + &(&one_minus_x * &row[j]);
        }
    }
    row.swap_remove(0)
}

/// `h(x) = ((xΔᵢ + I)ⁿ S̄ₙ₋ᵢ)|ᵢ₌₀` as a difference table of polynomials.
pub fn polynomial_from_tail_table(tail: &TailSignature) -> Polynomial {
    let n = tail.n();
    let row = tail
        .values()
        .iter()
        .rev()
        .map(|v| Polynomial::constant(v.clone()))
        .collect();
    operator_table(row)
        .with_degree_bound(n)
        .expect("operator table of order n has degree <= n")
}

pub fn polynomial_from_tail(tail: &TailSignature) -> Polynomial {
    polynomial_from_tail_table(tail)
}

/// `h′(x) = Σ sₖ k C(n,k) xⁿ⁻ᵏ(1−x)ᵏ⁻¹`, degree bound `n−1`.
pub fn derivative_from_signature_closed(s: &SignatureVector) -> Polynomial {
    let n = s.n();
    let powers = one_minus_x_powers(n - 1);
    let row = binomial_row(n);
    (1..=n).fold(Polynomial::zero(n - 1), |acc, k| {
        let weight = s.get(k) * Rational::from_integer(&row[k] * BigInt::from(k));
        &acc + &powers[k - 1].shift_degree(n - k).scale(&weight)
    })
}

/// `h′(x) = n((xΔᵢ + I)ⁿ⁻¹ sₙ₋ᵢ)|ᵢ₌₀` as a difference table of polynomials.
pub fn derivative_from_signature_table(s: &SignatureVector) -> Polynomial {
    let n = s.n();
    let scale = Rational::from_integer(BigInt::from(n));
    let row = s
        .values()
        .iter()
        .rev()
        .map(|v| Polynomial::constant(v * &scale))
        .collect();
    operator_table(row)
        .with_degree_bound(n - 1)
        .expect("operator table of order n-1 has degree <= n-1")
}

pub fn derivative_from_signature(s: &SignatureVector) -> Polynomial {
    derivative_from_signature_table(s)
}

/// `h = Rⁿ(A(x−1))` with `A(x) = Σ C(n,k) S̄ₖ xᵏ`, undoing the reflected shift.
pub fn polynomial_from_tail_reflect(tail: &TailSignature) -> Polynomial {
    let n = tail.n();
    let row = binomial_row(n);
    let a = Polynomial::new(
        (0..=n)
            .map(|k| tail.get(k) * Rational::from_integer(row[k].clone()))
            .collect(),
    );
    a.compose(&Polynomial::from_ints(&[-1, 1]))
        .reflect(n)
        .expect("degree bound is n")
}

/// `h′ = Rⁿ⁻¹(B(x−1))` with `B(x) = Σ k C(n,k) sₖ xᵏ⁻¹`.
pub fn derivative_from_signature_reflect(s: &SignatureVector) -> Polynomial {
    let n = s.n();
    let row = binomial_row(n);
    let b = Polynomial::new(
        (1..=n)
            .map(|k| s.get(k) * Rational::from_integer(&row[k] * BigInt::from(k)))
            .collect(),
    );
    b.compose(&Polynomial::from_ints(&[-1, 1]))
        .reflect(n - 1)
        .expect("degree bound is n-1")
}

/// `h(x) = Σₖ sₖ I_x(n−k+1, k)` where the regularized incomplete beta
/// function is the Bernstein tail `Σ_{i=n−k+1}^{n} C(n,i) xⁱ(1−x)ⁿ⁻ⁱ`.
pub fn polynomial_from_signature(s: &SignatureVector) -> Polynomial {
    let n = s.n();
    let basis = bernstein_basis(n);
    let mut incomplete_beta = Polynomial::zero(n);
    let mut h = Polynomial::zero(n);
    for k in 1..=n {
        incomplete_beta = &incomplete_beta + &basis[n - k + 1];
        h = &h + &incomplete_beta.scale(s.get(k));
    }
    h
}

/// Whether `h` has full degree `n`, decided from the signature alone by
/// comparing the `C(n−1,k−1)`-weighted sums over odd and even `k`.
pub fn is_full_degree(s: &SignatureVector) -> bool {
    let n = s.n();
    let row = binomial_row(n - 1);
    let mut odd = Rational::zero();
    let mut even = Rational::zero();
    for k in 1..=n {
        let term = Rational::from_integer(row[k - 1].clone()) * s.get(k);
        if k % 2 == 1 {
            odd += term;
        } else {
            even += term;
        }
    }
    odd != even
}

/// `Σ C(n,k) sₖ xᵏ` read back into `sₖ`.
pub fn signature_from_binomial_gf(
    gf: &Polynomial,
    n: usize,
    role: Role,
) -> Result<SignatureVector> {
    let s = (1..=n)
        .map(|k| gf.coeff(k) / rational_binomial(n, k))
        .collect();
    SignatureVector::with_role(s, role)
}
