//! Conversions through the dual structure `φᴰ(x) = 1 − φ(1−x)`.
//!
//! Dual dominations carry [`Role::Dual`]; the functions here check roles so a
//! primal vector is never silently read as a dual one.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial_row, rational_binomial, Polynomial, Rational};
use crate::poly_route::reliability_polynomial;
use crate::signature::{DominationVector, Role, SignatureVector, TailSignature};

fn expect_role(found: Role, expected: Role) -> Result<()> {
    if found != expected {
        return Err(Error::RoleMismatch {
            expected: expected.name(),
            found: found.name(),
        });
    }
    Ok(())
}

fn rational(c: &BigInt) -> Rational {
    Rational::from_integer(c.clone())
}

/// `dᴰₖ = δₖ₀ − (−1)ᵏ Σ_{j≥k} C(j,k) dⱼ`.
///
/// The map is an involution, so the same formula takes a dual domination back
/// to the primal one. Probability-role vectors are rejected: duality is only
/// defined here for structures.
pub fn dual_domination(d: &DominationVector) -> Result<DominationVector> {
    let target = match d.role() {
        Role::Structure => Role::Dual,
        Role::Dual => Role::Structure,
        Role::Probability => {
            return Err(Error::RoleMismatch {
                expected: "structure or dual",
                found: Role::Probability.name(),
            })
        }
    };
    let n = d.n();
    let values = d.values();
    let out = (0..=n)
        .map(|k| {
            let inner = (k..=n).fold(Rational::zero(), |acc, j| {
                acc + rational_binomial(j, k) * &values[j]
            });
            let signed = if k % 2 == 0 { -inner } else { inner };
            if k == 0 {
                signed + Rational::one()
            } else {
                signed
            }
        })
        .collect();
    DominationVector::with_role(out, target)
}

/// Primal tail signature `S̄ₖ = 1 − Σ_{j≤k} C(k,j)/C(n,j)·dᴰⱼ`.
pub fn tail_from_dual_domination(dual: &DominationVector) -> Result<TailSignature> {
    expect_role(dual.role(), Role::Dual)?;
    let n = dual.n();
    let top = binomial_row(n);
    let values = dual.values();
    let tail = (0..=n)
        .map(|k| {
            let row = binomial_row(k);
            let inner = (0..=k).fold(Rational::zero(), |acc, j| {
                acc + Rational::new(row[j].clone(), top[j].clone()) * &values[j]
            });
            Rational::one() - inner
        })
        .collect();
    TailSignature::new(tail)
}

/// Primal signature `sₖ = Σ_{j=1}^{k} C(k−1,j−1)/C(n,j)·dᴰⱼ`.
pub fn signature_from_dual_domination(dual: &DominationVector) -> Result<SignatureVector> {
    expect_role(dual.role(), Role::Dual)?;
    let n = dual.n();
    let top = binomial_row(n);
    let values = dual.values();
    let s = (1..=n)
        .map(|k| {
            let row = binomial_row(k - 1);
            (1..=k).fold(Rational::zero(), |acc, j| {
                acc + Rational::new(row[j - 1].clone(), top[j].clone()) * &values[j]
            })
        })
        .collect();
    SignatureVector::new(s)
}

/// `dᴰₖ = δₖ₀ − C(n,k)·(Δᵏ S̄ᵢ)|ᵢ₌₀`, via a forward difference table on
/// `S̄₀..S̄ₙ`.
pub fn dual_domination_from_tail(tail: &TailSignature) -> Result<DominationVector> {
    expect_role(tail.role(), Role::Structure)?;
    let n = tail.n();
    let top = binomial_row(n);
    let mut row = tail.values().to_vec();
    let mut out = Vec::with_capacity(n + 1);
    out.push(Rational::one() - &row[0]);
    for k in 1..=n {
        for j in 0..=n - k {
            row[j] = &row[j + 1] - &row[j];
        }
        out.push(-(rational(&top[k]) * &row[0]));
    }
    DominationVector::dual(out)
}

/// `dᴰₖ = C(n,k)·(Δᵏ⁻¹ sᵢ)|ᵢ₌₁`.
pub fn dual_domination_from_signature(s: &SignatureVector) -> Result<DominationVector> {
    expect_role(s.role(), Role::Structure)?;
    let n = s.n();
    let top = binomial_row(n);
    let mut row = s.values().to_vec();
    let mut out = Vec::with_capacity(n + 1);
    out.push(Rational::zero());
    out.push(rational(&top[1]) * &row[0]);
    for k in 2..=n {
        for j in 0..=n - k {
            row[j] = &row[j + 1] - &row[j];
        }
        out.push(rational(&top[k]) * &row[0]);
    }
    DominationVector::dual(out)
}

/// `hᴰ(x) = 1 − h(1−x)`.
pub fn dual_polynomial(h: &Polynomial) -> Polynomial {
    let n = h.degree_bound();
    let reflected_arg = h.compose(&Polynomial::from_ints(&[1, -1]));
    (&Polynomial::from_ints(&[1]) - &reflected_arg)
        .with_degree_bound(n)
        .expect("degree is preserved")
}

/// `Σ φₖ xᵏ = Rⁿ((Rⁿh)(x+1))`, the path-set counts by size.
pub fn pathcount_generating_function(h: &Polynomial, n: usize) -> Result<Polynomial> {
    let h = reliability_polynomial(h, n)?;
    h.reflect(n)?.shift_plus_one().reflect(n)
}

/// The same counts as `(x+1)ⁿ − (Rⁿhᴰ)(x+1)`.
pub fn pathcount_generating_function_via_dual(h: &Polynomial, n: usize) -> Result<Polynomial> {
    let h = reliability_polynomial(h, n)?;
    let hd = dual_polynomial(&h);
    Ok(&Polynomial::one_plus_x_pow(n) - &hd.reflect(n)?.shift_plus_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};
    use crate::signature::{domination_from_signature, domination_from_tail};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn bridge_d() -> DominationVector {
        DominationVector::new(ints(&[0, 0, 2, 2, -5, 2])).unwrap()
    }

    fn bridge_s() -> SignatureVector {
        SignatureVector::new(vec![int(0), ratio(1, 5), ratio(3, 5), ratio(1, 5), int(0)]).unwrap()
    }

    fn bridge_tail() -> TailSignature {
        TailSignature::new(vec![
            int(1),
            int(1),
            ratio(4, 5),
            ratio(1, 5),
            int(0),
            int(0),
        ])
        .unwrap()
    }

    #[test]
    fn dual_domination_examples() {
        let series = DominationVector::new(ints(&[0, 0, 1])).unwrap();
        let dual = dual_domination(&series).unwrap();
        assert_eq!(dual.values(), ints(&[0, 2, -1]).as_slice());
        assert_eq!(dual.role(), Role::Dual);
        assert_eq!(dual_domination(&dual).unwrap(), series);

        let bridge_dual = dual_domination(&bridge_d()).unwrap();
        assert_eq!(bridge_dual.values(), bridge_d().values());
    }

    #[test]
    fn primal_from_dual() {
        let bridge_dual = DominationVector::dual(ints(&[0, 0, 2, 2, -5, 2])).unwrap();
        assert_eq!(
            tail_from_dual_domination(&bridge_dual).unwrap(),
            bridge_tail()
        );
        let s = signature_from_dual_domination(&bridge_dual).unwrap();
        assert_eq!(s, bridge_s());
        // s₂ = C(1,0)/C(5,1)·d₁ᴰ + C(1,1)/C(5,2)·d₂ᴰ = 0 + 2/10
        assert_eq!(s.get(2), &ratio(1, 5));

        let parallel_as_dual = DominationVector::dual(ints(&[0, 2, -1])).unwrap();
        assert_eq!(
            tail_from_dual_domination(&parallel_as_dual)
                .unwrap()
                .values(),
            ints(&[1, 0, 0]).as_slice()
        );
        assert_eq!(
            signature_from_dual_domination(&parallel_as_dual)
                .unwrap()
                .values(),
            ints(&[1, 0]).as_slice()
        );
    }

    #[test]
    fn roles_are_enforced() {
        assert!(matches!(
            tail_from_dual_domination(&bridge_d()),
            Err(Error::RoleMismatch { .. })
        ));
        let p = DominationVector::with_role(ints(&[0, 0, 1]), Role::Probability).unwrap();
        assert!(dual_domination(&p).is_err());
    }

    #[test]
    fn dual_from_tail_and_signature() {
        let series_tail = TailSignature::new(ints(&[1, 0, 0])).unwrap();
        let dual = dual_domination_from_tail(&series_tail).unwrap();
        assert_eq!(dual.values(), ints(&[0, 2, -1]).as_slice());
        assert_eq!(
            dual_domination_from_tail(&bridge_tail()).unwrap().values(),
            bridge_d().values()
        );

        let series_s = SignatureVector::new(ints(&[1, 0])).unwrap();
        assert_eq!(
            dual_domination_from_signature(&series_s).unwrap().values(),
            ints(&[0, 2, -1]).as_slice()
        );
        assert_eq!(
            dual_domination_from_signature(&bridge_s())
                .unwrap()
                .values(),
            bridge_d().values()
        );
        let parallel_s = SignatureVector::new(ints(&[0, 1])).unwrap();
        assert_eq!(
            dual_domination_from_signature(&parallel_s)
                .unwrap()
                .values(),
            ints(&[0, 0, 1]).as_slice()
        );
    }

    #[test]
    fn dual_routes_agree_on_a_skewed_vector() {
        // 2-out-of-3 dual is 2-out-of-3; use a non-self-dual system instead:
        // φ = x₁(x₂ ∐ x₃), s = (1/3, 2/3, 0)
        let s = SignatureVector::new(vec![ratio(1, 3), ratio(2, 3), int(0)]).unwrap();
        let d = domination_from_signature(&s);
        let via_d = dual_domination(&d).unwrap();
        assert_eq!(dual_domination_from_signature(&s).unwrap(), via_d);
        let tail = crate::signature::tail_from_signature(&s);
        assert_eq!(dual_domination_from_tail(&tail).unwrap(), via_d);
        assert_eq!(domination_from_tail(&tail), d);
        assert_eq!(tail_from_dual_domination(&via_d).unwrap(), tail);
        assert_eq!(signature_from_dual_domination(&via_d).unwrap(), s);
    }

    #[test]
    fn pathcount_examples() {
        let h = Polynomial::from_ints(&[0, 0, 2, 2, -5, 2]);
        let expected = Polynomial::from_ints(&[0, 0, 2, 8, 5, 1]);
        assert_eq!(pathcount_generating_function(&h, 5).unwrap(), expected);
        assert_eq!(
            pathcount_generating_function_via_dual(&h, 5).unwrap(),
            expected
        );
        let series = Polynomial::monomial(3, int(1));
        assert_eq!(pathcount_generating_function(&series, 3).unwrap(), series);
        let parallel = Polynomial::from_ints(&[0, 2, -1]);
        assert_eq!(
            pathcount_generating_function(&parallel, 2).unwrap(),
            Polynomial::from_ints(&[0, 2, 1])
        );
        assert_eq!(
            dual_polynomial(&parallel),
            Polynomial::from_ints(&[0, 0, 1])
        );
    }
}
