//! Dependent component lifetimes: the relative quality function `q`, the
//! q-structure function `ψ`, its multilinear extension `g`, and the
//! probability signature `p`.
//!
//! Failure orders list components in the order they fail, so position 1 fails
//! first and the best `k` components are the last `k` entries.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{rational_binomial, Polynomial, Rational};
use crate::poly_route::{binomial_signature_gf, signature_from_binomial_gf};
use crate::signature::{
    signature_from_tail, tail_from_phi_with_role, Role, SignatureVector, TailSignature,
};
use crate::structure::{
    diagonal_section, MultilinearForm, PhiVector, SetFunction, StructureFunction, SubsetMask,
};

/// `q(A)`: probability that the best `|A|` components are exactly `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeQuality {
    q: SetFunction,
}

impl RelativeQuality {
    /// Validates nonnegativity and `Σ_{|A|=k} q(A) = 1` for every level.
    pub fn new(q: SetFunction) -> Result<Self> {
        if let Some((mask, _)) = q.iter().find(|(_, v)| v.is_negative()) {
            return Err(Error::NegativeQuality(mask));
        }
        for (level, total) in q.level_sums().into_iter().enumerate() {
            if !total.is_one() {
                return Err(Error::LevelSum {
                    level,
                    sum: total.to_string(),
                });
            }
        }
        Ok(RelativeQuality { q })
    }

    /// The exchangeable case `q(A) = 1/C(n,|A|)`.
    pub fn exchangeable(n: usize) -> Result<Self> {
        let q = SetFunction::from_fn(n, |a| rational_binomial(n, a.len()).recip())?;
        Ok(RelativeQuality { q })
    }

    pub fn n(&self) -> usize {
        self.q.n()
    }

    pub fn get(&self, mask: SubsetMask) -> &Rational {
        self.q.get(mask)
    }

    pub fn as_set_function(&self) -> &SetFunction {
        &self.q
    }
}

/// One failure order, components listed first-to-fail first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailureOrder {
    pub perm: Vec<usize>,
    pub prob: Rational,
}

/// Probability distribution over failure orders of `n` components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderDistribution {
    /// Every one of the `n!` orders equally likely.
    Uniform {
        n: usize,
    },
    Explicit {
        n: usize,
        orders: Vec<FailureOrder>,
    },
}

impl OrderDistribution {
    pub fn uniform(n: usize) -> Self {
        OrderDistribution::Uniform { n }
    }

    /// Validates that every entry is a permutation of `1..=n`, permutations
    /// are distinct, and probabilities are nonnegative with sum one.
    pub fn explicit(n: usize, orders: Vec<FailureOrder>) -> Result<Self> {
        if n == 0 {
            return Err(Error::OrderDistribution("n must be at least 1".into()));
        }
        let mut seen = BTreeSet::new();
        let mut total = Rational::zero();
        for (i, order) in orders.iter().enumerate() {
            let mut sorted = order.perm.clone();
            sorted.sort_unstable();
            if sorted != (1..=n).collect::<Vec<_>>() {
                return Err(Error::OrderDistribution(format!(
                    "entry {} is not a permutation of 1..={n}",
                    i + 1
                )));
            }
            if !seen.insert(order.perm.clone()) {
                return Err(Error::OrderDistribution(format!(
                    "permutation {:?} listed twice",
                    order.perm
                )));
            }
            if order.prob.is_negative() {
                return Err(Error::OrderDistribution(format!(
                    "entry {} has negative probability",
                    i + 1
                )));
            }
            total += &order.prob;
        }
        if !total.is_one() {
            return Err(Error::OrderDistribution(format!(
                "probabilities sum to {total}, expected 1"
            )));
        }
        Ok(OrderDistribution::Explicit { n, orders })
    }

    pub fn n(&self) -> usize {
        match self {
            OrderDistribution::Uniform { n } | OrderDistribution::Explicit { n, .. } => *n,
        }
    }
}

/// `q(A)` = total probability of the orders whose last `|A|` entries are `A`.
pub fn quality_from_order_distribution(dist: &OrderDistribution) -> Result<RelativeQuality> {
    match dist {
        OrderDistribution::Uniform { n } => RelativeQuality::exchangeable(*n),
        OrderDistribution::Explicit { n, orders } => {
            let mut q = SetFunction::zero(*n)?;
            for order in orders {
                let mut survivors = SubsetMask::EMPTY;
                let level = q.get(survivors) + &order.prob;
                q.set(survivors, level);
                for &c in order.perm.iter().rev() {
                    survivors = survivors.with(c);
                    let next = q.get(survivors) + &order.prob;
                    q.set(survivors, next);
                }
            }
            RelativeQuality::new(q)
        }
    }
}

/// `q̃(A) = C(n,|A|)·q(A)`.
pub fn normalized_quality(q: &RelativeQuality) -> SetFunction {
    let n = q.n();
    SetFunction::from_fn(n, |a| rational_binomial(n, a.len()) * q.get(a))
        .expect("size already validated")
}

/// `ψ(A) = q̃(A)·φ(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QStructure {
    psi: SetFunction,
}

impl QStructure {
    pub fn n(&self) -> usize {
        self.psi.n()
    }

    pub fn get(&self, mask: SubsetMask) -> &Rational {
        self.psi.get(mask)
    }

    pub fn as_set_function(&self) -> &SetFunction {
        &self.psi
    }

    /// `ψ₀..ψₙ`, the level sums of `ψ`.
    pub fn level_sums(&self) -> Vec<Rational> {
        self.psi.level_sums()
    }
}

pub fn q_structure(phi: &StructureFunction, q: &RelativeQuality) -> Result<QStructure> {
    if phi.n() != q.n() {
        return Err(Error::DimensionMismatch {
            expected: phi.n(),
            found: q.n(),
        });
    }
    phi.validate_semicoherent()?;
    let n = phi.n();
    let psi = SetFunction::from_fn(n, |a| {
        if phi.get(a) {
            rational_binomial(n, a.len()) * q.get(a)
        } else {
            Rational::zero()
        }
    })?;
    Ok(QStructure { psi })
}

/// Möbius coefficients `c(A)` of `ψ`.
pub fn g_multilinear(psi: &QStructure) -> MultilinearForm {
    psi.psi.mobius()
}

/// `g(x)`, the diagonal of the multilinear extension of `ψ`.
pub fn g_polynomial(psi: &QStructure) -> Polynomial {
    diagonal_section(&g_multilinear(psi))
}

/// `P̄ₖ = ψₙ₋ₖ / C(n,k)`.
pub fn probability_tail(psi: &QStructure) -> TailSignature {
    let phi = PhiVector::new(psi.level_sums()).expect("psi(empty set) = 0");
    tail_from_phi_with_role(&phi, Role::Probability)
        .expect("psi_n = q(C) = 1 and psi_0 = 0 give a valid tail")
}

/// `pₖ = P̄ₖ₋₁ − P̄ₖ` computed from the level sums of `ψ`.
pub fn probability_signature(psi: &QStructure) -> SignatureVector {
    signature_from_tail(&probability_tail(psi))
}

/// `pₖ = Σ_{|A|=n−k+1} q(A)φ(A) − Σ_{|A|=n−k} q(A)φ(A)`, straight from `q`.
pub fn probability_signature_from_quality(
    phi: &StructureFunction,
    q: &RelativeQuality,
) -> Result<SignatureVector> {
    if phi.n() != q.n() {
        return Err(Error::DimensionMismatch {
            expected: phi.n(),
            found: q.n(),
        });
    }
    let n = phi.n();
    let mut weighted = vec![Rational::zero(); n + 1];
    for a in phi.masks().filter(|&a| phi.get(a)) {
        weighted[a.len()] += q.get(a);
    }
    let p = (1..=n)
        .map(|k| &weighted[n - k + 1] - &weighted[n - k])
        .collect();
    SignatureVector::probability(p)
}

/// `Σ C(n,k) pₖ xᵏ = ∫₀ˣ (Rⁿ⁻¹g′)(t+1) dt`.
pub fn probability_signature_gf(psi: &QStructure) -> Result<Polynomial> {
    binomial_signature_gf(&g_polynomial(psi), psi.n())
}

/// `p` extracted from [`probability_signature_gf`].
pub fn probability_signature_via_polynomial(psi: &QStructure) -> Result<SignatureVector> {
    let gf = probability_signature_gf(psi)?;
    signature_from_binomial_gf(&gf, psi.n(), Role::Probability)
}

/// Helper for building explicit distributions in tests and documents.
pub fn order(perm: &[usize], prob: Rational) -> FailureOrder {
    FailureOrder {
        perm: perm.to_vec(),
        prob,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};
    use crate::signature::SignatureVector;
    use crate::structure::{mobius_transform, structure_from_pathsets, PathSetSpec};
    use num_bigint::BigInt;

    fn factorial(n: usize) -> BigInt {
        (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
    }

    fn m(c: &[usize]) -> SubsetMask {
        SubsetMask::from_components(c)
    }

    fn bridge() -> StructureFunction {
        let spec =
            PathSetSpec::new(5, &[vec![1, 4], vec![2, 5], vec![1, 3, 5], vec![2, 3, 4]]).unwrap();
        structure_from_pathsets(&spec)
    }

    /// φ = x₁(x₂ ∐ x₃)
    fn example_system() -> StructureFunction {
        structure_from_pathsets(&PathSetSpec::new(3, &[vec![1, 2], vec![1, 3]]).unwrap())
    }

    /// Relative quality on three components given the three pair values,
    /// with singletons set to 1/3.
    fn quality3(q12: Rational, q13: Rational, q23: Rational) -> RelativeQuality {
        let mut q = SetFunction::zero(3).unwrap();
        q.set(SubsetMask::EMPTY, int(1));
        q.set(m(&[1, 2, 3]), int(1));
        q.set(m(&[1, 2]), q12);
        q.set(m(&[1, 3]), q13);
        q.set(m(&[2, 3]), q23);
        for c in 1..=3 {
            q.set(m(&[c]), ratio(1, 3));
        }
        RelativeQuality::new(q).unwrap()
    }

    #[test]
    fn uniform_distribution_gives_reciprocal_binomials() {
        let n = 4;
        let mut orders = Vec::new();
        let mut perm: Vec<usize> = (1..=n).collect();
        let prob = Rational::new(BigInt::one(), factorial(n));
        permute(&mut perm, 0, &mut |p| orders.push(order(p, prob.clone())));
        let dist = OrderDistribution::explicit(n, orders).unwrap();
        let q = quality_from_order_distribution(&dist).unwrap();
        for (a, v) in q.as_set_function().iter() {
            assert_eq!(v, &rational_binomial(n, a.len()).recip());
        }
        assert_eq!(
            q,
            quality_from_order_distribution(&OrderDistribution::uniform(n)).unwrap()
        );
    }

    fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permute(v, k + 1, f);
            v.swap(k, i);
        }
    }

    #[test]
    fn point_mass_and_mixture_qualities() {
        let point = OrderDistribution::explicit(3, vec![order(&[1, 2, 3], int(1))]).unwrap();
        let q = quality_from_order_distribution(&point).unwrap();
        assert_eq!(q.get(m(&[3])), &int(1));
        assert_eq!(q.get(m(&[2, 3])), &int(1));
        assert_eq!(q.get(m(&[1])), &int(0));
        assert_eq!(q.get(m(&[1, 3])), &int(0));
        assert_eq!(normalized_quality(&q).get(m(&[2, 3])), &int(3));
        assert_eq!(normalized_quality(&q).get(SubsetMask::EMPTY), &int(1));

        let mix = OrderDistribution::explicit(
            3,
            vec![
                order(&[1, 2, 3], ratio(1, 2)),
                order(&[3, 2, 1], ratio(1, 2)),
            ],
        )
        .unwrap();
        let q = quality_from_order_distribution(&mix).unwrap();
        assert_eq!(q.get(m(&[1, 2])), &ratio(1, 2));
        assert_eq!(q.get(m(&[2, 3])), &ratio(1, 2));
        assert_eq!(q.get(m(&[1, 3])), &int(0));
    }

    #[test]
    fn order_distribution_validation() {
        assert!(OrderDistribution::explicit(3, vec![order(&[1, 2], int(1))]).is_err());
        assert!(OrderDistribution::explicit(3, vec![order(&[1, 2, 2], int(1))]).is_err());
        assert!(OrderDistribution::explicit(2, vec![order(&[1, 2], ratio(1, 2))]).is_err());
        assert!(OrderDistribution::explicit(
            2,
            vec![order(&[1, 2], ratio(1, 2)), order(&[1, 2], ratio(1, 2))]
        )
        .is_err());
        assert!(OrderDistribution::explicit(
            2,
            vec![order(&[1, 2], ratio(3, 2)), order(&[2, 1], ratio(-1, 2))]
        )
        .is_err());
    }

    #[test]
    fn quality_validation() {
        let mut q = SetFunction::zero(2).unwrap();
        q.set(SubsetMask::EMPTY, int(1));
        q.set(m(&[1, 2]), int(1));
        q.set(m(&[1]), int(1));
        q.set(m(&[2]), int(1));
        assert!(matches!(
            RelativeQuality::new(q.clone()),
            Err(Error::LevelSum { level: 1, .. })
        ));
        q.set(m(&[1]), int(2));
        q.set(m(&[2]), int(-1));
        assert!(matches!(
            RelativeQuality::new(q),
            Err(Error::NegativeQuality(_))
        ));
    }

    #[test]
    fn exchangeable_quality_normalizes_to_one() {
        let q = RelativeQuality::exchangeable(3).unwrap();
        assert!(normalized_quality(&q).values().iter().all(|v| v.is_one()));
    }

    #[test]
    fn example_q_structure() {
        let (q12, q13, q23) = (ratio(1, 2), ratio(1, 6), ratio(1, 3));
        let q = quality3(q12.clone(), q13.clone(), q23.clone());
        let psi = q_structure(&example_system(), &q).unwrap();
        // ψ = x₁x₂x₃ + 3q({1,2})x₁x₂(1−x₃) + 3q({1,3})x₁(1−x₂)x₃ on the cube
        for a in (0u32..8).map(SubsetMask) {
            let expected = if a == m(&[1, 2, 3]) {
                int(1)
            } else if a == m(&[1, 2]) {
                int(3) * &q12
            } else if a == m(&[1, 3]) {
                int(3) * &q13
            } else {
                int(0)
            };
            assert_eq!(psi.get(a), &expected, "{a}");
        }
        assert_eq!(psi.get(SubsetMask::EMPTY), &int(0));

        let p = probability_signature(&psi);
        assert_eq!(p.role(), Role::Probability);
        assert_eq!(p.values(), &[q23.clone(), &q12 + &q13, int(0)]);
        assert_eq!(
            probability_signature_from_quality(&example_system(), &q).unwrap(),
            p
        );
        assert_eq!(probability_signature_via_polynomial(&psi).unwrap(), p);
    }

    #[test]
    fn g_multilinear_matches_double_sum() {
        let q = quality3(ratio(1, 3), ratio(1, 3), ratio(1, 3));
        let psi = q_structure(&example_system(), &q).unwrap();
        let c = g_multilinear(&psi);
        for a in 0u32..8 {
            let mut expected = int(0);
            for b in 0u32..8 {
                if b & a == b {
                    let sign = if (a.count_ones() - b.count_ones()) % 2 == 0 {
                        1
                    } else {
                        -1
                    };
                    expected += int(sign) * psi.get(SubsetMask(b));
                }
            }
            assert_eq!(c.coeff(SubsetMask(a)), expected);
        }
        let zero = QStructure {
            psi: SetFunction::zero(3).unwrap(),
        };
        assert_eq!(g_multilinear(&zero).nonzero_count(), 0);
    }

    #[test]
    fn exchangeable_reduces_to_structure() {
        let phi = bridge();
        let q = RelativeQuality::exchangeable(5).unwrap();
        let psi = q_structure(&phi, &q).unwrap();
        assert_eq!(psi.as_set_function(), &SetFunction::from_structure(&phi));
        assert_eq!(g_multilinear(&psi), mobius_transform(&phi));
        let p = probability_signature(&psi);
        let s = SignatureVector::new(vec![int(0), ratio(1, 5), ratio(3, 5), ratio(1, 5), int(0)])
            .unwrap();
        assert_eq!(p.values(), s.values());
        assert_eq!(
            probability_signature_gf(&psi).unwrap(),
            Polynomial::from_ints(&[0, 0, 2, 6, 1, 0])
        );
    }

    #[test]
    fn example_with_uniform_pairs_via_polynomial() {
        let q = quality3(ratio(1, 3), ratio(1, 3), ratio(1, 3));
        let psi = q_structure(&example_system(), &q).unwrap();
        let p = probability_signature_via_polynomial(&psi).unwrap();
        assert_eq!(p.values(), &[ratio(1, 3), ratio(2, 3), int(0)]);
    }

    #[test]
    fn series_point_mass() {
        let series = StructureFunction::from_fn(3, |a| a == SubsetMask::full(3)).unwrap();
        let dist = OrderDistribution::explicit(3, vec![order(&[1, 2, 3], int(1))]).unwrap();
        let q = quality_from_order_distribution(&dist).unwrap();
        let psi = q_structure(&series, &q).unwrap();
        assert_eq!(
            probability_signature(&psi).values(),
            &[int(1), int(0), int(0)]
        );
        assert_eq!(
            probability_signature_gf(&psi).unwrap(),
            Polynomial::from_ints(&[0, 3, 0, 0])
        );
    }

    #[test]
    fn dimension_mismatch() {
        let q = RelativeQuality::exchangeable(4).unwrap();
        assert!(matches!(
            q_structure(&bridge(), &q),
            Err(Error::DimensionMismatch {
                expected: 5,
                found: 4
            })
        ));
    }
}
