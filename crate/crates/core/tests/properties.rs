use num_traits::{Signed, Zero};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use syssig::convert::{Representation, SystemVector};
use syssig::dependent::{
    order, probability_signature, probability_signature_from_quality,
    probability_signature_via_polynomial, q_structure, quality_from_order_distribution,
    OrderDistribution,
};
use syssig::dual::{dual_domination, pathcount_generating_function};
use syssig::exact::{binomial, int, ratio, Polynomial, Rational};
use syssig::oracle::{boland_signature, enumerate_semicoherent, permutation_signature};
use syssig::poly_route::{
    derivative_from_signature, is_full_degree, polynomial_from_signature,
    reflected_derivative_shift, signature_from_polynomial,
};
use syssig::signature::{
    check_generating_identity, domination_from_signature, signature_from_domination,
    tail_from_signature, DominationVector, SignatureVector,
};
use syssig::structure::{
    diagonal_section, mobius_transform, structure_from_pathsets, zeta_transform, PathSetSpec,
    SetFunction, StructureFunction, SubsetMask,
};
use syssig::verify::{verify_system, verify_vector};

fn all_structures(max_n: usize) -> Vec<StructureFunction> {
    (1..=max_n)
        .flat_map(|n| enumerate_semicoherent(n).unwrap())
        .collect()
}

fn random_structure(rng: &mut ChaCha8Rng, n: usize) -> StructureFunction {
    let count = rng.random_range(1..=4);
    let sets: Vec<Vec<usize>> = (0..count)
        .map(|_| {
            let mut comps: Vec<usize> = (1..=n).collect();
            comps.shuffle(rng);
            comps.truncate(rng.random_range(1..=n));
            comps
        })
        .collect();
    structure_from_pathsets(&PathSetSpec::new(n, &sets).unwrap())
}

fn random_signature(rng: &mut ChaCha8Rng, n: usize) -> SignatureVector {
    loop {
        let w: Vec<Rational> = (0..n)
            .map(|_| ratio(rng.random_range(0..=9), rng.random_range(1..=9)))
            .collect();
        let total: Rational = w.iter().sum();
        if !total.is_zero() {
            return SignatureVector::new(w.into_iter().map(|x| x / &total).collect()).unwrap();
        }
    }
}

fn domination_of(phi: &StructureFunction) -> DominationVector {
    let h = diagonal_section(&mobius_transform(phi))
        .with_degree_bound(phi.n())
        .unwrap();
    DominationVector::new(h.into_coeffs()).unwrap()
}

#[test]
fn every_route_agrees_on_every_small_structure() {
    for phi in all_structures(4) {
        let report = verify_system(&phi, 12).unwrap();
        let failures: Vec<_> = report.failures().collect();
        assert!(
            failures.is_empty(),
            "{}: {failures:?}",
            phi.to_table_string()
        );
    }
}

#[test]
fn every_route_agrees_on_a_sample_of_five_component_structures() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let all: Vec<StructureFunction> = enumerate_semicoherent(5).unwrap().collect();
    for phi in all.choose_multiple(&mut rng, 200) {
        let report = verify_system(phi, 12).unwrap();
        let failures: Vec<_> = report.failures().collect();
        assert!(
            failures.is_empty(),
            "{}: {failures:?}",
            phi.to_table_string()
        );
    }
}

#[test]
fn signature_via_domination_matches_oracle_on_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(56);
    for n in [5, 6] {
        for _ in 0..100 {
            let phi = random_structure(&mut rng, n);
            let d = domination_of(&phi);
            assert!(d.values().iter().all(|v| v.is_integer()));
            assert_eq!(
                signature_from_domination(&d),
                boland_signature(&phi).unwrap()
            );
        }
    }
}

#[test]
fn structure_signatures_give_integer_dominations() {
    for phi in all_structures(4) {
        let d = domination_from_signature(&boland_signature(&phi).unwrap());
        assert!(
            d.values().iter().all(|v| v.is_integer()),
            "{}",
            phi.to_table_string()
        );
    }
}

#[test]
fn generating_identity_on_random_signatures() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..200 {
        let n = rng.random_range(1..=20);
        let s = random_signature(&mut rng, n);
        assert!(check_generating_identity(&s, &tail_from_signature(&s)));
    }
}

#[test]
fn polynomial_reconstruction_inverts_extraction() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..100 {
        let n = rng.random_range(1..=32);
        let s = random_signature(&mut rng, n);
        let h = polynomial_from_signature(&s);
        assert_eq!(signature_from_polynomial(&h, n).unwrap(), s);
        assert_eq!(h.derivative(), derivative_from_signature(&s));
        assert_eq!(is_full_degree(&s), !h.coeff(n).is_zero());
    }
}

#[test]
fn reflected_derivative_coefficients() {
    for phi in all_structures(4) {
        let n = phi.n();
        let s = boland_signature(&phi).unwrap();
        let h = diagonal_section(&mobius_transform(&phi));
        let a = reflected_derivative_shift(&h, n).unwrap();
        for k in 1..=n {
            let expected = s.get(k) * Rational::from_integer(binomial(n, k) * k);
            assert_eq!(a.coeff(k - 1), expected);
        }
    }
}

#[test]
fn dual_domination_is_an_involution() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..100 {
        let n = rng.random_range(1..=15);
        let mut d = vec![Rational::zero()];
        d.extend((1..n).map(|_| ratio(rng.random_range(-9..=9), rng.random_range(1..=4))));
        let partial: Rational = d.iter().sum();
        d.push(int(1) - partial);
        let d = DominationVector::new(d).unwrap();
        let twice = dual_domination(&dual_domination(&d).unwrap()).unwrap();
        assert_eq!(twice, d);
    }
}

#[test]
fn path_counts_are_bounded_integers() {
    for phi in all_structures(4) {
        let n = phi.n();
        let h = diagonal_section(&mobius_transform(&phi));
        let counts = pathcount_generating_function(&h, n).unwrap();
        for k in 0..=n {
            let c = counts.coeff(k);
            assert!(c.is_integer() && !c.is_negative());
            assert!(c <= Rational::from_integer(binomial(n, k)));
        }
    }
}

#[test]
fn uniform_permutation_oracle_matches_boland() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for n in 1..=6 {
        for _ in 0..10 {
            let phi = random_structure(&mut rng, n);
            assert_eq!(
                permutation_signature(&phi, &OrderDistribution::uniform(n))
                    .unwrap()
                    .values(),
                boland_signature(&phi).unwrap().values()
            );
        }
    }
}

fn random_distribution(rng: &mut ChaCha8Rng, n: usize) -> OrderDistribution {
    let mut perms: Vec<Vec<usize>> = Vec::new();
    for _ in 0..rng.random_range(1..=8) {
        let mut perm: Vec<usize> = (1..=n).collect();
        perm.shuffle(rng);
        if !perms.contains(&perm) {
            perms.push(perm);
        }
    }
    let weights: Vec<i64> = perms.iter().map(|_| rng.random_range(1..=5)).collect();
    let total: i64 = weights.iter().sum();
    let orders = perms
        .iter()
        .zip(&weights)
        .map(|(p, &w)| order(p, ratio(w, total)))
        .collect();
    OrderDistribution::explicit(n, orders).unwrap()
}

#[test]
fn dependent_routes_agree_with_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    let mut cases: Vec<(StructureFunction, OrderDistribution)> = Vec::new();
    for phi in all_structures(3) {
        for _ in 0..3 {
            let dist = random_distribution(&mut rng, phi.n());
            cases.push((phi.clone(), dist));
        }
    }
    for _ in 0..100 {
        let n = rng.random_range(4..=5);
        let phi = random_structure(&mut rng, n);
        let dist = random_distribution(&mut rng, n);
        cases.push((phi, dist));
    }
    for (phi, dist) in cases {
        let n = phi.n();
        let q = quality_from_order_distribution(&dist).unwrap();
        let psi = q_structure(&phi, &q).unwrap();
        let p = probability_signature(&psi);
        assert_eq!(p, permutation_signature(&phi, &dist).unwrap());
        assert_eq!(p, probability_signature_from_quality(&phi, &q).unwrap());
        assert_eq!(p, probability_signature_via_polynomial(&psi).unwrap());
        assert!(p.values().iter().all(|v| !v.is_negative()));
        assert_eq!(p.values().iter().sum::<Rational>(), int(1));

        // Σ_{|A|=k} ψ(A)/C(n,|A|) = Σ_{|A|=k} q(A)φ(A)
        for k in 0..=n {
            let scale = Rational::from_integer(binomial(n, k));
            let mut lhs = Rational::zero();
            let mut rhs = Rational::zero();
            for a in phi.masks().filter(|a| a.len() == k) {
                lhs += psi.get(a) / &scale;
                if phi.get(a) {
                    rhs += q.get(a);
                }
            }
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn transforms_invert_on_random_set_functions() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for n in [1, 4, 7, 10] {
        let mut f = SetFunction::zero(n).unwrap();
        for mask in 0..1u32 << n {
            f.set(
                SubsetMask(mask),
                ratio(rng.random_range(-5..=5), rng.random_range(1..=3)),
            );
        }
        let back = zeta_transform(&f.mobius()).function;
        assert_eq!(back, f);
    }
}

#[test]
fn structure_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let n = rng.random_range(1..=8);
        let phi = random_structure(&mut rng, n);
        assert!(phi.validate_semicoherent().is_ok());
        let h = diagonal_section(&mobius_transform(&phi));
        assert_eq!(h.eval(&int(0)), int(0));
        assert_eq!(h.eval(&int(1)), int(1));
        let counts = phi.level_counts();
        for k in 1..=n {
            let before = Rational::new(counts[k - 1].into(), binomial(n, k - 1));
            let after = Rational::new(counts[k].into(), binomial(n, k));
            assert!(before <= after);
        }
    }
    let minimal = PathSetSpec::new(3, &[vec![1, 2], vec![1, 3]]).unwrap();
    let padded = PathSetSpec::new(3, &[vec![1, 2], vec![1, 3], vec![1, 2, 3]]).unwrap();
    assert_eq!(
        structure_from_pathsets(&minimal),
        structure_from_pathsets(&padded)
    );
    assert!(structure_from_pathsets(&minimal).get(SubsetMask::from_components(&[1, 2])));
}

#[test]
fn vector_verification_on_random_signatures() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let n = rng.random_range(1..=12);
        let s = random_signature(&mut rng, n);
        let value =
            SystemVector::from_values(Representation::Signature, n, s.values().to_vec()).unwrap();
        let report = verify_vector(&value);
        assert!(report.passed, "{:?}", report.failures().collect::<Vec<_>>());
    }
    let series = Polynomial::monomial(4, int(1));
    let value =
        SystemVector::from_values(Representation::Polynomial, 4, series.into_coeffs()).unwrap();
    assert!(verify_vector(&value).passed);
}
