//! Slow, formula-literal reference implementations used to cross-check the
//! fast routes. Nothing here reuses the binomial cache, the subset transforms
//! or the difference tables.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::dependent::OrderDistribution;
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::signature::SignatureVector;
use crate::structure::{StructureFunction, SubsetMask};

pub const BOLAND_CAP: usize = 12;
pub const PERMUTATION_CAP: usize = 8;
pub const ENUMERATION_CAP: usize = 5;

fn choose(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

fn cap(what: &'static str, n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::SizeCap {
            what,
            n,
            cap: limit,
        });
    }
    Ok(())
}

/// `sₖ = Σ_{|A|=n−k+1} φ(A)/C(n,|A|) − Σ_{|A|=n−k} φ(A)/C(n,|A|)`,
/// evaluated term by term.
pub fn boland_signature(phi: &StructureFunction) -> Result<SignatureVector> {
    let n = phi.n();
    cap("boland oracle input", n, BOLAND_CAP)?;
    phi.validate_semicoherent()?;
    let level_sum = |size: usize| -> Rational {
        let weight = Rational::new(BigInt::one(), choose(n, size));
        let mut total = Rational::zero();
        for bits in 0u32..(1u32 << n) {
            if bits.count_ones() as usize == size && phi.get(SubsetMask(bits)) {
                total += &weight;
            }
        }
        total
    };
    let s = (1..=n)
        .map(|k| level_sum(n - k + 1) - level_sum(n - k))
        .collect();
    SignatureVector::new(s)
}

/// Number of path sets of each size, by direct count.
pub fn path_set_counts(phi: &StructureFunction) -> Result<Vec<u64>> {
    let n = phi.n();
    cap("path count oracle input", n, BOLAND_CAP)?;
    let mut counts = vec![0u64; n + 1];
    for bits in 0u32..(1u32 << n) {
        if phi.get(SubsetMask(bits)) {
            counts[bits.count_ones() as usize] += 1;
        }
    }
    Ok(counts)
}

/// Step at which the system fails when components fail in `perm` order.
fn failure_step(phi: &StructureFunction, perm: &[usize]) -> usize {
    let mut alive: u32 = perm.iter().fold(0, |acc, &c| acc | (1 << (c - 1)));
    for (step, &c) in perm.iter().enumerate() {
        alive &= !(1 << (c - 1));
        if !phi.get(SubsetMask(alive)) {
            return step + 1;
        }
    }
    unreachable!("phi(empty set) = 0 for a semicoherent system")
}

fn for_each_permutation(n: usize, f: &mut impl FnMut(&[usize])) {
    fn go(items: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == items.len() {
            f(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            go(items, k + 1, f);
            items.swap(k, i);
        }
    }
    let mut items: Vec<usize> = (1..=n).collect();
    go(&mut items, 0, f);
}

/// `pₖ = Σ prob(order)·[system fails at step k]` over failure orders.
pub fn permutation_signature(
    phi: &StructureFunction,
    dist: &OrderDistribution,
) -> Result<SignatureVector> {
    let n = phi.n();
    if dist.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: dist.n(),
        });
    }
    phi.validate_semicoherent()?;
    let mut p = vec![Rational::zero(); n];
    match dist {
        OrderDistribution::Uniform { .. } => {
            cap("uniform permutation oracle input", n, PERMUTATION_CAP)?;
            let mut hits = vec![0u64; n];
            let mut total = 0u64;
            for_each_permutation(n, &mut |perm| {
                hits[failure_step(phi, perm) - 1] += 1;
                total += 1;
            });
            for (pk, h) in p.iter_mut().zip(hits) {
                *pk = Rational::new(BigInt::from(h), BigInt::from(total));
            }
        }
        OrderDistribution::Explicit { orders, .. } => {
            for order in orders {
                p[failure_step(phi, &order.perm) - 1] += &order.prob;
            }
        }
    }
    SignatureVector::probability(p)
}

/// Every monotone Boolean function on `n` variables except the two
/// constants, each exactly once.
pub fn enumerate_semicoherent(n: usize) -> Result<impl Iterator<Item = StructureFunction>> {
    cap("enumeration size", n, ENUMERATION_CAP)?;
    if n == 0 {
        return Err(Error::precondition("n must be at least 1"));
    }
    let full_bit = 1u64 << ((1u32 << n) - 1);
    let tables: Vec<u64> = monotone_tables(n)
        .into_iter()
        .filter(|t| t & 1 == 0 && t & full_bit != 0)
        .collect();
    Ok(tables
        .into_iter()
        .map(move |t| StructureFunction::from_bits(n, t).expect("n <= 5")))
}

/// A table on `n` variables is monotone iff it splits on the top variable as
/// `(f₀, f₁)` with both halves monotone and `f₀ ≤ f₁` pointwise.
fn monotone_tables(n: usize) -> Vec<u64> {
    if n == 0 {
        return vec![0, 1];
    }
    let lower = monotone_tables(n - 1);
    let half = 1u32 << (n - 1);
    let mut out = Vec::new();
    for &f0 in &lower {
        for &f1 in &lower {
            if f0 & !f1 == 0 {
                out.push(f0 | (f1 << half));
            }
        }
    }
    out
}
