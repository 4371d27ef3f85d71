//! Structure functions and the set functions derived from them.
//!
//! A structure function on `n` components is stored as a packed truth table
//! indexed by subset mask (bit `i` set iff component `i+1` works). Everything
//! that walks the table is `O(n·2ⁿ)`; the vector conversions in the other
//! modules never touch it.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{AddAssign, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, Polynomial, Rational};

/// Largest component count for which a full truth table is materialized.
pub const MAX_TABLE_COMPONENTS: usize = 26;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetMask(pub u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn full(n: usize) -> Self {
        SubsetMask(((1u64 << n) - 1) as u32)
    }

    /// Builds a mask from 1-based component indices.
    pub fn from_components(components: &[usize]) -> Self {
        SubsetMask(components.iter().fold(0u32, |m, &c| m | 1 << (c - 1)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, component: usize) -> bool {
        component >= 1 && self.0 >> (component - 1) & 1 == 1
    }

    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn with(self, component: usize) -> Self {
        SubsetMask(self.0 | 1 << (component - 1))
    }

    pub fn complement(self, n: usize) -> Self {
        SubsetMask(!self.0 & SubsetMask::full(n).0)
    }

    /// 1-based component indices in increasing order.
    pub fn components(self) -> Vec<usize> {
        (0..32)
            .filter(|i| self.0 >> i & 1 == 1)
            .map(|i| i + 1)
            .collect()
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components().iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

fn check_table_size(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::precondition("a system needs at least one component"));
    }
    if n > MAX_TABLE_COMPONENTS {
        return Err(Error::SizeCap {
            what: "truth table",
            n,
            cap: MAX_TABLE_COMPONENTS,
        });
    }
    Ok(())
}

/// A monotone Boolean function given by its truth table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StructureFunction {
    n: usize,
    words: Vec<u64>,
}

impl fmt::Debug for StructureFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n <= 8 {
            write!(
                f,
                "StructureFunction(n={}, {})",
                self.n,
                self.to_table_string()
            )
        } else {
            write!(f, "StructureFunction(n={})", self.n)
        }
    }
}

impl StructureFunction {
    fn empty(n: usize) -> Self {
        let words = (1usize << n).div_ceil(64);
        StructureFunction {
            n,
            words: vec![0; words],
        }
    }

    pub fn from_fn(n: usize, f: impl Fn(SubsetMask) -> bool) -> Result<Self> {
        check_table_size(n)?;
        let mut phi = Self::empty(n);
        for mask in 0..1u32 << n {
            if f(SubsetMask(mask)) {
                phi.set(SubsetMask(mask));
            }
        }
        Ok(phi)
    }

    /// Parses a `0`/`1` string of length `2ⁿ`, character `i` being the value at
    /// mask `i`.
    pub fn from_table_str(n: usize, table: &str) -> Result<Self> {
        check_table_size(n)?;
        let bytes = table.as_bytes();
        if bytes.len() != 1 << n {
            return Err(Error::Document(format!(
                "table has {} entries, expected 2^{} = {}",
                bytes.len(),
                n,
                1usize << n
            )));
        }
        let mut phi = Self::empty(n);
        for (i, b) in bytes.iter().enumerate() {
            match b {
                b'0' => {}
                b'1' => phi.set(SubsetMask(i as u32)),
                _ => {
                    return Err(Error::Document(format!(
                        "table entry {i} is `{}`, expected 0 or 1",
                        *b as char
                    )))
                }
            }
        }
        Ok(phi)
    }

    /// Packs a table given as `u64` bits (bit `i` = value at mask `i`); only
    /// usable for `n ≤ 6`.
    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        check_table_size(n)?;
        if n > 6 {
            return Err(Error::precondition("from_bits supports n <= 6"));
        }
        let len = 1u32 << n;
        let mask = if len == 64 {
            u64::MAX
        } else {
            (1u64 << len) - 1
        };
        Ok(StructureFunction {
            n,
            words: vec![bits & mask],
        })
    }

    pub fn to_table_string(&self) -> String {
        (0..1u32 << self.n)
            .map(|m| if self.get(SubsetMask(m)) { '1' } else { '0' })
            .collect()
    }

    fn set(&mut self, mask: SubsetMask) {
        let i = mask.index();
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, mask: SubsetMask) -> bool {
        let i = mask.index();
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn value(&self, mask: SubsetMask) -> u8 {
        self.get(mask) as u8
    }

    pub fn masks(&self) -> impl Iterator<Item = SubsetMask> {
        (0..1u32 << self.n).map(SubsetMask)
    }

    /// Checks `φ(∅)=0`, `φ(C)=1` and monotonicity, reporting the first
    /// violated condition.
    pub fn validate_semicoherent(&self) -> Result<()> {
        if self.get(SubsetMask::EMPTY) {
            return Err(Error::EmptySetIsPathSet);
        }
        if !self.get(SubsetMask::full(self.n)) {
            return Err(Error::FullSetNotPathSet);
        }
        for mask in self.masks().filter(|&m| self.get(m)) {
            for c in 1..=self.n {
                if !mask.contains(c) && !self.get(mask.with(c)) {
                    return Err(Error::NotMonotone {
                        lower: mask,
                        upper: mask.with(c),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_semicoherent(&self) -> bool {
        self.validate_semicoherent().is_ok()
    }

    /// `φᴰ(A) = 1 − φ(C∖A)`.
    pub fn dual(&self) -> StructureFunction {
        let mut out = Self::empty(self.n);
        for mask in self.masks() {
            if !self.get(mask.complement(self.n)) {
                out.set(mask);
            }
        }
        out
    }

    /// Number of path sets of each size, `φ₀..φₙ`.
    pub fn level_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.n + 1];
        for mask in self.masks().filter(|&m| self.get(m)) {
            counts[mask.len()] += 1;
        }
        counts
    }
}

/// Validated set of (not necessarily minimal) path sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSetSpec {
    n: usize,
    path_sets: Vec<SubsetMask>,
}

impl PathSetSpec {
    pub fn new(n: usize, path_sets: &[Vec<usize>]) -> Result<Self> {
        check_table_size(n)?;
        if path_sets.is_empty() {
            return Err(Error::NoPathSets);
        }
        let mut masks = Vec::with_capacity(path_sets.len());
        for (position, set) in path_sets.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::EmptyPathSet {
                    position: position + 1,
                });
            }
            if let Some(&index) = set.iter().find(|&&c| c == 0 || c > n) {
                return Err(Error::ComponentOutOfRange { index, n });
            }
            masks.push(SubsetMask::from_components(set));
        }
        Ok(PathSetSpec {
            n,
            path_sets: masks,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn path_sets(&self) -> &[SubsetMask] {
        &self.path_sets
    }
}

/// `φ(A) = 1` iff `A` contains one of the listed path sets.
///
/// The listed sets are marked and then closed upward with an in-place
/// subset-OR sweep over each component bit.
pub fn structure_from_pathsets(spec: &PathSetSpec) -> StructureFunction {
    let n = spec.n;
    let mut phi = StructureFunction::empty(n);
    for &p in &spec.path_sets {
        phi.set(p);
    }
    const LOW: [u64; 6] = [
        0x5555_5555_5555_5555,
        0x3333_3333_3333_3333,
        0x0f0f_0f0f_0f0f_0f0f,
        0x00ff_00ff_00ff_00ff,
        0x0000_ffff_0000_ffff,
        0x0000_0000_ffff_ffff,
    ];
    for (bit, &low) in LOW.iter().chain(std::iter::repeat(&0)).take(n).enumerate() {
        if bit < 6 {
            let shift = 1u32 << bit;
            for w in phi.words.iter_mut() {
                *w |= (*w & low) << shift;
            }
        } else {
            let stride = 1usize << (bit - 6);
            for w in 0..phi.words.len() {
                if w & stride != 0 {
                    phi.words[w] |= phi.words[w ^ stride];
                }
            }
        }
    }
    phi
}

/// In-place subset Möbius transform: `v(A) ← Σ_{B⊆A} (−1)^{|A∖B|} v(B)`.
pub fn mobius_in_place<T>(values: &mut [T])
where
    T: Clone + for<'a> SubAssign<&'a T>,
{
    debug_assert!(values.len().is_power_of_two());
    let mut half = 1;
    while half < values.len() {
        for block in values.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (l, h) in lo.iter().zip(hi.iter_mut()) {
                *h -= l;
            }
        }
        half *= 2;
    }
}

/// In-place subset zeta transform: `v(A) ← Σ_{B⊆A} v(B)`.
pub fn zeta_in_place<T>(values: &mut [T])
where
    T: Clone + for<'a> AddAssign<&'a T>,
{
    debug_assert!(values.len().is_power_of_two());
    let mut half = 1;
    while half < values.len() {
        for block in values.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (l, h) in lo.iter().zip(hi.iter_mut()) {
                *h += l;
            }
        }
        half *= 2;
    }
}

/// Dense rational-valued set function on the subsets of `{1..n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFunction {
    n: usize,
    values: Vec<Rational>,
}

impl SetFunction {
    pub fn zero(n: usize) -> Result<Self> {
        check_table_size(n)?;
        Ok(SetFunction {
            n,
            values: vec![Rational::zero(); 1 << n],
        })
    }

    pub fn from_fn(n: usize, f: impl Fn(SubsetMask) -> Rational) -> Result<Self> {
        check_table_size(n)?;
        Ok(SetFunction {
            n,
            values: (0..1u32 << n).map(|m| f(SubsetMask(m))).collect(),
        })
    }

    pub fn from_structure(phi: &StructureFunction) -> Self {
        SetFunction {
            n: phi.n,
            values: phi
                .masks()
                .map(|m| Rational::from_integer(BigInt::from(phi.value(m))))
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, mask: SubsetMask) -> &Rational {
        &self.values[mask.index()]
    }

    pub fn set(&mut self, mask: SubsetMask, value: Rational) {
        self.values[mask.index()] = value;
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (SubsetMask, &Rational)> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| (SubsetMask(i as u32), v))
    }

    /// `Σ_{|A|=k} v(A)` for `k = 0..=n`.
    pub fn level_sums(&self) -> Vec<Rational> {
        let mut sums = vec![Rational::zero(); self.n + 1];
        for (mask, v) in self.iter() {
            sums[mask.len()] += v;
        }
        sums
    }

    /// First mask whose value is neither 0 nor 1.
    pub fn first_non_boolean(&self) -> Option<SubsetMask> {
        self.iter()
            .find(|(_, v)| !v.is_zero() && !v.is_one())
            .map(|(m, _)| m)
    }

    pub fn to_structure(&self) -> Result<StructureFunction> {
        if let Some(mask) = self.first_non_boolean() {
            return Err(Error::precondition(format!(
                "set function takes the non-Boolean value {} at {mask}",
                self.get(mask)
            )));
        }
        StructureFunction::from_fn(self.n, |m| self.get(m).is_one())
    }

    /// Möbius coefficients of this set function.
    pub fn mobius(&self) -> MultilinearForm {
        let mut values = self.values.clone();
        mobius_in_place(&mut values);
        MultilinearForm::from_dense(self.n, values)
    }
}

/// Sparse coefficients `d(A)` of the multilinear form `Σ_A d(A) Π_{i∈A} xᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearForm {
    n: usize,
    coeffs: BTreeMap<SubsetMask, Rational>,
}

impl MultilinearForm {
    pub fn new(n: usize, coeffs: impl IntoIterator<Item = (SubsetMask, Rational)>) -> Result<Self> {
        check_table_size(n)?;
        let full = SubsetMask::full(n);
        let mut map = BTreeMap::new();
        for (mask, c) in coeffs {
            if !mask.is_subset_of(full) {
                return Err(Error::precondition(format!(
                    "coefficient index {mask} is not a subset of 1..={n}"
                )));
            }
            if !c.is_zero() {
                *map.entry(mask).or_insert_with(Rational::zero) += c;
            }
        }
        map.retain(|_, c: &mut Rational| !c.is_zero());
        Ok(MultilinearForm { n, coeffs: map })
    }

    fn from_dense(n: usize, values: Vec<Rational>) -> Self {
        let coeffs = values
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (SubsetMask(i as u32), c))
            .collect();
        MultilinearForm { n, coeffs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, mask: SubsetMask) -> Rational {
        self.coeffs
            .get(&mask)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Nonzero coefficients in mask order.
    pub fn iter(&self) -> impl Iterator<Item = (SubsetMask, &Rational)> {
        self.coeffs.iter().map(|(&m, c)| (m, c))
    }

    pub fn nonzero_count(&self) -> usize {
        self.coeffs.len()
    }

    pub fn total(&self) -> Rational {
        self.coeffs
            .values()
            .fold(Rational::zero(), |acc, c| acc + c)
    }
}

/// Multilinear coefficients `d(A) = Σ_{B⊆A} (−1)^{|A|−|B|} φ(B)`.
///
/// Runs the fast transform in machine integers: `|d(A)| ≤ 2^{|A|} ≤ 2²⁶`.
pub fn mobius_transform(phi: &StructureFunction) -> MultilinearForm {
    let mut values: Vec<i32> = phi.masks().map(|m| phi.value(m) as i32).collect();
    mobius_in_place(&mut values);
    let coeffs = values
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c != 0)
        .map(|(i, c)| {
            (
                SubsetMask(i as u32),
                Rational::from_integer(BigInt::from(c)),
            )
        })
        .collect();
    MultilinearForm { n: phi.n, coeffs }
}

/// Result of summing a multilinear form over subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaOutput {
    pub function: SetFunction,
    /// Set when some value lies outside `{0,1}`, i.e. the form does not come
    /// from a Boolean structure function.
    pub non_boolean: Option<SubsetMask>,
}

/// `A ↦ Σ_{B⊆A} d(B)`.
pub fn zeta_transform(form: &MultilinearForm) -> ZetaOutput {
    let mut values = vec![Rational::zero(); 1 << form.n];
    for (mask, c) in form.iter() {
        values[mask.index()] = c.clone();
    }
    zeta_in_place(&mut values);
    let function = SetFunction { n: form.n, values };
    let non_boolean = function.first_non_boolean();
    ZetaOutput {
        function,
        non_boolean,
    }
}

/// `h(x) = Σ_k (Σ_{|A|=k} d(A)) xᵏ`, with degree bound `n`.
pub fn diagonal_section(form: &MultilinearForm) -> Polynomial {
    let mut coeffs = vec![Rational::zero(); form.n + 1];
    for (mask, c) in form.iter() {
        coeffs[mask.len()] += c;
    }
    Polynomial::new(coeffs)
}

/// Path-set counts `φ₀..φₙ` (or their rational analogues).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiVector {
    values: Vec<Rational>,
}

impl PhiVector {
    /// Requires `n ≥ 1` and `φ₀ = 0`.
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::precondition("phi vector needs n + 1 >= 2 entries"));
        }
        if !values[0].is_zero() {
            return Err(Error::precondition(format!(
                "phi_0 must be 0, got {}",
                values[0]
            )));
        }
        Ok(PhiVector { values })
    }

    pub fn from_counts(counts: &[u64]) -> Result<Self> {
        Self::new(
            counts
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Checks the properties every semicoherent system's counts have: integer
    /// entries, `0 ≤ φₖ ≤ C(n,k)`, `φₙ = 1` and `φₖ/C(n,k)` nondecreasing.
    pub fn validate_counts(&self) -> Result<()> {
        let n = self.n();
        let mut previous = Rational::zero();
        for (k, v) in self.values.iter().enumerate() {
            if !v.is_integer() || v.is_negative() {
                return Err(Error::precondition(format!(
                    "phi_{k} = {v} is not a nonnegative integer"
                )));
            }
            let c = Rational::from_integer(binomial(n, k));
            if *v > c {
                return Err(Error::precondition(format!(
                    "phi_{k} = {v} exceeds C({n},{k})"
                )));
            }
            let proportion = v / c;
            if proportion < previous {
                return Err(Error::precondition(format!(
                    "path-set proportion decreases at level {k}"
                )));
            }
            previous = proportion;
        }
        if !self.values[n].is_one() {
            return Err(Error::precondition("phi_n must be 1"));
        }
        Ok(())
    }
}

pub fn phi_vector(phi: &StructureFunction) -> PhiVector {
    PhiVector::from_counts(&phi.level_counts()).expect("phi(empty set) = 0 is counted as 0")
}

pub fn dual_structure(phi: &StructureFunction) -> StructureFunction {
    phi.dual()
}
