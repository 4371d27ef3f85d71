//! The signature `s`, tail signature `S̄` and domination vector `d`, and the
//! linear maps between them.
//!
//! Each conversion has a difference-table form (`O(n²)` combine steps, one
//! row of storage) and a closed form written directly as a binomial sum. The
//! tables are the default; the closed forms exist so the two can be checked
//! against each other.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial_row, rational_binomial, sum, Rational};
use crate::structure::PhiVector;

/// What a vector describes. Conversions preserve the role; duality flips
/// between `Structure` and `Dual`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    /// Quantity of the system itself (structure signature in the dependent
    /// setting).
    Structure,
    /// Quantity of the dual system.
    Dual,
    /// Probability signature and its relatives under dependent lifetimes.
    Probability,
}

impl Role {
    pub fn name(self) -> &'static str {
        match self {
            Role::Structure => "structure",
            Role::Dual => "dual",
            Role::Probability => "probability",
        }
    }
}

fn to_rational(c: &BigInt) -> Rational {
    Rational::from_integer(c.clone())
}

/// Writes every value as `numerator / denominator` with one shared
/// denominator, so table cells can be combined as plain integers.
fn over_common_denominator<'a>(
    values: impl IntoIterator<Item = &'a Rational> + Clone,
) -> (Vec<BigInt>, BigInt) {
    let denom = values
        .clone()
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let numers = values
        .into_iter()
        .map(|v| v.numer() * (&denom / v.denom()))
        .collect();
    (numers, denom)
}

/// `s₁..sₙ`, summing to one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureVector {
    role: Role,
    s: Vec<Rational>,
}

impl SignatureVector {
    pub fn new(s: Vec<Rational>) -> Result<Self> {
        Self::with_role(s, Role::Structure)
    }

    /// The probability signature `p`, under the same constraints as `s`.
    pub fn probability(p: Vec<Rational>) -> Result<Self> {
        Self::with_role(p, Role::Probability)
    }

    pub fn with_role(s: Vec<Rational>, role: Role) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::precondition("signature needs n >= 1 entries"));
        }
        let total = sum(&s);
        if !total.is_one() {
            return Err(Error::precondition(format!(
                "signature entries sum to {total}, expected 1"
            )));
        }
        Ok(SignatureVector { role, s })
    }

    pub fn n(&self) -> usize {
        self.s.len()
    }

    pub fn role(&self) -> Role {
        self.role
    }

    /// `s₁..sₙ`; `values()[k-1]` is `s_k`.
    pub fn values(&self) -> &[Rational] {
        &self.s
    }

    /// `s_k` for `1 ≤ k ≤ n`.
    pub fn get(&self, k: usize) -> &Rational {
        &self.s[k - 1]
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.s
    }

    /// `sᴰ_k = s_{n−k+1}`.
    pub fn reversed(&self) -> Vec<Rational> {
        self.s.iter().rev().cloned().collect()
    }
}

/// `S̄₀..S̄ₙ` with `S̄₀ = 1` and `S̄ₙ = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailSignature {
    role: Role,
    tail: Vec<Rational>,
}

impl TailSignature {
    pub fn new(tail: Vec<Rational>) -> Result<Self> {
        Self::with_role(tail, Role::Structure)
    }

    pub fn probability(tail: Vec<Rational>) -> Result<Self> {
        Self::with_role(tail, Role::Probability)
    }

    pub fn with_role(tail: Vec<Rational>, role: Role) -> Result<Self> {
        if tail.len() < 2 {
            return Err(Error::precondition(
                "tail signature needs n + 1 >= 2 entries",
            ));
        }
        if !tail[0].is_one() {
            return Err(Error::precondition(format!(
                "tail signature must start with 1, got {}",
                tail[0]
            )));
        }
        if !tail[tail.len() - 1].is_zero() {
            return Err(Error::precondition(format!(
                "tail signature must end with 0, got {}",
                tail[tail.len() - 1]
            )));
        }
        Ok(TailSignature { role, tail })
    }

    pub fn n(&self) -> usize {
        self.tail.len() - 1
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn values(&self) -> &[Rational] {
        &self.tail
    }

    pub fn get(&self, k: usize) -> &Rational {
        &self.tail[k]
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.tail
    }
}

/// `d₀..dₙ`, the coefficients of `h(x)`; `d₀ = 0` and `Σ dₖ = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominationVector {
    role: Role,
    d: Vec<Rational>,
}

impl DominationVector {
    pub fn new(d: Vec<Rational>) -> Result<Self> {
        Self::with_role(d, Role::Structure)
    }

    pub fn dual(d: Vec<Rational>) -> Result<Self> {
        Self::with_role(d, Role::Dual)
    }

    pub fn with_role(d: Vec<Rational>, role: Role) -> Result<Self> {
        if d.len() < 2 {
            return Err(Error::precondition(
                "domination vector needs n + 1 >= 2 entries",
            ));
        }
        if !d[0].is_zero() {
            return Err(Error::precondition(format!("d_0 must be 0, got {}", d[0])));
        }
        let total = sum(&d);
        if !total.is_one() {
            return Err(Error::precondition(format!(
                "domination entries sum to {total}, expected 1"
            )));
        }
        Ok(DominationVector { role, d })
    }

    pub fn n(&self) -> usize {
        self.d.len() - 1
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn values(&self) -> &[Rational] {
        &self.d
    }

    pub fn get(&self, k: usize) -> &Rational {
        &self.d[k]
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.d
    }

    /// The signed domination `dₙ`.
    pub fn signed_domination(&self) -> &Rational {
        &self.d[self.d.len() - 1]
    }
}

/// Counts the rational combine steps a difference table performed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TableStats {
    pub combine_steps: usize,
}

/// `S̄ₖ = Σ_{i>k} sᵢ`.
pub fn tail_from_signature(s: &SignatureVector) -> TailSignature {
    let n = s.n();
    let mut tail = vec![Rational::zero(); n + 1];
    for k in (0..n).rev() {
        tail[k] = &tail[k + 1] + &s.s[k];
    }
    // Σ s = 1 is checked at construction, so tail[0] is exactly 1.
    TailSignature { role: s.role, tail }
}

/// `sₖ = S̄ₖ₋₁ − S̄ₖ`.
pub fn signature_from_tail(tail: &TailSignature) -> SignatureVector {
    let s = tail.tail.windows(2).map(|w| &w[0] - &w[1]).collect();
    SignatureVector { role: tail.role, s }
}

/// Difference table on `S̄ₙ, S̄ₙ₋₁, …, S̄₀`, with each column scaled by
/// `(n−k+1)/k` so that the head of column `k` is `dₖ = C(n,k)·Δᵏ S̄ₙ₋ᵢ|ᵢ₌₀`.
///
/// Every cell of column `k` is `C(n,k)` times a difference of the inputs, so
/// over a common denominator the division by `k` is exact.
pub fn domination_from_tail_with_stats(tail: &TailSignature) -> (DominationVector, TableStats) {
    let n = tail.n();
    let (mut row, denom) = over_common_denominator(tail.tail.iter().rev());
    let mut d = Vec::with_capacity(n + 1);
    d.push(Rational::new(row[0].clone(), denom.clone()));
    let mut steps = 0;
    for k in 1..=n {
        let (up, down) = (BigInt::from(n - k + 1), BigInt::from(k));
        for j in 0..=n - k {
            row[j] = (&row[j + 1] - &row[j]) * &up / &down;
            steps += 1;
        }
        d.push(Rational::new(row[0].clone(), denom.clone()));
    }
    (
        DominationVector { role: tail.role, d },
        TableStats {
            combine_steps: steps,
        },
    )
}

pub fn domination_from_tail(tail: &TailSignature) -> DominationVector {
    domination_from_tail_with_stats(tail).0
}

/// `dₖ = C(n,k) Σ_{j≤k} (−1)^{k−j} C(k,j) S̄ₙ₋ⱼ`.
pub fn domination_from_tail_closed(tail: &TailSignature) -> DominationVector {
    let n = tail.n();
    let d = (0..=n)
        .map(|k| {
            let row = binomial_row(k);
            let inner = (0..=k).fold(Rational::zero(), |acc, j| {
                let term = to_rational(&row[j]) * &tail.tail[n - j];
                if (k - j) % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            });
            inner * rational_binomial(n, k)
        })
        .collect();
    DominationVector { role: tail.role, d }
}

/// Inverse table: `S_{j,k} = ((j+1)/(n−j))·S_{j+1,k−1} + S_{j,k−1}` seeded
/// with `S_{j,0} = dⱼ`; the head of column `k` is `S̄ₙ₋ₖ`.
///
/// Since `(j+1)/(n−j) = C(n,j)/C(n,j+1)`, the cells `S_{j,k}/C(n,j)` obey
/// plain Pascal additions, which is how the table is run.
pub fn tail_from_domination_with_stats(d: &DominationVector) -> (TailSignature, TableStats) {
    let n = d.n();
    let top = binomial_row(n);
    let seeds: Vec<Rational> =
        d.d.iter()
            .zip(top.iter())
            .map(|(v, c)| v / to_rational(c))
            .collect();
    let (mut row, denom) = over_common_denominator(&seeds);
    let mut tail = vec![Rational::zero(); n + 1];
    tail[n] = Rational::new(row[0].clone(), denom.clone());
    let mut steps = 0;
    for k in 1..=n {
        for j in 0..=n - k {
            let next = row[j + 1].clone();
            row[j] += next;
            steps += 1;
        }
        tail[n - k] = Rational::new(row[0].clone(), denom.clone());
    }
    (
        TailSignature { role: d.role, tail },
        TableStats {
            combine_steps: steps,
        },
    )
}

pub fn tail_from_domination(d: &DominationVector) -> TailSignature {
    tail_from_domination_with_stats(d).0
}

/// `S̄ₖ = Σ_{j=0}^{n−k} C(n−k,j)/C(n,j)·dⱼ`.
pub fn tail_from_domination_closed(d: &DominationVector) -> TailSignature {
    let n = d.n();
    let top = binomial_row(n);
    let tail = (0..=n)
        .map(|k| {
            let row = binomial_row(n - k);
            (0..=n - k).fold(Rational::zero(), |acc, j| {
                acc + Rational::new(row[j].clone(), top[j].clone()) * &d.d[j]
            })
        })
        .collect();
    TailSignature { role: d.role, tail }
}

/// Table seeded with `n·s_{n−j+1}`; the head of column `k` is
/// `dₖ = C(n,k)·Δ^{k−1} sₙ₋ᵢ|ᵢ₌₀`. Cells are integers over a common
/// denominator, as in [`domination_from_tail_with_stats`].
pub fn domination_from_signature_with_stats(s: &SignatureVector) -> (DominationVector, TableStats) {
    let n = s.n();
    // row[j-1] holds d_{j,k}
    let (mut row, denom) = over_common_denominator(s.s.iter().rev());
    for cell in row.iter_mut() {
        *cell *= n;
    }
    let mut d = Vec::with_capacity(n + 1);
    d.push(Rational::zero());
    d.push(Rational::new(row[0].clone(), denom.clone()));
    let mut steps = 0;
    for k in 2..=n {
        let (up, down) = (BigInt::from(n - k + 1), BigInt::from(k));
        for j in 0..=n - k {
            row[j] = (&row[j + 1] - &row[j]) * &up / &down;
            steps += 1;
        }
        d.push(Rational::new(row[0].clone(), denom.clone()));
    }
    (
        DominationVector { role: s.role, d },
        TableStats {
            combine_steps: steps,
        },
    )
}

pub fn domination_from_signature(s: &SignatureVector) -> DominationVector {
    domination_from_signature_with_stats(s).0
}

/// `dₖ = C(n,k) Σ_{j<k} (−1)^{k−1−j} C(k−1,j) sₙ₋ⱼ`.
pub fn domination_from_signature_closed(s: &SignatureVector) -> DominationVector {
    let n = s.n();
    let mut d = vec![Rational::zero()];
    for k in 1..=n {
        let row = binomial_row(k - 1);
        let inner = (0..k).fold(Rational::zero(), |acc, j| {
            let term = to_rational(&row[j]) * s.get(n - j);
            if (k - 1 - j) % 2 == 0 {
                acc + term
            } else {
                acc - term
            }
        });
        d.push(inner * rational_binomial(n, k));
    }
    DominationVector { role: s.role, d }
}

/// Same recurrence as [`tail_from_domination_with_stats`], seeded with
/// `dⱼ/n` for `j ≥ 1`; the head of column `k` is `sₙ₋ₖ₊₁`. Run on the
/// cells `s_{j,k}/C(n,j)` as Pascal additions.
pub fn signature_from_domination_with_stats(d: &DominationVector) -> (SignatureVector, TableStats) {
    let n = d.n();
    let top = binomial_row(n);
    let n_big = BigInt::from(n);
    // row[j-1] holds s_{j,k}/C(n,j)
    let seeds: Vec<Rational> = (1..=n)
        .map(|j| &d.d[j] / Rational::from_integer(&n_big * &top[j]))
        .collect();
    let (mut row, denom) = over_common_denominator(&seeds);
    let head = |cell: &BigInt| Rational::new(cell * &n_big, denom.clone());
    let mut s = vec![Rational::zero(); n];
    s[n - 1] = head(&row[0]);
    let mut steps = 0;
    for k in 2..=n {
        for j in 1..=n - k + 1 {
            let next = row[j].clone();
            row[j - 1] += next;
            steps += 1;
        }
        s[n - k] = head(&row[0]);
    }
    (
        SignatureVector { role: d.role, s },
        TableStats {
            combine_steps: steps,
        },
    )
}

pub fn signature_from_domination(d: &DominationVector) -> SignatureVector {
    signature_from_domination_with_stats(d).0
}

/// `sₖ = Σ_{j=1}^{n−k+1} C(n−k,j−1)/C(n,j)·dⱼ`.
pub fn signature_from_domination_closed(d: &DominationVector) -> SignatureVector {
    let n = d.n();
    let top = binomial_row(n);
    let s = (1..=n)
        .map(|k| {
            let row = binomial_row(n - k);
            (1..=n - k + 1).fold(Rational::zero(), |acc, j| {
                acc + Rational::new(row[j - 1].clone(), top[j].clone()) * &d.d[j]
            })
        })
        .collect();
    SignatureVector { role: d.role, s }
}

/// `φₖ = Σ_{j≤k} C(n−j,k−j)·dⱼ`.
pub fn phi_from_domination(d: &DominationVector) -> PhiVector {
    let n = d.n();
    let values = (0..=n)
        .map(|k| {
            (0..=k).fold(Rational::zero(), |acc, j| {
                acc + rational_binomial(n - j, k - j) * &d.d[j]
            })
        })
        .collect();
    PhiVector::new(values).expect("phi_0 = d_0 = 0")
}

/// `dₖ = Σ_{j≤k} (−1)^{k−j} C(n−j,k−j)·φⱼ`. The result is a domination
/// vector only when `φₙ` is consistent with `Σ d = 1`, which is checked.
pub fn domination_from_phi(phi: &PhiVector) -> Result<DominationVector> {
    DominationVector::new(domination_values_from_phi(phi))
}

pub fn domination_values_from_phi(phi: &PhiVector) -> Vec<Rational> {
    let n = phi.n();
    let v = phi.values();
    (0..=n)
        .map(|k| {
            (0..=k).fold(Rational::zero(), |acc, j| {
                let term = rational_binomial(n - j, k - j) * &v[j];
                if (k - j) % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect()
}

/// `S̄ₖ = φₙ₋ₖ / C(n,k)`.
pub fn tail_from_phi(phi: &PhiVector) -> Result<TailSignature> {
    tail_from_phi_with_role(phi, Role::Structure)
}

pub fn tail_from_phi_with_role(phi: &PhiVector, role: Role) -> Result<TailSignature> {
    let n = phi.n();
    let v = phi.values();
    let top = binomial_row(n);
    let tail = (0..=n).map(|k| &v[n - k] / to_rational(&top[k])).collect();
    TailSignature::with_role(tail, role)
}

/// `φₖ = C(n,n−k)·S̄ₙ₋ₖ`, the inverse of [`tail_from_phi`].
pub fn phi_from_tail(tail: &TailSignature) -> PhiVector {
    let n = tail.n();
    let top = binomial_row(n);
    let values = (0..=n)
        .map(|k| to_rational(&top[k]) * &tail.tail[n - k])
        .collect();
    PhiVector::new(values).expect("S̄_n = 0 gives phi_0 = 0")
}

/// Checks `Σ sₖ xᵏ = 1 + (x−1) Σ S̄ₖ xᵏ` coefficient by coefficient.
pub fn check_generating_identity(s: &SignatureVector, tail: &TailSignature) -> bool {
    if s.n() != tail.n() {
        return false;
    }
    let n = s.n();
    // right-hand side coefficients, degree ≤ n+1
    let mut rhs = vec![Rational::zero(); n + 2];
    rhs[0] += Rational::one();
    for (k, v) in tail.tail.iter().enumerate() {
        rhs[k + 1] += v;
        rhs[k] -= v;
    }
    let mut lhs = vec![Rational::zero(); n + 2];
    for (k, v) in s.s.iter().enumerate() {
        lhs[k + 1] = v.clone();
    }
    lhs == rhs
}
