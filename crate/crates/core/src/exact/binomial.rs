use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Rational;

type Row = Arc<Vec<BigInt>>;

fn cache() -> &'static Mutex<BTreeMap<usize, Row>> {
    static CACHE: OnceLock<Mutex<BTreeMap<usize, Row>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(BTreeMap::new()))
}

/// Row `n` of Pascal's triangle, `C(n,0)..=C(n,n)`.
///
/// Rows are built by the additive recurrence starting from the nearest cached
/// row below `n`, and memoized.
pub fn binomial_row(n: usize) -> Row {
    let start = {
        let cache = cache().lock().expect("binomial cache poisoned");
        if let Some(row) = cache.get(&n) {
            return Arc::clone(row);
        }
        cache
            .range(..n)
            .next_back()
            .map(|(&m, row)| (m, Arc::clone(row)))
    };
    let (mut m, mut row) = match start {
        Some((m, row)) => (m, row.as_ref().clone()),
        None => (0, vec![BigInt::one()]),
    };
    while m < n {
        let mut next = Vec::with_capacity(m + 2);
        next.push(BigInt::one());
        for pair in row.windows(2) {
            next.push(&pair[0] + &pair[1]);
        }
        next.push(BigInt::one());
        row = next;
        m += 1;
    }
    let row = Arc::new(row);
    cache()
        .lock()
        .expect("binomial cache poisoned")
        .insert(n, Arc::clone(&row));
    row
}

/// `C(n,k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    binomial_row(n)[k].clone()
}

pub fn rational_binomial(n: usize, k: usize) -> Rational {
    Rational::from_integer(binomial(n, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rows() {
        let row: Vec<i64> = binomial_row(5)
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect();
        assert_eq!(row, vec![1, 5, 10, 10, 5, 1]);
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial(3, 4), BigInt::zero());
    }

    #[test]
    fn rows_agree_with_multiplicative_formula() {
        for n in [0usize, 1, 7, 30, 64, 3, 100] {
            let row = binomial_row(n);
            let mut c = BigInt::one();
            for k in 0..=n {
                assert_eq!(row[k], c, "C({n},{k})");
                c = c * BigInt::from(n - k) / BigInt::from(k + 1);
            }
        }
    }
}
