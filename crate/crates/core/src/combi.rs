//! Exact binomial and Catalan numbers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `C(n, k)` with the usual convention that it vanishes when `k < 0`,
/// `k > n` or `n < 0`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn central_binomial(n: i64) -> BigInt {
    binomial(2 * n, n)
}

pub fn catalan(n: i64) -> BigInt {
    if n < 0 {
        return BigInt::zero();
    }
    binomial(2 * n, n) / (n + 1)
}

pub fn pow2(e: u32) -> BigInt {
    BigInt::one() << e
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
        let cat: Vec<i64> = (0..8).map(|n| catalan(n).try_into().unwrap()).collect();
        assert_eq!(cat, vec![1, 1, 2, 5, 14, 42, 132, 429]);
        assert_eq!(central_binomial(9), BigInt::from(48620));
    }

    #[test]
    fn pascal_rule() {
        for n in 1..30 {
            for k in 0..=n {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
    }
}
