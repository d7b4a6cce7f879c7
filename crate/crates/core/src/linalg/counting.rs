//! Exact counting: Gaussian binomials and full-rank matrix counts.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `[n k]_q` for an arbitrary-precision `q`; zero outside `0 ≤ k ≤ n`.
pub fn gaussian_binomial_big(n: i64, k: i64, q: &BigInt) -> BigInt {
    if k < 0 || k > n {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// `[n k]_q`, the number of `k`-dimensional subspaces of `F_q^n`.
pub fn gaussian_binomial(n: i64, k: i64, q: u64) -> BigInt {
    gaussian_binomial_big(n, k, &BigInt::from(q))
}

/// `∏_{i<s} (Q^r − Q^i)`, the number of `r × s` matrices of rank `s` over
/// `F_Q`. Zero when `s > r`.
pub fn matrix_count(r: u32, s: u32, big_q: &BigInt) -> BigInt {
    let top = big_q.pow(r);
    (0..s).fold(BigInt::one(), |acc, i| acc * (&top - big_q.pow(i)))
}

/// `n choose 2`.
pub fn binomial2(n: u32) -> u32 {
    n * n.saturating_sub(1) / 2
}
