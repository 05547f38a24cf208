//! Integer combinatorics: binomials with arbitrary integer upper index,
//! factorials, and unsigned Stirling numbers of the first kind.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{domain, Result};

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Generalized binomial `n(n-1)…(n-k+1)/k!` for any integer `n`.
///
/// Zero when `0 <= n < k`. Negative `k` is rejected.
pub fn binomial(n: i64, k: i64) -> Result<BigInt> {
    if k < 0 {
        return domain(format!("binomial lower index must be non-negative, got {k}"));
    }
    Ok(binomial_unchecked(n, k as u64))
}

pub(crate) fn binomial_unchecked(n: i64, k: u64) -> BigInt {
    if n >= 0 && (k as i64) > n {
        return BigInt::zero();
    }
    let k = if n >= 0 { k.min((n as u64) - k) } else { k };
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc holds C(n, i); each step stays integral.
        acc *= n - i as i64;
        acc /= i + 1;
    }
    acc
}

/// Binomial for non-negative arguments, `0` when `k > n`.
pub fn choose(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    binomial_unchecked(n as i64, k)
}

/// Coefficient of `x^b` in the rising factorial `x(x+1)…(x+a-1)`: the
/// unsigned Stirling number of the first kind `[a, b]`.
pub fn rising_stirling(a: u64, b: u64) -> Result<BigInt> {
    if a == 0 {
        return domain("rising_stirling needs a >= 1");
    }
    Ok(rising_factorial_coeffs(a)
        .into_iter()
        .nth(b as usize)
        .unwrap_or_default())
}

/// All coefficients of `x(x+1)…(x+a-1)`, index = power of `x`.
pub fn rising_factorial_coeffs(a: u64) -> Vec<BigInt> {
    let mut poly = vec![BigInt::one()];
    for i in 0..a {
        let mut next = vec![BigInt::zero(); poly.len() + 1];
        for (d, c) in poly.iter().enumerate() {
            next[d + 1] += c;
            next[d] += c * i;
        }
        poly = next;
    }
    poly
}
