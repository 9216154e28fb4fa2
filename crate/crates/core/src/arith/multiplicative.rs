use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{domain, Result};

/// Distinct prime factors of `m ≥ 1` in ascending order, by trial division.
pub fn distinct_prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    if m.is_multiple_of(2) {
        out.push(2);
        while m.is_multiple_of(2) {
            m /= 2;
        }
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 2;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

fn product_over_primes(m: u64, factor: impl Fn(u64) -> Option<(i64, i64)>) -> Result<BigRational> {
    if m == 0 {
        return domain("argument must be a positive integer");
    }
    let mut acc = BigRational::from_integer(BigInt::from(1));
    for p in distinct_prime_factors(m) {
        if let Some((num, den)) = factor(p) {
            acc *= BigRational::new(BigInt::from(num), BigInt::from(den));
        }
    }
    Ok(acc)
}

/// `g(m) = ∏_{p | m, p > 2} (p−1)/(p−2)`, exactly.
///
/// ```
/// use num_rational::BigRational;
/// use skolem_set::arith::mult_g;
/// assert_eq!(mult_g(15).unwrap(), BigRational::new(8.into(), 3.into()));
/// ```
pub fn mult_g(m: u64) -> Result<BigRational> {
    product_over_primes(m, |p| (p > 2).then(|| (p as i64 - 1, p as i64 - 2)))
}

/// `m/φ(m) = ∏_{p | m} p/(p−1)`, exactly.
pub fn phi_ratio(m: u64) -> Result<BigRational> {
    product_over_primes(m, |p| Some((p as i64, p as i64 - 1)))
}

/// `g(m)` in floating point.
pub fn mult_g_f64(m: u64) -> f64 {
    distinct_prime_factors(m)
        .into_iter()
        .filter(|&p| p > 2)
        .map(|p| (p - 1) as f64 / (p - 2) as f64)
        .product()
}

/// Euler's totient.
pub fn totient(m: u64) -> u64 {
    distinct_prime_factors(m)
        .into_iter()
        .fold(m, |acc, p| acc / p * (p - 1))
}
