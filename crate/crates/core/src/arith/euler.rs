use crate::error::{domain, resource, Result};

use super::PrimeTable;

/// A truncated Euler product together with a rigorous bound on what the
/// omitted primes can contribute.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerProduct {
    /// `C_L = 2·∏_{2<p≤L} p(p−2)/(p−1)²`.
    pub c: f64,
    /// The full product lies in `[c − tail_bound, c]`.
    pub tail_bound: f64,
    pub prime_limit: u64,
}

/// Twin-prime style constant `C = 2·∏_{p>2} p(p−2)/(p−1)² ≈ 1.3203`,
/// truncated at `prime_limit`.
///
/// Each factor is `1 − 1/(p−1)²`, so the omitted tail is at least
/// `1 − ∑_{p>L} 1/(p−1)² ≥ 1 − 2/L`; the reported `tail_bound` is `c·2/L`.
/// The product is accumulated as a sum of `ln(1 − 1/(p−1)²)`.
pub fn euler_products(prime_limit: u64) -> Result<EulerProduct> {
    if prime_limit < 3 {
        return domain(format!("prime limit must be at least 3, got {prime_limit}"));
    }
    let table = PrimeTable::new(prime_limit)?;
    euler_products_with(&table, prime_limit)
}

/// As [`euler_products`] but reusing an existing table.
pub fn euler_products_with(table: &PrimeTable, prime_limit: u64) -> Result<EulerProduct> {
    if prime_limit < 3 {
        return domain(format!("prime limit must be at least 3, got {prime_limit}"));
    }
    if prime_limit > table.limit() {
        return resource(format!(
            "prime limit {prime_limit} exceeds sieve limit {}",
            table.limit()
        ));
    }
    let log_sum: f64 = table
        .primes_in(3, prime_limit)
        .map(|p| {
            let q = (p - 1) as f64;
            (-1.0 / (q * q)).ln_1p()
        })
        .sum();
    let c = 2.0 * log_sum.exp();
    Ok(EulerProduct {
        c,
        tail_bound: c * 2.0 / prime_limit as f64,
        prime_limit,
    })
}

/// `∑ 1/q` over primes `q ∈ [lo, hi]` (both ends inclusive).
pub fn prime_harmonic_sum(table: &PrimeTable, lo: f64, hi: f64) -> Result<f64> {
    if lo.is_nan() || lo < 2.0 || hi.is_nan() || hi < lo {
        return domain(format!("need 2 ≤ lo ≤ hi, got [{lo}, {hi}]"));
    }
    if hi > table.limit() as f64 {
        return resource(format!("{hi} is beyond the sieve limit {}", table.limit()));
    }
    let (a, b) = (lo.ceil() as u64, hi.floor() as u64);
    Ok(table.primes_in(a, b).map(|q| 1.0 / q as f64).sum())
}
