//! Number-theoretic building blocks shared by the rest of the crate.

mod euler;
mod iterlog;
mod multiplicative;
mod primality;
mod sieve;
mod tower;

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

pub use euler::{euler_products, euler_products_with, prime_harmonic_sum, EulerProduct};
pub use iterlog::{iterated_log, iterated_log_of_ln};
pub use multiplicative::{distinct_prime_factors, mult_g, mult_g_f64, phi_ratio, totient};
pub use primality::{is_prime, is_prime_u64, is_prime_with_rounds, Certainty, DEFAULT_ROUNDS};
pub use sieve::{CacheError, PrimeTable, CACHE_VERSION, DEFAULT_MAX_LIMIT};
pub use tower::{tower_cmp, TowerExpr, MANTISSA_REL_TOL};

use crate::Result;

/// A shared, read-only prime table plus the probabilistic-round policy used
/// beyond it.
///
/// Lookups below the table limit hit the sieve; 64-bit values above it use
/// deterministic Miller–Rabin; larger values use [`is_prime_with_rounds`].
#[derive(Debug, Clone)]
pub struct PrimeContext {
    table: Arc<PrimeTable>,
    rounds: u32,
}

impl PrimeContext {
    pub fn new(table: PrimeTable) -> Self {
        Self::from_shared(Arc::new(table), DEFAULT_ROUNDS)
    }

    pub fn from_shared(table: Arc<PrimeTable>, rounds: u32) -> Self {
        Self { table, rounds }
    }

    /// Builds a fresh table up to `limit`.
    pub fn with_sieve_limit(limit: u64) -> Result<Self> {
        Ok(Self::new(PrimeTable::new(limit)?))
    }

    pub fn with_rounds(mut self, rounds: u32) -> Self {
        self.rounds = rounds;
        self
    }

    pub fn table(&self) -> &PrimeTable {
        &self.table
    }

    pub fn rounds(&self) -> u32 {
        self.rounds
    }

    #[inline]
    pub fn is_prime_u64(&self, n: u64) -> bool {
        match self.table.get(n) {
            Some(b) => b,
            None => is_prime_u64(n),
        }
    }

    pub fn check(&self, n: &BigUint) -> Certainty {
        match n.to_u64() {
            Some(small) if self.is_prime_u64(small) => Certainty::Prime,
            Some(_) => Certainty::Composite,
            None => is_prime_with_rounds(n, self.rounds),
        }
    }
}
