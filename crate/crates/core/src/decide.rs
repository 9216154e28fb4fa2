//! Zeros of a linear recurrence inside `𝒮`, up to an explicit search limit.
//!
//! The recurrence is minimized and split into its merge decomposition. Each
//! identically zero component is reported as a residue class. For the
//! others, every member `n ≤ N` of `𝒮` is filtered through the
//! congruences `u_n ≡ 0 (mod P)` for the primes `P` of its representations,
//! and the survivors are checked modulo 64 large primes (then exactly, when
//! `n` is under the exact-evaluation cap).
//!
//! The effective bound `max{exp₃(A²), exp₅(10¹⁰k⁶)}` on the zeros of a
//! non-degenerate recurrence of order `k ≥ 2` is reported alongside; it is
//! never within reach, so the search limit is always the binding one.

use std::collections::BTreeSet;
use std::f64::consts::LN_2;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{is_prime_u64, PrimeContext, TowerExpr};
use crate::error::{domain, resource, Result};
use crate::lrs::{decompose, minimize, ComponentKind, Lrs};
use crate::skolem::{enumerate_window, Representation};

/// Number of random prime moduli behind a probable zero.
pub const ZERO_TEST_MODULI: usize = 64;
/// Default largest `N` accepted by [`find_zeros_in_s`].
pub const DEFAULT_MAX_SEARCH: u64 = 1 << 27;
/// Seed of the default modulus set.
pub const DEFAULT_MODULI_SEED: u64 = 0x5ec0_1e3d;

/// `A = max{10, |u_i|, |a_i|}`.
pub fn constant_a(lrs: &Lrs) -> BigUint {
    lrs.coeffs()
        .iter()
        .chain(lrs.inits())
        .map(|v| v.abs().to_biguint().expect("absolute value"))
        .fold(BigUint::from(10u32), |acc, v| acc.max(v))
}

fn ln_biguint(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits <= 1000 {
        return v.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    (v >> shift).to_f64().expect("64 bits").ln() + shift as f64 * LN_2
}

/// `max{exp₃(A²), exp₅(10¹⁰k⁶)}` for a recurrence of order `k ≥ 2`.
pub fn zero_bound(lrs: &Lrs) -> Result<TowerExpr> {
    let k = lrs.order();
    if k < 2 {
        return domain(format!("the zero bound needs order at least 2, got {k}"));
    }
    let a = constant_a(lrs);
    let a_sq = (&a * &a).to_f64().filter(|v| v.is_finite());
    let first = match a_sq {
        Some(v) => TowerExpr::new(3, v)?,
        None => TowerExpr::from_ln(3, 2.0 * ln_biguint(&a))?,
    };
    let second = TowerExpr::new(5, 1e10 * (k as f64).powi(6))?;
    Ok(first.max(second))
}

/// How much evaluation [`is_zero`] may do.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZeroPolicy {
    /// Confirm zeros exactly when `n` is under the exact-evaluation cap.
    ExactBelowCap,
    /// Only ever use the modular test.
    ProbabilisticOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZeroCertainty {
    Exact,
    /// `u_n ≡ 0` modulo `primes_used` random primes of about 62 bits.
    Probable {
        primes_used: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroCheck {
    Zero(ZeroCertainty),
    NonZero { witness_modulus: u64 },
}

/// `count` distinct primes in `[2^61, 2^62)` drawn from a seeded generator.
pub fn random_prime_moduli(count: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<u64> = Vec::with_capacity(count);
    while out.len() < count {
        let c = rng.gen_range(1u64 << 61..1u64 << 62) | 1;
        if is_prime_u64(c) && !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// Zero test for single terms: a fixed set of random prime moduli plus the
/// exact-evaluation cap.
#[derive(Debug, Clone)]
pub struct ZeroTester {
    moduli: Vec<u64>,
    exact_cap: u64,
}

impl ZeroTester {
    pub fn new(seed: u64, exact_cap: u64) -> Self {
        ZeroTester {
            moduli: random_prime_moduli(ZERO_TEST_MODULI, seed),
            exact_cap,
        }
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn exact_cap(&self) -> u64 {
        self.exact_cap
    }

    /// `NonZero` carries the first modulus with `u_n ≢ 0`.
    pub fn is_zero(&self, lrs: &Lrs, n: &BigUint, policy: ZeroPolicy) -> ZeroCheck {
        if let Some(&m) = self.moduli.iter().find(|&&m| lrs.term_mod_u64(n, m) != 0) {
            return ZeroCheck::NonZero { witness_modulus: m };
        }
        let exact_n = n.to_u64().filter(|&v| v <= self.exact_cap);
        match (policy, exact_n) {
            (ZeroPolicy::ExactBelowCap, Some(small)) => {
                let v = lrs
                    .term_exact(small, self.exact_cap)
                    .expect("under the cap");
                if v.is_zero() {
                    ZeroCheck::Zero(ZeroCertainty::Exact)
                } else {
                    ZeroCheck::NonZero {
                        witness_modulus: small_non_divisor(&v),
                    }
                }
            }
            _ => ZeroCheck::Zero(ZeroCertainty::Probable {
                primes_used: self.moduli.len() as u32,
            }),
        }
    }
}

/// Smallest prime not dividing a non-zero integer.
fn small_non_divisor(v: &BigInt) -> u64 {
    (2u64..)
        .filter(|&p| is_prime_u64(p))
        .find(|&p| !(v % p).is_zero())
        .expect("a non-zero integer has finitely many prime factors")
}

/// [`ZeroTester::is_zero`] with the default modulus set.
pub fn is_zero(lrs: &Lrs, n: &BigUint, policy: ZeroPolicy, exact_cap: u64) -> ZeroCheck {
    ZeroTester::new(DEFAULT_MODULI_SEED, exact_cap).is_zero(lrs, n, policy)
}

/// Outcome of [`rep_mod_filter`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepFilter {
    ConsistentWithZero,
    NonZero { witness_p: BigUint },
}

/// Checks `u_n ≡ 0 (mod P)` for the prime `P` of each representation.
pub fn rep_mod_filter(lrs: &Lrs, n: &BigUint, reps: &[Representation]) -> Result<RepFilter> {
    if reps.is_empty() {
        return domain("no representations to filter with");
    }
    for r in reps {
        if !lrs.term_mod(n, &r.p)?.is_zero() {
            return Ok(RepFilter::NonZero {
                witness_p: r.p.clone(),
            });
        }
    }
    Ok(RepFilter::ConsistentWithZero)
}

fn raw_filter(lrs: &Lrs, n: u64, reps: &[(u64, u64, u64)]) -> bool {
    let nb = BigUint::from(n);
    reps.iter().all(|&(_, p, _)| lrs.term_mod_u64(&nb, p) == 0)
}

/// One component of the merge decomposition, as reported.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentSummary {
    pub residue: u64,
    /// `None` for an identically zero component.
    pub recurrence: Option<Lrs>,
    /// Bound on the zeros `j` of `j ↦ u_{jM+i}`; `None` below order 2.
    pub theorem_bound: Option<TowerExpr>,
}

/// Result of [`find_zeros_in_s`].
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroReport {
    pub zeros: Vec<(u64, ZeroCertainty)>,
    pub searched_to: u64,
    /// Largest component bound; `None` when no component has order ≥ 2.
    pub theorem_bound: Option<TowerExpr>,
    pub modulus: u64,
    pub components: Vec<ComponentSummary>,
    /// Residue classes `(i, M)` on which the sequence vanishes identically.
    pub zero_progressions: Vec<(u64, u64)>,
    /// Members of `𝒮` up to `N` that were examined.
    pub members_checked: u64,
    pub notes: Vec<String>,
}

/// Search parameters for [`find_zeros_in_s`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_search: u64,
    pub exact_cap: u64,
    pub moduli_seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_search: DEFAULT_MAX_SEARCH,
            exact_cap: crate::lrs::DEFAULT_EXACT_CAP,
            moduli_seed: DEFAULT_MODULI_SEED,
        }
    }
}

/// All `n ∈ 𝒮` with `n ≤ N` and `u_n = 0`, plus the zero progressions of
/// the decomposition.
pub fn find_zeros_in_s(
    lrs: &Lrs,
    n_max: u64,
    policy: ZeroPolicy,
    config: &SearchConfig,
    ctx: &PrimeContext,
) -> Result<ZeroReport> {
    if n_max > config.max_search {
        return resource(format!(
            "search limit {n_max} exceeds the configured capacity {}",
            config.max_search
        ));
    }
    let mut notes = Vec::new();
    let min = minimize(lrs)?;
    if min.order() < lrs.order() {
        notes.push(format!(
            "minimized from order {} to {}",
            lrs.order(),
            min.order()
        ));
    }
    let decomposition = decompose(&min)?;
    let modulus = decomposition.modulus;
    let mut components = Vec::with_capacity(decomposition.components.len());
    for c in &decomposition.components {
        let (recurrence, bound) = match &c.kind {
            ComponentKind::Zero => (None, None),
            ComponentKind::Sequence(rec) => (Some(rec.clone()), zero_bound(rec).ok()),
        };
        components.push(ComponentSummary {
            residue: c.residue,
            recurrence,
            theorem_bound: bound,
        });
    }
    let theorem_bound = components
        .iter()
        .filter_map(|c| c.theorem_bound)
        .reduce(TowerExpr::max);
    if components
        .iter()
        .any(|c| c.recurrence.as_ref().is_some_and(|r| r.order() == 1))
    {
        notes.push(
            "order-1 component: a non-zero geometric sequence never vanishes; no zeros by convention"
                .into(),
        );
    }
    if modulus > 1 {
        notes.push(format!(
            "degenerate input split modulo {modulus}; component bounds apply to j in n = j*{modulus} + i"
        ));
    }
    match theorem_bound {
        Some(b) => notes.push(format!(
            "searched n <= {n_max}, far below the theorem bound {b}"
        )),
        None => notes.push("no component of order >= 2; the theorem bound does not apply".into()),
    }
    notes.push(format!(
        "probable zeros vanish modulo {ZERO_TEST_MODULI} random primes in [2^61, 2^62); \
         a non-zero u_n has at most log2|u_n|/61 such prime factors"
    ));

    let tester = ZeroTester::new(config.moduli_seed, config.exact_cap);
    let searchable: Vec<bool> = components.iter().map(|c| c.recurrence.is_some()).collect();
    let mut seen = BTreeSet::new();
    let mut zeros = Vec::new();
    let mut members_checked = 0u64;
    let mut w = 10u32;
    while w < 63 && (1u64 << w) <= n_max {
        let hi = n_max.min(2u64 << w);
        let members: Vec<_> = enumerate_window(w, Some((1u64 << w, hi)), ctx, u64::MAX)?
            .filter(|m| seen.insert(m.n))
            .collect();
        members_checked += members.len() as u64;
        let found: Vec<_> = members
            .par_iter()
            .filter(|m| searchable[(m.n % modulus) as usize])
            .filter(|m| raw_filter(&min, m.n, &m.reps))
            .filter_map(
                |m| match tester.is_zero(&min, &BigUint::from(m.n), policy) {
                    ZeroCheck::Zero(c) => Some((m.n, c)),
                    ZeroCheck::NonZero { .. } => None,
                },
            )
            .collect();
        zeros.extend(found);
        w += 1;
    }

    Ok(ZeroReport {
        zeros,
        searched_to: n_max,
        theorem_bound,
        modulus,
        zero_progressions: decomposition.zero_progressions(),
        components,
        members_checked,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::tower_cmp;
    use crate::skolem::{in_s, representations, window_params};
    use std::cmp::Ordering;

    fn planted() -> Lrs {
        Lrs::from_i64(&[4, -4], &[-1053, -2104]).unwrap()
    }

    fn fib() -> Lrs {
        Lrs::from_i64(&[1, 1], &[0, 1]).unwrap()
    }

    #[test]
    fn constant_a_examples() {
        assert_eq!(constant_a(&fib()), BigUint::from(10u32));
        assert_eq!(constant_a(&planted()), BigUint::from(2104u32));
        assert_eq!(
            constant_a(&Lrs::from_i64(&[0, -1], &[1, 0]).unwrap()),
            BigUint::from(10u32)
        );
    }

    #[test]
    fn zero_bound_levels() {
        let b = zero_bound(&fib()).unwrap();
        assert_eq!(b.level(), 5);
        assert!((b.mantissa() - 6.4e11).abs() < 1.0);
        let exp3 = TowerExpr::new(3, 100.0).unwrap();
        assert_eq!(tower_cmp(&exp3, &b), Ordering::Less);

        let huge: BigInt = BigInt::from(10u32).pow(100);
        let l = Lrs::new(
            vec![BigInt::from(1), BigInt::from(1)],
            vec![huge, BigInt::from(1)],
        )
        .unwrap();
        let b = zero_bound(&l).unwrap();
        let exp3_big = TowerExpr::new(3, 1e200).unwrap();
        assert_ne!(tower_cmp(&b, &exp3_big), Ordering::Less);
        assert_eq!(b.level(), 5);

        assert!(zero_bound(&Lrs::from_i64(&[3], &[1]).unwrap()).is_err());
        for n in [1e3, 1e9, 1e300] {
            assert_eq!(
                tower_cmp(&b, &TowerExpr::new(0, n).unwrap()),
                Ordering::Greater
            );
        }
    }

    #[test]
    fn zero_checks() {
        let cap = crate::lrs::DEFAULT_EXACT_CAP;
        assert!(matches!(
            is_zero(
                &fib(),
                &BigUint::from(12u32),
                ZeroPolicy::ExactBelowCap,
                cap
            ),
            ZeroCheck::NonZero { .. }
        ));
        assert_eq!(
            is_zero(
                &planted(),
                &BigUint::from(1053u32),
                ZeroPolicy::ExactBelowCap,
                cap
            ),
            ZeroCheck::Zero(ZeroCertainty::Exact)
        );
        assert_eq!(
            is_zero(
                &planted(),
                &BigUint::from(1053u32),
                ZeroPolicy::ProbabilisticOnly,
                cap
            ),
            ZeroCheck::Zero(ZeroCertainty::Probable { primes_used: 64 })
        );
        assert!(matches!(
            is_zero(
                &planted(),
                &BigUint::from(1054u32),
                ZeroPolicy::ExactBelowCap,
                cap
            ),
            ZeroCheck::NonZero { .. }
        ));
    }

    #[test]
    fn moduli_are_distinct_large_primes() {
        let m = random_prime_moduli(64, 3);
        assert_eq!(m.len(), 64);
        assert!(m
            .iter()
            .all(|&p| (1 << 61..1 << 62).contains(&p) && is_prime_u64(p)));
        let set: BTreeSet<_> = m.iter().collect();
        assert_eq!(set.len(), 64);
        assert_eq!(m, random_prime_moduli(64, 3));
    }

    #[test]
    fn filter_examples() {
        let ctx = PrimeContext::with_sieve_limit(1 << 12).unwrap();
        let params = window_params(10).unwrap();
        let n = BigUint::from(1053u32);
        let reps = representations(&n, &params, &ctx).unwrap();
        assert_eq!(
            rep_mod_filter(&planted(), &n, &reps).unwrap(),
            RepFilter::ConsistentWithZero
        );
        assert!(matches!(
            rep_mod_filter(&fib(), &n, &reps).unwrap(),
            RepFilter::NonZero { .. }
        ));
        assert!(rep_mod_filter(&fib(), &n, &[]).is_err());
    }

    #[test]
    fn planted_zero_is_found() {
        let ctx = PrimeContext::with_sieve_limit(1 << 12).unwrap();
        let r = find_zeros_in_s(
            &planted(),
            2048,
            ZeroPolicy::ExactBelowCap,
            &SearchConfig::default(),
            &ctx,
        )
        .unwrap();
        assert_eq!(r.zeros, vec![(1053, ZeroCertainty::Exact)]);
        assert_eq!(r.modulus, 1);
        assert!(r.zero_progressions.is_empty());
        assert!(in_s(&BigUint::from(1053u32), &ctx).member);
    }

    #[test]
    fn rotation_reports_progression() {
        let ctx = PrimeContext::with_sieve_limit(1 << 13).unwrap();
        let rot = Lrs::from_i64(&[0, -1], &[1, 0]).unwrap();
        let r = find_zeros_in_s(
            &rot,
            1 << 12,
            ZeroPolicy::ExactBelowCap,
            &SearchConfig::default(),
            &ctx,
        )
        .unwrap();
        assert!(r.zeros.is_empty());
        assert_eq!(r.zero_progressions, vec![(1, 2)]);
        assert_eq!(r.modulus, 2);
        assert!(r.theorem_bound.is_none());
    }

    #[test]
    fn capacity_is_enforced() {
        let ctx = PrimeContext::with_sieve_limit(1 << 12).unwrap();
        let cfg = SearchConfig {
            max_search: 4096,
            ..SearchConfig::default()
        };
        assert!(matches!(
            find_zeros_in_s(&fib(), 5000, ZeroPolicy::ExactBelowCap, &cfg, &ctx),
            Err(crate::Error::Resource(_))
        ));
    }
}
