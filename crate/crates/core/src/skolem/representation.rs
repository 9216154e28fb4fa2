use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::window::WindowParams;
use crate::arith::{Certainty, PrimeContext};
use crate::error::{domain, Result};

/// `n = P·q + a` with `q ∈ A(X)`, `a ∈ B(X)` and both `q` and `P` prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub q: u64,
    pub p: BigUint,
    pub a: u64,
    /// How `P` was certified; `q` is always small enough to be exact.
    pub certainty: Certainty,
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.q, self.p, self.a)
    }
}

/// `(q, P, a)` for an `n` that fits in 64 bits.
pub(crate) type RawRep = (u64, u64, u64);

/// Representations of a 64-bit `n`, appended to `out` in `(q, a)` order.
pub(crate) fn raw_representations(
    n: u64,
    params: &WindowParams,
    ctx: &PrimeContext,
    out: &mut Vec<RawRep>,
) {
    out.clear();
    let Some((a_lo, a_hi)) = params.a_range() else {
        return;
    };
    for &q in params.q_primes() {
        // first a ≥ a_lo with a ≡ n (mod q)
        let r = n % q;
        let mut a = a_lo + (r + q - a_lo % q) % q;
        while a <= a_hi && a < n {
            let p = (n - a) / q;
            if ctx.is_prime_u64(p) {
                out.push((q, p, a));
            }
            a += q;
        }
    }
}

/// First pair of correlated representations, as indices.
pub(crate) fn first_correlated_pair<T>(
    reps: &[T],
    key: impl Fn(&T) -> (u64, u64),
    params: &WindowParams,
) -> Option<(usize, usize)> {
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            if correlated_qa(key(&reps[i]), key(&reps[j]), params) {
                return Some((i, j));
            }
        }
    }
    None
}

fn correlated_qa((q, a): (u64, u64), (q2, a2): (u64, u64), params: &WindowParams) -> bool {
    if q == q2 || a == a2 {
        return false;
    }
    let plus = (a as i128 + q as i128) - (a2 as i128 + q2 as i128);
    let minus = (a as i128 - q as i128) - (a2 as i128 - q2 as i128);
    params.within_gap(plus.unsigned_abs() as u64) || params.within_gap(minus.unsigned_abs() as u64)
}

/// All representations of `n ∈ [X, 2X]` in the window, ordered by `q` then `a`.
pub fn representations(
    n: &BigUint,
    params: &WindowParams,
    ctx: &PrimeContext,
) -> Result<Vec<Representation>> {
    if !params.contains(n) {
        return domain(format!(
            "{n} lies outside [2^{0}, 2^{1}]",
            params.w(),
            params.w() + 1
        ));
    }
    if let Some(small) = n.to_u64() {
        let mut raw = Vec::new();
        raw_representations(small, params, ctx, &mut raw);
        return Ok(raw
            .into_iter()
            .map(|(q, p, a)| Representation {
                q,
                p: BigUint::from(p),
                a,
                certainty: Certainty::Prime,
            })
            .collect());
    }
    let mut reps = Vec::new();
    let Some((a_lo, a_hi)) = params.a_range() else {
        return Ok(reps);
    };
    for &q in params.q_primes() {
        let r = (n % q).to_u64().expect("residue below q");
        let mut a = a_lo + (r + q - a_lo % q) % q;
        while a <= a_hi {
            let (p, rem) = (n - a).div_rem(&BigUint::from(q));
            debug_assert!(rem == BigUint::from(0u32));
            let certainty = ctx.check(&p);
            if certainty.is_prime() {
                reps.push(Representation { q, p, a, certainty });
            }
            a += q;
        }
    }
    Ok(reps)
}

/// Whether two representations of the same `n` are correlated: `q ≠ q'`,
/// `a ≠ a'` and `|(a + ηq) − (a' + ηq')| < √(log X)` for `η = 1` or `η = −1`.
pub fn correlated(r1: &Representation, r2: &Representation, params: &WindowParams) -> bool {
    correlated_qa((r1.q, r1.a), (r2.q, r2.a), params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skolem::window_params;

    fn ctx() -> PrimeContext {
        PrimeContext::with_sieve_limit(1 << 16).unwrap()
    }

    fn triples(reps: &[Representation]) -> Vec<(u64, u64, u64)> {
        reps.iter()
            .map(|r| (r.q, r.p.to_u64().unwrap(), r.a))
            .collect()
    }

    #[test]
    fn known_window_ten_values() {
        let p = window_params(10).unwrap();
        let r = representations(&BigUint::from(1053u32), &p, &ctx()).unwrap();
        assert_eq!(triples(&r), vec![(2, 523, 7), (2, 521, 11)]);
        let r = representations(&BigUint::from(1025u32), &p, &ctx()).unwrap();
        assert_eq!(triples(&r), vec![(2, 509, 7)]);
        assert!(representations(&BigUint::from(2049u32), &p, &ctx()).is_err());
        assert!(representations(&BigUint::from(1023u32), &p, &ctx()).is_err());
    }

    #[test]
    fn correlation_examples() {
        // a window with log X close to 49 has gap ≈ 7
        let p = window_params(71).unwrap();
        assert!((p.gap() - 7.0).abs() < 0.05);
        let rep = |q: u64, a: u64| Representation {
            q,
            p: BigUint::from(3u32),
            a,
            certainty: Certainty::Prime,
        };
        assert!(correlated(&rep(5, 50), &rep(7, 46), &p));
        assert!(correlated(&rep(7, 46), &rep(5, 50), &p));
        assert!(!correlated(&rep(5, 50), &rep(5, 51), &p));
        assert!(!correlated(&rep(5, 50), &rep(7, 50), &p));
        assert!(!correlated(&rep(5, 50), &rep(7, 70), &p));
    }

    #[test]
    fn big_n_matches_small_path_structure() {
        let p = window_params(71).unwrap();
        let n = (BigUint::from(1u32) << 71u32) + 12345u32;
        let reps = representations(&n, &p, &ctx()).unwrap();
        for r in &reps {
            assert_eq!(&r.p * r.q + r.a, n);
            assert!(matches!(r.certainty, Certainty::ProbablePrime { .. }));
            assert!(p.q_in_a(r.q) && p.a_in_b(r.a));
        }
        let keys: Vec<_> = reps.iter().map(|r| (r.q, r.a)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
}
