//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_integer::Integer;
use skolem_set::arith::PrimeTable;
use skolem_set::skolem::window_params;

/// `(q, P, a)`
pub type Rep = (u64, u64, u64);

pub fn trial_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Double loop over every prime `q` and every integer `a`, with plain
/// floating-point interval tests.
pub fn naive_reps(n: u64, w: u32) -> Vec<Rep> {
    let ln_x = w as f64 * 2f64.ln();
    let log2 = ln_x.ln().max(1.0);
    let log3 = if ln_x.ln() > 1.0 {
        ln_x.ln().ln().max(1.0)
    } else {
        1.0
    };
    let (b_lo, b_hi) = (ln_x / log3.sqrt(), 2.0 * ln_x / log3.sqrt());
    let mut out = Vec::new();
    for q in 2..=64u64 {
        if !trial_prime(q) || (q as f64) < log2 || (q as f64) > ln_x.sqrt() {
            continue;
        }
        for a in 1..=200u64 {
            if (a as f64) < b_lo || (a as f64) > b_hi || a > n || !(n - a).is_multiple_of(q) {
                continue;
            }
            if trial_prime((n - a) / q) {
                out.push((q, (n - a) / q, a));
            }
        }
    }
    out
}

/// Ordered pairs of representations of a common `n ∈ [X, 2X]`, counted by
/// solving `qP + a = q'P' + a'`.
///
/// With `P₀` the least non-negative solution of `qP ≡ a' − a (mod q')`, the
/// solutions are `P = P₀ + q't` and `P' = P₀' + qt`.
pub fn quadruple_count(w: u32, table: &PrimeTable) -> u64 {
    let params = window_params(w).unwrap();
    let (x, two_x) = (1i64 << w, 2i64 << w);
    let Some((a_lo, a_hi)) = params.a_range() else {
        return 0;
    };
    let qs: Vec<i64> = params.q_primes().iter().map(|&q| q as i64).collect();
    let prime = |v: i64| v >= 2 && table.is_prime(v as u64);
    let mut total = 0;
    for &q in &qs {
        for &q2 in &qs {
            for a in a_lo as i64..=a_hi as i64 {
                for a2 in a_lo as i64..=a_hi as i64 {
                    let (step_p, p0) = if q == q2 {
                        if (a2 - a) % q != 0 {
                            continue;
                        }
                        (1, 0)
                    } else {
                        // q·P ≡ a' − a (mod q')
                        let inv = (q.extended_gcd(&q2).x).rem_euclid(q2);
                        (q2, ((a2 - a) * inv).rem_euclid(q2))
                    };
                    // n = qP + a ≥ X gives a lower bound on t
                    let mut t = ((x - a - q * p0) as f64 / (q * step_p) as f64).ceil() as i64 - 1;
                    loop {
                        let p = p0 + step_p * t;
                        let n = q * p + a;
                        if n > two_x {
                            break;
                        }
                        if n >= x {
                            let p2 = (n - a2) / q2;
                            debug_assert_eq!(q2 * p2 + a2, n);
                            if prime(p) && prime(p2) {
                                total += 1;
                            }
                        }
                        t += 1;
                    }
                }
            }
        }
    }
    total
}
