//! Bateman–Horn experiments for two linear forms `f₁ = a₁t + b₁`,
//! `f₂ = a₂t + b₂`.
//!
//! The constant `C_f = ∏_p p(p − ω_f(p))/(p − 1)²` is evaluated as the twin
//! constant `C` (where `ω_f(p) = 2` for every odd `p`) times a correction at
//! `p = 2` and at each odd prime dividing `Δ = |a₁a₂(a₁b₂ − a₂b₁)|`, the only
//! primes where `ω_f(p)` can differ from 2.

use std::collections::BTreeSet;
use std::io::{self, Write};

use rayon::prelude::*;

use crate::arith::{distinct_prime_factors, euler_products_with, is_prime_u64, PrimeTable};
use crate::error::{domain, resource, Result};

/// Largest absolute value accepted for a coefficient.
pub const COEFF_LIMIT: i64 = 1 << 24;

/// Unconditional upper-bound constants for `#{x ≤ X : f₁(x), f₂(x) prime}`.
pub const BRUN_KAPPA: f64 = 8.0;
pub const WU_KAPPA: f64 = 3.418;

const DIRECT_OMEGA_BELOW: u64 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LinearFormPair {
    a1: i64,
    b1: i64,
    a2: i64,
    b2: i64,
    delta: u128,
}

impl LinearFormPair {
    /// Requires `a₁, a₂ > 0`, distinct forms and coefficients bounded by
    /// [`COEFF_LIMIT`].
    pub fn new(a1: i64, b1: i64, a2: i64, b2: i64) -> Result<Self> {
        if a1 <= 0 || a2 <= 0 {
            return domain(format!(
                "leading coefficients must be positive, got {a1} and {a2}"
            ));
        }
        if [a1, b1, a2, b2].iter().any(|v| v.abs() > COEFF_LIMIT) {
            return domain(format!("coefficients are limited to ±{COEFF_LIMIT}"));
        }
        if (a1, b1) == (a2, b2) {
            return domain("the two forms coincide");
        }
        let cross = (a1 as i128 * b2 as i128 - a2 as i128 * b1 as i128).unsigned_abs();
        Ok(LinearFormPair {
            a1,
            b1,
            a2,
            b2,
            delta: a1 as u128 * a2 as u128 * cross,
        })
    }

    pub fn coeffs(&self) -> (i64, i64, i64, i64) {
        (self.a1, self.b1, self.a2, self.b2)
    }

    /// `Δ = |a₁a₂(a₁b₂ − a₂b₁)|`.
    pub fn delta(&self) -> u128 {
        self.delta
    }

    fn cross(&self) -> u64 {
        (self.a1 as i128 * self.b2 as i128 - self.a2 as i128 * self.b1 as i128).unsigned_abs()
            as u64
    }

    pub fn eval(&self, x: i64) -> (i128, i128) {
        (
            self.a1 as i128 * x as i128 + self.b1 as i128,
            self.a2 as i128 * x as i128 + self.b2 as i128,
        )
    }

    /// Primes dividing `Δ`, ascending; empty when `Δ = 0`.
    pub fn delta_primes(&self) -> Vec<u64> {
        if self.delta == 0 {
            return Vec::new();
        }
        let mut set = BTreeSet::new();
        for part in [self.a1 as u64, self.a2 as u64, self.cross()] {
            set.extend(distinct_prime_factors(part));
        }
        set.into_iter().collect()
    }
}

/// Outcome of [`admissible`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Admissibility {
    pub admissible: bool,
    /// Smallest prime modulo which `f₁f₂` vanishes identically.
    pub certificate_prime: Option<u64>,
}

/// Number of roots of `f₁f₂` in `F_p` (between 0 and `p`).
pub fn omega_f(pair: &LinearFormPair, p: u64) -> Result<u64> {
    if !is_prime_u64(p) {
        return domain(format!("{p} is not prime"));
    }
    if p < DIRECT_OMEGA_BELOW {
        let pi = p as i128;
        let count = (0..p as i64)
            .filter(|&x| {
                let (v1, v2) = pair.eval(x);
                (v1 * v2).rem_euclid(pi) == 0
            })
            .count();
        return Ok(count as u64);
    }
    let (a1, b1, a2, b2) = pair.coeffs();
    let m = |v: i64| v.rem_euclid(p as i64);
    let roots = |a: i64, b: i64| match (m(a), m(b)) {
        (0, 0) => None,
        (0, _) => Some(0),
        _ => Some(1),
    };
    Ok(match (roots(a1, b1), roots(a2, b2)) {
        (None, _) | (_, None) => p,
        (Some(1), Some(1)) => {
            // both roots exist; they coincide iff a₁b₂ ≡ a₂b₁
            let cross = (a1 as i128 * b2 as i128 - a2 as i128 * b1 as i128).rem_euclid(p as i128);
            if cross == 0 {
                1
            } else {
                2
            }
        }
        (Some(r1), Some(r2)) => r1 + r2,
    })
}

/// Whether `f₁f₂` avoids vanishing identically modulo every prime.
///
/// A product of two linear forms has at most two roots mod `p` unless a
/// form is identically zero mod `p`, so only `p = 2` and primes dividing a
/// form's content need checking.
pub fn admissible(pair: &LinearFormPair) -> Admissibility {
    let (a1, b1, a2, b2) = pair.coeffs();
    let content = |a: i64, b: i64| num_integer::gcd(a, b).unsigned_abs();
    let mut candidates: BTreeSet<u64> = BTreeSet::from([2]);
    candidates.extend(distinct_prime_factors(content(a1, b1)));
    candidates.extend(distinct_prime_factors(content(a2, b2)));
    let failing = candidates
        .into_iter()
        .find(|&p| omega_f(pair, p).expect("candidates are prime") == p);
    Admissibility {
        admissible: failing.is_none(),
        certificate_prime: failing,
    }
}

/// `C_f` truncated at `prime_limit`, with the true value in
/// `[c_f − tail_bound, c_f]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BhConstant {
    pub c_f: f64,
    pub tail_bound: f64,
    /// The twin constant the corrections were applied to.
    pub c: f64,
    /// `(p, ω_f(p), factor)` for every corrected prime.
    pub corrections: Vec<(u64, u64, f64)>,
}

/// The Bateman–Horn constant of an admissible pair.
pub fn bh_constant(
    pair: &LinearFormPair,
    table: &PrimeTable,
    prime_limit: u64,
) -> Result<BhConstant> {
    let adm = admissible(pair);
    if let Some(p) = adm.certificate_prime {
        return domain(format!(
            "pair is not admissible (vanishes mod {p}); C_f = 0"
        ));
    }
    if pair.delta() == 0 {
        return domain("forms are proportional; the product has a repeated factor");
    }
    let euler = euler_products_with(table, prime_limit)?;
    let mut primes = pair.delta_primes();
    if !primes.contains(&2) {
        primes.insert(0, 2);
    }
    let mut c_f = euler.c;
    let mut corrections = Vec::with_capacity(primes.len());
    for p in primes {
        let w = omega_f(pair, p)?;
        // p(p−ω)/(p−1)² divided by the factor already inside C
        let factor = if p == 2 {
            (2 - w) as f64
        } else {
            (p - w) as f64 / (p - 2) as f64
        };
        c_f *= factor;
        corrections.push((p, w, factor));
    }
    Ok(BhConstant {
        c_f,
        tail_bound: c_f * 2.0 / prime_limit as f64,
        c: euler.c,
        corrections,
    })
}

/// `#{1 ≤ x ≤ X : f₁(x) and f₂(x) both prime}`.
pub fn count_pairs(pair: &LinearFormPair, x_max: u64, table: &PrimeTable) -> Result<u64> {
    if x_max == 0 {
        return Ok(0);
    }
    if x_max > i64::MAX as u64 {
        return resource("X exceeds the 64-bit range");
    }
    let (v1, v2) = pair.eval(x_max as i64);
    let top = v1.max(v2);
    if top > table.limit() as i128 {
        return resource(format!(
            "form values reach {top}; sieve holds {}",
            table.limit()
        ));
    }
    let is_p = |v: i128| v >= 2 && table.is_prime(v as u64);
    const BLOCK: u64 = 1 << 16;
    let blocks: Vec<u64> = (1..=x_max).step_by(BLOCK as usize).collect();
    Ok(blocks
        .par_iter()
        .map(|&lo| {
            let hi = (lo + BLOCK - 1).min(x_max);
            (lo..=hi)
                .filter(|&x| {
                    let (v1, v2) = pair.eval(x as i64);
                    is_p(v1) && is_p(v2)
                })
                .count() as u64
        })
        .sum())
}

/// Measured count against the Bateman–Horn prediction and the sieve bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub x: u64,
    pub actual: u64,
    pub c_f: f64,
    pub tail_bound: f64,
    /// `C_f·X/(log X)²`.
    pub bh_point: f64,
    /// `C_f·∫₂^X dt/(log t)²`.
    pub bh_integral: f64,
    pub brun8: f64,
    pub wu: f64,
    /// `(Δ/φ(Δ))·X/(log X)²`.
    pub sieve_rhs: f64,
}

impl BoundReport {
    pub fn wu_holds(&self) -> bool {
        (self.actual as f64) <= self.wu
    }

    pub fn integral_ratio(&self) -> f64 {
        self.actual as f64 / self.bh_integral
    }
}

/// `∫₂^X dt/(log t)²`, as `∫ e^u/u² du` over `[log 2, log X]`, to relative
/// accuracy `1e-6`.
pub fn log_squared_integral(x: f64) -> f64 {
    let f = |u: f64| u.exp() / (u * u);
    adaptive_simpson(f, 2f64.ln(), x.ln(), 1e-6)
}

fn adaptive_simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn step(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = simpson(fa, fm, fb, a, b);
    // a crude first pass sets the absolute tolerance
    let tol = rel_tol * whole.abs().max(f64::MIN_POSITIVE) / 10.0;
    step(&f, a, b, fa, fm, fb, whole, tol, 50)
}

/// Full comparison at `X ≥ 100`.
pub fn bound_report(
    pair: &LinearFormPair,
    x: u64,
    table: &PrimeTable,
    prime_limit: u64,
) -> Result<BoundReport> {
    if x < 100 {
        return domain(format!("bound report needs X ≥ 100, got {x}"));
    }
    let constant = bh_constant(pair, table, prime_limit)?;
    let actual = count_pairs(pair, x, table)?;
    let xf = x as f64;
    let base = xf / xf.ln().powi(2);
    let bh_point = constant.c_f * base;
    let delta_ratio: f64 = pair
        .delta_primes()
        .iter()
        .map(|&p| p as f64 / (p - 1) as f64)
        .product();
    Ok(BoundReport {
        x,
        actual,
        c_f: constant.c_f,
        tail_bound: constant.tail_bound,
        bh_point,
        bh_integral: constant.c_f * log_squared_integral(xf),
        brun8: BRUN_KAPPA * bh_point,
        wu: WU_KAPPA * bh_point,
        sieve_rhs: delta_ratio * base,
    })
}

/// Column order of [`write_report_csv`].
pub const REPORT_CSV_HEADER: &str =
    "X,actual,c_f,tail_bound,bh_point,bh_integral,integral_ratio,brun8,wu,wu_holds,sieve_rhs";

pub fn write_report_csv<W: Write>(rows: &[BoundReport], mut out: W) -> io::Result<()> {
    writeln!(out, "{REPORT_CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.x,
            r.actual,
            r.c_f,
            r.tail_bound,
            r.bh_point,
            r.bh_integral,
            r.integral_ratio(),
            r.brun8,
            r.wu,
            r.wu_holds(),
            r.sieve_rhs
        )?;
    }
    Ok(())
}
