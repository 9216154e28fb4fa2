//! Moment statistics of the representation count `r(n)` over a window, and
//! the exact identities that tie them to independent counts.
//!
//! For `X = 2^w` the scan computes
//!
//! * `M0 = #{n ∈ [X, 2X] : r(n) > log₄ X}`,
//! * `M1 = ∑ r(n)` and `M2 = ∑ r(n)²`,
//!
//! together with the number of `n` that clear the threshold but are excluded
//! because two of their representations are correlated. `M1` and `M2` are
//! summed over every `n`, so that they equal the triple and quadruple counts
//! obtained by swapping the order of summation.

use std::collections::BTreeSet;
use std::io::{self, Write};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{
    euler_products, iterated_log_of_ln, mult_g, Certainty, PrimeContext, PrimeTable,
};
use crate::error::{domain, resource, Result};
use crate::skolem::{chunks, scan_block, scan_range, window_params, window_verdict, WindowParams};

/// Full scan of the window or a seeded sample without replacement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleMode {
    Full,
    Sampled { count: u64, seed: u64 },
}

/// Raw tallies over the scanned `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Tally {
    pub scanned: u64,
    pub m0: u64,
    pub m1: u64,
    pub m2: u64,
    /// `r(n) > τ` but some pair of representations is correlated.
    pub excluded_correlated: u64,
    /// `n` with at least one correlated pair, whatever `r(n)` is.
    pub with_correlated_pair: u64,
    /// `n` with `r(n) ≥ 1`.
    pub represented: u64,
    pub certainty: Certainty,
}

impl Default for Tally {
    fn default() -> Self {
        Tally {
            scanned: 0,
            m0: 0,
            m1: 0,
            m2: 0,
            excluded_correlated: 0,
            with_correlated_pair: 0,
            represented: 0,
            certainty: Certainty::Prime,
        }
    }
}

impl Tally {
    fn add(&mut self, r: usize, correlated: bool, params: &WindowParams) {
        let r = r as u64;
        let above = params.exceeds_threshold(r as usize);
        self.scanned += 1;
        self.m1 += r;
        self.m2 += r * r;
        self.m0 += above as u64;
        self.represented += (r > 0) as u64;
        self.excluded_correlated += (above && correlated) as u64;
        self.with_correlated_pair += correlated as u64;
    }

    fn merge(mut self, o: Tally) -> Tally {
        self.scanned += o.scanned;
        self.m0 += o.m0;
        self.m1 += o.m1;
        self.m2 += o.m2;
        self.excluded_correlated += o.excluded_correlated;
        self.with_correlated_pair += o.with_correlated_pair;
        self.represented += o.represented;
        self.certainty = self.certainty.weakest(o.certainty);
        self
    }

    /// Members of `𝒮(2^w)` among the scanned `n`.
    pub fn members(&self) -> u64 {
        self.m0 - self.excluded_correlated
    }
}

/// Moments of `r(n)` over one window.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowStats {
    pub w: u32,
    pub x: BigUint,
    pub tally: Tally,
    /// Fraction of scanned `n` that belong to `𝒮(2^w)`.
    pub density_estimate: f64,
    pub mode: SampleMode,
}

impl WindowStats {
    /// Factor turning sample sums into estimates over all `X + 1` integers.
    pub fn scale(&self) -> f64 {
        if self.tally.scanned == 0 {
            return 0.0;
        }
        (self.x.to_f64().unwrap_or(f64::INFINITY) + 1.0) / self.tally.scanned as f64
    }

    pub fn m0_estimate(&self) -> f64 {
        self.tally.m0 as f64 * self.scale()
    }

    pub fn m1_estimate(&self) -> f64 {
        self.tally.m1 as f64 * self.scale()
    }

    pub fn m2_estimate(&self) -> f64 {
        self.tally.m2 as f64 * self.scale()
    }

    pub fn excluded_estimate(&self) -> f64 {
        self.tally.excluded_correlated as f64 * self.scale()
    }
}

fn finish(params: &WindowParams, tally: Tally, mode: SampleMode) -> WindowStats {
    let density_estimate = if tally.scanned == 0 {
        0.0
    } else {
        tally.members() as f64 / tally.scanned as f64
    };
    WindowStats {
        w: params.w(),
        x: params.x().clone(),
        tally,
        density_estimate,
        mode,
    }
}

fn full_tally(params: &WindowParams, ctx: &PrimeContext, lo: u64, hi: u64) -> Tally {
    let blocks: Vec<_> = chunks(lo, hi).collect();
    blocks
        .par_iter()
        .map(|&(lo, hi)| {
            let mut t = Tally::default();
            if params.q_primes().is_empty() {
                t.scanned = hi - lo + 1;
                return t;
            }
            scan_block(lo, hi, params, ctx, |v| {
                t.add(v.reps.len(), v.correlated, params)
            });
            t
        })
        .reduce(Tally::default, Tally::merge)
}

/// `count` distinct offsets in `[0, population)` by Floyd's algorithm.
fn sample_offsets(population: u128, count: u64, seed: u64) -> Vec<u128> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen = BTreeSet::new();
    for j in population - count as u128..population {
        let t = rng.gen_range(0..=j);
        if !chosen.insert(t) {
            chosen.insert(j);
        }
    }
    chosen.into_iter().collect()
}

fn sampled_tally(
    params: &WindowParams,
    ctx: &PrimeContext,
    count: u64,
    seed: u64,
) -> Result<Tally> {
    if params.w() > 120 {
        return domain(format!(
            "sampling supports windows up to 2^120, got 2^{}",
            params.w()
        ));
    }
    let population = (1u128 << params.w()) + 1;
    if count == 0 || count as u128 > population {
        return domain(format!("sample size {count} must lie in [1, {population}]"));
    }
    let offsets = sample_offsets(population, count, seed);
    let tally = offsets
        .par_chunks(1024)
        .map(|block| {
            let mut t = Tally::default();
            for &off in block {
                let n = params.x() + BigUint::from(off);
                let v = window_verdict(&n, params, ctx);
                t.add(v.reps.len(), v.correlated_pair.is_some(), params);
                t.certainty = t.certainty.weakest(v.certainty());
            }
            t
        })
        .reduce(Tally::default, Tally::merge);
    Ok(tally)
}

/// Moments of `r(n)` over `[2^w, 2^{w+1}]`.
///
/// A full scan requires `2^w ≤ scan_cap`. A sample draws distinct `n`
/// uniformly from the window with a ChaCha generator seeded by `seed`;
/// results do not depend on the number of threads.
pub fn moment_scan(
    w: u32,
    sample: Option<(u64, u64)>,
    ctx: &PrimeContext,
    scan_cap: u64,
) -> Result<WindowStats> {
    let params = window_params(w)?;
    match sample {
        None => {
            let (lo, hi) = scan_range(&params, None, scan_cap)?.expect("full window is non-empty");
            Ok(finish(
                &params,
                full_tally(&params, ctx, lo, hi),
                SampleMode::Full,
            ))
        }
        Some((count, seed)) => {
            let tally = sampled_tally(&params, ctx, count, seed)?;
            Ok(finish(&params, tally, SampleMode::Sampled { count, seed }))
        }
    }
}

/// `∑_{n ∈ [X, 2X]} r(n)` counted the other way round: for each `q ∈ A(X)`
/// and integer `a ∈ B(X)`, the number of primes `P` with
/// `X ≤ Pq + a ≤ 2X`.
pub fn first_moment_oracle(w: u32, table: &PrimeTable, scan_cap: u64) -> Result<u64> {
    let params = window_params(w)?;
    let (x, two_x) = scan_range(&params, None, scan_cap)?.expect("full window is non-empty");
    let Some((a_lo, a_hi)) = params.a_range() else {
        return Ok(0);
    };
    let mut total = 0;
    for &q in params.q_primes() {
        let top = (two_x - a_lo) / q;
        if top > table.limit() {
            return resource(format!(
                "need primes up to {top}, sieve holds {}",
                table.limit()
            ));
        }
        for a in a_lo..=a_hi {
            let lo = (x - a).div_ceil(q);
            let hi = (two_x - a) / q;
            if lo <= hi {
                total += table.count_range(lo, hi);
            }
        }
    }
    Ok(total)
}

/// Leading-order predictions `X·√(log₃ X)` for `M1` and `X·log₃ X` for `M2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Predictions {
    pub m1_pred: f64,
    pub m2_pred: f64,
}

pub fn predictions(w: u32) -> Result<Predictions> {
    let params = window_params(w)?;
    let x = params.x().to_f64().unwrap_or(f64::INFINITY);
    let log3 = iterated_log_of_ln(params.ln_x(), 3);
    Ok(Predictions {
        m1_pred: x * log3.sqrt(),
        m2_pred: x * log3,
    })
}

/// Number of `n` with at least one correlated pair of representations.
#[derive(Debug, Clone, PartialEq)]
pub struct Census {
    pub w: u32,
    pub count: u64,
    pub scanned: u64,
    /// `X/(log X)^{1/3}`, the order of magnitude the count is compared with.
    pub bound_ref: f64,
    /// `count` scaled to the whole window, divided by `bound_ref`.
    pub ratio: f64,
    pub certainty: Certainty,
}

pub fn correlated_census(
    w: u32,
    sample: Option<(u64, u64)>,
    ctx: &PrimeContext,
    scan_cap: u64,
) -> Result<Census> {
    let stats = moment_scan(w, sample, ctx, scan_cap)?;
    let params = window_params(w)?;
    let x = params.x().to_f64().unwrap_or(f64::INFINITY);
    let bound_ref = x / params.ln_x().cbrt();
    let count = stats.tally.with_correlated_pair;
    Ok(Census {
        w,
        count,
        scanned: stats.tally.scanned,
        bound_ref,
        ratio: count as f64 * stats.scale() / bound_ref,
        certainty: stats.tally.certainty,
    })
}

/// Both sides of `∑_{n ≤ Y, 2 | n} g(n) ≈ Y/C`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanG {
    pub y: u64,
    pub lhs: f64,
    pub rhs: f64,
    pub rel_err: f64,
}

pub const MEAN_G_MAX: u64 = 100_000_000;
const G_SEGMENT: u64 = 1 << 18;
const C_PRIME_LIMIT: u64 = 10_000_000;

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(self) -> f64 {
        self.sum + self.comp
    }
}

/// `∑_{n ≤ Y, 2 | n} g(n) = ∑_{m ≤ Y/2} g(m)` by a segmented multiplicative
/// sieve, summed with compensation.
fn even_g_sum(y: u64) -> Result<f64> {
    let half = y / 2;
    if half == 0 {
        return Ok(0.0);
    }
    let table = PrimeTable::new(half.max(2))?;
    let primes: Vec<u64> = table.primes_in(3, half).collect();
    let segments: Vec<_> = (1..=half).step_by(G_SEGMENT as usize).collect();
    let partial: Vec<KahanSum> = segments
        .par_iter()
        .map(|&lo| {
            let hi = (lo + G_SEGMENT - 1).min(half);
            let mut g = vec![1.0f64; (hi - lo + 1) as usize];
            for &p in primes.iter().take_while(|&&p| p <= hi) {
                let f = (p - 1) as f64 / (p - 2) as f64;
                let mut m = lo.div_ceil(p) * p;
                while m <= hi {
                    g[(m - lo) as usize] *= f;
                    m += p;
                }
            }
            let mut s = KahanSum::default();
            g.iter().for_each(|&v| s.add(v));
            s
        })
        .collect();
    let mut total = KahanSum::default();
    for s in partial {
        total.add(s.sum);
        total.add(s.comp);
    }
    Ok(total.value())
}

/// Compares the mean value of `g` over even numbers with `Y/C`.
pub fn mean_g_check(y: u64) -> Result<MeanG> {
    if y == 0 || y > MEAN_G_MAX {
        return domain(format!("Y must lie in [1, {MEAN_G_MAX}], got {y}"));
    }
    let lhs = even_g_sum(y)?;
    let c = euler_products(C_PRIME_LIMIT)?.c;
    let rhs = y as f64 / c;
    Ok(MeanG {
        y,
        lhs,
        rhs,
        rel_err: (lhs - rhs).abs() / rhs,
    })
}

/// Largest `Y` accepted by [`mean_g_exact`].
pub const MEAN_G_EXACT_MAX: u64 = 20_000;

/// `∑_{n ≤ Y, 2 | n} g(n)` as an exact rational, for small `Y`.
pub fn mean_g_exact(y: u64) -> Result<BigRational> {
    if y > MEAN_G_EXACT_MAX {
        return resource(format!(
            "exact mean of g is limited to Y ≤ {MEAN_G_EXACT_MAX}"
        ));
    }
    let mut sum = BigRational::zero();
    for n in (2..=y).step_by(2) {
        sum += mult_g(n)?;
    }
    Ok(sum)
}

/// Column order of [`write_csv`].
pub const CSV_HEADER: &str =
    "w,X,scanned,M0,M1,M2,excluded_correlated,m1_pred,m2_pred,density_estimate,mode,seed";

/// Writes one row per window. Full scans print exact integer moments;
/// sampled rows print the moments scaled up to the whole window.
pub fn write_csv<W: Write>(rows: &[WindowStats], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for s in rows {
        let pred = predictions(s.w).expect("stats come from a valid window");
        let (moments, mode, seed) = match s.mode {
            SampleMode::Full => (
                format!(
                    "{},{},{},{}",
                    s.tally.m0, s.tally.m1, s.tally.m2, s.tally.excluded_correlated
                ),
                "full",
                String::new(),
            ),
            SampleMode::Sampled { seed, .. } => (
                format!(
                    "{},{},{},{}",
                    s.m0_estimate(),
                    s.m1_estimate(),
                    s.m2_estimate(),
                    s.excluded_estimate()
                ),
                "sampled",
                seed.to_string(),
            ),
        };
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            s.w,
            s.x,
            s.tally.scanned,
            moments,
            pred.m1_pred,
            pred.m2_pred,
            s.density_estimate,
            mode,
            seed
        )?;
    }
    Ok(())
}
