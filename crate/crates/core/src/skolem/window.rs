use std::f64::consts::LN_2;

use num_bigint::BigUint;

use crate::arith::{is_prime_u64, iterated_log_of_ln};
use crate::error::{domain, Result};

/// Candidates closer than this to an interval endpoint are re-decided with an
/// algebraically rearranged comparison.
const ENDPOINT_GUARD: f64 = 1e-9;

/// Parameters of the window `X = 2^w`.
///
/// * `A(X) = [log₂ X, √(log X)]` holds the small primes `q`;
/// * `B(X) = [log X/√(log₃ X), 2·log X/√(log₃ X)]` holds the shifts `a`;
/// * `τ = log₄ X` is the representation threshold;
/// * `gap = √(log X)` is the correlation distance.
///
/// All logarithms are the clamped iterated logarithms of
/// [`iterated_log`](crate::arith::iterated_log).
#[derive(Debug, Clone, PartialEq)]
pub struct WindowParams {
    w: u32,
    x: BigUint,
    ln_x: f64,
    a_interval: (f64, f64),
    b_interval: (f64, f64),
    threshold: f64,
    gap: f64,
    q_primes: Vec<u64>,
    a_range: Option<(u64, u64)>,
}

/// Parameters of the window `[2^w, 2^{w+1}]`; `w ≥ 10`.
pub fn window_params(w: u32) -> Result<WindowParams> {
    if w < 10 {
        return domain(format!("windows start at w = 10, got {w}"));
    }
    let ln_x = w as f64 * LN_2;
    let log3 = iterated_log_of_ln(ln_x, 3);
    let a_interval = (iterated_log_of_ln(ln_x, 2), ln_x.sqrt());
    let b_interval = (ln_x / log3.sqrt(), 2.0 * ln_x / log3.sqrt());
    let mut params = WindowParams {
        w,
        x: BigUint::from(1u32) << w,
        ln_x,
        a_interval,
        b_interval,
        threshold: iterated_log_of_ln(ln_x, 4),
        gap: ln_x.sqrt(),
        q_primes: Vec::new(),
        a_range: None,
    };
    params.q_primes = (2..=a_interval.1.floor() as u64 + 1)
        .filter(|&q| is_prime_u64(q) && params.q_in_a(q))
        .collect();
    let lo = (b_interval.0.floor() as u64).max(1);
    let hi = b_interval.1.ceil() as u64 + 1;
    let mut ints = (lo..=hi).filter(|&a| params.a_in_b(a));
    if let Some(first) = ints.next() {
        let last = ints.next_back().unwrap_or(first);
        params.a_range = Some((first, last));
    }
    Ok(params)
}

fn near(v: f64, endpoint: f64) -> bool {
    (v - endpoint).abs() <= ENDPOINT_GUARD * endpoint.abs().max(1.0)
}

impl WindowParams {
    pub fn w(&self) -> u32 {
        self.w
    }

    /// `X = 2^w`.
    pub fn x(&self) -> &BigUint {
        &self.x
    }

    /// `log X = w·ln 2`.
    pub fn ln_x(&self) -> f64 {
        self.ln_x
    }

    pub fn a_interval(&self) -> (f64, f64) {
        self.a_interval
    }

    pub fn b_interval(&self) -> (f64, f64) {
        self.b_interval
    }

    /// `τ = log₄ X`.
    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    /// `√(log X)`.
    pub fn gap(&self) -> f64 {
        self.gap
    }

    /// Primes in `A(X)`, ascending.
    pub fn q_primes(&self) -> &[u64] {
        &self.q_primes
    }

    /// Inclusive range of integers in `B(X)`.
    pub fn a_range(&self) -> Option<(u64, u64)> {
        self.a_range
    }

    /// Whether the integer `q` lies in `A(X)`.
    pub fn q_in_a(&self, q: u64) -> bool {
        let (lo, hi) = self.a_interval;
        let v = q as f64;
        let above = if near(v, lo) {
            // log₂ X = max{1, ln ln X}; for q ≥ 1: q ≥ ln ln X ⇔ e^q ≥ ln X
            v >= 1.0 && v.exp() >= self.ln_x
        } else {
            v >= lo
        };
        let below = if near(v, hi) {
            v * v <= self.ln_x
        } else {
            v <= hi
        };
        above && below
    }

    /// Whether the integer `a` lies in `B(X)`.
    pub fn a_in_b(&self, a: u64) -> bool {
        let (lo, hi) = self.b_interval;
        let v = a as f64;
        let log3 = iterated_log_of_ln(self.ln_x, 3);
        let above = if near(v, lo) {
            v * v * log3 >= self.ln_x * self.ln_x
        } else {
            v >= lo
        };
        let below = if near(v, hi) {
            v * v * log3 <= 4.0 * self.ln_x * self.ln_x
        } else {
            v <= hi
        };
        above && below
    }

    /// Whether an integer distance is strictly below `√(log X)`.
    pub fn within_gap(&self, d: u64) -> bool {
        let v = d as f64;
        if near(v, self.gap) {
            v * v < self.ln_x
        } else {
            v < self.gap
        }
    }

    /// `r > τ` with the strict inequality.
    pub fn exceeds_threshold(&self, r: usize) -> bool {
        r as f64 > self.threshold
    }

    /// `[X, 2X]` as `u64` bounds when `w ≤ 62`.
    pub fn range_u64(&self) -> Option<(u64, u64)> {
        (self.w <= 62).then(|| (1u64 << self.w, 1u64 << (self.w + 1)))
    }

    pub fn contains(&self, n: &BigUint) -> bool {
        *n >= self.x && *n <= (&self.x << 1u32)
    }
}
