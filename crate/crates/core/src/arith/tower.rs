//! Iterated exponentials `exp_j(r)`.
//!
//! Effective zero bounds for recurrences are towers like `exp₅(6.4·10¹¹)`, far
//! outside any floating-point range. A [`TowerExpr`] keeps the number of
//! exponentials separate from the innermost mantissa.
//!
//! Canonical form: the level is lowered (`exp_j(r) = exp_{j−1}(e^r)`) while
//! `e^r` is finite in `f64`, so a canonical expression with level `≥ 1` has a
//! mantissa of at least `ln(f64::MAX) ≈ 709.78`. Two canonical expressions are
//! then ordered by level first and mantissa second.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{domain, Result};

/// Relative tolerance under which two mantissas at the same level compare equal.
pub const MANTISSA_REL_TOL: f64 = 1e-9;

/// Largest `r` with `e^r` finite.
const LN_F64_MAX: f64 = 709.782_712_893_384;

/// The real number `exp_level(mantissa)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TowerExpr {
    level: u32,
    mantissa: f64,
}

impl TowerExpr {
    /// `exp_level(mantissa)` for a finite `mantissa > 1`, put in canonical form.
    pub fn new(level: u32, mantissa: f64) -> Result<Self> {
        if !mantissa.is_finite() || mantissa <= 1.0 {
            return domain(format!(
                "tower mantissa must be finite and > 1, got {mantissa}"
            ));
        }
        Ok(Self { level, mantissa }.canonical())
    }

    /// `exp_level(e^ln_mantissa)`, for mantissas too large to hold directly.
    pub fn from_ln(level: u32, ln_mantissa: f64) -> Result<Self> {
        if !ln_mantissa.is_finite() || ln_mantissa <= 0.0 {
            return domain(format!(
                "log-mantissa must be finite and > 0, got {ln_mantissa}"
            ));
        }
        Self::new(level + 1, ln_mantissa)
    }

    fn canonical(mut self) -> Self {
        while self.level > 0 && self.mantissa < LN_F64_MAX {
            self.mantissa = self.mantissa.exp();
            self.level -= 1;
        }
        self
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn mantissa(&self) -> f64 {
        self.mantissa
    }

    /// The value as an `f64` when it is representable.
    pub fn to_f64(&self) -> Option<f64> {
        (self.level == 0).then_some(self.mantissa)
    }

    /// The larger of two towers under [`tower_cmp`].
    pub fn max(self, other: Self) -> Self {
        if tower_cmp(&self, &other) == Ordering::Less {
            other
        } else {
            self
        }
    }
}

/// Total order on canonical towers consistent with the real values they
/// denote (mantissas within [`MANTISSA_REL_TOL`] compare `Equal`).
pub fn tower_cmp(u: &TowerExpr, v: &TowerExpr) -> Ordering {
    match u.level.cmp(&v.level) {
        Ordering::Equal => {
            let (a, b) = (u.mantissa, v.mantissa);
            if (a - b).abs() <= MANTISSA_REL_TOL * a.abs().max(b.abs()) {
                Ordering::Equal
            } else {
                a.partial_cmp(&b).expect("finite mantissas")
            }
        }
        other => other,
    }
}

impl fmt::Display for TowerExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp_{}({:.6e})", self.level, self.mantissa)
    }
}
