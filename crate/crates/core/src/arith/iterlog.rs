use crate::error::{domain, Result};

/// The clamped iterated logarithm `log_j x` (natural base).
///
/// `log₁ x = ln x` and `log_j x = max{1, log_{j−1}(ln x)}` for `j ≥ 2`. When
/// `ln x ≤ 1` the inner term is outside the domain of `log_{j−1}` for
/// `j ≥ 3`; the result is then the clamp value 1.
///
/// ```
/// use skolem_set::arith::iterated_log;
/// assert!((iterated_log(std::f64::consts::E, 1).unwrap() - 1.0).abs() < 1e-15);
/// assert_eq!(iterated_log(1024.0, 4).unwrap(), 1.0);
/// ```
pub fn iterated_log(x: f64, j: u32) -> Result<f64> {
    if !x.is_finite() || x <= 1.0 {
        return domain(format!("iterated logarithm needs a finite x > 1, got {x}"));
    }
    if j == 0 {
        return domain("iterated logarithm order must be positive");
    }
    Ok(iterated_log_of_ln(x.ln(), j))
}

/// `log_j x` given `ln x > 0`; handy when `x` itself does not fit an `f64`
/// (for `X = 2^w`, `ln X = w·ln 2`).
pub fn iterated_log_of_ln(ln_x: f64, j: u32) -> f64 {
    debug_assert!(ln_x > 0.0 && j >= 1);
    let mut v = ln_x;
    for _ in 1..j {
        if v <= 1.0 {
            return 1.0;
        }
        v = v.ln().max(1.0);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_cases() {
        assert!((iterated_log(std::f64::consts::E, 1).unwrap() - 1.0).abs() < 1e-15);
        assert!(iterated_log(1.0, 1).is_err());
        assert!(iterated_log(0.5, 2).is_err());
        assert!(iterated_log(f64::NAN, 2).is_err());
        assert!(iterated_log(10.0, 0).is_err());
    }

    #[test]
    fn window_ten_values() {
        let x = 1024.0;
        // ln 1024 = 6.931472, ln 6.931472 = 1.936072
        assert!((iterated_log(x, 2).unwrap() - 1.936_072).abs() < 1e-5);
        // ln 1.936072 = 0.6606 < 1, clamped
        assert_eq!(iterated_log(x, 3).unwrap(), 1.0);
        assert_eq!(iterated_log(x, 4).unwrap(), 1.0);
    }

    #[test]
    fn clamp_engages_below_e() {
        assert_eq!(iterated_log(2.0, 2).unwrap(), 1.0);
        assert!(iterated_log(2.0, 1).unwrap() < 1.0);
    }

    #[test]
    fn from_ln_matches() {
        for w in 10..200u32 {
            let ln = w as f64 * std::f64::consts::LN_2;
            for j in 1..6 {
                let a = iterated_log_of_ln(ln, j);
                let b = iterated_log(2f64.powi(w as i32), j).unwrap();
                assert!((a - b).abs() <= 1e-12 * b.abs(), "w={w} j={j}");
            }
        }
    }
}
