use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Lrs;
use crate::error::{Error, Result};

/// Shortest recurrence generating `terms`, by Berlekamp–Massey over `Q`.
///
/// Returns `Ok(None)` when every term is zero. The caller is responsible for
/// supplying at least `2L` terms for a sequence of true order `L`; the result
/// is then the minimal recurrence of the whole sequence.
pub fn minimal_recurrence(terms: &[BigInt]) -> Result<Option<Lrs>> {
    let s: Vec<BigRational> = terms
        .iter()
        .cloned()
        .map(BigRational::from_integer)
        .collect();
    let mut c = vec![BigRational::one()];
    let mut b = vec![BigRational::one()];
    let mut len = 0usize;
    let mut shift = 1usize;
    let mut last_disc = BigRational::one();

    for n in 0..s.len() {
        let mut d = s[n].clone();
        for i in 1..=len {
            if let Some(ci) = c.get(i) {
                d += ci * &s[n - i];
            }
        }
        if d.is_zero() {
            shift += 1;
            continue;
        }
        let factor = &d / &last_disc;
        let prev = c.clone();
        if c.len() < b.len() + shift {
            c.resize(b.len() + shift, BigRational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + shift] -= &factor * bi;
        }
        if 2 * len <= n {
            len = n + 1 - len;
            b = prev;
            last_disc = d;
            shift = 1;
        } else {
            shift += 1;
        }
    }

    if len == 0 {
        return Ok(None);
    }
    c.resize(len + 1, BigRational::zero());
    let mut coeffs = Vec::with_capacity(len);
    for ci in &c[1..=len] {
        if !ci.is_integer() {
            return Err(Error::Contract(
                "minimal recurrence has non-integer coefficients".into(),
            ));
        }
        coeffs.push(-ci.to_integer());
    }
    if coeffs.last().is_some_and(Zero::is_zero) {
        return Err(Error::Contract(
            "minimal polynomial is divisible by x; the sequence is not a pure recurrence".into(),
        ));
    }
    Lrs::new(coeffs, terms[..len].to_vec()).map(Some)
}

/// The minimal-order recurrence generating the same sequence as `lrs`.
///
/// The zero sequence comes back as [`Lrs::zero_sequence`], which reports
/// [`Lrs::is_zero_sequence`].
pub fn minimize(lrs: &Lrs) -> Result<Lrs> {
    let k = lrs.order();
    let terms = lrs.terms(4 * k);
    let Some(min) = minimal_recurrence(&terms[..2 * k])? else {
        return Ok(Lrs::zero_sequence());
    };
    debug_assert_eq!(min.terms(4 * k), terms);
    Ok(min)
}

/// True when `lrs` already has minimal order and is not the zero sequence.
pub fn is_minimal(lrs: &Lrs) -> Result<bool> {
    if lrs.is_zero_sequence() {
        return Ok(false);
    }
    Ok(minimize(lrs)?.order() == lrs.order())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lrs::poly::IntPoly;
    use proptest::prelude::*;

    #[test]
    fn constant_sequence_drops_to_order_one() {
        let l = Lrs::from_i64(&[0, 1], &[1, 1]).unwrap();
        let m = minimize(&l).unwrap();
        assert_eq!(m, Lrs::from_i64(&[1], &[1]).unwrap());
    }

    #[test]
    fn padded_fibonacci() {
        // Ψ_fib · (x − 2) = x³ − 3x² + x + 2
        let fib = Lrs::from_i64(&[1, 1], &[0, 1]).unwrap();
        let padded_poly = &fib.characteristic_poly() * &IntPoly::from_i64(&[-2, 1]);
        assert_eq!(padded_poly, IntPoly::from_i64(&[2, 1, -3, 1]));
        let padded = Lrs::from_i64(&[3, -1, -2], &[0, 1, 1]).unwrap();
        assert_eq!(padded.characteristic_poly(), padded_poly);
        assert_eq!(padded.terms(30), fib.terms(30));
        assert_eq!(minimize(&padded).unwrap(), fib);
        assert!(is_minimal(&fib).unwrap());
        assert!(!is_minimal(&padded).unwrap());
    }

    #[test]
    fn zero_sequence_is_flagged() {
        let l = Lrs::from_i64(&[2, 3], &[0, 0]).unwrap();
        let m = minimize(&l).unwrap();
        assert!(m.is_zero_sequence());
        assert_eq!(m.order(), 1);
        assert!(!is_minimal(&l).unwrap());
    }

    #[test]
    fn rational_intermediates() {
        // 2^n + 3^n has minimal polynomial x² − 5x + 6
        let l = Lrs::from_i64(&[5, -6], &[2, 5]).unwrap();
        assert_eq!(minimize(&l).unwrap(), l);
        // (n−1053)·2^n stays order 2 (double root)
        let p = Lrs::from_i64(&[4, -4], &[-1053, -2104]).unwrap();
        assert_eq!(minimize(&p).unwrap(), p);
    }

    fn padded_case() -> impl Strategy<Value = (Lrs, Lrs)> {
        (
            proptest::collection::vec(-6i64..6, 1..4),
            proptest::collection::vec(-9i64..9, 3),
            prop_oneof![-5i64..=-1, 1i64..=5],
            prop_oneof![-4i64..=-1, 1i64..=4],
        )
            .prop_filter_map("valid base", |(mut c, inits, last, root)| {
                *c.last_mut().unwrap() = last;
                let k = c.len();
                let base = Lrs::from_i64(&c, &inits[..k]).ok()?;
                let padded_poly = &base.characteristic_poly() * &IntPoly::from_i64(&[-root, 1]);
                // x^{k+1} − Σ a_i x^{k−i}: read coefficients back off the product
                let pc = padded_poly.coeffs();
                let coeffs: Vec<BigInt> = (0..=k).map(|i| -pc[k - i].clone()).collect();
                let padded = Lrs::new(coeffs, base.terms(k + 1)).ok()?;
                Some((base, padded))
            })
    }

    proptest! {
        #[test]
        fn minimize_preserves_terms((base, padded) in padded_case()) {
            let m = minimize(&padded).unwrap();
            let k = padded.order();
            prop_assert_eq!(m.terms(4 * k), padded.terms(4 * k));
            prop_assert!(m.order() <= base.order());
            let mm = minimize(&m).unwrap();
            prop_assert_eq!(mm, m);
        }
    }
}
