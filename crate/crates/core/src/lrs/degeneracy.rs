//! Degeneracy detection without leaving the integers.
//!
//! For a monic `Ψ` of degree `k` with roots `α_i`, the polynomial
//! `R(x) = Res_y(Ψ(y), Ψ(x·y)) = ∏_{i,j} (x·α_i − α_j)` has exactly the
//! quotients `α_j/α_i` as roots. Pairs with `α_i = α_j` contribute the factor
//! `(x − 1)`; once it is removed, a quotient of distinct roots is a root of
//! unity of order `m` iff the cyclotomic polynomial `Φ_m` divides what is
//! left. Since `deg R ≤ k²`, only `m` with `φ(m) ≤ k²` can occur, and
//! `φ(m) ≥ √(m/2)` bounds the search by `m ≤ 2k⁴`.
//!
//! `R` is computed by evaluating the Sylvester determinant at `k² + 1` integer
//! points (fraction-free Bareiss elimination) and interpolating.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::minimize::is_minimal;
use super::poly::{cyclotomic, IntPoly};
use super::Lrs;
use crate::arith::totient;
use crate::error::{Error, Result};

/// Whether some quotient of distinct characteristic roots is a root of unity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degeneracy {
    NonDegenerate,
    /// `witness_order` is the smallest order `m ≥ 2` of such a root of unity.
    Degenerate {
        witness_order: u64,
    },
}

/// Determinant of a square integer matrix by Bareiss' fraction-free elimination.
pub(crate) fn determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Resultant of `f` and `g` viewed with formal degrees `df`, `dg` (coefficients
/// listed lowest first, zero-padded as needed).
pub(crate) fn resultant_formal(f: &[BigInt], df: usize, g: &[BigInt], dg: usize) -> BigInt {
    let n = df + dg;
    let coeff = |p: &[BigInt], i: usize| p.get(i).cloned().unwrap_or_default();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for r in 0..dg {
        for i in 0..=df {
            m[r][r + i] = coeff(f, df - i);
        }
    }
    for r in 0..df {
        for i in 0..=dg {
            m[dg + r][r + i] = coeff(g, dg - i);
        }
    }
    determinant(m)
}

/// `R(x) = Res_y(Ψ(y), Ψ(x·y))` for a polynomial of degree `k ≥ 1`.
pub fn quotient_resultant(psi: &IntPoly) -> IntPoly {
    let k = psi.degree().expect("non-zero polynomial");
    let c = psi.coeffs();
    let points: Vec<(BigInt, BigInt)> = (0..=(k * k) as i64)
        .map(|x0| {
            let x0 = BigInt::from(x0);
            // Ψ(x0·y) has y^i coefficient c_i·x0^i; formal degree stays k
            let mut pow = BigInt::one();
            let scaled: Vec<BigInt> = c
                .iter()
                .map(|ci| {
                    let v = ci * &pow;
                    pow *= &x0;
                    v
                })
                .collect();
            let r = resultant_formal(c, k, &scaled, k);
            (x0, r)
        })
        .collect();
    IntPoly::interpolate(&points).expect("resultant is an integer polynomial")
}

/// All `m ≥ 2` with `Φ_m | R` after the root 1 is stripped, ascending.
pub fn root_of_unity_orders(psi: &IntPoly) -> Vec<u64> {
    let k = psi.degree().expect("non-zero polynomial");
    if k < 2 {
        return Vec::new();
    }
    let (r, _) = quotient_resultant(psi).strip_root_one();
    let deg = r.degree().unwrap_or(0);
    let bound = 2 * (k as u64).pow(4);
    (2..=bound)
        .filter(|&m| totient(m) as usize <= deg.min(k * k))
        .filter(|&m| r.is_divisible_by_monic(&cyclotomic(m as usize)))
        .collect()
}

/// Degeneracy of a minimized, non-zero recurrence.
pub fn is_degenerate(lrs: &Lrs) -> Result<Degeneracy> {
    if !is_minimal(lrs)? {
        return Err(Error::Contract(
            "degeneracy is defined on minimized, non-zero recurrences".into(),
        ));
    }
    Ok(
        match root_of_unity_orders(&lrs.characteristic_poly()).first() {
            Some(&m) => Degeneracy::Degenerate { witness_order: m },
            None => Degeneracy::NonDegenerate,
        },
    )
}
