use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense univariate polynomial with arbitrary-precision integer coefficients,
/// stored lowest degree first with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `x^d − 1`.
    pub fn x_pow_minus_one(d: usize) -> Self {
        let mut c = vec![BigInt::zero(); d + 1];
        c[0] = BigInt::from(-1);
        c[d] = BigInt::one();
        Self::new(c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Quotient and remainder by a monic divisor, exact over the integers.
    ///
    /// # Panics
    ///
    /// If `divisor` is not monic.
    pub fn div_rem_monic(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.degree().expect("monic implies nonzero");
        let Some(sd) = self.degree() else {
            return (IntPoly::zero(), IntPoly::zero());
        };
        if sd < dd {
            return (IntPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); sd - dd + 1];
        for i in (0..=sd - dd).rev() {
            let c = rem[i + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (IntPoly::new(quot), IntPoly::new(rem))
    }

    pub fn is_divisible_by_monic(&self, divisor: &IntPoly) -> bool {
        self.div_rem_monic(divisor).1.is_zero()
    }

    /// Removes every factor `(x − 1)`, returning the remaining polynomial and
    /// the multiplicity removed.
    pub fn strip_root_one(&self) -> (IntPoly, usize) {
        let x_minus_1 = IntPoly::from_i64(&[-1, 1]);
        let mut p = self.clone();
        let mut count = 0;
        while !p.is_zero() && p.eval(&BigInt::one()).is_zero() {
            p = p.div_rem_monic(&x_minus_1).0;
            count += 1;
        }
        (p, count)
    }

    /// The unique polynomial of degree `≤ points.len() − 1` through the given
    /// `(x, y)` pairs, which must have integer coefficients.
    ///
    /// Returns `None` if the interpolant is not integral.
    pub fn interpolate(points: &[(BigInt, BigInt)]) -> Option<IntPoly> {
        // Newton divided differences over Q
        let n = points.len();
        let xs: Vec<BigRational> = points
            .iter()
            .map(|(x, _)| BigRational::from_integer(x.clone()))
            .collect();
        let mut dd: Vec<BigRational> = points
            .iter()
            .map(|(_, y)| BigRational::from_integer(y.clone()))
            .collect();
        for level in 1..n {
            for i in (level..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
            }
        }
        // expand ∑ dd[i] ∏_{j<i} (x − x_j) by Horner from the top
        let mut acc: Vec<BigRational> = vec![BigRational::zero(); n];
        for i in (0..n).rev() {
            // acc = acc·(x − x_i) + dd[i]
            let mut next = vec![BigRational::zero(); n];
            for (k, a) in acc.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                if k + 1 < n {
                    next[k + 1] += a;
                }
                next[k] -= a * &xs[i];
            }
            next[0] += &dd[i];
            acc = next;
        }
        let mut coeffs = Vec::with_capacity(n);
        for c in acc {
            if !c.is_integer() {
                return None;
            }
            coeffs.push(c.to_integer());
        }
        Some(IntPoly::new(coeffs))
    }

    /// Content-free, positive-leading version (used to compare factorizations).
    pub fn primitive(&self) -> IntPoly {
        let Some(lead) = self.leading() else {
            return self.clone();
        };
        let g = self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if lead.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        IntPoly::new(self.coeffs.iter().map(|c| c / &g * &sign).collect())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).cloned().unwrap_or_default()
                        + rhs.coeffs.get(i).cloned().unwrap_or_default()
                })
                .collect(),
        )
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).cloned().unwrap_or_default()
                        - rhs.coeffs.get(i).cloned().unwrap_or_default()
                })
                .collect(),
        )
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// The `m`-th cyclotomic polynomial, from `Φ_m = ∏_{d | m} (x^d − 1)^{μ(m/d)}`.
pub fn cyclotomic(m: usize) -> IntPoly {
    assert!(m >= 1);
    let divisors: Vec<usize> = (1..=m).filter(|d| m.is_multiple_of(*d)).collect();
    let mut num = IntPoly::one();
    let mut dens = Vec::new();
    for &d in &divisors {
        match mobius(m / d) {
            1 => num = &num * &IntPoly::x_pow_minus_one(d),
            -1 => dens.push(d),
            _ => {}
        }
    }
    for d in dens {
        let (q, r) = num.div_rem_monic(&IntPoly::x_pow_minus_one(d));
        debug_assert!(r.is_zero());
        num = q;
    }
    num
}

pub(crate) fn mobius(mut n: usize) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}
