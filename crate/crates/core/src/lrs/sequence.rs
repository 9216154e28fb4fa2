use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::poly::IntPoly;
use crate::error::{domain, resource, Error, Result};

/// Default largest index evaluated with exact integers.
pub const DEFAULT_EXACT_CAP: u64 = 2_000_000;

/// Integer linear recurrence `u_{n+k} = a₀u_{n+k−1} + … + a_{k−1}u_n`.
///
/// The last coefficient `a_{k−1}` must be non-zero, so the characteristic
/// polynomial `Ψ(x) = x^k − a₀x^{k−1} − … − a_{k−1}` never vanishes at 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lrs {
    coeffs: Vec<BigInt>,
    inits: Vec<BigInt>,
}

impl Lrs {
    pub fn new(coeffs: Vec<BigInt>, inits: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return domain("a recurrence needs at least one coefficient");
        }
        if coeffs.len() != inits.len() {
            return domain(format!(
                "{} coefficients but {} initial terms",
                coeffs.len(),
                inits.len()
            ));
        }
        if coeffs.last().is_some_and(Zero::is_zero) {
            return domain("the last coefficient a_{k-1} must be non-zero");
        }
        Ok(Self { coeffs, inits })
    }

    /// Convenience constructor for small literal recurrences.
    pub fn from_i64(coeffs: &[i64], inits: &[i64]) -> Result<Self> {
        Self::new(
            coeffs.iter().map(|&c| BigInt::from(c)).collect(),
            inits.iter().map(|&c| BigInt::from(c)).collect(),
        )
    }

    /// `u_n = 0` for all `n`, as the order-1 recurrence `u_{n+1} = u_n`, `u₀ = 0`.
    pub fn zero_sequence() -> Self {
        Self {
            coeffs: vec![BigInt::from(1)],
            inits: vec![BigInt::zero()],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn inits(&self) -> &[BigInt] {
        &self.inits
    }

    /// True iff every term vanishes (equivalently, every initial term does).
    pub fn is_zero_sequence(&self) -> bool {
        self.inits.iter().all(Zero::is_zero)
    }

    /// `Ψ(x) = x^k − a₀x^{k−1} − … − a_{k−1}`.
    pub fn characteristic_poly(&self) -> IntPoly {
        let mut c: Vec<BigInt> = self.coeffs.iter().rev().map(|a| -a).collect();
        c.push(BigInt::from(1));
        IntPoly::new(c)
    }

    /// The first `count` terms by direct iteration.
    pub fn terms(&self, count: usize) -> Vec<BigInt> {
        let k = self.order();
        let mut out: Vec<BigInt> = self.inits.iter().take(count).cloned().collect();
        while out.len() < count {
            let n = out.len();
            let next = self
                .coeffs
                .iter()
                .enumerate()
                .fold(BigInt::zero(), |acc, (i, a)| acc + a * &out[n - 1 - i]);
            out.push(next);
        }
        debug_assert!(count < k || out[..k] == self.inits[..]);
        out
    }

    /// `u_n` with exact integers, by linear iteration.
    ///
    /// Fails with a resource error when `n > cap`; use [`Lrs::term_mod`] there.
    pub fn term_exact(&self, n: u64, cap: u64) -> Result<BigInt> {
        if n > cap {
            return resource(format!(
                "index {n} exceeds the exact-evaluation cap {cap}; use modular evaluation"
            ));
        }
        let k = self.order();
        if (n as usize) < k {
            return Ok(self.inits[n as usize].clone());
        }
        let mut window: std::collections::VecDeque<BigInt> = self.inits.iter().cloned().collect();
        for _ in k as u64..=n {
            let next = self
                .coeffs
                .iter()
                .zip(window.iter().rev())
                .fold(BigInt::zero(), |acc, (a, u)| acc + a * u);
            window.pop_front();
            window.push_back(next);
        }
        Ok(window.pop_back().expect("non-empty window"))
    }

    /// `u_n mod m` in `O(k² log n)` ring operations by reducing `x^n`
    /// modulo `(Ψ, m)` and combining with the initial terms.
    pub fn term_mod(&self, n: &BigUint, m: &BigUint) -> Result<BigUint> {
        if m < &BigUint::from(2u32) {
            return domain("modulus must be at least 2");
        }
        if let Some(small) = m.to_u64() {
            return Ok(BigUint::from(self.term_mod_u64(n, small)));
        }
        let ring = BigRing { m: m.clone() };
        Ok(self.term_mod_in(&ring, n))
    }

    /// [`Lrs::term_mod`] for a 64-bit modulus `m ≥ 2`.
    pub fn term_mod_u64(&self, n: &BigUint, m: u64) -> u64 {
        assert!(m >= 2, "modulus must be at least 2");
        self.term_mod_in(&U64Ring { m }, n)
    }

    fn term_mod_in<R: ModRing>(&self, ring: &R, n: &BigUint) -> R::Elem {
        let k = self.order();
        let inits: Vec<R::Elem> = self.inits.iter().map(|u| ring.reduce(u)).collect();
        if let Some(small) = n.to_usize() {
            if small < k {
                return inits[small].clone();
            }
        }
        let coeffs: Vec<R::Elem> = self.coeffs.iter().map(|a| ring.reduce(a)).collect();
        let poly = x_pow_mod(ring, &coeffs, n);
        poly.iter()
            .zip(&inits)
            .fold(ring.zero(), |acc, (c, u)| ring.add(&acc, &ring.mul(c, u)))
    }
}

/// Arithmetic in `Z/mZ` for the modular evaluation engine.
trait ModRing {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn reduce(&self, x: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

struct U64Ring {
    m: u64,
}

impl ModRing for U64Ring {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.m
    }
    fn reduce(&self, x: &BigInt) -> u64 {
        x.mod_floor(&BigInt::from(self.m))
            .to_u64()
            .expect("reduced below m")
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.m as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.m as u128) as u64
    }
}

struct BigRing {
    m: BigUint,
}

impl ModRing for BigRing {
    type Elem = BigUint;
    fn zero(&self) -> BigUint {
        BigUint::zero()
    }
    fn one(&self) -> BigUint {
        BigUint::from(1u32) % &self.m
    }
    fn reduce(&self, x: &BigInt) -> BigUint {
        let m = BigInt::from_biguint(Sign::Plus, self.m.clone());
        x.mod_floor(&m).to_biguint().expect("non-negative")
    }
    fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a + b) % &self.m
    }
    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a * b) % &self.m
    }
}

/// Coefficients (low first, length k) of `x^n mod (Ψ, m)` where
/// `x^k ≡ a₀x^{k−1} + … + a_{k−1}`.
fn x_pow_mod<R: ModRing>(ring: &R, coeffs: &[R::Elem], n: &BigUint) -> Vec<R::Elem> {
    let k = coeffs.len();
    let mulmod = |p: &[R::Elem], q: &[R::Elem]| -> Vec<R::Elem> {
        let mut prod = vec![ring.zero(); 2 * k - 1];
        for (i, a) in p.iter().enumerate() {
            for (j, b) in q.iter().enumerate() {
                prod[i + j] = ring.add(&prod[i + j], &ring.mul(a, b));
            }
        }
        // fold degrees ≥ k back using x^d = Σ a_i x^{d−1−i}
        for d in (k..prod.len()).rev() {
            let top = std::mem::replace(&mut prod[d], ring.zero());
            for (i, a) in coeffs.iter().enumerate() {
                let t = d - 1 - i;
                prod[t] = ring.add(&prod[t], &ring.mul(&top, a));
            }
        }
        prod.truncate(k);
        prod
    };

    let mut result = vec![ring.zero(); k];
    result[0] = ring.one();
    // x itself reduced mod Ψ (k = 1: x ≡ a₀)
    let mut base = vec![ring.zero(); k];
    if k == 1 {
        base[0] = coeffs[0].clone();
    } else {
        base[1] = ring.one();
    }
    for i in (0..n.bits()).rev() {
        result = mulmod(&result, &result);
        if n.bit(i) {
            result = mulmod(&result, &base);
        }
    }
    result
}

fn parse_list(s: &str, what: &str) -> Result<Vec<BigInt>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            BigInt::from_str(t).map_err(|_| Error::Parse(format!("bad integer {t:?} in {what}")))
        })
        .collect()
}

impl FromStr for Lrs {
    type Err = Error;

    /// Parses `coeffs=a0,...,a_{k-1}; inits=u0,...,u_{k-1}` (whitespace allowed).
    fn from_str(s: &str) -> Result<Self> {
        let mut coeffs = None;
        let mut inits = None;
        for part in s.split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {part:?}")))?;
            match key.trim() {
                "coeffs" => coeffs = Some(parse_list(value, "coeffs")?),
                "inits" => inits = Some(parse_list(value, "inits")?),
                other => return Err(Error::Parse(format!("unknown key {other:?}"))),
            }
        }
        match (coeffs, inits) {
            (Some(c), Some(i)) => Lrs::new(c, i),
            _ => Err(Error::Parse("need both coeffs= and inits=".into())),
        }
    }
}

impl fmt::Display for Lrs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigInt]| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "coeffs={}; inits={}",
            join(&self.coeffs),
            join(&self.inits)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fib() -> Lrs {
        Lrs::from_i64(&[1, 1], &[0, 1]).unwrap()
    }

    fn planted() -> Lrs {
        Lrs::from_i64(&[4, -4], &[-1053, -2104]).unwrap()
    }

    #[test]
    fn exact_terms() {
        assert_eq!(
            fib().term_exact(10, DEFAULT_EXACT_CAP).unwrap(),
            BigInt::from(55)
        );
        assert_eq!(
            fib().term_exact(0, DEFAULT_EXACT_CAP).unwrap(),
            BigInt::zero()
        );
        assert_eq!(planted().term_exact(0, 10).unwrap(), BigInt::from(-1053));
        assert!(planted()
            .term_exact(1053, DEFAULT_EXACT_CAP)
            .unwrap()
            .is_zero());
        // u_n = (n − 1053)·2^n
        let u = planted().term_exact(1060, DEFAULT_EXACT_CAP).unwrap();
        assert_eq!(u, BigInt::from(7) << 1060);
        assert!(matches!(fib().term_exact(11, 10), Err(Error::Resource(_))));
    }

    #[test]
    fn modular_terms() {
        let n = |x: u64| BigUint::from(x);
        assert_eq!(fib().term_mod(&n(10), &n(7)).unwrap(), n(6));
        assert_eq!(planted().term_mod(&n(1053), &n(521)).unwrap(), n(0));
        assert!(fib().term_mod(&n(3), &n(1)).is_err());
        // order 1: u_n = 3·5^n
        let geo = Lrs::from_i64(&[5], &[3]).unwrap();
        assert_eq!(geo.term_mod(&n(4), &n(1000)).unwrap(), n(3 * 625 % 1000));
        assert_eq!(geo.term_mod(&n(0), &n(2)).unwrap(), n(1));
    }

    /// Fibonacci by 2×2 matrix squaring, independent of the polynomial route.
    fn fib_matrix_mod(n: &BigUint, m: u64) -> u64 {
        let mul = |a: [u128; 4], b: [u128; 4]| {
            let m = m as u128;
            [
                (a[0] * b[0] + a[1] * b[2]) % m,
                (a[0] * b[1] + a[1] * b[3]) % m,
                (a[2] * b[0] + a[3] * b[2]) % m,
                (a[2] * b[1] + a[3] * b[3]) % m,
            ]
        };
        let mut acc = [1, 0, 0, 1];
        let mut base = [1, 1, 1, 0];
        for i in 0..n.bits() {
            if n.bit(i) {
                acc = mul(acc, base);
            }
            base = mul(base, base);
        }
        acc[1] as u64
    }

    #[test]
    fn huge_index_matches_matrix_oracle() {
        let n = BigUint::from(1u32) << 80;
        let m = 1_000_000_007u64;
        assert_eq!(fib().term_mod_u64(&n, m), fib_matrix_mod(&n, m));
        // a modulus beyond 64 bits takes the big-integer path
        let primes = [1_000_000_007u64, 998_244_353, 1_000_000_009];
        let big_m: BigUint = primes.iter().map(|&p| BigUint::from(p)).product();
        assert!(big_m.bits() > 64);
        let via_big = fib().term_mod(&n, &big_m).unwrap();
        for p in primes {
            assert_eq!(via_big.clone() % p, BigUint::from(fib_matrix_mod(&n, p)));
        }
        for e in [0u64, 1, 2, 3, 50, 1000] {
            let nn = BigUint::from(e);
            assert_eq!(fib().term_mod_u64(&nn, m), fib_matrix_mod(&nn, m));
        }
    }

    #[test]
    fn parse_and_display() {
        let l: Lrs = "coeffs = 4, -4 ; inits=-1053,-2104".parse().unwrap();
        assert_eq!(l, planted());
        assert_eq!(l.to_string(), "coeffs=4,-4; inits=-1053,-2104");
        assert_eq!(l.to_string().parse::<Lrs>().unwrap(), l);
        assert!(matches!("coeffs=1,1".parse::<Lrs>(), Err(Error::Parse(_))));
        assert!(matches!(
            "coeffs=1,x; inits=0,1".parse::<Lrs>(),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            "coeffs=1,1; inits=0".parse::<Lrs>(),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            "coeffs=1,0; inits=0,1".parse::<Lrs>(),
            Err(Error::Domain(_))
        ));
        let huge: Lrs = "coeffs=1; inits=123456789012345678901234567890"
            .parse()
            .unwrap();
        assert_eq!(
            huge.inits()[0].to_string(),
            "123456789012345678901234567890"
        );
    }

    #[test]
    fn characteristic_polynomial() {
        assert_eq!(fib().characteristic_poly(), IntPoly::from_i64(&[-1, -1, 1]));
        assert_eq!(
            planted().characteristic_poly(),
            IntPoly::from_i64(&[4, -4, 1])
        );
    }

    fn arb_lrs() -> impl Strategy<Value = Lrs> {
        (1usize..5).prop_flat_map(|k| {
            (
                proptest::collection::vec(-20i64..20, k),
                proptest::collection::vec(-50i64..50, k),
                prop_oneof![-9i64..=-1, 1i64..=9],
            )
                .prop_map(|(mut c, i, last)| {
                    *c.last_mut().unwrap() = last;
                    Lrs::from_i64(&c, &i).unwrap()
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn modular_agrees_with_exact(l in arb_lrs(), n in 0u64..2000, m in 2u64..1_000_000_000) {
            let exact = l.term_exact(n, DEFAULT_EXACT_CAP).unwrap();
            let expected = exact.mod_floor(&BigInt::from(m)).to_u64().unwrap();
            prop_assert_eq!(l.term_mod_u64(&BigUint::from(n), m), expected);
        }
    }
}
