//! Primality testing with an explicit certainty tag.
//!
//! Below 2^64 the answer is exact: Miller–Rabin with the first twelve prime
//! bases has no strong pseudoprime under 3.3·10²⁴. Above that we run the
//! Baillie–PSW combination (strong base-2 test plus strong Lucas test with
//! Selfridge parameters) followed by a configurable number of Miller–Rabin
//! rounds with random bases. Random bases are drawn from a generator seeded by
//! the candidate itself, so repeated calls agree.

use num_bigint::{BigInt, BigUint, RandBigInt, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Extra random Miller–Rabin rounds used by [`is_prime`] above 2^64.
pub const DEFAULT_ROUNDS: u32 = 40;

const WITNESSES_64: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Outcome of a primality test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Certainty {
    /// Proven composite (a Miller–Rabin or Lucas witness exists, or a factor).
    Composite,
    /// Proven prime.
    Prime,
    /// Passed Baillie–PSW and `rounds` random Miller–Rabin rounds.
    ProbablePrime { rounds: u32 },
}

impl Certainty {
    /// True for `Prime` and `ProbablePrime`.
    pub fn is_prime(self) -> bool {
        !matches!(self, Certainty::Composite)
    }

    pub fn is_exact(self) -> bool {
        !matches!(self, Certainty::ProbablePrime { .. })
    }

    /// The weaker of two positive verdicts (used to tag aggregates).
    pub fn weakest(self, other: Certainty) -> Certainty {
        match (self, other) {
            (Certainty::Composite, _) | (_, Certainty::Composite) => Certainty::Composite,
            (Certainty::ProbablePrime { rounds: a }, Certainty::ProbablePrime { rounds: b }) => {
                Certainty::ProbablePrime { rounds: a.min(b) }
            }
            (p @ Certainty::ProbablePrime { .. }, _) | (_, p @ Certainty::ProbablePrime { .. }) => {
                p
            }
            _ => Certainty::Prime,
        }
    }
}

impl std::fmt::Display for Certainty {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Certainty::Composite => f.write_str("Composite"),
            Certainty::Prime => f.write_str("Prime"),
            Certainty::ProbablePrime { rounds } => write!(f, "ProbablePrime({rounds})"),
        }
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES_64 {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES_64 {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality of an arbitrary non-negative integer with the default number of
/// extra rounds.
pub fn is_prime(n: &BigUint) -> Certainty {
    is_prime_with_rounds(n, DEFAULT_ROUNDS)
}

/// Primality with `rounds` extra random Miller–Rabin rounds above 2^64.
pub fn is_prime_with_rounds(n: &BigUint, rounds: u32) -> Certainty {
    if let Some(small) = n.to_u64() {
        return if is_prime_u64(small) {
            Certainty::Prime
        } else {
            Certainty::Composite
        };
    }
    for &p in SMALL_ODD_PRIMES.iter() {
        if (n % p).is_zero() {
            return Certainty::Composite;
        }
    }
    if n.is_even() {
        return Certainty::Composite;
    }
    if !strong_probable_prime(n, &BigUint::from(2u32)) || !strong_lucas_probable_prime(n) {
        return Certainty::Composite;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed_for(n));
    let two = BigUint::from(2u32);
    let upper = n - 2u32;
    for _ in 0..rounds {
        let a = rng.gen_biguint_range(&two, &upper);
        if !strong_probable_prime(n, &a) {
            return Certainty::Composite;
        }
    }
    Certainty::ProbablePrime { rounds }
}

const SMALL_ODD_PRIMES: [u32; 24] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

fn seed_for(n: &BigUint) -> u64 {
    n.iter_u64_digits().fold(0x9E37_79B9_7F4A_7C15, |h, d| {
        (h ^ d).wrapping_mul(0x1000_0000_01B3).rotate_left(17)
    })
}

/// Strong probable-prime test to base `a` for odd `n > 2`.
fn strong_probable_prime(n: &BigUint, a: &BigUint) -> bool {
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().expect("n > 1");
    let d = &n_minus_1 >> s;
    let mut x = a.modpow(&d, n);
    if x == one || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = &x * &x % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

/// Jacobi symbol (a/n) for odd positive `n`.
pub(crate) fn jacobi(a: &BigInt, n: &BigUint) -> i32 {
    let mut n = n.clone();
    let mut a = {
        let m = BigInt::from_biguint(Sign::Plus, n.clone());
        a.mod_floor(&m).to_biguint().expect("non-negative")
    };
    let mut result = 1;
    while !a.is_zero() {
        let tz = a.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            a >>= tz;
            let r8 = (&n % 8u32).to_u32().expect("small");
            if tz % 2 == 1 && (r8 == 3 || r8 == 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32) == BigUint::from(3u32) && (&n % 4u32) == BigUint::from(3u32) {
            result = -result;
        }
        a %= &n;
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

fn is_square(n: &BigUint) -> bool {
    let r = n.sqrt();
    &r * &r == *n
}

/// Strong Lucas probable-prime test with Selfridge's parameters
/// (first `D` in 5, −7, 9, −11, … with `(D/n) = −1`, `P = 1`, `Q = (1 − D)/4`).
fn strong_lucas_probable_prime(n: &BigUint) -> bool {
    if is_square(n) {
        return false;
    }
    let mut d_abs = 5i64;
    let d = loop {
        let cand = if (d_abs / 2) % 2 == 0 { d_abs } else { -d_abs };
        let cand_big = BigInt::from(cand);
        match jacobi(&cand_big, n) {
            -1 => break cand,
            0 => {
                // gcd(D, n) > 1; n is composite unless it equals |D|
                return BigUint::from(d_abs as u64) == *n;
            }
            _ => d_abs += 2,
        }
    };
    let m = BigInt::from_biguint(Sign::Plus, n.clone());
    let md = |x: BigInt| x.mod_floor(&m);
    let q = md(BigInt::from((1 - d) / 4));
    let dd = md(BigInt::from(d));
    let half = |x: BigInt| {
        let x = if x.is_odd() { x + &m } else { x };
        x >> 1
    };

    // n + 1 = k · 2^s with k odd
    let n_plus_1 = BigInt::from_biguint(Sign::Plus, n + 1u32);
    let s = n_plus_1.trailing_zeros().expect("positive");
    let k = &n_plus_1 >> s;

    // binary ladder over the bits of k computing U_k, V_k, Q^k
    let mut u = BigInt::zero();
    let mut v = BigInt::from(2);
    let mut qk = BigInt::one();
    for i in (0..k.bits()).rev() {
        // double: U_2j = U_j V_j, V_2j = V_j^2 - 2 Q^j
        u = md(&u * &v);
        v = md(&v * &v - (&qk << 1));
        qk = md(&qk * &qk);
        if k.bit(i) {
            // add one with P = 1
            let u1 = half(md(&u + &v));
            let v1 = half(md(&dd * &u + &v));
            u = u1;
            v = v1;
            qk = md(&qk * &q);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = md(&v * &v - (&qk << 1));
        qk = md(&qk * &qk);
        if v.is_zero() {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial(n: u64) -> bool {
        n >= 2
            && (2..)
                .take_while(|d| d * d <= n)
                .all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn small_values() {
        assert!(is_prime_u64(521));
        assert!(!is_prime_u64(511));
        assert_eq!(is_prime(&BigUint::from(521u32)), Certainty::Prime);
        assert_eq!(is_prime(&BigUint::from(511u32)), Certainty::Composite);
        for n in 0..20_000u64 {
            assert_eq!(is_prime_u64(n), trial(n), "n = {n}");
        }
    }

    #[test]
    fn strong_pseudoprimes_are_caught() {
        // smallest strong pseudoprimes to the bases {2}, {2,3}, ..., {2..23}
        for n in [
            2047u64,
            1_373_653,
            25_326_001,
            3_215_031_751,
            2_152_302_898_747,
            3_474_749_660_383,
            341_550_071_728_321,
            3_825_123_056_546_413_051,
        ] {
            assert!(!is_prime_u64(n), "n = {n}");
        }
    }

    #[test]
    fn near_u64_max() {
        assert!(is_prime_u64(18_446_744_073_709_551_557)); // largest 64-bit prime
        assert!(!is_prime_u64(18_446_744_073_709_551_559));
    }

    #[test]
    fn jacobi_matches_euler_criterion() {
        for p in [3u64, 5, 7, 11, 13, 101, 1009] {
            for a in -30i64..30 {
                let j = jacobi(&BigInt::from(a), &BigUint::from(p));
                let ar = a.rem_euclid(p as i64) as u64;
                let euler = if ar == 0 {
                    0
                } else if pow_mod_u64(ar, (p - 1) / 2, p) == 1 {
                    1
                } else {
                    -1
                };
                assert_eq!(j, euler, "a = {a}, p = {p}");
            }
        }
        // composite modulus: (2/15) = (2/3)(2/5) = (-1)(-1) = 1
        assert_eq!(jacobi(&BigInt::from(2), &BigUint::from(15u32)), 1);
    }

    #[test]
    fn lucas_agrees_on_small_odd_numbers() {
        for n in (101u64..5_000).step_by(2) {
            let big = BigUint::from(n);
            if trial(n) {
                assert!(strong_lucas_probable_prime(&big), "prime {n} rejected");
            }
        }
        // 5459, 5777, 10877 are strong Lucas pseudoprimes; all are caught by base 2
        for n in [5459u64, 5777, 10877, 16109, 18971] {
            let big = BigUint::from(n);
            assert!(
                strong_lucas_probable_prime(&big),
                "{n} is a strong Lucas pseudoprime"
            );
            assert!(!strong_probable_prime(&big, &BigUint::from(2u32)));
        }
    }

    #[test]
    fn certainty_combination() {
        let p = Certainty::ProbablePrime { rounds: 40 };
        assert_eq!(Certainty::Prime.weakest(p), p);
        assert_eq!(p.weakest(Certainty::Prime), p);
        assert_eq!(Certainty::Prime.weakest(Certainty::Prime), Certainty::Prime);
        assert_eq!(p.weakest(Certainty::Composite), Certainty::Composite);
    }
}
