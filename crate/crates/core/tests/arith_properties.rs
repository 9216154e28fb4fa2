use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skolem_set::arith::{
    euler_products, is_prime, iterated_log, mult_g, tower_cmp, Certainty, PrimeTable, TowerExpr,
};

#[test]
fn primality_agrees_with_the_sieve() {
    let table = PrimeTable::new(100_000).unwrap();
    for n in 0..=100_000u64 {
        assert_eq!(
            is_prime(&BigUint::from(n)).is_prime(),
            table.is_prime(n),
            "n = {n}"
        );
    }
    assert_eq!(table.count_upto(100_000), 9592);
}

#[test]
fn seventy_bit_prime_is_probable() {
    // the next prime after 2^69 is 2^69 + 29; 2^69 + 35 = 71·2111·3938429890104187
    let p = (BigUint::from(1u32) << 69u32) + 29u32;
    assert!(matches!(is_prime(&p), Certainty::ProbablePrime { .. }));
    let c = (BigUint::from(1u32) << 69u32) + 35u32;
    assert_eq!(is_prime(&c), Certainty::Composite);
    for k in 1..29u32 {
        assert_eq!(
            is_prime(&((BigUint::from(1u32) << 69u32) + k)),
            Certainty::Composite
        );
    }
}

#[test]
fn iterated_log_recursion_on_a_grid() {
    let mut x = 1.5f64;
    while x < 1e300 {
        for j in 2..=6u32 {
            let lhs = iterated_log(x, j).unwrap();
            let rhs = if x.ln() > 1.0 {
                iterated_log(x.ln(), j - 1).unwrap().max(1.0)
            } else {
                1.0
            };
            assert!((lhs - rhs).abs() <= 1e-9 * rhs.abs(), "x = {x}, j = {j}");
        }
        x *= 1.37;
    }
}

/// `X < exp((4c·log(2c))²)` whenever `√(log X) < c·log log X`.
#[test]
fn proposition_grid() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut checked = 0;
    while checked < 10_000 {
        let c: f64 = 10f64.powf(rng.gen_range(0.0..4.0));
        let ln_x: f64 = 10f64.powf(rng.gen_range(0.0..12.0));
        if c <= 1.0 || ln_x <= 1.0 || ln_x.sqrt() >= c * ln_x.ln() {
            continue;
        }
        checked += 1;
        assert!(
            ln_x < (4.0 * c * (2.0 * c).ln()).powi(2),
            "c = {c}, log X = {ln_x}"
        );
    }
}

#[test]
fn euler_product_identity() {
    let table = PrimeTable::new(100_000).unwrap();
    let c = euler_products(100_000).unwrap().c;
    let prod: f64 = table
        .primes_in(3, 100_000)
        .map(|p| 1.0 + 1.0 / (p * (p - 2)) as f64)
        .product();
    assert!((c / 2.0 * prod - 1.0).abs() < 1e-3);
}

#[test]
fn g_examples() {
    let g = |m| mult_g(m).unwrap().to_f64().unwrap();
    assert_eq!(g(1), 1.0);
    assert!((g(15) - 8.0 / 3.0).abs() < 1e-15);
    assert_eq!(mult_g(90).unwrap(), mult_g(45).unwrap());
    assert!(mult_g(0).is_err());
}

fn tower() -> impl Strategy<Value = TowerExpr> {
    (0u32..6, 1.01f64..1e6).prop_map(|(l, m)| TowerExpr::new(l, m).unwrap())
}

proptest! {
    #[test]
    fn tower_order_is_total(a in tower(), b in tower(), c in tower()) {
        prop_assert_eq!(tower_cmp(&a, &b), tower_cmp(&b, &a).reverse());
        if tower_cmp(&a, &b) != Ordering::Greater && tower_cmp(&b, &c) != Ordering::Greater {
            prop_assert_ne!(tower_cmp(&a, &c), Ordering::Greater);
        }
        if let (Some(x), Some(y)) = (a.to_f64(), b.to_f64()) {
            if (x - y).abs() > 1e-9 * x.max(y) {
                prop_assert_eq!(tower_cmp(&a, &b), x.partial_cmp(&y).unwrap());
            }
        }
    }
}
