use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skolem_set::arith::PrimeContext;
use skolem_set::arith::{tower_cmp, TowerExpr};
use skolem_set::decide::{
    find_zeros_in_s, random_prime_moduli, zero_bound, SearchConfig, ZeroCertainty, ZeroPolicy,
};
use skolem_set::lrs::Lrs;
use skolem_set::skolem::{enumerate_window, in_s, DEFAULT_SCAN_CAP};
use std::cmp::Ordering;

/// `u_n = (n − n₀)·2^n`.
fn planted(n0: i64) -> Lrs {
    Lrs::from_i64(&[4, -4], &[-n0, 2 * (1 - n0)]).unwrap()
}

#[test]
fn planted_zeros_in_small_windows_are_exactly_recovered() {
    let ctx = PrimeContext::with_sieve_limit(1 << 13).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    // 𝒮(2^11) and 𝒮(2^12) are empty: A(X) holds no prime there
    for w in [10u32, 13] {
        let members: Vec<u64> = enumerate_window(w, None, &ctx, DEFAULT_SCAN_CAP)
            .unwrap()
            .map(|m| m.n)
            .collect();
        for _ in 0..5 {
            let n0 = members[rng.gen_range(0..members.len())];
            let lrs = planted(n0 as i64);
            let report = find_zeros_in_s(
                &lrs,
                2u64 << w,
                ZeroPolicy::ExactBelowCap,
                &SearchConfig::default(),
                &ctx,
            )
            .unwrap();
            // brute force over the window
            let terms = lrs.terms((2usize << w) + 1);
            let brute: Vec<u64> = members
                .iter()
                .copied()
                .filter(|&n| terms[n as usize] == 0.into())
                .collect();
            let found: Vec<u64> = report.zeros.iter().map(|z| z.0).collect();
            assert_eq!(found, brute);
            assert_eq!(found, vec![n0]);
        }
    }
}

#[test]
fn reported_zeros_are_sound() {
    let ctx = PrimeContext::with_sieve_limit(1 << 13).unwrap();
    let lrs = planted(1053);
    let report = find_zeros_in_s(
        &lrs,
        4096,
        ZeroPolicy::ProbabilisticOnly,
        &SearchConfig::default(),
        &ctx,
    )
    .unwrap();
    assert_eq!(
        report.zeros,
        vec![(1053, ZeroCertainty::Probable { primes_used: 64 })]
    );
    let fresh = random_prime_moduli(64, 0xfeed);
    for &(n, _) in &report.zeros {
        let nb = BigUint::from(n);
        assert!(in_s(&nb, &ctx).member);
        assert!(fresh.iter().all(|&m| lrs.term_mod_u64(&nb, m) == 0));
    }
}

#[test]
fn theorem_bound_exceeds_every_search_limit() {
    let ctx = PrimeContext::with_sieve_limit(1 << 13).unwrap();
    let report = find_zeros_in_s(
        &planted(1053),
        2048,
        ZeroPolicy::ExactBelowCap,
        &SearchConfig::default(),
        &ctx,
    )
    .unwrap();
    let bound = report.theorem_bound.unwrap();
    assert_eq!(bound, zero_bound(&planted(1053)).unwrap());
    for n in [2048.0, 1e12, 1e300] {
        assert_eq!(
            tower_cmp(&bound, &TowerExpr::new(0, n).unwrap()),
            Ordering::Greater
        );
    }
    assert!(report.notes.iter().any(|s| s.contains("theorem bound")));
}

#[test]
fn geometric_sequences_have_no_zeros() {
    let ctx = PrimeContext::with_sieve_limit(1 << 13).unwrap();
    let geo = Lrs::from_i64(&[3], &[2]).unwrap();
    let r = find_zeros_in_s(
        &geo,
        4096,
        ZeroPolicy::ExactBelowCap,
        &SearchConfig::default(),
        &ctx,
    )
    .unwrap();
    assert!(r.zeros.is_empty());
    assert!(r.theorem_bound.is_none());
    assert!(r.notes.iter().any(|s| s.contains("order-1")));
}
