mod common;

use common::quadruple_count;
use skolem_set::arith::PrimeContext;
use skolem_set::density::{first_moment_oracle, moment_scan};
use skolem_set::skolem::DEFAULT_SCAN_CAP;

#[test]
fn first_moment_by_double_counting() {
    let ctx = PrimeContext::with_sieve_limit(1 << 17).unwrap();
    for w in 10..=16 {
        let stats = moment_scan(w, None, &ctx, DEFAULT_SCAN_CAP).unwrap();
        assert_eq!(
            stats.tally.m1,
            first_moment_oracle(w, ctx.table(), DEFAULT_SCAN_CAP).unwrap()
        );
    }
}

#[test]
fn second_moment_by_quadruples() {
    let ctx = PrimeContext::with_sieve_limit(1 << 13).unwrap();
    for w in 10..=12 {
        let stats = moment_scan(w, None, &ctx, DEFAULT_SCAN_CAP).unwrap();
        assert_eq!(stats.tally.m2, quadruple_count(w, ctx.table()), "w = {w}");
    }
}

#[test]
fn cauchy_schwarz_on_represented_n() {
    let ctx = PrimeContext::with_sieve_limit(1 << 15).unwrap();
    for w in 10..=14 {
        let t = moment_scan(w, None, &ctx, DEFAULT_SCAN_CAP).unwrap().tally;
        assert!(t.m0 <= t.represented && t.represented <= t.m1);
        assert!(t.represented as u128 * t.m2 as u128 >= (t.m1 as u128).pow(2));
    }
}

#[test]
fn sampled_scans_ignore_thread_count() {
    let ctx = PrimeContext::with_sieve_limit(1 << 21).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| moment_scan(20, Some((3000, 1)), &ctx, DEFAULT_SCAN_CAP).unwrap())
    };
    assert_eq!(run(1), run(4));
}
