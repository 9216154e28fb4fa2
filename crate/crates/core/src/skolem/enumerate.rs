use std::collections::VecDeque;
use std::fmt;

use rayon::prelude::*;

use super::representation::{first_correlated_pair, raw_representations, RawRep};
use super::window::{window_params, WindowParams};
use crate::arith::PrimeContext;
use crate::error::{domain, resource, Result};

/// Largest window `2^w` that may be scanned without a subrange.
pub const DEFAULT_SCAN_CAP: u64 = 1 << 26;

pub(crate) const CHUNK: u64 = 1 << 15;
const CHUNKS_PER_BATCH: usize = 64;

/// A member of `𝒮(2^w)` with its representations `(q, P, a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowMember {
    pub n: u64,
    pub reps: Vec<(u64, u64, u64)>,
}

impl fmt::Display for WindowMember {
    /// `n<TAB>r<TAB>q:P:a,q:P:a,...`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t", self.n, self.reps.len())?;
        for (i, (q, p, a)) in self.reps.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{q}:{p}:{a}")?;
        }
        Ok(())
    }
}

/// Per-`n` outcome handed to scan visitors.
pub(crate) struct Visit<'a> {
    pub n: u64,
    pub reps: &'a [RawRep],
    pub correlated: bool,
}

impl Visit<'_> {
    pub fn member(&self, params: &WindowParams) -> bool {
        params.exceeds_threshold(self.reps.len()) && !self.correlated
    }
}

/// Runs `visit` on every `n ∈ [lo, hi]` of a 64-bit window, in order.
pub(crate) fn scan_block(
    lo: u64,
    hi: u64,
    params: &WindowParams,
    ctx: &PrimeContext,
    mut visit: impl FnMut(&Visit<'_>),
) {
    let mut buf = Vec::new();
    for n in lo..=hi {
        raw_representations(n, params, ctx, &mut buf);
        let correlated =
            buf.len() >= 2 && first_correlated_pair(&buf, |r| (r.0, r.2), params).is_some();
        visit(&Visit {
            n,
            reps: &buf,
            correlated,
        });
    }
}

/// Splits `[lo, hi]` into consecutive chunks of at most `CHUNK` numbers.
pub(crate) fn chunks(lo: u64, hi: u64) -> impl Iterator<Item = (u64, u64)> {
    let count = if lo > hi { 0 } else { (hi - lo) / CHUNK + 1 };
    (0..count).map(move |i| {
        let s = lo + i * CHUNK;
        (s, (s + CHUNK - 1).min(hi))
    })
}

/// Clips an optional subrange to `[X, 2X]` and enforces the scan cap.
pub(crate) fn scan_range(
    params: &WindowParams,
    subrange: Option<(u64, u64)>,
    scan_cap: u64,
) -> Result<Option<(u64, u64)>> {
    let Some((x, two_x)) = params.range_u64() else {
        return domain(format!("window 2^{} exceeds 64-bit scanning", params.w()));
    };
    match subrange {
        None if x > scan_cap => resource(format!(
            "full scan of 2^{} exceeds the scan cap {scan_cap}; pass a subrange",
            params.w()
        )),
        None => Ok(Some((x, two_x))),
        Some((lo, hi)) => {
            let (lo, hi) = (lo.max(x), hi.min(two_x));
            Ok((lo <= hi).then_some((lo, hi)))
        }
    }
}

/// Members of `𝒮(2^w)` in increasing order, computed lazily in parallel batches.
pub struct WindowScan {
    params: WindowParams,
    ctx: PrimeContext,
    pending: Vec<(u64, u64)>,
    next_chunk: usize,
    buffer: VecDeque<WindowMember>,
}

impl WindowScan {
    pub fn params(&self) -> &WindowParams {
        &self.params
    }

    fn refill(&mut self) {
        while self.buffer.is_empty() && self.next_chunk < self.pending.len() {
            let end = (self.next_chunk + CHUNKS_PER_BATCH).min(self.pending.len());
            let batch = &self.pending[self.next_chunk..end];
            let (params, ctx) = (&self.params, &self.ctx);
            let found: Vec<Vec<WindowMember>> = batch
                .par_iter()
                .map(|&(lo, hi)| {
                    let mut out = Vec::new();
                    scan_block(lo, hi, params, ctx, |v| {
                        if v.member(params) {
                            out.push(WindowMember {
                                n: v.n,
                                reps: v.reps.to_vec(),
                            });
                        }
                    });
                    out
                })
                .collect();
            self.buffer.extend(found.into_iter().flatten());
            self.next_chunk = end;
        }
    }
}

impl Iterator for WindowScan {
    type Item = WindowMember;

    fn next(&mut self) -> Option<WindowMember> {
        self.refill();
        self.buffer.pop_front()
    }
}

/// Streams `𝒮(2^w)`, optionally restricted to `subrange` (inclusive).
///
/// Without a subrange the window must satisfy `2^w ≤ scan_cap`. Windows
/// whose `A(X)` holds no prime yield nothing without scanning.
pub fn enumerate_window(
    w: u32,
    subrange: Option<(u64, u64)>,
    ctx: &PrimeContext,
    scan_cap: u64,
) -> Result<WindowScan> {
    let params = window_params(w)?;
    let range = scan_range(&params, subrange, scan_cap)?;
    let pending = match range {
        Some((lo, hi)) if !params.q_primes().is_empty() => chunks(lo, hi).collect(),
        _ => Vec::new(),
    };
    Ok(WindowScan {
        params,
        ctx: ctx.clone(),
        pending,
        next_chunk: 0,
        buffer: VecDeque::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skolem::{in_s, window_verdict};
    use num_bigint::BigUint;

    fn ctx() -> PrimeContext {
        PrimeContext::with_sieve_limit(1 << 16).unwrap()
    }

    #[test]
    fn window_ten_contains_1053() {
        let all: Vec<_> = enumerate_window(10, None, &ctx(), DEFAULT_SCAN_CAP)
            .unwrap()
            .collect();
        let m = all.iter().find(|m| m.n == 1053).expect("1053 listed");
        assert_eq!(m.reps, vec![(2, 523, 7), (2, 521, 11)]);
        assert_eq!(m.to_string(), "1053\t2\t2:523:7,2:521:11");
        assert!(all.windows(2).all(|p| p[0].n < p[1].n));
    }

    #[test]
    fn subrange_is_a_restriction() {
        let ctx = ctx();
        let all: Vec<_> = enumerate_window(10, None, &ctx, DEFAULT_SCAN_CAP)
            .unwrap()
            .collect();
        let sub: Vec<_> = enumerate_window(10, Some((1024, 1100)), &ctx, DEFAULT_SCAN_CAP)
            .unwrap()
            .collect();
        let expected: Vec<_> = all.into_iter().filter(|m| m.n <= 1100).collect();
        assert_eq!(sub, expected);
    }

    #[test]
    fn agrees_with_window_verdicts() {
        let ctx = ctx();
        for w in 10..=12u32 {
            let params = window_params(w).unwrap();
            let listed: Vec<u64> = enumerate_window(w, None, &ctx, DEFAULT_SCAN_CAP)
                .unwrap()
                .map(|m| m.n)
                .collect();
            let expected: Vec<u64> = ((1u64 << w)..=(2u64 << w))
                .filter(|&n| window_verdict(&BigUint::from(n), &params, &ctx).member)
                .collect();
            assert_eq!(listed, expected, "w = {w}");
            // away from the shared endpoints, in_s reports exactly these
            for n in (1u64 << w) + 1..(2u64 << w) {
                let v = in_s(&BigUint::from(n), &ctx);
                assert_eq!(v.member, listed.binary_search(&n).is_ok(), "n = {n}");
            }
        }
    }

    #[test]
    fn empty_and_capped_windows() {
        let ctx = ctx();
        assert_eq!(
            enumerate_window(30, None, &ctx, 1 << 31).unwrap().count(),
            0
        );
        assert!(matches!(
            enumerate_window(27, None, &ctx, DEFAULT_SCAN_CAP),
            Err(crate::Error::Resource(_))
        ));
        assert!(enumerate_window(9, None, &ctx, DEFAULT_SCAN_CAP).is_err());
    }

    #[test]
    fn chunking_covers_range() {
        let c: Vec<_> = chunks(10, 10 + 2 * CHUNK).collect();
        assert_eq!(
            c,
            vec![
                (10, 9 + CHUNK),
                (10 + CHUNK, 9 + 2 * CHUNK),
                (10 + 2 * CHUNK, 10 + 2 * CHUNK)
            ]
        );
        assert_eq!(chunks(5, 4).count(), 0);
    }
}
