use std::fmt;

use num_bigint::BigUint;

use super::representation::{first_correlated_pair, representations, Representation};
use super::window::{window_params, WindowParams};
use crate::arith::{Certainty, PrimeContext};

/// Why a number is or is not in `𝒮`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reason {
    /// `n < 2^10`.
    BelowRange,
    /// `A(X)` contains no prime.
    NoWindowPrimes,
    /// `r(n) ≤ log₄ X`.
    TooFewReps,
    /// Enough representations, but two of them are correlated.
    CorrelatedPair,
    Member,
}

impl Reason {
    pub fn as_str(self) -> &'static str {
        match self {
            Reason::BelowRange => "BelowRange",
            Reason::NoWindowPrimes => "NoWindowPrimes",
            Reason::TooFewReps => "TooFewReps",
            Reason::CorrelatedPair => "CorrelatedPair",
            Reason::Member => "Member",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Verdict of [`in_s`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    /// Window that granted membership, or the window `⌊log₂ n⌋` that was
    /// examined for a non-member. `None` below `2^10`.
    pub window: Option<u32>,
    pub reps: Vec<Representation>,
    pub reason: Reason,
    /// Indices into `reps` of the first correlated pair found.
    pub correlated_pair: Option<(usize, usize)>,
}

impl Membership {
    /// Weakest certainty among the representation primes; `Prime` when empty.
    pub fn certainty(&self) -> Certainty {
        self.reps
            .iter()
            .fold(Certainty::Prime, |acc, r| acc.weakest(r.certainty))
    }

    pub fn r(&self) -> usize {
        self.reps.len()
    }
}

/// Verdict for `n` inside one window (which must contain it).
pub fn window_verdict(n: &BigUint, params: &WindowParams, ctx: &PrimeContext) -> Membership {
    let reps = representations(n, params, ctx).expect("n lies in the window");
    let mut verdict = Membership {
        member: false,
        window: Some(params.w()),
        reps,
        reason: Reason::Member,
        correlated_pair: None,
    };
    verdict.reason = if params.q_primes().is_empty() {
        Reason::NoWindowPrimes
    } else if !params.exceeds_threshold(verdict.reps.len()) {
        Reason::TooFewReps
    } else if let Some(pair) = first_correlated_pair(&verdict.reps, |r| (r.q, r.a), params) {
        verdict.correlated_pair = Some(pair);
        Reason::CorrelatedPair
    } else {
        verdict.member = true;
        Reason::Member
    };
    verdict
}

/// Membership of `n` in `𝒮 = ⋃_{w ≥ 10} 𝒮(2^w)`.
///
/// `n = 2^{w+1}` belongs to two windows and is a member if either grants it;
/// the lower window is tried first.
pub fn in_s(n: &BigUint, ctx: &PrimeContext) -> Membership {
    let bits = n.bits();
    if bits < 11 {
        return Membership {
            member: false,
            window: None,
            reps: Vec::new(),
            reason: Reason::BelowRange,
            correlated_pair: None,
        };
    }
    let w = (bits - 1) as u32;
    let power_of_two = n.trailing_zeros() == Some(bits - 1);
    if power_of_two && w > 10 {
        let lower = window_verdict(n, &window_params(w - 1).expect("w ≥ 10"), ctx);
        if lower.member {
            return lower;
        }
    }
    window_verdict(n, &window_params(w).expect("w ≥ 10"), ctx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrimeContext {
        PrimeContext::with_sieve_limit(1 << 16).unwrap()
    }

    #[test]
    fn documented_verdicts() {
        let ctx = ctx();
        let v = in_s(&BigUint::from(1053u32), &ctx);
        assert!(v.member);
        assert_eq!((v.window, v.reason, v.r()), (Some(10), Reason::Member, 2));
        assert_eq!(v.certainty(), Certainty::Prime);

        let v = in_s(&BigUint::from(1025u32), &ctx);
        assert!(!v.member);
        assert_eq!(v.reason, Reason::TooFewReps);

        let v = in_s(&BigUint::from(512u32), &ctx);
        assert_eq!(
            (v.member, v.window, v.reason),
            (false, None, Reason::BelowRange)
        );
    }

    #[test]
    fn empty_window() {
        let n = (BigUint::from(1u32) << 30u32) + 77u32;
        let v = in_s(&n, &ctx());
        assert_eq!((v.window, v.reason), (Some(30), Reason::NoWindowPrimes));
    }

    #[test]
    fn powers_of_two_consult_both_windows() {
        let ctx = ctx();
        for w in 11..16u32 {
            let n = BigUint::from(1u32) << w;
            let lower = window_verdict(&n, &window_params(w - 1).unwrap(), &ctx);
            let upper = window_verdict(&n, &window_params(w).unwrap(), &ctx);
            assert_eq!(in_s(&n, &ctx).member, lower.member || upper.member);
        }
        // 1024 only sits in window 10
        assert_eq!(in_s(&BigUint::from(1024u32), &ctx).window, Some(10));
    }
}
