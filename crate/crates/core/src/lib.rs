//! Experiments with the Universal Skolem Set.
//!
//! The set 𝒮 is built window by window. For `X = 2^w` (with `w ≥ 10`) an
//! integer `n ∈ [X, 2X]` belongs to `𝒮(X)` when it has more than `log₄ X`
//! representations `n = P·q + a` with `P`, `q` prime, `q` in a short interval
//! `A(X)` of small primes and `a` in an interval `B(X)` of shifts, and no two
//! of those representations are *correlated*. On this set the zeros of any
//! non-degenerate integer linear recurrence can be found effectively.
//!
//! The crate is split into:
//!
//! * [`arith`]: sieves, primality, iterated logarithms, tower numbers, Euler
//!   products and the multiplicative function `g`.
//! * [`lrs`]: exact and modular evaluation of linear recurrences, minimal
//!   recurrences, degeneracy detection and merge decomposition.
//! * [`skolem`]: window parameters, representations, correlation and
//!   membership, and streaming enumeration of `𝒮(2^w)`.
//! * [`density`]: moment statistics of `r(n)` and their exact counting
//!   identities.
//! * [`bhcount`]: Bateman–Horn experiments for pairs of linear forms.
//! * [`decide`]: the pipeline that lists the zeros of a recurrence lying in
//!   `𝒮`, up to a search limit.
//!
//! ```
//! use num_bigint::BigUint;
//! use skolem_set::arith::PrimeContext;
//! use skolem_set::skolem::{in_s, Reason};
//!
//! let ctx = PrimeContext::with_sieve_limit(1 << 12).unwrap();
//! let verdict = in_s(&BigUint::from(1053u32), &ctx);
//! assert!(verdict.member);
//! assert_eq!(verdict.window, Some(10));
//! assert_eq!(verdict.reason, Reason::Member);
//! ```

pub mod arith;
pub mod bhcount;
pub mod decide;
pub mod density;
mod error;
pub mod lrs;
pub mod skolem;

pub use error::{Error, Result};
