//! Integer linear recurrence sequences.
//!
//! Exact evaluation iterates the recurrence; modular evaluation reduces `x^n`
//! modulo the characteristic polynomial, so huge indices cost `O(k² log n)`.
//! Minimal recurrences come from Berlekamp–Massey over the rationals, and
//! degeneracy is decided exactly with a resultant and cyclotomic divisibility.

mod decompose;
mod degeneracy;
mod minimize;
mod poly;
mod sequence;

pub use decompose::{decompose, Component, ComponentKind, Decomposition};
pub use degeneracy::{is_degenerate, quotient_resultant, root_of_unity_orders, Degeneracy};
pub use minimize::{is_minimal, minimal_recurrence, minimize};
pub use poly::{cyclotomic, IntPoly};
pub use sequence::{Lrs, DEFAULT_EXACT_CAP};
