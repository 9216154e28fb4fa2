//! The guide in `book/`, compiled so that its examples run as doctests.
#![doc = include_str!("../../../book/src/intro.md")]

#[doc = include_str!("../../../book/src/windows.md")]
pub mod windows {}

#[doc = include_str!("../../../book/src/moments.md")]
pub mod moments {}

#[doc = include_str!("../../../book/src/prime-pairs.md")]
pub mod prime_pairs {}

#[doc = include_str!("../../../book/src/recurrences.md")]
pub mod recurrences {}

#[doc = include_str!("../../../book/src/zeros.md")]
pub mod zeros {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
