//! The Universal Skolem Set, window by window.

mod enumerate;
mod membership;
mod representation;
mod window;

pub use enumerate::{enumerate_window, WindowMember, WindowScan, DEFAULT_SCAN_CAP};
pub use membership::{in_s, window_verdict, Membership, Reason};
pub use representation::{correlated, representations, Representation};
pub use window::{window_params, WindowParams};

pub(crate) use enumerate::{chunks, scan_block, scan_range};
