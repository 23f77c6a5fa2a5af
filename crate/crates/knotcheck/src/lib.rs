//! File formats, scenario pipeline and parallel drivers behind the
//! `knotcheck` command.

pub mod input;
pub mod parallel;
pub mod scenario;

/// Every stated expectation verified with a witness.
pub const EXIT_VERIFIED: i32 = 0;
/// An error, or an expectation refuted.
pub const EXIT_FAILURE: i32 = 1;
/// Some expectation could be neither verified nor refuted.
pub const EXIT_UNKNOWN: i32 = 2;
