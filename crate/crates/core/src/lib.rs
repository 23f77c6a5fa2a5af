//! Exact combinatorial knot-diagram toolkit.
//!
//! Diagrams are planar diagram (PD) codes kept in a normalized form: arcs are
//! numbered along the orientation and every crossing tuple starts with the
//! incoming under-strand. On top of that the crate computes the Kauffman
//! bracket and Jones polynomial, the knot signature from a Goeritz matrix,
//! Reidemeister moves, replayable unknot certificates and bounded searches
//! for unknotting sequences.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod certify;
pub mod codec;
pub mod diagram;
pub mod invariants;
pub mod moves;
pub mod poly;
pub mod unknotting;

mod unionfind;

pub use certify::{certify_unknot, prove_knotted, replay, simplify_greedy, Certificate, Outcome, SearchLimits};
pub use codec::{canonical_code, emit_pd, parse_pd, CodecError};
pub use diagram::{connected_sum, torus_knot, Crossing, Diagram, DiagramError, Sign};
pub use invariants::{
    bracket_fast, bracket_oracle, chiral_by_jones, detect_mirror_pair, jones, signature, unknotting_lower_bound,
    GoeritzData, InvariantError, MirrorVerdict,
};
pub use moves::{apply_move, enumerate_moves, scramble, Move, MoveError, MoveKind};
pub use poly::{LaurentPoly, PolyError};
pub use unknotting::{apply_changes, report, unknotting_upper, ChangeSet, UnknottingReport};
