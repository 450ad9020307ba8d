//! Exact-arithmetic analysis of complete deterministic automata.
//!
//! The crate decides structural properties of finite DFAs, with emphasis on
//! circular synchronizing ones: synchronization and shortest reset words,
//! simplicity via congruence closure, the contracting and weakly contracting
//! properties of the circular metric, weak defectivity, and irreducibility of
//! the synchronized representation over ℂ (decided exactly by a Burnside-style
//! algebra-dimension computation over the rationals).
//!
//! Everything is exact: rationals with unbounded-precision integers, dense
//! polynomial arithmetic, and cyclotomic field arithmetic modulo Φ_n. No
//! floating point is used anywhere.
//!
//! Entry points:
//! - [`format::parse_automaton`] reads the `.aut` text format.
//! - [`report::analyze`] produces the full property report for one automaton.
//! - [`families`] generates the named automaton families and ships the fixed
//!   corpus of examples with their expected reports.
//! - [`search`] enumerates or samples automata looking for counterexamples to
//!   the conjecture predicates.

pub mod automaton;
pub mod congruence;
pub mod contraction;
pub mod cyclotomic;
pub mod families;
pub mod format;
pub mod monoid;
pub mod oracles;
pub mod poly;
pub mod report;
pub mod representation;
pub mod rng;
pub mod search;

pub use automaton::{Automaton, CircularStructure, Transformation, Word};
pub use report::{analyze, AnalyzeOptions, Report};
