//! A fuel-bounded kernel for type-free algorithmic logic.
//!
//! Algorithms are data. A statement `[alpha, u, v]` claims that `alpha` on
//! input `u` halts with output `v`. Rules, libraries and the DEDUCE procedure
//! are ordinary programs on the same machine, so they can be quoted and
//! applied to themselves.

pub mod datum;
pub mod deduction;
pub mod ids;
pub mod lawsuite;
pub mod machine;
pub mod rules;
pub mod statements;
pub mod text;

pub use datum::{canonical_compare, enumerate_data, Datum, Universe};
pub use ids::{ProgramId, RuleId};
pub use machine::{Machine, MachineError, RunResult};
