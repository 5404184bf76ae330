//! Turing machines: the `%tm` format, bounded nondeterministic runs, and the
//! Wang-tile encoding of computations with exact tiling counts.

mod compile;
mod machine;
mod period;
mod run;
mod unary;

pub use compile::{compile_tm, count_rectangle_tilings, count_tm_tilings, input_color, HALT, QUIET, WHITE};
pub use machine::{parse_tm, write_tm, Move, TmError, TmSpec, Transition};
pub use period::{machine_symbol, tm_period_bundle, tm_period_bundle_over, tm_period_sft, M_BREAKER, PERIOD_OFFSET, SYNC_IDLE, TM_M, TM_SYNC};
pub use run::{count_accepting, run_bounded, RunWitness, Snapshot};
pub use unary::encode_unary;
