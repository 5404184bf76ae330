//! Period questions for SFTs: strong periods on tori, horizontal periods
//! through strip graphs, single period vectors, and bounded lattice
//! refutation.

mod graph;
mod horizontal;
mod lattice;
mod one;
mod report;
pub(crate) mod solver;
pub(crate) mod space;
mod search;
mod strip;

pub use horizontal::{horizontal_period, horizontal_period_any, horizontal_period_with, least_vertical_period, vertical_companion_bound, vertical_cycles, HorizontalStrategy, VerticalCycle};
pub use lattice::{stabilizer, PeriodGroup};
pub use one::{check_one_period_walk, one_period, verify_one_period_walk};
pub use report::{grid_text, parse_walk, write_walk, PeriodError, SearchBudget, StripWalk, Verdict, Witness, WitnessReport};
pub use search::{bounded_lattice_refute, count_strong, count_strong_with, enumerate_torus, find_patch, find_torus, find_torus_pinned, strong_period_exists, CountMode, PatternSource, Pin, TorusEnumeration};
pub use strip::{build_strip_graph, StripGraph};
