//! Batch front-end for the fuzzy time-scale calculus library: parse a
//! scenario file, dispatch to derive/integrate/verify/local-steps, and
//! serialize the results deterministically.

pub mod runner;
pub mod scenario;

pub use runner::{run_file, run_standard_suite, run_str, Outcome, Overrides};
pub use scenario::{Format, Operation, Scenario};
