//! Exact combinatorics of adaptive seating at a circular table.
//!
//! Diners arrive one at a time, each reaching for the napkin on a preferred
//! side and taking the other one if it is gone. The maitre d' watches every
//! take and picks the next seat to leave as many diners napkinless as
//! possible. This crate simulates the classic strategies, counts their
//! napkinless distributions exactly over all preference orders, evaluates
//! the recurrences that describe them, and solves the optimal placement
//! problem by expectimax.

pub mod dyadic;
pub mod emit;
pub mod enumerate;
pub mod error;
mod exec;
pub mod montecarlo;
pub mod optimizer;
pub mod poly;
pub mod recurrence;
pub mod segment;
pub mod strategy;
pub mod table;
pub mod verify;

pub use dyadic::Dyadic;
pub use enumerate::{distribution, Enumerator};
pub use error::{Error, Result};
pub use exec::Execution;
pub use montecarlo::{mc_random_seating, mc_strategy, Estimate};
pub use optimizer::{optimal_circular_value, optimal_policy_probe, optimal_segment_value, optimal_value_oracle};
pub use poly::{IntPoly, NapkinPolynomial};
pub use recurrence::Arithmetic;
pub use segment::{split_segment, Segment, Shape};
pub use strategy::{run, run_s, run_stilde, run_w, StrategyId};
pub use table::{evaluate_seating, render_table, PreferenceOrder, SeatingOutcome, Sign, StepLabel, TableState, Take};
