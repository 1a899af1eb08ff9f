//! Exact fast paths: polynomial recurrences, generating-function
//! expansions, expectation recurrences and the window bounds on the
//! shunning proportion.

pub mod bounds;
pub mod series;
pub mod shunning;
pub mod trap;

use serde::{Deserialize, Serialize};

use crate::poly::IntPoly;

pub use bounds::{bounds_scan, bounds_window, Arithmetic, BoundsWindow, WindowExtreme};
pub use shunning::{
    e_s, e_s_table, e_s_table_float, e_stilde, e_stilde_table, s_i, s_poly, s_r, stilde_gate, stilde_poly,
    SegmentExpectations, SegmentPolys, SplitRule,
};
pub use trap::{e_w, e_w_linear, e_w_proportion_form, e_w_series, trap_series, w_gf_series, w_poly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeriesFamily {
    TrapCircular,
    TrapGeneratingFunction,
    ShunningCircular,
    ShunningRight,
    ShunningInner,
}

/// Polynomials indexed contiguously from zero.
#[derive(Debug, Clone)]
pub struct PolySeries {
    family: SeriesFamily,
    items: Vec<IntPoly>,
}

impl PolySeries {
    pub fn new(family: SeriesFamily, items: Vec<IntPoly>) -> Self {
        PolySeries { family, items }
    }

    pub fn family(&self) -> SeriesFamily {
        self.family
    }

    pub fn get(&self, n: usize) -> Option<&IntPoly> {
        self.items.get(n)
    }

    pub fn items(&self) -> &[IntPoly] {
        &self.items
    }

    pub fn max_index(&self) -> Option<usize> {
        self.items.len().checked_sub(1)
    }
}
