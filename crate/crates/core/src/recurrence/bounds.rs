//! Window bounds on `E^S_n / n`.
//!
//! If every ratio in the window `n = k..=2k-2` lies in `[α, β]`, the
//! shunning recurrence keeps every later ratio there too. Taking `α_k` and
//! `β_k` as the window's own minimum and maximum therefore gives nested
//! brackets `α_k ≤ α_{k+1} ≤ β_{k+1} ≤ β_k`.

use std::cmp::Ordering;
use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::shunning::{e_s_table, e_s_table_float};
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};

/// Exact dyadic arithmetic, or `f64` for long scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arithmetic {
    #[default]
    Exact,
    Float,
}

/// One end of a window: the table size attaining it and its ratio.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowExtreme {
    pub n: usize,
    pub ratio: f64,
    /// `E^S_n` itself, in exact mode.
    pub expectation: Option<Dyadic>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsWindow {
    pub k: usize,
    pub alpha: WindowExtreme,
    pub beta: WindowExtreme,
    pub mode: Arithmetic,
}

/// `E^S_n` for `n = 0..=max_n` in either arithmetic.
pub enum ShunningValues {
    Exact(Vec<Dyadic>),
    Float(Vec<f64>),
}

impl ShunningValues {
    pub fn compute(max_n: usize, mode: Arithmetic) -> Self {
        match mode {
            Arithmetic::Exact => ShunningValues::Exact(e_s_table(max_n)),
            Arithmetic::Float => ShunningValues::Float(e_s_table_float(max_n)),
        }
    }

    /// Orders `E_a / a` against `E_b / b`.
    pub fn cmp_ratio(&self, a: usize, b: usize) -> Ordering {
        match self {
            ShunningValues::Exact(e) => e[a].cmp_ratio(a as u64, &e[b], b as u64),
            ShunningValues::Float(e) => (e[a] / a as f64).total_cmp(&(e[b] / b as f64)),
        }
    }

    pub fn ratio(&self, n: usize) -> f64 {
        match self {
            ShunningValues::Exact(e) => e[n].to_f64() / n as f64,
            ShunningValues::Float(e) => e[n] / n as f64,
        }
    }

    /// Orders `E_n / n` against the rational `p / q`.
    pub fn cmp_rational(&self, n: usize, p: i64, q: u64) -> Ordering {
        match self {
            ShunningValues::Exact(e) => e[n].cmp_ratio_rational(n as u64, p, q),
            ShunningValues::Float(e) => (e[n] / n as f64).total_cmp(&(p as f64 / q as f64)),
        }
    }

    fn extreme(&self, n: usize) -> WindowExtreme {
        WindowExtreme {
            n,
            ratio: self.ratio(n),
            expectation: match self {
                ShunningValues::Exact(e) => Some(e[n].clone()),
                ShunningValues::Float(_) => None,
            },
        }
    }

    fn mode(&self) -> Arithmetic {
        match self {
            ShunningValues::Exact(_) => Arithmetic::Exact,
            ShunningValues::Float(_) => Arithmetic::Float,
        }
    }
}

fn window_range(k: usize) -> Result<(usize, usize)> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("window start k = {k} must be at least 2")));
    }
    Ok((k, 2 * k - 2))
}

/// `(α_k, β_k)` by direct minimum and maximum over the window.
pub fn bounds_window(k: usize, mode: Arithmetic) -> Result<BoundsWindow> {
    let (lo, hi) = window_range(k)?;
    let values = ShunningValues::compute(hi, mode);
    let min = (lo..=hi).min_by(|&a, &b| values.cmp_ratio(a, b)).expect("non-empty window");
    let max = (lo..=hi).max_by(|&a, &b| values.cmp_ratio(a, b)).expect("non-empty window");
    Ok(BoundsWindow { k, alpha: values.extreme(min), beta: values.extreme(max), mode })
}

/// Every window `k = 2..=k_max`, using sliding-window extrema over a single
/// table of `E^S_n` up to `2 k_max - 2`.
pub fn bounds_scan(k_max: usize, mode: Arithmetic) -> Result<Vec<BoundsWindow>> {
    let (_, hi) = window_range(k_max)?;
    let values = ShunningValues::compute(hi, mode);
    Ok(scan_with(&values, k_max))
}

pub fn scan_with(values: &ShunningValues, k_max: usize) -> Vec<BoundsWindow> {
    let mut mins: VecDeque<usize> = VecDeque::new();
    let mut maxs: VecDeque<usize> = VecDeque::new();
    let mut next = 2;
    let mut out = Vec::with_capacity(k_max.saturating_sub(1));
    for k in 2..=k_max {
        let hi = 2 * k - 2;
        while next <= hi {
            while mins.back().is_some_and(|&b| values.cmp_ratio(b, next) == Ordering::Greater) {
                mins.pop_back();
            }
            mins.push_back(next);
            while maxs.back().is_some_and(|&b| values.cmp_ratio(b, next) == Ordering::Less) {
                maxs.pop_back();
            }
            maxs.push_back(next);
            next += 1;
        }
        while mins.front().is_some_and(|&f| f < k) {
            mins.pop_front();
        }
        while maxs.front().is_some_and(|&f| f < k) {
            maxs.pop_front();
        }
        out.push(BoundsWindow {
            k,
            alpha: values.extreme(mins[0]),
            beta: values.extreme(maxs[0]),
            mode: values.mode(),
        });
    }
    out
}

/// First `k` (if any) in a scan where the bracket is not nested inside the
/// previous one.
pub fn first_nesting_violation(values: &ShunningValues, windows: &[BoundsWindow]) -> Option<usize> {
    windows.windows(2).find_map(|w| {
        let (a, b) = (&w[0], &w[1]);
        let ok = values.cmp_ratio(a.alpha.n, b.alpha.n) != Ordering::Greater
            && values.cmp_ratio(b.alpha.n, b.beta.n) != Ordering::Greater
            && values.cmp_ratio(b.beta.n, a.beta.n) != Ordering::Greater;
        (!ok).then_some(a.k)
    })
}

/// Smallest `k ≤ k_max` whose window lies inside `[lo_p/q, hi_p/q]`.
pub fn least_certifying_k(values: &ShunningValues, windows: &[BoundsWindow], lo_p: i64, hi_p: i64, q: u64) -> Option<usize> {
    windows.iter().find_map(|w| {
        let inside = values.cmp_rational(w.alpha.n, lo_p, q) != Ordering::Less
            && values.cmp_rational(w.beta.n, hi_p, q) != Ordering::Greater;
        inside.then_some(w.k)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn third_window_is_one_sixth_to_three_sixteenths() {
        let w = bounds_window(3, Arithmetic::Exact).unwrap();
        assert_eq!(w.alpha.n, 3);
        assert_eq!(w.beta.n, 4);
        assert_eq!(w.alpha.expectation.unwrap().cmp_ratio_rational(3, 1, 6), Ordering::Equal);
        assert_eq!(w.beta.expectation.unwrap().cmp_ratio_rational(4, 3, 16), Ordering::Equal);
    }

    #[test]
    fn scan_matches_direct_windows() {
        let scan = bounds_scan(60, Arithmetic::Exact).unwrap();
        for w in &scan {
            let direct = bounds_window(w.k, Arithmetic::Exact).unwrap();
            assert_eq!(w.alpha.ratio, direct.alpha.ratio, "k = {}", w.k);
            assert_eq!(w.beta.ratio, direct.beta.ratio, "k = {}", w.k);
        }
    }

    #[test]
    fn nested_brackets() {
        let values = ShunningValues::compute(2 * 300 - 2, Arithmetic::Exact);
        let scan = scan_with(&values, 300);
        // the k = 2 window is just E_2 = 0
        assert_eq!(first_nesting_violation(&values, &scan), Some(2));
        assert_eq!(first_nesting_violation(&values, &scan[1..]), None);
    }

    #[test]
    fn rejects_tiny_window() {
        assert!(bounds_window(1, Arithmetic::Exact).is_err());
    }
}
