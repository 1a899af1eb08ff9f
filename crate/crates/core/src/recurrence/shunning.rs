//! Napkin shunning: segment polynomials, expectations, and the shifted
//! variant.
//!
//! After the first diner the table is a right-leaning segment `R_{n-1}`,
//! so `S_n = 2 S(R_{n-1})`. A shunning chain on `R_m` either keeps the
//! segment right-leaning or closes it into an inner segment:
//! `S(R_m) = S(R_{m-1}) + S(I_{m-1})`. A restart on `I_m` at position `k`
//! splits it into a right-leaning and an inner part whichever way the
//! diner reaches:
//! `S(I_m) = S(R_{k-1}) S(I_{m-k}) + S(I_{k-1}) S(R_{m-k})`.
//!
//! The split is only well formed once the restart seat has a napkin on
//! both sides, which first happens at `m = 3`; `I_1 = 2t` and `I_2 = 4t`
//! are base cases.

use std::sync::OnceLock;

use super::{PolySeries, SeriesFamily};
use crate::dyadic::Dyadic;
use crate::enumerate::Enumerator;
use crate::error::{Error, Result};
use crate::poly::{IntPoly, NapkinPolynomial};
use crate::strategy::StrategyId;

/// Where a restart lands in an inner gap of `m` seats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitRule {
    /// `⌈m/2⌉`.
    Midpoint,
    /// `⌈m/2⌉ - 1` when `⌈m/2⌉ ≡ 1 (mod 3)` and that is still a seat,
    /// otherwise `⌈m/2⌉`.
    ShiftedMidpoint,
}

impl SplitRule {
    pub fn position(self, m: usize) -> usize {
        let mid = m.div_ceil(2);
        match self {
            SplitRule::ShiftedMidpoint if mid % 3 == 1 && mid >= 2 => mid - 1,
            _ => mid,
        }
    }

    pub fn for_strategy(strategy: StrategyId) -> Option<Self> {
        match strategy {
            StrategyId::S => Some(SplitRule::Midpoint),
            StrategyId::STilde => Some(SplitRule::ShiftedMidpoint),
            StrategyId::W => None,
        }
    }
}

/// `S(R_m; t)` and `S(I_m; t)` for `m = 0..=max_m`.
#[derive(Debug, Clone)]
pub struct SegmentPolys {
    pub right: PolySeries,
    pub inner: PolySeries,
}

impl SegmentPolys {
    pub fn compute(max_m: usize, rule: SplitRule) -> Self {
        let two_t = IntPoly::monomial(2, 1);
        let mut r = vec![IntPoly::constant(1), IntPoly::constant(2)];
        let mut i = vec![IntPoly::constant(1), two_t.clone(), two_t.scale(2)];
        for m in 2..=max_m {
            if m >= 3 {
                let k = rule.position(m);
                let next = &(&r[k - 1] * &i[m - k]) + &(&i[k - 1] * &r[m - k]);
                i.push(next);
            }
            let next = &r[m - 1] + &i[m - 1];
            r.push(next);
        }
        r.truncate(max_m + 1);
        i.truncate(max_m + 1);
        SegmentPolys {
            right: PolySeries::new(SeriesFamily::ShunningRight, r),
            inner: PolySeries::new(SeriesFamily::ShunningInner, i),
        }
    }

    /// Circular-table polynomials `S_n = 2 S(R_{n-1})` for `n = 1..=max_m+1`,
    /// stored at index `n` (index 0 holds the constant 1 as a placeholder).
    pub fn circular(&self) -> PolySeries {
        let mut c = vec![IntPoly::constant(1)];
        c.extend(self.right.items().iter().map(|p| p.scale(2)));
        PolySeries::new(SeriesFamily::ShunningCircular, c)
    }
}

fn checked(n: usize, p: &IntPoly) -> NapkinPolynomial {
    NapkinPolynomial::from_int_poly(n, p).expect("shunning coefficients are non-negative")
}

/// `S_n(t)` for `n ≥ 1`.
pub fn s_poly(n: usize) -> NapkinPolynomial {
    assert!(n >= 1, "a table needs at least one seat");
    let segs = SegmentPolys::compute(n - 1, SplitRule::Midpoint);
    checked(n, &segs.right.get(n - 1).expect("computed").scale(2))
}

/// `S(R_m; t)`.
pub fn s_r(m: usize) -> NapkinPolynomial {
    checked(m, SegmentPolys::compute(m, SplitRule::Midpoint).right.get(m).expect("computed"))
}

/// `S(I_m; t)`.
pub fn s_i(m: usize) -> NapkinPolynomial {
    checked(m, SegmentPolys::compute(m, SplitRule::Midpoint).inner.get(m).expect("computed"))
}

/// `S̃_n(t)`, the shifted-restart analogue of [`s_poly`].
pub fn stilde_poly(n: usize) -> NapkinPolynomial {
    assert!(n >= 1, "a table needs at least one seat");
    let segs = SegmentPolys::compute(n - 1, SplitRule::ShiftedMidpoint);
    checked(n, &segs.right.get(n - 1).expect("computed").scale(2))
}

/// `E^S_n` for `n = 0..=max_n` (index 0 is unused and zero):
/// `E_1 = E_2 = 0`, `E_3 = 1/2`, `E_4 = 3/4`, and for `n ≥ 5`
/// `E_n = (E_{n-1} + E_{⌊(n+1)/2⌋} + E_{⌈(n+1)/2⌉}) / 2`.
pub fn e_s_table(max_n: usize) -> Vec<Dyadic> {
    let mut e = vec![Dyadic::zero(), Dyadic::zero(), Dyadic::zero(), Dyadic::new(1, 1), Dyadic::new(3, 2)];
    for n in 5..=max_n {
        let lo = n.div_ceil(2);
        let hi = (n + 2) / 2;
        let next = (&(&e[n - 1] + &e[lo]) + &e[hi]).half();
        e.push(next);
    }
    e.truncate(max_n + 1);
    e
}

/// The same recurrence in `f64`.
pub fn e_s_table_float(max_n: usize) -> Vec<f64> {
    let mut e = vec![0.0, 0.0, 0.0, 0.5, 0.75];
    for n in 5..=max_n {
        let lo = n.div_ceil(2);
        let hi = (n + 2) / 2;
        e.push(0.5 * (e[n - 1] + e[lo] + e[hi]));
    }
    e.truncate(max_n + 1);
    e
}

pub fn e_s(n: usize) -> Dyadic {
    e_s_table(n.max(1)).swap_remove(n)
}

/// Segment-level expectations `R_m`, `I_m` under a split rule; the
/// circular expectation is `E_n = R_{n-1}`.
#[derive(Debug, Clone)]
pub struct SegmentExpectations {
    pub right: Vec<Dyadic>,
    pub inner: Vec<Dyadic>,
}

impl SegmentExpectations {
    pub fn compute(max_m: usize, rule: SplitRule) -> Self {
        let mut r = vec![Dyadic::zero(), Dyadic::zero()];
        let mut i = vec![Dyadic::zero(), Dyadic::one(), Dyadic::one()];
        for m in 2..=max_m {
            if m >= 3 {
                let k = rule.position(m);
                let sum = &(&(&r[k - 1] + &i[m - k]) + &i[k - 1]) + &r[m - k];
                i.push(sum.half());
            }
            let next = (&r[m - 1] + &i[m - 1]).half();
            r.push(next);
        }
        r.truncate(max_m + 1);
        i.truncate(max_m + 1);
        SegmentExpectations { right: r, inner: i }
    }

    /// `E_n` for `n = 0..=max_m+1` (index 0 is zero).
    pub fn circular(&self) -> Vec<Dyadic> {
        std::iter::once(Dyadic::zero()).chain(self.right.iter().cloned()).collect()
    }
}

/// Largest table on which the shifted recurrence is checked against
/// exhaustive enumeration before it is trusted.
pub const STILDE_GATE_MAX_N: usize = 20;

/// Compares the shifted recurrence with brute force for every
/// `1 ≤ n ≤ max_n`.
pub fn check_stilde_recurrence(max_n: usize, enumerator: &Enumerator) -> Result<()> {
    let rec = SegmentExpectations::compute(max_n.saturating_sub(1), SplitRule::ShiftedMidpoint).circular();
    for (n, expected) in rec.iter().enumerate().take(max_n + 1).skip(1) {
        let brute = enumerator.distribution(StrategyId::STilde, n)?.expectation();
        if brute != *expected {
            return Err(Error::DerivationInvalid {
                n,
                recurrence: expected.to_string(),
                enumeration: brute.to_string(),
            });
        }
    }
    Ok(())
}

/// Runs the `n ≤ 20` gate once per process.
pub fn stilde_gate() -> Result<()> {
    static GATE: OnceLock<Result<()>> = OnceLock::new();
    GATE.get_or_init(|| check_stilde_recurrence(STILDE_GATE_MAX_N, &Enumerator::default()))
        .clone()
}

/// `E^{S̃}_n` for `n = 0..=max_n`, available only once the gate has passed.
pub fn e_stilde_table(max_n: usize) -> Result<Vec<Dyadic>> {
    stilde_gate()?;
    Ok(SegmentExpectations::compute(max_n.saturating_sub(1), SplitRule::ShiftedMidpoint)
        .circular()
        .into_iter()
        .take(max_n + 1)
        .collect())
}

pub fn e_stilde(n: usize) -> Result<Dyadic> {
    Ok(e_stilde_table(n)?.swap_remove(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    fn quarters(p: &NapkinPolynomial) -> Vec<u64> {
        p.coeffs_u64().iter().map(|c| c / 4).collect()
    }

    #[test]
    fn base_segments() {
        assert_eq!(s_r(0).coeffs_u64(), vec![1]);
        assert_eq!(s_r(1).coeffs_u64(), vec![2]);
        assert_eq!(s_i(1).coeffs_u64(), vec![0, 2]);
        assert_eq!(s_i(2).coeffs_u64(), vec![0, 4]);
    }

    #[test]
    fn small_circular_tables() {
        assert_eq!(s_poly(3).coeffs_u64(), vec![4, 4]);
        assert_eq!(s_poly(4).coeffs_u64(), vec![4, 12]);
        assert_eq!(s_poly(5).coeffs_u64(), vec![4, 28]);
        assert_eq!(quarters(&s_poly(14)), vec![1, 193, 1790, 1800, 312]);
    }

    #[test]
    fn expectations() {
        assert_eq!(e_s(5), d("7/8"));
        assert_eq!(e_s(14), d("10421/4096"));
        assert_eq!(format!("{:.4}", e_s(48).to_f64()), "8.6015");
    }

    #[test]
    fn segment_route_matches_direct_recurrence() {
        let seg = SegmentExpectations::compute(199, SplitRule::Midpoint).circular();
        let direct = e_s_table(200);
        for n in 1..=200 {
            assert_eq!(seg[n], direct[n], "n = {n}");
        }
    }

    #[test]
    fn polynomial_route_matches_expectations() {
        let direct = e_s_table(40);
        for n in 1..=40 {
            assert_eq!(s_poly(n).expectation(), direct[n], "n = {n}");
        }
        let shifted = SegmentExpectations::compute(39, SplitRule::ShiftedMidpoint).circular();
        for n in 1..=40 {
            assert_eq!(stilde_poly(n).expectation(), shifted[n], "n = {n}");
        }
    }

    #[test]
    fn float_mode_tracks_exact() {
        let exact = e_s_table(200);
        let float = e_s_table_float(200);
        for n in 1..=200 {
            assert!((exact[n].to_f64() - float[n]).abs() <= 1e-12, "n = {n}");
        }
    }

    #[test]
    fn split_positions() {
        assert_eq!(SplitRule::Midpoint.position(7), 4);
        assert_eq!(SplitRule::ShiftedMidpoint.position(7), 3);
        assert_eq!(SplitRule::ShiftedMidpoint.position(2), 1);
        assert_eq!(SplitRule::ShiftedMidpoint.position(3), 2);
        assert_eq!(SplitRule::ShiftedMidpoint.position(14), 6);
    }

    #[test]
    fn shifted_gate_passes() {
        let e = Enumerator::default();
        check_stilde_recurrence(16, &e).unwrap();
        assert_eq!(e_stilde(3).unwrap(), d("1/2"));
    }
}
