//! Deterministic adaptive seating strategies.
//!
//! Every engine seats diner 1 in seat 1, then chooses each later seat
//! from the takes observed so far:
//!
//! * **W** (trap setting) marches in the first diner's direction, skipping
//!   a seat after every forward reach so the skipped seat may end up with
//!   no napkins, then fills whatever is left.
//! * **S** (napkin shunning) seats the next diner on the far side of the
//!   napkin the previous diner did *not* take, hoping both neighbours of
//!   that napkin reach away from it. When that seat is gone it restarts in
//!   the middle of the leftmost gap.
//! * **S̃** is S with the restart shifted one seat left whenever the
//!   midpoint offset is `1 mod 3`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::table::{PreferenceOrder, SeatingOutcome, SeatingRun, StepLabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StrategyId {
    W,
    S,
    #[serde(rename = "STILDE")]
    STilde,
}

impl StrategyId {
    pub const ALL: [StrategyId; 3] = [StrategyId::W, StrategyId::S, StrategyId::STilde];

    pub fn name(self) -> &'static str {
        match self {
            StrategyId::W => "W",
            StrategyId::S => "S",
            StrategyId::STilde => "STILDE",
        }
    }
}

impl fmt::Display for StrategyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StrategyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "W" => Ok(StrategyId::W),
            "S" => Ok(StrategyId::S),
            "STILDE" | "S~" | "ST" => Ok(StrategyId::STilde),
            other => Err(Error::InvalidArgument(format!("unknown strategy {other:?}; expected W, S or STILDE"))),
        }
    }
}

/// Dispatches to the engine named by `strategy`.
pub fn run(strategy: StrategyId, n: usize, sigma: &PreferenceOrder) -> Result<SeatingOutcome> {
    match strategy {
        StrategyId::W => run_w(n, sigma),
        StrategyId::S => run_s(n, sigma),
        StrategyId::STilde => run_stilde(n, sigma),
    }
}

/// Napkinless count only.
pub fn napkinless(strategy: StrategyId, sigma: &PreferenceOrder) -> usize {
    run(strategy, sigma.len(), sigma)
        .expect("engines accept any non-empty preference order")
        .napkinless_count()
}

/// Trap setting.
pub fn run_w(n: usize, sigma: &PreferenceOrder) -> Result<SeatingOutcome> {
    sigma.check_len(n)?;
    let mut run = SeatingRun::new(sigma)?;
    let first = run.seat(1, StepLabel::Init)?;
    // Every later move is made in the primary direction; a left-handed
    // start is the exact mirror image of a right-handed one.
    let primary = first.side().expect("the first diner always finds a napkin");
    let mut prev = 1;
    let mut prev_take = first;

    while !run.is_done() {
        let one = run.table.neighbor(prev, primary, 1);
        let two = run.table.neighbor(prev, primary, 2);
        if !(run.table.is_empty_seat(one) && run.table.is_empty_seat(two)) {
            break;
        }
        let (seat, label) = if prev_take == primary.as_take() {
            (two, StepLabel::W2)
        } else {
            (one, StepLabel::W3)
        };
        prev_take = run.seat(seat, label)?;
        prev = seat;
    }

    let mut seat = 1;
    while !run.is_done() {
        seat = run.table.neighbor(seat, primary, 1);
        if run.table.is_empty_seat(seat) {
            run.seat(seat, StepLabel::W4)?;
        }
    }
    Ok(run.finish())
}

/// Napkin shunning.
pub fn run_s(n: usize, sigma: &PreferenceOrder) -> Result<SeatingOutcome> {
    run_shunning(n, sigma, |gap| (gap.div_ceil(2), StepLabel::S3))
}

/// Napkin shunning with the shifted restart.
pub fn run_stilde(n: usize, sigma: &PreferenceOrder) -> Result<SeatingOutcome> {
    run_shunning(n, sigma, stilde_offset)
}

/// Restart offset used by S̃ for a gap of `gap` empty seats, and the label
/// recorded for it.
pub fn stilde_offset(gap: usize) -> (usize, StepLabel) {
    let mid = gap.div_ceil(2);
    // gap = 2 also has mid ≡ 1 (mod 3), but offset 0 is not a seat
    if gap > 1 && mid % 3 == 1 && mid > 1 {
        (mid - 1, StepLabel::S3Tilde)
    } else {
        (mid, StepLabel::S3)
    }
}

fn run_shunning(
    n: usize,
    sigma: &PreferenceOrder,
    restart_offset: impl Fn(usize) -> (usize, StepLabel),
) -> Result<SeatingOutcome> {
    sigma.check_len(n)?;
    let mut run = SeatingRun::new(sigma)?;
    let mut prev = 1;
    let mut prev_take = run.seat(1, StepLabel::Init)?;

    while !run.is_done() {
        // Shun: the seat beside the previous diner, away from their take.
        if let Some(side) = prev_take.side() {
            let seat = run.table.neighbor(prev, side.flip(), 1);
            if run.table.is_empty_seat(seat) {
                prev_take = run.seat(seat, StepLabel::S2)?;
                prev = seat;
                continue;
            }
        }
        // Reset into the leftmost gap; seat 1 is always taken so no gap wraps.
        let start = (2..=n)
            .find(|&s| run.table.is_empty_seat(s))
            .expect("an unfilled table has an empty seat past seat 1");
        let len = (start..=n).take_while(|&s| run.table.is_empty_seat(s)).count();
        let (offset, label) = restart_offset(len);
        let seat = start + offset - 1;
        prev_take = run.seat(seat, label)?;
        prev = seat;
    }
    Ok(run.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    const WORKED: &str = "RRLRLRRLRLLRRLLRRL";

    fn sigma(s: &str) -> PreferenceOrder {
        s.parse().unwrap()
    }

    #[test]
    fn worked_order_matches_signed_form() {
        assert_eq!(sigma(WORKED), sigma("1,1,-1,1,-1,1,1,-1,1,-1,-1,1,1,-1,-1,1,1,-1"));
    }

    #[test]
    fn trap_setting_worked_example() {
        let out = run_w(18, &sigma(WORKED)).unwrap();
        assert_eq!(out.napkinless(), vec![13, 14, 16, 17]);
        assert_eq!(
            out.arrangement(),
            vec![1, 12, 2, 13, 3, 4, 14, 5, 6, 15, 7, 16, 8, 9, 17, 10, 11, 18]
        );
        let mid = out.state_after(11).arrangement();
        assert_eq!(mid, vec![1, 0, 2, 0, 3, 4, 0, 5, 6, 0, 7, 0, 8, 9, 0, 10, 11, 0]);
        let labels: Vec<_> = out.trace().iter().take(6).map(|s| s.label).collect();
        use StepLabel::*;
        assert_eq!(labels, vec![Init, W2, W2, W3, W2, W3]);
        assert!(out.trace()[11..].iter().all(|s| s.label == W4));
    }

    #[test]
    fn napkin_shunning_worked_example() {
        let out = run_s(18, &sigma(WORKED)).unwrap();
        assert_eq!(out.napkinless(), vec![11, 15, 18]);
        assert_eq!(
            out.arrangement(),
            vec![1, 8, 7, 6, 10, 9, 11, 5, 4, 15, 14, 13, 12, 17, 16, 18, 3, 2]
        );
        assert_eq!(out.trace()[3].seat, 9);
        assert_eq!(out.trace()[5].seat, 4);
        assert_eq!(out.trace()[3].label, StepLabel::S3);
        assert_eq!(out.trace()[1].label, StepLabel::S2);
        let mid = out.state_after(11).arrangement();
        assert_eq!(mid, vec![1, 8, 7, 6, 10, 9, 11, 5, 4, 0, 0, 0, 0, 0, 0, 0, 3, 2]);
    }

    #[test]
    fn neither_strategy_dominates_pointwise() {
        let s = sigma(WORKED);
        assert_eq!(napkinless(StrategyId::W, &s), 4);
        assert_eq!(napkinless(StrategyId::S, &s), 3);
    }

    #[test]
    fn all_right_strands_nobody() {
        for n in 1..30 {
            let s = PreferenceOrder::all_right(n);
            for id in StrategyId::ALL {
                assert_eq!(napkinless(id, &s), 0, "{id} n={n}");
            }
        }
    }

    #[test]
    fn three_seat_trap() {
        for last in ["R", "L"] {
            assert_eq!(napkinless(StrategyId::W, &sigma(&format!("RL{last}"))), 1);
            assert_eq!(napkinless(StrategyId::W, &sigma(&format!("RR{last}"))), 0);
        }
    }

    #[test]
    fn four_seat_shun_trace() {
        for last in ["R", "L"] {
            let out = run_s(4, &sigma(&format!("RRL{last}"))).unwrap();
            assert_eq!(out.napkinless_count(), 1);
            let seats: Vec<_> = out.trace().iter().map(|s| s.seat).collect();
            assert_eq!(seats, vec![1, 4, 3, 2]);
        }
    }

    #[test]
    fn stilde_offsets() {
        assert_eq!(stilde_offset(7), (3, StepLabel::S3Tilde));
        assert_eq!(stilde_offset(8), (3, StepLabel::S3Tilde));
        assert_eq!(stilde_offset(3), (2, StepLabel::S3));
        assert_eq!(stilde_offset(2), (1, StepLabel::S3));
        assert_eq!(stilde_offset(1), (1, StepLabel::S3));
        assert_eq!(stilde_offset(13), (6, StepLabel::S3Tilde));
    }

    #[test]
    fn length_mismatch_is_rejected() {
        for id in StrategyId::ALL {
            assert_eq!(
                run(id, 5, &sigma("RRL")).unwrap_err(),
                Error::LengthMismatch { expected: 5, got: 3 }
            );
        }
    }

    #[test]
    fn single_diner() {
        for id in StrategyId::ALL {
            let out = run(id, 1, &sigma("R")).unwrap();
            assert_eq!(out.napkinless_count(), 0);
            assert_eq!(out.trace().len(), 1);
        }
    }

    #[test]
    fn strategy_names_round_trip() {
        for id in StrategyId::ALL {
            assert_eq!(id.name().parse::<StrategyId>().unwrap(), id);
        }
        assert!("X".parse::<StrategyId>().is_err());
    }
}
