//! The circular table: seats, napkins, the napkin-taking rule, and the
//! evaluation of arbitrary seating orders.
//!
//! Seats and napkins are both numbered `1..=n`. Napkin `i` lies between
//! seat `i` and seat `i + 1`, with napkin `n` closing the circle between
//! seat `n` and seat `1`. A diner in seat `i` therefore reaches right for
//! napkin `i` and left for napkin `i - 1` (napkin `n` when `i = 1`).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A diner's reach: `+1` for the right napkin, `-1` for the left.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Right,
    Left,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Right => Sign::Left,
            Sign::Left => Sign::Right,
        }
    }

    pub fn value(self) -> i8 {
        match self {
            Sign::Right => 1,
            Sign::Left => -1,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Sign::Right => 'R',
            Sign::Left => 'L',
        }
    }

    pub fn from_value(v: i64) -> Option<Self> {
        match v {
            1 => Some(Sign::Right),
            -1 => Some(Sign::Left),
            _ => None,
        }
    }

    /// The take that honors this preference.
    pub fn as_take(self) -> Take {
        match self {
            Sign::Right => Take::Right,
            Sign::Left => Take::Left,
        }
    }
}

/// Which napkin a diner actually ended up with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Take {
    Left,
    Right,
    None,
}

impl Take {
    /// The side of this take, if a napkin was taken at all.
    pub fn side(self) -> Option<Sign> {
        match self {
            Take::Left => Some(Sign::Left),
            Take::Right => Some(Sign::Right),
            Take::None => None,
        }
    }

    pub fn is_none(self) -> bool {
        self == Take::None
    }
}

/// The take rule shared by every seating process: honor the preference if
/// that napkin is there, otherwise settle for the other one, otherwise go
/// without.
pub fn resolve_take(pref: Sign, left_present: bool, right_present: bool) -> Take {
    match pref {
        Sign::Right if right_present => Take::Right,
        Sign::Left if left_present => Take::Left,
        _ if right_present => Take::Right,
        _ if left_present => Take::Left,
        _ => Take::None,
    }
}

/// One preference per diner, indexed by arrival order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PreferenceOrder(Vec<Sign>);

impl PreferenceOrder {
    pub fn new(signs: Vec<Sign>) -> Result<Self> {
        if signs.is_empty() {
            return Err(Error::EmptyTable);
        }
        Ok(PreferenceOrder(signs))
    }

    /// Decodes the low `n` bits of `bits`; bit `j` set means diner `j + 1`
    /// reaches right.
    pub fn from_bits(bits: u64, n: usize) -> Self {
        assert!((1..=64).contains(&n), "bit-encoded orders hold 1..=64 diners");
        PreferenceOrder(
            (0..n)
                .map(|j| if bits >> j & 1 == 1 { Sign::Right } else { Sign::Left })
                .collect(),
        )
    }

    pub fn from_values(values: &[i64]) -> Result<Self> {
        let signs = values
            .iter()
            .map(|&v| Sign::from_value(v).ok_or_else(|| Error::Parse(format!("entry {v} is not +1 or -1"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(signs)
    }

    pub fn all_right(n: usize) -> Self {
        PreferenceOrder(vec![Sign::Right; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Preference of diner `d` (1-based).
    pub fn get(&self, diner: usize) -> Sign {
        self.0[diner - 1]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    /// `-σ`: every preference reversed.
    pub fn negated(&self) -> Self {
        PreferenceOrder(self.0.iter().map(|s| s.flip()).collect())
    }

    /// `σ'`: the final diner's preference toggled.
    pub fn toggled_last(&self) -> Self {
        let mut signs = self.0.clone();
        if let Some(last) = signs.last_mut() {
            *last = last.flip();
        }
        PreferenceOrder(signs)
    }

    pub fn check_len(&self, n: usize) -> Result<()> {
        if self.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: self.len() });
        }
        Ok(())
    }
}

impl fmt::Display for PreferenceOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.letter())?;
        }
        Ok(())
    }
}

/// Accepts either a string over `{R, L}` (`"RRLR"`) or a list of `±1`
/// separated by commas and/or whitespace (`"1,-1,+1"`).
impl FromStr for PreferenceOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(Error::Parse("empty preference order".into()));
        }
        if trimmed.chars().all(|c| matches!(c, 'R' | 'L' | 'r' | 'l')) {
            let signs = trimmed
                .chars()
                .map(|c| if c.eq_ignore_ascii_case(&'R') { Sign::Right } else { Sign::Left })
                .collect();
            return Self::new(signs);
        }
        let values = trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|tok| !tok.is_empty())
            .map(|tok| {
                tok.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("unrecognized token {tok:?}; use R/L letters or ±1 values")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_values(&values)
    }
}

/// A seated diner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Occupant {
    pub diner: usize,
    pub pref: Sign,
    pub take: Take,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Napkin {
    Present,
    TakenBy(usize),
}

/// A circular table partway through (or at the end of) a seating.
///
/// Diners arrive in order, so the next diner to sit is always
/// `seated() + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableState {
    seats: Vec<Option<Occupant>>,
    napkins: Vec<Napkin>,
    seated: usize,
}

impl TableState {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyTable);
        }
        Ok(TableState {
            seats: vec![None; n],
            napkins: vec![Napkin::Present; n],
            seated: 0,
        })
    }

    pub fn n(&self) -> usize {
        self.seats.len()
    }

    pub fn seated(&self) -> usize {
        self.seated
    }

    pub fn is_full(&self) -> bool {
        self.seated == self.n()
    }

    pub fn occupant(&self, seat: usize) -> Option<&Occupant> {
        self.seats[seat - 1].as_ref()
    }

    pub fn is_empty_seat(&self, seat: usize) -> bool {
        self.seats[seat - 1].is_none()
    }

    pub fn napkin(&self, index: usize) -> Napkin {
        self.napkins[index - 1]
    }

    pub fn right_napkin(&self, seat: usize) -> usize {
        seat
    }

    pub fn left_napkin(&self, seat: usize) -> usize {
        if seat == 1 {
            self.n()
        } else {
            seat - 1
        }
    }

    /// The seat `steps` places away from `seat` in direction `side`.
    pub fn neighbor(&self, seat: usize, side: Sign, steps: usize) -> usize {
        let n = self.n();
        let steps = steps % n;
        let zero_based = match side {
            Sign::Right => (seat - 1 + steps) % n,
            Sign::Left => (seat - 1 + n - steps) % n,
        };
        zero_based + 1
    }

    pub fn napkins_present(&self) -> usize {
        self.napkins.iter().filter(|&&k| k == Napkin::Present).count()
    }

    pub fn napkinless_count(&self) -> usize {
        self.seats.iter().flatten().filter(|o| o.take.is_none()).count()
    }

    /// Seats the next diner at `seat` with preference `pref` and applies
    /// the take rule.
    pub fn take_napkin(&mut self, seat: usize, pref: Sign) -> Result<Take> {
        let n = self.n();
        if seat == 0 || seat > n {
            return Err(Error::SeatOutOfRange { seat, n });
        }
        if let Some(o) = self.occupant(seat) {
            return Err(Error::SeatOccupied { seat, diner: o.diner });
        }
        if self.is_full() {
            return Err(Error::TableFull { n });
        }
        let diner = self.seated + 1;
        let left = self.left_napkin(seat);
        let right = self.right_napkin(seat);
        let take = resolve_take(
            pref,
            self.napkin(left) == Napkin::Present,
            self.napkin(right) == Napkin::Present,
        );
        match take {
            Take::Left => self.napkins[left - 1] = Napkin::TakenBy(diner),
            Take::Right => self.napkins[right - 1] = Napkin::TakenBy(diner),
            Take::None => {}
        }
        self.seats[seat - 1] = Some(Occupant { diner, pref, take });
        self.seated = diner;
        Ok(take)
    }

    /// Seat-indexed diner numbers; `0` marks an empty seat.
    pub fn arrangement(&self) -> Vec<usize> {
        self.seats.iter().map(|o| o.map_or(0, |o| o.diner)).collect()
    }

    /// Two-row text diagram: preferences (`R`/`L`, `-` for an empty seat)
    /// over diner numbers, cells joined by `|`, napkinless diners wrapped
    /// in `*`.
    pub fn render(&self) -> String {
        let top: Vec<String> = self
            .seats
            .iter()
            .map(|o| o.map_or_else(|| "-".to_string(), |o| o.pref.letter().to_string()))
            .collect();
        let bottom: Vec<String> = self
            .seats
            .iter()
            .map(|o| match o {
                None => String::new(),
                Some(o) if o.take.is_none() => format!("*{}*", o.diner),
                Some(o) => o.diner.to_string(),
            })
            .collect();
        let width = top.iter().chain(&bottom).map(String::len).max().unwrap_or(1);
        let row = |cells: &[String]| {
            cells
                .iter()
                .map(|c| format!("{c:>width$}"))
                .collect::<Vec<_>>()
                .join("|")
        };
        format!("{}\n{}", row(&top), row(&bottom))
    }
}

/// Free-function form of [`TableState::render`].
pub fn render_table(state: &TableState) -> String {
    state.render()
}

/// Which rule placed a diner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum StepLabel {
    Init,
    W1,
    W2,
    W3,
    W4,
    S1,
    S2,
    S3,
    #[serde(rename = "S3TILDE")]
    S3Tilde,
    /// Placement dictated by an externally supplied seating order.
    Fixed,
}

impl fmt::Display for StepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            StepLabel::Init => "INIT",
            StepLabel::W1 => "W1",
            StepLabel::W2 => "W2",
            StepLabel::W3 => "W3",
            StepLabel::W4 => "W4",
            StepLabel::S1 => "S1",
            StepLabel::S2 => "S2",
            StepLabel::S3 => "S3",
            StepLabel::S3Tilde => "S3TILDE",
            StepLabel::Fixed => "FIXED",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub label: StepLabel,
    pub diner: usize,
    pub seat: usize,
    pub take: Take,
}

/// The result of seating all `n` diners.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeatingOutcome {
    sigma: PreferenceOrder,
    table: TableState,
    trace: Vec<TraceStep>,
}

impl SeatingOutcome {
    pub fn n(&self) -> usize {
        self.table.n()
    }

    pub fn preferences(&self) -> &PreferenceOrder {
        &self.sigma
    }

    pub fn table(&self) -> &TableState {
        &self.table
    }

    pub fn trace(&self) -> &[TraceStep] {
        &self.trace
    }

    /// `w`: `w[i - 1]` is the diner in seat `i`.
    pub fn arrangement(&self) -> Vec<usize> {
        self.table.arrangement()
    }

    /// `takes[d - 1]` is what diner `d` ended up with.
    pub fn takes(&self) -> Vec<Take> {
        self.trace.iter().map(|s| s.take).collect()
    }

    /// Napkinless diners in ascending order.
    pub fn napkinless(&self) -> Vec<usize> {
        self.trace.iter().filter(|s| s.take.is_none()).map(|s| s.diner).collect()
    }

    pub fn napkinless_count(&self) -> usize {
        self.trace.iter().filter(|s| s.take.is_none()).count()
    }

    pub fn leftover_napkins(&self) -> usize {
        self.table.napkins_present()
    }

    /// The table as it stood after the first `m` diners sat down.
    pub fn state_after(&self, m: usize) -> TableState {
        let mut table = TableState::new(self.n()).expect("outcome tables are non-empty");
        for step in self.trace.iter().take(m) {
            table
                .take_napkin(step.seat, self.sigma.get(step.diner))
                .expect("recorded trace replays cleanly");
        }
        table
    }
}

/// Drives one seating: places diners in arrival order and records the
/// trace.
pub(crate) struct SeatingRun<'a> {
    pub(crate) table: TableState,
    sigma: &'a PreferenceOrder,
    trace: Vec<TraceStep>,
}

impl<'a> SeatingRun<'a> {
    pub(crate) fn new(sigma: &'a PreferenceOrder) -> Result<Self> {
        let n = sigma.len();
        Ok(SeatingRun {
            table: TableState::new(n)?,
            sigma,
            trace: Vec::with_capacity(n),
        })
    }

    pub(crate) fn next_diner(&self) -> usize {
        self.table.seated() + 1
    }

    pub(crate) fn is_done(&self) -> bool {
        self.table.is_full()
    }

    pub(crate) fn seat(&mut self, seat: usize, label: StepLabel) -> Result<Take> {
        let diner = self.next_diner();
        let take = self.table.take_napkin(seat, self.sigma.get(diner))?;
        self.trace.push(TraceStep { label, diner, seat, take });
        Ok(take)
    }

    pub(crate) fn finish(self) -> SeatingOutcome {
        debug_assert!(self.table.is_full());
        SeatingOutcome {
            sigma: self.sigma.clone(),
            table: self.table,
            trace: self.trace,
        }
    }
}

/// Seats diners `1..=n` in arrival order according to `w`, where
/// `w[i - 1] = j` puts diner `j` in seat `i`.
pub fn evaluate_seating(w: &[usize], sigma: &PreferenceOrder) -> Result<SeatingOutcome> {
    let n = w.len();
    if n == 0 {
        return Err(Error::EmptyTable);
    }
    sigma.check_len(n)?;
    let mut seat_of = vec![0usize; n + 1];
    for (i, &d) in w.iter().enumerate() {
        if d == 0 || d > n || seat_of[d] != 0 {
            return Err(Error::NotAPermutation { n });
        }
        seat_of[d] = i + 1;
    }
    if w[0] != 1 {
        return Err(Error::SeatOneConvention { found: w[0] });
    }
    let mut run = SeatingRun::new(sigma)?;
    for &seat in &seat_of[1..] {
        run.seat(seat, StepLabel::Fixed)?;
    }
    Ok(run.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(s: &str) -> PreferenceOrder {
        s.parse().unwrap()
    }

    #[test]
    fn take_rule_truth_table() {
        // (pref, left, right) -> take, all eight cases spelled out
        let cases = [
            (Sign::Right, true, true, Take::Right),
            (Sign::Right, true, false, Take::Left),
            (Sign::Right, false, true, Take::Right),
            (Sign::Right, false, false, Take::None),
            (Sign::Left, true, true, Take::Left),
            (Sign::Left, true, false, Take::Left),
            (Sign::Left, false, true, Take::Right),
            (Sign::Left, false, false, Take::None),
        ];
        for (pref, l, r, want) in cases {
            assert_eq!(resolve_take(pref, l, r), want, "{pref:?} {l} {r}");
        }
    }

    #[test]
    fn first_diner_on_empty_table_honors_preference() {
        let mut t = TableState::new(8).unwrap();
        assert_eq!(t.take_napkin(1, Sign::Right).unwrap(), Take::Right);
        assert_eq!(t.napkin(1), Napkin::TakenBy(1));
    }

    #[test]
    fn forced_other_side_when_preferred_napkin_gone() {
        // n = 3: napkin 1 gone, diner at seat 2 prefers left and settles for napkin 2
        let mut t = TableState::new(3).unwrap();
        t.take_napkin(1, Sign::Right).unwrap();
        assert_eq!(t.take_napkin(2, Sign::Left).unwrap(), Take::Right);
        assert_eq!(t.napkin(2), Napkin::TakenBy(2));
    }

    #[test]
    fn boxed_in_diner_goes_without() {
        // n = 8, napkins 1 and 2 gone before diner 5 sits in seat 2
        let mut t = TableState::new(8).unwrap();
        t.take_napkin(1, Sign::Right).unwrap(); // napkin 1
        t.take_napkin(3, Sign::Left).unwrap(); // napkin 2
        t.take_napkin(8, Sign::Left).unwrap();
        t.take_napkin(5, Sign::Right).unwrap();
        assert_eq!(t.take_napkin(2, Sign::Right).unwrap(), Take::None);
        assert_eq!(t.occupant(2).unwrap().diner, 5);
    }

    #[test]
    fn take_napkin_rejects_bad_seats() {
        let mut t = TableState::new(4).unwrap();
        assert_eq!(t.take_napkin(0, Sign::Right), Err(Error::SeatOutOfRange { seat: 0, n: 4 }));
        assert_eq!(t.take_napkin(5, Sign::Right), Err(Error::SeatOutOfRange { seat: 5, n: 4 }));
        t.take_napkin(2, Sign::Right).unwrap();
        assert_eq!(t.take_napkin(2, Sign::Left), Err(Error::SeatOccupied { seat: 2, diner: 1 }));
    }

    #[test]
    fn figure_eight_diner_example() {
        let out = evaluate_seating(&[1, 5, 2, 8, 4, 6, 7, 3], &order("+1,-1,-1,+1,+1,-1,+1,-1")).unwrap();
        assert_eq!(out.napkinless(), vec![5, 7]);
        // diner 6 finds napkin 5 gone and takes napkin 6 instead
        assert_eq!(out.takes()[5], Take::Right);
        assert_eq!(out.leftover_napkins(), 2);
    }

    #[test]
    fn three_seat_arrangement() {
        let out = evaluate_seating(&[1, 3, 2], &order("RLL")).unwrap();
        assert_eq!(out.napkinless(), vec![3]);
    }

    #[test]
    fn evaluate_seating_validates_order() {
        let s = order("RRR");
        assert_eq!(evaluate_seating(&[1, 2, 2], &s), Err(Error::NotAPermutation { n: 3 }));
        assert_eq!(evaluate_seating(&[1, 2, 4], &s), Err(Error::NotAPermutation { n: 3 }));
        assert_eq!(evaluate_seating(&[2, 1, 3], &s), Err(Error::SeatOneConvention { found: 2 }));
        assert_eq!(
            evaluate_seating(&[1, 2], &s),
            Err(Error::LengthMismatch { expected: 2, got: 3 })
        );
    }

    #[test]
    fn everyone_reaching_right_never_strands_anyone() {
        for w in [[1, 2, 3, 4, 5], [1, 5, 4, 3, 2], [1, 3, 5, 2, 4]] {
            let out = evaluate_seating(&w, &PreferenceOrder::all_right(5)).unwrap();
            assert_eq!(out.napkinless_count(), 0);
        }
    }

    #[test]
    fn parse_accepts_letters_and_values() {
        assert_eq!(order("RLr"), order("1 -1 +1"));
        assert_eq!(order("1,-1,1").to_string(), "RLR");
        assert!("RX".parse::<PreferenceOrder>().is_err());
        assert!("1,0".parse::<PreferenceOrder>().is_err());
        assert!("".parse::<PreferenceOrder>().is_err());
    }

    #[test]
    fn symmetry_helpers() {
        let s = order("RRL");
        assert_eq!(s.negated().to_string(), "LLR");
        assert_eq!(s.toggled_last().to_string(), "RRR");
        assert_eq!(PreferenceOrder::from_bits(0b011, 3), s);
    }

    #[test]
    fn render_empty_table() {
        let t = TableState::new(4).unwrap();
        assert_eq!(t.render(), "-|-|-|-\n | | | ");
    }

    #[test]
    fn render_flags_napkinless() {
        let out = evaluate_seating(&[1, 3, 2], &order("RLL")).unwrap();
        let text = out.table().render();
        let rows: Vec<&str> = text.lines().collect();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0], "  R|  L|  L");
        assert_eq!(rows[1], "  1|*3*|  2");
    }

    #[test]
    fn state_after_replays_prefix() {
        let out = evaluate_seating(&[1, 5, 2, 8, 4, 6, 7, 3], &order("RLLRRLRL")).unwrap();
        let mid = out.state_after(3);
        assert_eq!(mid.seated(), 3);
        assert_eq!(mid.arrangement(), vec![1, 0, 2, 0, 0, 0, 0, 3]);
        assert_eq!(out.state_after(8), *out.table());
    }
}
