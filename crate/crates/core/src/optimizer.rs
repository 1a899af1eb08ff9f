//! Optimal adaptive seating by expectimax.
//!
//! The maitre d' picks a seat, the diner's reach is a fair coin, and the
//! napkinless count accrues as diners sit. Because segments never share a
//! napkin, the optimum over a set of segments is the sum of the optima of
//! each, so the table only needs one entry per segment class. A circular
//! table reduces to a right-leaning segment of `n - 1` seats once the first
//! diner has taken a napkin.
//!
//! [`optimal_value_oracle`] solves the same problem without the segment
//! decomposition, by expectimax over raw seat/napkin bitmasks.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::recurrence::Arithmetic;
use crate::segment::{Segment, Shape};
use crate::table::{resolve_take, Sign, Take};

/// Segment shapes up to mirror symmetry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassShape {
    #[serde(rename = "O")]
    Outer,
    #[serde(rename = "RL")]
    Leaning,
    #[serde(rename = "I")]
    Inner,
}

impl ClassShape {
    pub fn name(self) -> &'static str {
        match self {
            ClassShape::Outer => "O",
            ClassShape::Leaning => "RL",
            ClassShape::Inner => "I",
        }
    }
}

impl std::str::FromStr for ClassShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "O" => Ok(ClassShape::Outer),
            "RL" | "R" | "L" => Ok(ClassShape::Leaning),
            "I" => Ok(ClassShape::Inner),
            other => Err(Error::InvalidArgument(format!("unknown segment shape {other:?}; expected O, RL or I"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SegmentClass {
    pub shape: ClassShape,
    pub size: usize,
}

impl SegmentClass {
    pub fn new(shape: ClassShape, size: usize) -> Self {
        SegmentClass { shape, size }
    }

    /// Canonical representative; leaning classes lean right.
    pub fn segment(&self) -> Segment {
        match self.shape {
            ClassShape::Outer => Segment::outer(self.size),
            ClassShape::Leaning => Segment::right_leaning(self.size),
            ClassShape::Inner => Segment::inner(self.size),
        }
    }
}

impl From<Segment> for SegmentClass {
    fn from(seg: Segment) -> Self {
        let shape = match seg.shape() {
            Shape::Outer => ClassShape::Outer,
            Shape::RightLeaning | Shape::LeftLeaning => ClassShape::Leaning,
            Shape::Inner => ClassShape::Inner,
        };
        SegmentClass { shape, size: seg.seats }
    }
}

/// Arithmetic the expectimax runs in.
pub trait DpValue: Clone + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn halved(&self) -> Self;
    fn compare(&self, other: &Self) -> Ordering;
}

impl DpValue for Dyadic {
    fn zero() -> Self {
        Dyadic::zero()
    }
    fn one() -> Self {
        Dyadic::one()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn halved(&self) -> Self {
        self.half()
    }
    fn compare(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
}

impl DpValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn halved(&self) -> Self {
        self * 0.5
    }
    fn compare(&self, other: &Self) -> Ordering {
        self.total_cmp(other)
    }
}

/// Optimal expected napkinless count for every segment class up to a size.
#[derive(Debug, Clone)]
pub struct ValueTable<V> {
    outer: Vec<V>,
    leaning: Vec<V>,
    inner: Vec<V>,
}

impl<V: DpValue> ValueTable<V> {
    /// Fills the table bottom-up by segment size.
    pub fn build(max_size: usize) -> Self {
        let mut table = ValueTable {
            outer: vec![V::zero()],
            leaning: vec![V::zero()],
            inner: vec![V::zero()],
        };
        for size in 1..=max_size {
            for shape in [ClassShape::Outer, ClassShape::Leaning, ClassShape::Inner] {
                let class = SegmentClass::new(shape, size);
                let best = table
                    .position_values(class)
                    .into_iter()
                    .reduce(|a, b| if b.compare(&a) == Ordering::Greater { b } else { a })
                    .expect("size ≥ 1");
                table.column_mut(shape).push(best);
            }
        }
        table
    }

    fn column(&self, shape: ClassShape) -> &Vec<V> {
        match shape {
            ClassShape::Outer => &self.outer,
            ClassShape::Leaning => &self.leaning,
            ClassShape::Inner => &self.inner,
        }
    }

    fn column_mut(&mut self, shape: ClassShape) -> &mut Vec<V> {
        match shape {
            ClassShape::Outer => &mut self.outer,
            ClassShape::Leaning => &mut self.leaning,
            ClassShape::Inner => &mut self.inner,
        }
    }

    pub fn max_size(&self) -> usize {
        self.inner.len() - 1
    }

    pub fn value(&self, class: SegmentClass) -> Option<&V> {
        self.column(class.shape).get(class.size)
    }

    fn segment_value(&self, seg: Segment) -> &V {
        self.value(seg.into()).expect("sub-segments are smaller than their parent")
    }

    /// Expected napkinless count when the next diner goes to each position
    /// (1-based) and play is optimal afterwards. Needs every smaller size
    /// in the table.
    pub fn position_values(&self, class: SegmentClass) -> Vec<V> {
        let seg = class.segment();
        (1..=seg.seats)
            .map(|p| {
                let (left, right) = seg.napkins_at(p).expect("position in range");
                let outcome = |pref: Sign| {
                    let take = resolve_take(pref, left, right);
                    let (a, b) = seg.split(p, take).expect("take follows the rule");
                    let stranded = if take == Take::None { V::one() } else { V::zero() };
                    stranded.plus(self.segment_value(a)).plus(self.segment_value(b))
                };
                outcome(Sign::Left).plus(&outcome(Sign::Right)).halved()
            })
            .collect()
    }

    /// Every position attaining the optimum, ascending.
    pub fn argmax(&self, class: SegmentClass) -> Vec<usize> {
        let values = self.position_values(class);
        let Some(best) = self.value(class) else {
            return Vec::new();
        };
        values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.compare(best) == Ordering::Equal)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// `V(C_n)` for a circular table of `n ≤ max_size + 1` seats.
    pub fn circular(&self, n: usize) -> Option<&V> {
        match n {
            0 => None,
            _ => self.value(SegmentClass::new(ClassShape::Leaning, n - 1)),
        }
    }
}

/// Largest segment solved in exact arithmetic by default.
pub const EXACT_DP_MAX: usize = 200;

pub fn optimal_segment_value(class: SegmentClass) -> Dyadic {
    ValueTable::<Dyadic>::build(class.size)
        .value(class)
        .cloned()
        .expect("table built to this size")
}

pub fn optimal_circular_value(n: usize) -> Result<Dyadic> {
    if n == 0 {
        return Err(Error::EmptyTable);
    }
    Ok(optimal_segment_value(SegmentClass::new(ClassShape::Leaning, n - 1)))
}

/// `V(C_n) / n` in float for `n = 1..=max_n` in the requested arithmetic;
/// exact values are also returned when `mode` is exact.
pub fn optimal_circular_values(max_n: usize, mode: Arithmetic) -> Vec<(f64, Option<Dyadic>)> {
    let max_size = max_n.saturating_sub(1);
    match mode {
        Arithmetic::Exact => {
            let t = ValueTable::<Dyadic>::build(max_size);
            (1..=max_n)
                .map(|n| {
                    let v = t.circular(n).expect("built").clone();
                    (v.to_f64(), Some(v))
                })
                .collect()
        }
        Arithmetic::Float => {
            let t = ValueTable::<f64>::build(max_size);
            (1..=max_n).map(|n| (*t.circular(n).expect("built"), None)).collect()
        }
    }
}

/// Positions attaining the optimum for `class`, ascending.
pub fn optimal_policy_probe(class: SegmentClass) -> Result<Vec<usize>> {
    if class.size == 0 {
        return Err(Error::InvalidArgument("probe needs a segment with at least one seat".into()));
    }
    Ok(ValueTable::<Dyadic>::build(class.size).argmax(class))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolicyProbe {
    pub shape: ClassShape,
    pub size: usize,
    pub argmax: Vec<usize>,
}

/// Largest table the full-state oracle will attempt.
pub const ORACLE_MAX_N: usize = 12;

/// Optimal `V(C_n)` by expectimax over raw table states, with memoization
/// on the rotation class of each state.
pub fn optimal_value_oracle(n: usize) -> Result<Dyadic> {
    if n == 0 {
        return Err(Error::EmptyTable);
    }
    if n > ORACLE_MAX_N {
        return Err(Error::ResourceLimit { n, limit: ORACLE_MAX_N });
    }
    let mut oracle = Oracle { n, full: (1u32 << n) - 1, memo: HashMap::new() };
    Ok(oracle.value(0, oracle.full))
}

struct Oracle {
    n: usize,
    full: u32,
    memo: HashMap<u32, Dyadic>,
}

impl Oracle {
    fn rotate(&self, mask: u32, r: usize) -> u32 {
        if r == 0 {
            return mask;
        }
        ((mask << r) | (mask >> (self.n - r))) & self.full
    }

    /// Bit `i` of `seats` is seat `i`; bit `i` of `napkins` is the napkin
    /// between seat `i` and seat `i + 1 (mod n)`.
    fn key(&self, seats: u32, napkins: u32) -> u32 {
        (0..self.n)
            .map(|r| self.rotate(seats, r) << 16 | self.rotate(napkins, r))
            .min()
            .expect("n ≥ 1")
    }

    fn value(&mut self, seats: u32, napkins: u32) -> Dyadic {
        if seats == self.full {
            return Dyadic::zero();
        }
        let key = self.key(seats, napkins);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let n = self.n;
        let mut best: Option<Dyadic> = None;
        for s in (0..n).filter(|s| seats >> s & 1 == 0) {
            let right = s;
            let left = (s + n - 1) % n;
            let mut total = Dyadic::zero();
            for pref in [Sign::Left, Sign::Right] {
                let take = resolve_take(pref, napkins >> left & 1 == 1, napkins >> right & 1 == 1);
                let (rest, stranded) = match take {
                    Take::Left => (napkins & !(1 << left), 0),
                    Take::Right => (napkins & !(1 << right), 0),
                    Take::None => (napkins, 1),
                };
                let v = self.value(seats | 1 << s, rest);
                total = &(&total + &v) + &Dyadic::from_int(stranded);
            }
            let v = total.half();
            if best.as_ref().is_none_or(|b| v > *b) {
                best = Some(v);
            }
        }
        let best = best.expect("an unfilled table has an empty seat");
        self.memo.insert(key, best.clone());
        best
    }
}
