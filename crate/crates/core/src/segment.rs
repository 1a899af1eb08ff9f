//! Linear runs of empty seats.
//!
//! Once the first diner sits, the circle is broken and every later
//! decision plays out on runs of consecutive empty seats. Each run is
//! characterised by its length and whether the napkin just beyond each end
//! is still on the table; the napkins between its seats are always
//! present. Runs never share a napkin, so they evolve independently.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::table::{resolve_take, Sign, Take};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shape {
    /// Napkins beyond both ends.
    Outer,
    /// Napkin beyond the right end only.
    RightLeaning,
    /// Napkin beyond the left end only.
    LeftLeaning,
    /// No napkin beyond either end.
    Inner,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Segment {
    pub left_napkin: bool,
    pub seats: usize,
    pub right_napkin: bool,
}

impl Segment {
    pub const fn new(left_napkin: bool, seats: usize, right_napkin: bool) -> Self {
        Segment { left_napkin, seats, right_napkin }
    }

    pub const fn outer(seats: usize) -> Self {
        Segment::new(true, seats, true)
    }

    pub const fn right_leaning(seats: usize) -> Self {
        Segment::new(false, seats, true)
    }

    pub const fn left_leaning(seats: usize) -> Self {
        Segment::new(true, seats, false)
    }

    pub const fn inner(seats: usize) -> Self {
        Segment::new(false, seats, false)
    }

    pub fn shape(&self) -> Shape {
        match (self.left_napkin, self.right_napkin) {
            (true, true) => Shape::Outer,
            (false, true) => Shape::RightLeaning,
            (true, false) => Shape::LeftLeaning,
            (false, false) => Shape::Inner,
        }
    }

    /// Napkins belonging to the segment: the `seats - 1` interior ones plus
    /// any present boundary napkins. An empty inner segment owns none.
    pub fn napkin_count(&self) -> usize {
        (self.seats + usize::from(self.left_napkin) + usize::from(self.right_napkin)).saturating_sub(1)
    }

    pub fn mirrored(&self) -> Self {
        Segment::new(self.right_napkin, self.seats, self.left_napkin)
    }

    /// Whether the napkins on either side of `position` (1-based) are on
    /// the table.
    pub fn napkins_at(&self, position: usize) -> Result<(bool, bool)> {
        if position == 0 || position > self.seats {
            return Err(Error::PositionOutOfRange { position, seats: self.seats });
        }
        Ok((position > 1 || self.left_napkin, position < self.seats || self.right_napkin))
    }

    /// The two segments left behind once a diner at `position` has made
    /// `taken`.
    pub fn split(&self, position: usize, taken: Take) -> Result<(Segment, Segment)> {
        let (left, right) = self.napkins_at(position)?;
        let consistent = match taken {
            Take::Left => left,
            Take::Right => right,
            Take::None => !left && !right,
        };
        if !consistent {
            return Err(Error::InconsistentTake { position, take: taken });
        }
        let left_part = Segment::new(self.left_napkin, position - 1, left && taken != Take::Left);
        let right_part = Segment::new(right && taken != Take::Right, self.seats - position, self.right_napkin);
        Ok((left_part, right_part))
    }

    /// Seats a diner with preference `pref` at `position` and returns what
    /// they took together with the resulting split.
    pub fn place(&self, position: usize, pref: Sign) -> Result<(Take, Segment, Segment)> {
        let (left, right) = self.napkins_at(position)?;
        let take = resolve_take(pref, left, right);
        let (l, r) = self.split(position, take)?;
        Ok((take, l, r))
    }
}

/// Free-function form of [`Segment::split`].
pub fn split_segment(seg: Segment, position: usize, taken: Take) -> Result<(Segment, Segment)> {
    seg.split(position, taken)
}
