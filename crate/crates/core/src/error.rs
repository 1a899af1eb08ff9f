use thiserror::Error;

/// Errors raised by the table model, the strategy engines and the
/// enumeration/recurrence layers built on top of them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a table needs at least one seat")]
    EmptyTable,

    #[error("seat {seat} is outside 1..={n}")]
    SeatOutOfRange { seat: usize, n: usize },

    #[error("seat {seat} is already occupied by diner {diner}")]
    SeatOccupied { seat: usize, diner: usize },

    #[error("all {n} seats are already filled")]
    TableFull { n: usize },

    #[error("preference order has length {got}, table has {expected} seats")]
    LengthMismatch { expected: usize, got: usize },

    #[error("seating order is not a permutation of 1..={n}")]
    NotAPermutation { n: usize },

    #[error("seating order must place diner 1 in seat 1, found diner {found}")]
    SeatOneConvention { found: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("position {position} is outside segment of {seats} seats")]
    PositionOutOfRange { position: usize, seats: usize },

    #[error("take {take:?} at position {position} is inconsistent with the napkins available there")]
    InconsistentTake { position: usize, take: crate::table::Take },

    #[error("n = {n} exceeds the configured limit of {limit}")]
    ResourceLimit { n: usize, limit: usize },

    #[error("derived recurrence disagrees with brute force at n = {n}: recurrence {recurrence}, enumeration {enumeration}")]
    DerivationInvalid {
        n: usize,
        recurrence: String,
        enumeration: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("output error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
