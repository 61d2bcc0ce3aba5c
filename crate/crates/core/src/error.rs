use thiserror::Error;

use crate::exact_geom::{IntPoint2, IntPoint3};

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failure modes of the core library.
///
/// Variants fall into three groups: malformed input, violated
/// preconditions of a construction, and violated existence guarantees.
/// The last group must never fire on valid input; see [`Error::is_guarantee_violation`].
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("zero vector has no primitive direction")]
    ZeroVector,
    #[error("half-space system does not describe a bounded region")]
    Unbounded,
    #[error("degenerate {0}")]
    Degenerate(&'static str),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("normal fan of Q does not refine the normal fan of P")]
    FanNotRefined,
    #[error("slice at height {height} is not a lattice polygon (vertex {vertex})")]
    SliceNotLattice { height: i64, vertex: String },
    #[error("neither slice of slab [{lower}, {upper}] is a weak Minkowski summand of the other")]
    Orientation { lower: i64, upper: i64 },
    #[error("resource guard tripped: {0}")]
    ResourceLimit(String),

    #[error("no corner of C(T) inside the container (q_i membership: {inside:?})")]
    NoCornerInside { inside: [bool; 4] },
    #[error("corner {corner} of C(T) has no lattice point besides the vertices of T")]
    NoWitness { corner: usize, enumerated: Vec<IntPoint3> },
    #[error("no lattice point in either open strip (scanned P: {p_strip:?}, scanned Q: {q_strip:?})")]
    /// Carries the lattice points of `P` and of `Q` that were tested.
    NoStripWitness {
        p_strip: Vec<IntPoint2>,
        q_strip: Vec<IntPoint2>,
    },
    #[error("no opposite-edge pair gives lattice width 1")]
    NoWidthOneDirection,
    #[error("split of (2,2) tetrahedron found {0} crossing segment/triangle pairs, expected 1")]
    SplitAmbiguous(usize),
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

impl Error {
    /// Errors that contradict an existence guarantee the algorithms rely on.
    pub fn is_guarantee_violation(&self) -> bool {
        matches!(
            self,
            Error::NoCornerInside { .. }
                | Error::NoWitness { .. }
                | Error::NoStripWitness { .. }
                | Error::NoWidthOneDirection
                | Error::SplitAmbiguous(_)
                | Error::Internal(_)
        )
    }

    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::Precondition(_)
                | Error::FanNotRefined
                | Error::SliceNotLattice { .. }
                | Error::Orientation { .. }
                | Error::Degenerate(_)
                | Error::Unbounded
                | Error::ZeroVector
        )
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroVector => "zero_vector",
            Error::Unbounded => "unbounded",
            Error::Degenerate(_) => "degenerate",
            Error::InvalidInput(_) => "invalid_input",
            Error::Precondition(_) => "precondition",
            Error::FanNotRefined => "fan_not_refined",
            Error::SliceNotLattice { .. } => "slice_not_lattice",
            Error::Orientation { .. } => "orientation",
            Error::ResourceLimit(_) => "resource_limit",
            Error::NoCornerInside { .. } => "no_corner_inside",
            Error::NoWitness { .. } => "no_witness",
            Error::NoStripWitness { .. } => "no_strip_witness",
            Error::NoWidthOneDirection => "no_width_one_direction",
            Error::SplitAmbiguous(_) => "split_ambiguous",
            Error::Internal(_) => "internal",
        }
    }
}
