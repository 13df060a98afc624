use thiserror::Error;

/// Errors produced by the group engine.
///
/// Cap errors are always explicit: no operation silently truncates when a
/// group, lattice, or memo table is larger than the configured bound.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("degree {0} out of supported range 1..={max}", max = crate::perm::MAX_DEGREE)]
    DegreeOutOfRange(usize),

    #[error("malformed cycle notation at byte {pos}: {msg}")]
    MalformedCycle { pos: usize, msg: String },

    #[error("point {point} appears more than once in cycle notation")]
    RepeatedPoint { point: usize },

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("group has no generators; use Group::trivial for the trivial group")]
    EmptyGenerators,

    #[error("group order overflows the supported range")]
    OrderOverflow,

    #[error("group order {order} exceeds the element enumeration cap {cap}")]
    CapExceeded { order: u128, cap: u64 },

    #[error("normal-subgroup lattice exceeds the cap of {cap} subgroups")]
    LatticeCapExceeded { cap: usize },

    #[error("memo table exceeds the cap of {cap} entries")]
    MemoCapExceeded { cap: usize },

    #[error("element does not belong to the group")]
    NotAMember,

    #[error("generators do not lie inside the ambient group")]
    NotASubgroup,

    #[error("the two subgroups live in different ambient groups")]
    AmbientMismatch,

    #[error("subgroup is not normal in the ambient group")]
    NotNormal,

    #[error("group of order {order} is not a {p}-group")]
    NotAPGroup { order: u128, p: u64 },
}
