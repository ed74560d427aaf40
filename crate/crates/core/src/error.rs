use thiserror::Error;

/// Errors raised by the core algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("array must have at least one antenna")]
    NoAntennas,
    #[error("antenna spacing ratio must be positive and finite")]
    InvalidSpacing,
    #[error("number of paths must be at least one")]
    NoPaths,
    #[error("codebook needs at least one angular division")]
    NoDivisions,
    #[error("beams per user must be in 1..={available}, got {requested}")]
    BeamsPerUserOutOfRange { requested: usize, available: usize },
    #[error("d_max must be at least 1")]
    ZeroDecodingCapability,
    #[error("cluster size m must satisfy 1 <= m < d_max ({d_max}), got {m}")]
    ChunkSizeOutOfRange { m: usize, d_max: usize },
    #[error("{users} users and {beam_sets} beam sets do not line up")]
    BeamSetMismatch { users: usize, beam_sets: usize },
    #[error("user at position {position} carries id {id}; ids must equal positions")]
    UserIdMismatch { position: usize, id: usize },
    #[error("candidate list is missing the singleton for user {0}")]
    MissingSingleton(usize),
    #[error("exact cover refused: {users} users and {candidates} candidates exceed the search limits")]
    ExactCoverTooLarge { users: usize, candidates: usize },
}
