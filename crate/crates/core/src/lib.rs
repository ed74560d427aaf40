//! Downlink mmWave-NOMA user clustering under per-user SIC decoding limits.
//!
//! The crate is `no_std` (it needs `alloc`) and holds the algorithmic part of
//! the system:
//!
//! - [`channel`]: single-path ULA channels, steering vectors, cosine
//!   similarity (Fejér kernel) and effective gains.
//! - [`codebook`]: the fixed set of `B + 1` analog beams and each user's
//!   ranked user-beam set.
//! - [`cluster`]: candidate enumeration, greedy and exact minimum exact cover,
//!   best-beam clustering for homogeneous and heterogeneous populations.
//! - [`power`]: sequential QoS power allocation, SINRs and effective sum
//!   rates for NOMA and OMA plans.
//!
//! Scenario generation, Monte Carlo sweeps and file formats live in the
//! `noma-sim` companion crate.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod channel;
pub mod cluster;
pub mod codebook;
pub mod error;
pub mod power;

pub use channel::{ArrayGeometry, ChannelParams, UserChannel};
pub use cluster::{Algorithm, CandidateCluster, CandidateList, ClusterPlan};
pub use codebook::{BeamCodebook, UserBeamSet};
pub use error::Error;
pub use power::{PowerAllocation, PowerBudget, RateReport};

/// Complex baseband sample type used throughout.
pub type Complex = num_complex::Complex64;
