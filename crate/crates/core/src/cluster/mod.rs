//! SIC-ordered user clustering.
//!
//! Every algorithm here produces a [`ClusterPlan`]: an exact cover of the
//! users by clusters, each served on one beam, with members listed in SIC
//! decoding order (weakest effective gain first). A member at 1-based
//! position `j` has to decode the `j - 1` weaker messages before its own, so
//! it needs a decoding capability of at least `j - 1`.
//!
//! - [`enumerate_candidates`] + [`greedy_mec`]: candidate list of every valid
//!   beam-consistent cluster, then greedy minimum exact cover (NOMA-MEC).
//! - [`exact_mec`]: branch-and-bound minimum exact cover on the same list,
//!   used as an oracle on small instances.
//! - [`noma_bb`] / [`noma_bb_het`]: best-beam grouping split into chunks of
//!   at most `m` users.
//! - [`oma_plan`]: one user per cluster on its best beam.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::channel::UserChannel;
use crate::codebook::UserBeamSet;

mod best_beam;
mod candidates;
mod mec;

pub use best_beam::{noma_bb, noma_bb_het, oma_plan};
pub use candidates::{count_candidates, enumerate_candidates, CandidateCounts, CandidateList, CandidateRef};
pub use mec::{exact_mec, exact_mec_with_limits, greedy_mec, greedy_mec_direct, ExactLimits};

/// Which clustering scheme produced a plan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    /// Candidate enumeration + greedy minimum exact cover.
    MecGreedy,
    /// Candidate enumeration + exhaustive minimum exact cover.
    MecExact,
    /// Best-beam clustering with chunk size `d_max` (homogeneous users).
    Bb,
    /// Best-beam clustering for heterogeneous users with chunk size `m`.
    BbHet { m: usize },
    /// One user per cluster.
    Oma,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::MecGreedy => f.write_str("mec-greedy"),
            Algorithm::MecExact => f.write_str("mec-exact"),
            Algorithm::Bb => f.write_str("bb"),
            Algorithm::BbHet { m } => write!(f, "bb-het:{m}"),
            Algorithm::Oma => f.write_str("oma"),
        }
    }
}

/// Error returned when an algorithm name does not parse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownAlgorithm;

impl fmt::Display for UnknownAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("expected one of mec-greedy, mec-exact, bb, bb-het:<m>, oma")
    }
}

impl core::error::Error for UnknownAlgorithm {}

impl FromStr for Algorithm {
    type Err = UnknownAlgorithm;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "mec-greedy" | "mec" => Ok(Algorithm::MecGreedy),
            "mec-exact" => Ok(Algorithm::MecExact),
            "bb" => Ok(Algorithm::Bb),
            "oma" => Ok(Algorithm::Oma),
            other => other
                .strip_prefix("bb-het:")
                .and_then(|m| m.parse().ok())
                .map(|m| Algorithm::BbHet { m })
                .ok_or(UnknownAlgorithm),
        }
    }
}

/// One cluster: a beam and its members in SIC decoding order.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateCluster {
    pub beam_index: usize,
    /// User ids, weakest effective gain first.
    pub members: Vec<usize>,
    /// `|h^H w|^2` of each member on the cluster beam, nondecreasing.
    pub gains: Vec<f64>,
}

impl CandidateCluster {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn singleton(user: usize, beam_index: usize, gain: f64) -> Self {
        Self {
            beam_index,
            members: vec![user],
            gains: vec![gain],
        }
    }

    /// Builds a cluster from `(user, gain)` pairs, sorting them into decoding
    /// order (gain ascending, user id breaking exact ties).
    pub fn from_unordered(beam_index: usize, mut members: Vec<(usize, f64)>) -> Self {
        sort_decode_order(&mut members);
        Self {
            beam_index,
            members: members.iter().map(|m| m.0).collect(),
            gains: members.iter().map(|m| m.1).collect(),
        }
    }
}

pub(crate) fn sort_decode_order(members: &mut [(usize, f64)]) {
    members.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
}

/// `true` iff `capabilities[j] >= j` for every 0-based position `j`, i.e. the
/// member at 1-based position `j` can decode the `j - 1` weaker messages.
pub fn check_validity(ordered_capabilities: &[usize]) -> bool {
    ordered_capabilities.iter().enumerate().all(|(j, &d)| d >= j)
}

/// An exact cover of the users by SIC-ordered clusters.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterPlan {
    pub clusters: Vec<CandidateCluster>,
    pub algorithm: Algorithm,
    /// Ordered combinations examined while building the candidate list (I_1).
    pub examined: u64,
    /// Size of the candidate list the cover was chosen from (I_2).
    pub candidates: u64,
}

/// Why a plan failed [`ClusterPlan::verify`].
#[derive(Debug, Clone, PartialEq)]
pub enum PlanViolation {
    UnknownUser(usize),
    Uncovered(usize),
    CoveredTwice(usize),
    EmptyCluster(usize),
    CapabilityExceeded { user: usize, position: usize },
    BeamNotInSet { user: usize, beam: usize },
    NotBestBeam { user: usize, beam: usize },
    GainsOutOfOrder { cluster: usize },
    GainCountMismatch { cluster: usize },
}

impl fmt::Display for PlanViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::UnknownUser(u) => write!(f, "cluster references unknown user {u}"),
            Self::Uncovered(u) => write!(f, "user {u} is not in any cluster"),
            Self::CoveredTwice(u) => write!(f, "user {u} appears in more than one cluster slot"),
            Self::EmptyCluster(k) => write!(f, "cluster {k} is empty"),
            Self::CapabilityExceeded { user, position } => {
                write!(f, "user {user} cannot decode at position {position}")
            }
            Self::BeamNotInSet { user, beam } => write!(f, "beam {beam} is not in user {user}'s beam set"),
            Self::NotBestBeam { user, beam } => write!(f, "beam {beam} is not user {user}'s best beam"),
            Self::GainsOutOfOrder { cluster } => write!(f, "cluster {cluster} is not in gain order"),
            Self::GainCountMismatch { cluster } => write!(f, "cluster {cluster} gains do not match members"),
        }
    }
}

impl core::error::Error for PlanViolation {}

impl ClusterPlan {
    /// K.
    pub fn num_clusters(&self) -> usize {
        self.clusters.len()
    }

    /// Checks exact cover, SIC validity, beam membership and gain ordering.
    ///
    /// With `best_beam_only` every cluster beam must be each member's best
    /// beam rather than merely a member of its beam set.
    pub fn verify(
        &self,
        users: &[UserChannel],
        beam_sets: &[UserBeamSet],
        best_beam_only: bool,
    ) -> Result<(), PlanViolation> {
        let mut seen = vec![false; users.len()];
        for (k, c) in self.clusters.iter().enumerate() {
            if c.members.is_empty() {
                return Err(PlanViolation::EmptyCluster(k));
            }
            if c.gains.len() != c.members.len() {
                return Err(PlanViolation::GainCountMismatch { cluster: k });
            }
            if c.gains.windows(2).any(|w| w[0] > w[1]) {
                return Err(PlanViolation::GainsOutOfOrder { cluster: k });
            }
            for (pos, &u) in c.members.iter().enumerate() {
                if u >= users.len() {
                    return Err(PlanViolation::UnknownUser(u));
                }
                if core::mem::replace(&mut seen[u], true) {
                    return Err(PlanViolation::CoveredTwice(u));
                }
                if users[u].decoding_capability < pos {
                    return Err(PlanViolation::CapabilityExceeded {
                        user: u,
                        position: pos + 1,
                    });
                }
                let set = &beam_sets[u];
                if best_beam_only && set.best() != c.beam_index {
                    return Err(PlanViolation::NotBestBeam {
                        user: u,
                        beam: c.beam_index,
                    });
                }
                if !set.contains(c.beam_index) {
                    return Err(PlanViolation::BeamNotInSet {
                        user: u,
                        beam: c.beam_index,
                    });
                }
            }
        }
        match seen.iter().position(|s| !s) {
            Some(u) => Err(PlanViolation::Uncovered(u)),
            None => Ok(()),
        }
    }
}
