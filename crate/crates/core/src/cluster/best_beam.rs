use alloc::vec::Vec;

use super::{sort_decode_order, Algorithm, CandidateCluster, ClusterPlan};
use crate::channel::{self, UserChannel};
use crate::codebook::{BeamCodebook, UserBeamSet};
use crate::Error;

/// Users grouped by best beam, each group in decoding order.
fn best_beam_groups(
    users: &[UserChannel],
    beam_sets: &[UserBeamSet],
    codebook: &BeamCodebook,
    include: impl Fn(&UserChannel) -> bool,
) -> Result<Vec<Vec<(usize, f64)>>, Error> {
    if users.len() != beam_sets.len() {
        return Err(Error::BeamSetMismatch {
            users: users.len(),
            beam_sets: beam_sets.len(),
        });
    }
    let mut groups = alloc::vec![Vec::new(); codebook.num_beams()];
    for (user, set) in users.iter().zip(beam_sets) {
        if include(user) {
            let best = set.best();
            groups[best].push((user.user_id, channel::effective_gain(user, codebook.precoder(best))));
        }
    }
    for g in &mut groups {
        sort_decode_order(g);
    }
    Ok(groups)
}

/// Splits one beam's users (in decoding order) into consecutive disjoint
/// chunks of at most `m`, strongest users first.
fn split(beam: usize, group: &[(usize, f64)], m: usize, out: &mut Vec<CandidateCluster>) {
    for chunk in group.rchunks(m) {
        out.push(CandidateCluster {
            beam_index: beam,
            members: chunk.iter().map(|c| c.0).collect(),
            gains: chunk.iter().map(|c| c.1).collect(),
        });
    }
}

/// NOMA-BB: every user is served on its best beam; a beam carrying more than
/// `m = d_max` users is split into `ceil(n_b / m)` clusters.
///
/// Assumes every user can decode `d_max - 1` others; a plan built for a
/// heterogeneous population may fail [`ClusterPlan::verify`].
pub fn noma_bb(
    users: &[UserChannel],
    beam_sets: &[UserBeamSet],
    codebook: &BeamCodebook,
    d_max: usize,
) -> Result<ClusterPlan, Error> {
    if d_max == 0 {
        return Err(Error::ZeroDecodingCapability);
    }
    let groups = best_beam_groups(users, beam_sets, codebook, |_| true)?;
    let mut clusters = Vec::new();
    for (beam, group) in groups.iter().enumerate() {
        split(beam, group, d_max, &mut clusters);
    }
    Ok(ClusterPlan {
        clusters,
        algorithm: Algorithm::Bb,
        examined: 0,
        candidates: 0,
    })
}

/// NOMA-BB for heterogeneous capabilities: users with `d < m` are served
/// alone on their best beam, the rest go through best-beam splitting with
/// chunks of at most `m`. Requires `1 <= m < d_max`.
pub fn noma_bb_het(
    users: &[UserChannel],
    beam_sets: &[UserBeamSet],
    codebook: &BeamCodebook,
    d_max: usize,
    m: usize,
) -> Result<ClusterPlan, Error> {
    if m == 0 || m >= d_max {
        return Err(Error::ChunkSizeOutOfRange { m, d_max });
    }
    let groups = best_beam_groups(users, beam_sets, codebook, |u| u.decoding_capability >= m)?;
    let mut clusters = Vec::new();
    for (user, set) in users.iter().zip(beam_sets) {
        if user.decoding_capability < m {
            let best = set.best();
            let gain = channel::effective_gain(user, codebook.precoder(best));
            clusters.push(CandidateCluster::singleton(user.user_id, best, gain));
        }
    }
    for (beam, group) in groups.iter().enumerate() {
        split(beam, group, m, &mut clusters);
    }
    Ok(ClusterPlan {
        clusters,
        algorithm: Algorithm::BbHet { m },
        examined: 0,
        candidates: 0,
    })
}

/// Orthogonal access: each user alone on its best beam.
pub fn oma_plan(
    users: &[UserChannel],
    beam_sets: &[UserBeamSet],
    codebook: &BeamCodebook,
) -> Result<ClusterPlan, Error> {
    if users.len() != beam_sets.len() {
        return Err(Error::BeamSetMismatch {
            users: users.len(),
            beam_sets: beam_sets.len(),
        });
    }
    let clusters = users
        .iter()
        .zip(beam_sets)
        .map(|(u, s)| {
            CandidateCluster::singleton(
                u.user_id,
                s.best(),
                channel::effective_gain(u, codebook.precoder(s.best())),
            )
        })
        .collect();
    Ok(ClusterPlan {
        clusters,
        algorithm: Algorithm::Oma,
        examined: 0,
        candidates: 0,
    })
}
