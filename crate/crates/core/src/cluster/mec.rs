use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::candidates::{beam_slots, count_candidates, Slot};
use super::{Algorithm, CandidateCluster, CandidateList, ClusterPlan};
use crate::channel::{self, UserChannel};
use crate::codebook::{BeamCodebook, UserBeamSet};
use crate::Error;

/// Size limits for [`exact_mec_with_limits`]. An instance is accepted when
/// it is within either bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactLimits {
    pub max_users: usize,
    pub max_candidates: usize,
}

impl Default for ExactLimits {
    fn default() -> Self {
        Self {
            max_users: 14,
            max_candidates: 500,
        }
    }
}

/// Candidate indices sorted by size descending, then beam ascending, keeping
/// list order (lexicographic member ids) within equal keys.
fn greedy_order(candidates: &CandidateList) -> Vec<u32> {
    let max_size = candidates.max_size();
    let beams = (0..candidates.len())
        .map(|i| candidates.entry_beam(i))
        .max()
        .map_or(1, |b| b + 1);
    let key = |i: usize| (max_size - candidates.entry_size(i)) * beams + candidates.entry_beam(i);
    // counting sort: stable, linear in |C_v|
    let mut starts = vec![0usize; (max_size + 1) * beams + 1];
    for i in 0..candidates.len() {
        starts[key(i) + 1] += 1;
    }
    for k in 1..starts.len() {
        starts[k] += starts[k - 1];
    }
    let mut order = vec![0u32; candidates.len()];
    for i in 0..candidates.len() {
        let slot = &mut starts[key(i)];
        order[*slot] = i as u32;
        *slot += 1;
    }
    order
}

fn plan_from(candidates: &CandidateList, chosen: &[u32], algorithm: Algorithm) -> ClusterPlan {
    ClusterPlan {
        clusters: chosen
            .iter()
            .map(|&i| candidates.get(i as usize).to_cluster())
            .collect(),
        algorithm,
        examined: candidates.examined(),
        candidates: candidates.len() as u64,
    }
}

fn greedy_indices(candidates: &CandidateList) -> Result<Vec<u32>, Error> {
    let n = candidates.num_users();
    let mut covered = vec![false; n];
    let mut remaining = n;
    let mut chosen = Vec::new();
    for i in greedy_order(candidates) {
        if remaining == 0 {
            break;
        }
        let c = candidates.get(i as usize);
        if c.members.iter().all(|&u| !covered[u as usize]) {
            for &u in c.members {
                covered[u as usize] = true;
            }
            remaining -= c.size();
            chosen.push(i);
        }
    }
    match covered.iter().position(|c| !c) {
        Some(u) => Err(Error::MissingSingleton(u)),
        None => Ok(chosen),
    }
}

/// Step two of NOMA-MEC: scans C_v from the largest clusters down and keeps
/// every cluster whose members are all still uncovered.
///
/// Fails only if the list lacks a singleton for some user, in which case no
/// cover may exist.
pub fn greedy_mec(candidates: &CandidateList) -> Result<ClusterPlan, Error> {
    let chosen = greedy_indices(candidates)?;
    Ok(plan_from(candidates, &chosen, Algorithm::MecGreedy))
}

/// Smallest (by sorted ids) valid `len`-subset of `pool`, given as slot
/// indices sorted by id. `rank` is a slot's decoding position on the beam.
/// Valid sets are closed under removal, so invalid partial sets are pruned.
fn first_valid(slots: &[Slot], pool: &[usize], len: usize, chosen: &mut Vec<usize>) -> bool {
    fn fits(slots: &[Slot], chosen: &[usize], x: usize) -> bool {
        // decoding position of every member once x joins
        let below = chosen.iter().filter(|&&c| c < x).count();
        if slots[x].capability < below {
            return false;
        }
        chosen.iter().filter(|&&c| c > x).all(|&c| {
            let pos = chosen.iter().filter(|&&o| o < c).count() + 1;
            slots[c].capability >= pos
        })
    }
    fn rec(slots: &[Slot], pool: &[usize], len: usize, from: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == len {
            return true;
        }
        let need = len - chosen.len();
        for k in from..pool.len() {
            if pool.len() - k < need {
                break;
            }
            let x = pool[k];
            if fits(slots, chosen, x) {
                chosen.push(x);
                if rec(slots, pool, len, k + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    chosen.clear();
    len <= pool.len() && rec(slots, pool, len, 0, chosen)
}

/// [`greedy_mec`] on the list [`enumerate_candidates`](super::enumerate_candidates)
/// would build, computed without materializing it.
///
/// Coverage only grows during the scan, so within each block of equal size
/// and beam the next admitted cluster is the lexicographically smallest
/// valid combination of still-uncovered users. The plan, including cluster
/// order and the reported counters, is identical.
pub fn greedy_mec_direct(
    users: &[UserChannel],
    beam_sets: &[UserBeamSet],
    codebook: &BeamCodebook,
    d_max: usize,
) -> Result<ClusterPlan, Error> {
    let counts = count_candidates(users, beam_sets, codebook, d_max)?;
    let n = users.len();
    let per_beam: Vec<Vec<Slot>> = codebook
        .precoders()
        .iter()
        .enumerate()
        .map(|(beam, precoder)| {
            let mut slots = Vec::new();
            beam_slots(users, beam_sets, precoder, beam, &mut slots);
            slots
        })
        .collect();
    let mut covered = vec![false; n];
    let mut clusters = Vec::new();
    let mut pool = Vec::new();
    let mut chosen = Vec::new();
    for len in (2..=d_max).rev() {
        for (beam, slots) in per_beam.iter().enumerate() {
            loop {
                pool.clear();
                pool.extend((0..slots.len()).filter(|&i| !covered[slots[i].id as usize]));
                if pool.len() < len {
                    break;
                }
                pool.sort_unstable_by_key(|&i| slots[i].id);
                if !first_valid(slots, &pool, len, &mut chosen) {
                    break;
                }
                chosen.sort_unstable();
                for &i in &chosen {
                    covered[slots[i].id as usize] = true;
                }
                clusters.push(CandidateCluster {
                    beam_index: beam,
                    members: chosen.iter().map(|&i| slots[i].id as usize).collect(),
                    gains: chosen.iter().map(|&i| slots[i].gain).collect(),
                });
            }
        }
    }
    let mut rest: Vec<(usize, usize)> = (0..n)
        .filter(|&u| !covered[u])
        .map(|u| (beam_sets[u].best(), u))
        .collect();
    rest.sort_unstable();
    clusters.extend(rest.into_iter().map(|(beam, u)| {
        CandidateCluster::singleton(u, beam, channel::effective_gain(&users[u], codebook.precoder(beam)))
    }));
    Ok(ClusterPlan {
        clusters,
        algorithm: Algorithm::MecGreedy,
        examined: counts.examined,
        candidates: counts.candidates,
    })
}

/// Provably minimum exact cover with the default [`ExactLimits`].
pub fn exact_mec(candidates: &CandidateList) -> Result<ClusterPlan, Error> {
    exact_mec_with_limits(candidates, ExactLimits::default())
}

/// Memoized exhaustive search over covered-user sets.
struct Search<'a> {
    list: &'a CandidateList,
    /// Candidates containing each user, largest first.
    containing: Vec<Vec<u32>>,
    words: usize,
    /// Fewest clusters covering the complement of each visited set, and the
    /// first candidate that achieves it.
    memo: BTreeMap<Vec<u64>, (u32, u32)>,
}

impl Search<'_> {
    fn first_uncovered(&self, covered: &[u64]) -> Option<usize> {
        let n = self.list.num_users();
        covered
            .iter()
            .enumerate()
            .find(|(_, &w)| w != u64::MAX)
            .map(|(i, &w)| i * 64 + (!w).trailing_zeros() as usize)
            .filter(|&u| u < n)
    }

    fn disjoint(&self, covered: &[u64], idx: u32) -> bool {
        self.list
            .get(idx as usize)
            .members
            .iter()
            .all(|&u| covered[u as usize / 64] >> (u % 64) & 1 == 0)
    }

    fn with(&self, covered: &[u64], idx: u32) -> Vec<u64> {
        let mut next = covered.to_vec();
        for &u in self.list.get(idx as usize).members {
            next[u as usize / 64] |= 1 << (u % 64);
        }
        next
    }

    /// Minimum number of clusters covering everyone not in `covered`.
    fn solve(&mut self, covered: &[u64]) -> u32 {
        let Some(first) = self.first_uncovered(covered) else {
            return 0;
        };
        if let Some(&(k, _)) = self.memo.get(covered) {
            return k;
        }
        let mut best = (u32::MAX, u32::MAX);
        for k in 0..self.containing[first].len() {
            let idx = self.containing[first][k];
            if !self.disjoint(covered, idx) {
                continue;
            }
            let next = self.with(covered, idx);
            let rest = self.solve(&next);
            if rest != u32::MAX && rest + 1 < best.0 {
                best = (rest + 1, idx);
            }
        }
        self.memo.insert(covered.to_vec(), best);
        best.0
    }

    fn plan(&mut self) -> Option<Vec<u32>> {
        let mut covered = vec![0u64; self.words];
        if self.solve(&covered) == u32::MAX {
            return None;
        }
        let mut chosen = Vec::new();
        while self.first_uncovered(&covered).is_some() {
            let (_, idx) = self.memo[&covered];
            chosen.push(idx);
            covered = self.with(&covered, idx);
        }
        Some(chosen)
    }
}

/// Exhaustive search over C_v: always branches on the lowest uncovered user
/// and memoizes the optimum for every covered set it reaches, so each
/// distinct subproblem is solved once.
pub fn exact_mec_with_limits(candidates: &CandidateList, limits: ExactLimits) -> Result<ClusterPlan, Error> {
    let n = candidates.num_users();
    if n > limits.max_users && candidates.len() > limits.max_candidates {
        return Err(Error::ExactCoverTooLarge {
            users: n,
            candidates: candidates.len(),
        });
    }
    // surfaces a missing singleton the same way greedy does
    greedy_indices(candidates)?;
    let mut containing = vec![Vec::new(); n];
    for i in greedy_order(candidates) {
        for &u in candidates.get(i as usize).members {
            containing[u as usize].push(i);
        }
    }
    let mut search = Search {
        list: candidates,
        containing,
        words: n.div_ceil(64).max(1),
        memo: BTreeMap::new(),
    };
    let chosen = search.plan().expect("singletons always complete a cover");
    Ok(plan_from(candidates, &chosen, Algorithm::MecExact))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::CandidateCluster;
    use std::vec::Vec;

    fn cluster(beam: usize, members: &[usize]) -> CandidateCluster {
        CandidateCluster {
            beam_index: beam,
            members: members.to_vec(),
            gains: members.iter().map(|&u| u as f64).collect(),
        }
    }

    fn list(n: usize, sets: &[&[usize]]) -> CandidateList {
        let mut cs: Vec<CandidateCluster> = sets.iter().map(|s| cluster(0, s)).collect();
        cs.extend((0..n).map(|u| cluster(0, &[u])));
        CandidateList::from_clusters(n, &cs, 0)
    }

    fn member_sets(plan: &ClusterPlan) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = plan
            .clusters
            .iter()
            .map(|c| {
                let mut m = c.members.clone();
                m.sort();
                m
            })
            .collect();
        v.sort();
        v
    }

    #[test]
    fn greedy_prefers_the_largest_cluster() {
        // users 1..4 shifted to 0..3: {0,1,2},{0,1},{2},{3},{0},{1}
        let cs = [
            cluster(0, &[0, 1, 2]),
            cluster(0, &[0, 1]),
            cluster(0, &[2]),
            cluster(0, &[3]),
            cluster(0, &[0]),
            cluster(0, &[1]),
        ];
        let plan = greedy_mec(&CandidateList::from_clusters(4, &cs, 0)).unwrap();
        assert_eq!(plan.num_clusters(), 2);
        assert_eq!(member_sets(&plan), [vec![0, 1, 2], vec![3]]);
    }

    #[test]
    fn singletons_only_gives_oma() {
        let plan = greedy_mec(&list(5, &[])).unwrap();
        assert_eq!(plan.num_clusters(), 5);
        assert_eq!(exact_mec(&list(5, &[])).unwrap().num_clusters(), 5);
    }

    #[test]
    fn greedy_tie_break_is_lexicographic() {
        // {0,1} sorts before {1,2}, so the two disjoint pairs are found
        let l = list(4, &[&[0, 1], &[2, 3], &[1, 2]]);
        let plan = greedy_mec(&l).unwrap();
        assert_eq!(member_sets(&plan), [vec![0, 1], vec![2, 3]]);
        assert_eq!(exact_mec(&l).unwrap().num_clusters(), 2);
    }

    #[test]
    fn beam_breaks_ties_before_members() {
        let cs = [
            cluster(1, &[0, 1]),
            cluster(0, &[1, 2]),
            cluster(0, &[0]),
            cluster(0, &[1]),
            cluster(0, &[2]),
        ];
        let plan = greedy_mec(&CandidateList::from_clusters(3, &cs, 0)).unwrap();
        assert_eq!(plan.clusters[0].beam_index, 0);
        assert_eq!(plan.clusters[0].members, [1, 2]);
    }

    #[test]
    fn exact_pairs_plus_singleton() {
        let l = list(3, &[&[0, 1], &[1, 2], &[0, 2]]);
        let plan = exact_mec(&l).unwrap();
        assert_eq!(plan.num_clusters(), 2);
        assert_eq!(plan.algorithm, Algorithm::MecExact);
    }

    #[test]
    fn exact_beats_greedy_when_greedy_is_trapped() {
        // greedy takes {0,1,2} and is left with three singletons; optimum is
        // two triples sharing nothing with it
        let l = list(6, &[&[0, 1, 2], &[0, 3, 4], &[1, 2, 5], &[3, 4]]);
        let g = greedy_mec(&l).unwrap();
        let e = exact_mec(&l).unwrap();
        assert_eq!(g.num_clusters(), 3);
        assert_eq!(e.num_clusters(), 2);
        assert_eq!(member_sets(&e), [vec![0, 3, 4], vec![1, 2, 5]]);
    }

    #[test]
    fn missing_singleton_is_reported() {
        let cs = [cluster(0, &[0, 1]), cluster(0, &[0])];
        let l = CandidateList::from_clusters(3, &cs, 0);
        assert_eq!(greedy_mec(&l), Err(Error::MissingSingleton(2)));
    }

    #[test]
    fn guard_refuses_large_instances() {
        let l = list(20, &[]);
        let limits = ExactLimits {
            max_users: 10,
            max_candidates: 5,
        };
        assert!(matches!(
            exact_mec_with_limits(&l, limits),
            Err(Error::ExactCoverTooLarge { .. })
        ));
        // within the candidate bound it runs
        let limits = ExactLimits {
            max_users: 10,
            max_candidates: 50,
        };
        assert_eq!(exact_mec_with_limits(&l, limits).unwrap().num_clusters(), 20);
    }
}
