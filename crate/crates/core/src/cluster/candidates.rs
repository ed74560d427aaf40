use alloc::vec;
use alloc::vec::Vec;

use super::{sort_decode_order, CandidateCluster};
use crate::channel::{self, UserChannel};
use crate::codebook::{BeamCodebook, UserBeamSet};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Entry {
    start: u32,
    len: u16,
    beam: u16,
}

/// The candidate list C_v: every SIC-valid, beam-consistent cluster plus one
/// singleton per user on its best beam.
///
/// Clusters are stored back to back in one arena, since homogeneous
/// populations produce millions of them. Order is beams ascending, cluster
/// size ascending, then lexicographic on the sorted member ids; the
/// singletons follow in user order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CandidateList {
    num_users: usize,
    members: Vec<u32>,
    gains: Vec<f64>,
    entries: Vec<Entry>,
    examined: u64,
    singletons: usize,
}

/// Borrowed view of one candidate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidateRef<'a> {
    pub beam_index: usize,
    /// Member ids in decoding order.
    pub members: &'a [u32],
    pub gains: &'a [f64],
}

impl CandidateRef<'_> {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn to_cluster(&self) -> CandidateCluster {
        CandidateCluster {
            beam_index: self.beam_index,
            members: self.members.iter().map(|&u| u as usize).collect(),
            gains: self.gains.to_vec(),
        }
    }
}

impl CandidateList {
    pub fn new(num_users: usize) -> Self {
        Self {
            num_users,
            ..Self::default()
        }
    }

    /// Builds a list from explicit clusters, e.g. for tests and external
    /// instances. Clusters are put into canonical order.
    pub fn from_clusters(num_users: usize, clusters: &[CandidateCluster], examined: u64) -> Self {
        let mut order: Vec<(usize, Vec<usize>, usize)> = clusters
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut key = c.members.clone();
                key.sort_unstable();
                (c.beam_index, key, i)
            })
            .collect();
        order.sort_by(|a, b| {
            a.0.cmp(&b.0)
                .then(a.1.len().cmp(&b.1.len()))
                .then_with(|| a.1.cmp(&b.1))
        });
        let mut list = Self::new(num_users);
        list.examined = examined;
        for (_, _, i) in order {
            let c = &clusters[i];
            list.push(c.beam_index, c.members.iter().map(|&u| u as u32), &c.gains);
            if c.size() == 1 {
                list.singletons += 1;
            }
        }
        list
    }

    fn push(&mut self, beam: usize, members: impl IntoIterator<Item = u32>, gains: &[f64]) {
        let start = self.members.len() as u32;
        self.members.extend(members);
        self.gains.extend_from_slice(gains);
        self.entries.push(Entry {
            start,
            len: gains.len() as u16,
            beam: beam as u16,
        });
    }

    pub fn num_users(&self) -> usize {
        self.num_users
    }

    /// I_2 = |C_v|, singletons included.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Candidates with two or more members (I_2 without the singletons).
    pub fn multi_user_len(&self) -> usize {
        self.entries.len() - self.singletons
    }

    /// I_1, ordered combinations examined during enumeration.
    pub fn examined(&self) -> u64 {
        self.examined
    }

    pub fn max_size(&self) -> usize {
        self.entries.iter().map(|e| e.len as usize).max().unwrap_or(0)
    }

    pub fn get(&self, index: usize) -> CandidateRef<'_> {
        let e = self.entries[index];
        let range = e.start as usize..e.start as usize + e.len as usize;
        CandidateRef {
            beam_index: e.beam as usize,
            members: &self.members[range.clone()],
            gains: &self.gains[range],
        }
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = CandidateRef<'_>> + '_ {
        (0..self.entries.len()).map(|i| self.get(i))
    }

    pub(crate) fn entry_size(&self, index: usize) -> usize {
        self.entries[index].len as usize
    }

    pub(crate) fn entry_beam(&self, index: usize) -> usize {
        self.entries[index].beam as usize
    }
}

pub(super) fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).unwrap_or(u64::MAX)
}

/// One user on the beam being scanned, in decoding order position.
#[derive(Clone, Copy)]
pub(super) struct Slot {
    pub(super) id: u32,
    pub(super) capability: usize,
    pub(super) gain: f64,
}

/// Collects every size-`len` subsequence of `slots` (already in decoding
/// order) whose member at position `j` has capability `>= j`. Subsequences
/// keep the decoding order, so an invalid prefix rules out all extensions.
fn valid_combinations(slots: &[Slot], len: usize, out: &mut Vec<u32>) {
    fn rec(slots: &[Slot], len: usize, depth: usize, start: usize, stack: &mut Vec<u32>, out: &mut Vec<u32>) {
        if depth == len {
            out.extend_from_slice(stack);
            return;
        }
        let last = slots.len() - (len - depth);
        for i in start..=last {
            if slots[i].capability >= depth {
                stack.push(i as u32);
                rec(slots, len, depth + 1, i + 1, stack, out);
                stack.pop();
            }
        }
    }
    if len == 0 || len > slots.len() {
        return;
    }
    let mut stack = Vec::with_capacity(len);
    rec(slots, len, 0, 0, &mut stack, out);
}

pub(super) fn check_inputs(users: &[UserChannel], beam_sets: &[UserBeamSet], d_max: usize) -> Result<(), Error> {
    if d_max == 0 {
        return Err(Error::ZeroDecodingCapability);
    }
    if users.len() != beam_sets.len() {
        return Err(Error::BeamSetMismatch {
            users: users.len(),
            beam_sets: beam_sets.len(),
        });
    }
    if let Some((position, u)) = users.iter().enumerate().find(|(i, u)| u.user_id != *i) {
        return Err(Error::UserIdMismatch {
            position,
            id: u.user_id,
        });
    }
    Ok(())
}

/// The users holding `beam` in their beam set, in decoding order on it.
pub(super) fn beam_slots(
    users: &[UserChannel],
    beam_sets: &[UserBeamSet],
    precoder: &[crate::Complex],
    beam: usize,
    out: &mut Vec<Slot>,
) {
    let mut on_beam: Vec<(usize, f64)> = beam_sets
        .iter()
        .filter(|s| s.contains(beam))
        .map(|s| (s.user_id, channel::effective_gain(&users[s.user_id], precoder)))
        .collect();
    sort_decode_order(&mut on_beam);
    out.clear();
    out.extend(on_beam.iter().map(|&(id, gain)| Slot {
        id: id as u32,
        capability: users[id].decoding_capability,
        gain,
    }));
}

/// Number of valid subsequences of `slots` of each length `0..=d_max`.
/// Validity only depends on each member's position within the subsequence,
/// so a prefix count by length suffices.
fn count_valid(slots: &[Slot], d_max: usize) -> Vec<u64> {
    let mut f = vec![0u64; d_max + 1];
    f[0] = 1;
    for s in slots {
        for depth in (0..d_max.min(s.capability + 1)).rev() {
            f[depth + 1] = f[depth + 1].saturating_add(f[depth]);
        }
    }
    f
}

/// Complexity counters of NOMA-MEC step one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CandidateCounts {
    /// I_1, ordered combinations examined.
    pub examined: u64,
    /// I_2 = |C_v|, singletons included.
    pub candidates: u64,
    /// I_2 without the singletons.
    pub multi_user: u64,
}

/// The counters [`enumerate_candidates`] would report, without building
/// the list.
pub fn count_candidates(
    users: &[UserChannel],
    beam_sets: &[UserBeamSet],
    codebook: &BeamCodebook,
    d_max: usize,
) -> Result<CandidateCounts, Error> {
    check_inputs(users, beam_sets, d_max)?;
    let mut counts = CandidateCounts::default();
    let mut slots = Vec::new();
    for (beam, precoder) in codebook.precoders().iter().enumerate() {
        beam_slots(users, beam_sets, precoder, beam, &mut slots);
        let valid = count_valid(&slots, d_max);
        for (len, &v) in valid.iter().enumerate().take(slots.len() + 1).skip(2) {
            counts.examined = counts.examined.saturating_add(binomial(slots.len(), len));
            counts.multi_user = counts.multi_user.saturating_add(v);
        }
    }
    counts.candidates = counts.multi_user.saturating_add(users.len() as u64);
    Ok(counts)
}

/// Step one of NOMA-MEC: builds C_v.
///
/// For every beam, the users holding it in their beam set are put in
/// decoding order on that beam; every combination of `2..=d_max` of them is
/// examined and kept when each member can decode everyone weaker. `examined`
/// counts all `C(n_b, l)` combinations, whether or not the search had to
/// visit them individually. Each user then gets a singleton on its best beam.
///
/// User ids must equal their positions in `users`.
pub fn enumerate_candidates(
    users: &[UserChannel],
    beam_sets: &[UserBeamSet],
    codebook: &BeamCodebook,
    d_max: usize,
) -> Result<CandidateList, Error> {
    check_inputs(users, beam_sets, d_max)?;

    let mut list = CandidateList::new(users.len());
    let mut slots: Vec<Slot> = Vec::new();
    let mut picks: Vec<u32> = Vec::new();
    let mut keys: Vec<u32> = Vec::new();
    let mut order: Vec<u32> = Vec::new();
    let mut gains: Vec<f64> = Vec::new();

    for (beam, precoder) in codebook.precoders().iter().enumerate() {
        beam_slots(users, beam_sets, precoder, beam, &mut slots);
        for len in 2..=d_max.min(slots.len()) {
            list.examined = list.examined.saturating_add(binomial(slots.len(), len));
            picks.clear();
            valid_combinations(&slots, len, &mut picks);
            let count = picks.len() / len;
            if count == 0 {
                continue;
            }
            // sorted member ids of each combination, for lexicographic order
            keys.clear();
            for combo in picks.chunks_exact(len) {
                let start = keys.len();
                keys.extend(combo.iter().map(|&i| slots[i as usize].id));
                keys[start..].sort_unstable();
            }
            order.clear();
            order.extend(0..count as u32);
            order.sort_unstable_by(|&a, &b| {
                let (a, b) = (a as usize * len, b as usize * len);
                keys[a..a + len].cmp(&keys[b..b + len])
            });
            for &c in &order {
                let combo = &picks[c as usize * len..(c as usize + 1) * len];
                gains.clear();
                gains.extend(combo.iter().map(|&i| slots[i as usize].gain));
                list.push(beam, combo.iter().map(|&i| slots[i as usize].id), &gains);
            }
        }
    }

    for set in beam_sets {
        let best = set.best();
        let gain = channel::effective_gain(&users[set.user_id], codebook.precoder(best));
        list.push(best, [set.user_id as u32], &[gain]);
        list.singletons += 1;
    }
    Ok(list)
}
