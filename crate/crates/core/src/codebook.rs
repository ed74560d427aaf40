//! Fixed analog beam codebook and per-user beam ranking.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::PI;

use crate::channel::{self, ArrayGeometry, UserChannel};
use crate::{Complex, Error};

/// `B + 1` steering-vector precoders with boresights `-pi/2 + b pi / B`.
#[derive(Debug, Clone, PartialEq)]
pub struct BeamCodebook {
    num_divisions: usize,
    boresights: Vec<f64>,
    precoders: Vec<Vec<Complex>>,
}

impl BeamCodebook {
    pub fn new(num_divisions: usize, geometry: &ArrayGeometry) -> Result<Self, Error> {
        build_codebook(num_divisions, geometry)
    }

    /// `B`; the codebook holds `B + 1` beams.
    pub fn num_divisions(&self) -> usize {
        self.num_divisions
    }

    pub fn num_beams(&self) -> usize {
        self.precoders.len()
    }

    pub fn boresight(&self, beam: usize) -> f64 {
        self.boresights[beam]
    }

    pub fn boresights(&self) -> &[f64] {
        &self.boresights
    }

    pub fn precoder(&self, beam: usize) -> &[Complex] {
        &self.precoders[beam]
    }

    pub fn precoders(&self) -> &[Vec<Complex>] {
        &self.precoders
    }
}

pub fn build_codebook(num_divisions: usize, geometry: &ArrayGeometry) -> Result<BeamCodebook, Error> {
    if num_divisions == 0 {
        return Err(Error::NoDivisions);
    }
    let step = PI / num_divisions as f64;
    let boresights: Vec<f64> = (0..=num_divisions).map(|b| -PI / 2.0 + b as f64 * step).collect();
    let precoders = boresights
        .iter()
        .map(|&theta| channel::steering_vector(geometry, theta))
        .collect();
    Ok(BeamCodebook {
        num_divisions,
        boresights,
        precoders,
    })
}

/// The `b` beams best aligned with one user, best first.
#[derive(Debug, Clone, PartialEq)]
pub struct UserBeamSet {
    pub user_id: usize,
    pub beams: Vec<usize>,
    pub similarities: Vec<f64>,
}

impl UserBeamSet {
    pub fn size(&self) -> usize {
        self.beams.len()
    }

    /// The user's best beam.
    pub fn best(&self) -> usize {
        self.beams[0]
    }

    pub fn contains(&self, beam: usize) -> bool {
        self.beams.contains(&beam)
    }
}

/// Ranks every beam by cosine similarity and keeps the top `b`.
///
/// Ties go to the lower beam index.
pub fn user_beam_set(user: &UserChannel, codebook: &BeamCodebook, b: usize) -> Result<UserBeamSet, Error> {
    let available = codebook.num_beams();
    if b == 0 || b > available {
        return Err(Error::BeamsPerUserOutOfRange {
            requested: b,
            available,
        });
    }
    let mut ranked: Vec<(usize, f64)> = codebook
        .precoders
        .iter()
        .enumerate()
        .map(|(i, w)| (i, channel::cosine_similarity(user, w)))
        .collect();
    ranked.sort_by(|a, c| c.1.partial_cmp(&a.1).unwrap_or(Ordering::Equal).then(a.0.cmp(&c.0)));
    ranked.truncate(b);
    Ok(UserBeamSet {
        user_id: user.user_id,
        beams: ranked.iter().map(|r| r.0).collect(),
        similarities: ranked.iter().map(|r| r.1).collect(),
    })
}

/// Beam sets for a whole population.
pub fn user_beam_sets(users: &[UserChannel], codebook: &BeamCodebook, b: usize) -> Result<Vec<UserBeamSet>, Error> {
    users.iter().map(|u| user_beam_set(u, codebook, b)).collect()
}

/// Effective gains `|h_u^H w_b|^2` for every (user, beam) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct GainTable {
    num_beams: usize,
    values: Vec<f64>,
}

impl GainTable {
    pub fn new(users: &[UserChannel], codebook: &BeamCodebook) -> Self {
        let num_beams = codebook.num_beams();
        let mut values = Vec::with_capacity(users.len() * num_beams);
        for u in users {
            values.extend(codebook.precoders.iter().map(|w| channel::effective_gain(u, w)));
        }
        Self { num_beams, values }
    }

    pub fn num_users(&self) -> usize {
        self.values.len() / self.num_beams.max(1)
    }

    pub fn num_beams(&self) -> usize {
        self.num_beams
    }

    pub fn get(&self, user: usize, beam: usize) -> f64 {
        self.values[user * self.num_beams + beam]
    }
}
