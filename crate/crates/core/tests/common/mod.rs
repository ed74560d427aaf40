#![allow(dead_code)]

use std::f64::consts::PI;

use noma_core::channel::{generate_channel, ArrayGeometry, ChannelParams, UserChannel};
use noma_core::codebook::{self, BeamCodebook, UserBeamSet};
use noma_core::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Setup {
    pub users: Vec<UserChannel>,
    pub codebook: BeamCodebook,
    pub beam_sets: Vec<UserBeamSet>,
}

/// Users at the given angles, all 2 m away, real unit gain.
pub fn users_at(thetas: &[f64], caps: &[usize], antennas: usize) -> Vec<UserChannel> {
    let g = ArrayGeometry::half_wavelength(antennas).unwrap();
    thetas
        .iter()
        .zip(caps)
        .enumerate()
        .map(|(i, (&t, &d))| {
            generate_channel(
                &g,
                &ChannelParams::default(),
                t,
                1.0 + 0.1 * i as f64,
                Complex::new(1.0, 0.0),
            )
            .with_id(i)
            .with_capability(d)
        })
        .collect()
}

pub fn setup(users: Vec<UserChannel>, divisions: usize, antennas: usize, b: usize) -> Setup {
    let g = ArrayGeometry::half_wavelength(antennas).unwrap();
    let codebook = codebook::build_codebook(divisions, &g).unwrap();
    let beam_sets = codebook::user_beam_sets(&users, &codebook, b).unwrap();
    Setup {
        users,
        codebook,
        beam_sets,
    }
}

/// Random population: uniform angle, uniform distance in (0, 5], complex
/// Gaussian gain, capabilities uniform on 0..=d_max (or all d_max).
pub fn random_users(seed: u64, n: usize, antennas: usize, d_max: usize, homogeneous: bool) -> Vec<UserChannel> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = ArrayGeometry::half_wavelength(antennas).unwrap();
    (0..n)
        .map(|i| {
            let theta = rng.random_range(-PI / 2.0..PI / 2.0);
            let r = 5.0 * (1.0 - rng.random::<f64>());
            let alpha = Complex::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5) * 2.0;
            let d = if homogeneous {
                d_max
            } else {
                rng.random_range(0..=d_max)
            };
            generate_channel(&g, &ChannelParams::default(), theta, r, alpha)
                .with_id(i)
                .with_capability(d)
        })
        .collect()
}
