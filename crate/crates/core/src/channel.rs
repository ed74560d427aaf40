//! Single-path mmWave channel model for a uniform linear array.
//!
//! A user's channel is the array steering vector towards its departure angle,
//! scaled by a complex small-scale gain and a `1 + r^eta` distance loss. The
//! normalized angle `phi = 2 (D/lambda) sin(theta)` is what the beam
//! selection works with; the cosine similarity between two directions is the
//! Fejér kernel of their `phi` difference.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::{Complex, Error};

/// Below this `|sin(pi * dphi / 2)|` the closed-form kernel takes its limit 1.
const FEJER_SINGULARITY: f64 = 1e-12;

/// Uniform linear array at the base station.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrayGeometry {
    num_antennas: usize,
    spacing_ratio: f64,
}

impl ArrayGeometry {
    /// `spacing_ratio` is the element spacing over the carrier wavelength.
    pub fn new(num_antennas: usize, spacing_ratio: f64) -> Result<Self, Error> {
        if num_antennas == 0 {
            return Err(Error::NoAntennas);
        }
        if !(spacing_ratio > 0.0 && spacing_ratio.is_finite()) {
            return Err(Error::InvalidSpacing);
        }
        Ok(Self {
            num_antennas,
            spacing_ratio,
        })
    }

    /// Half-wavelength array with `num_antennas` elements.
    pub fn half_wavelength(num_antennas: usize) -> Result<Self, Error> {
        Self::new(num_antennas, 0.5)
    }

    pub fn num_antennas(&self) -> usize {
        self.num_antennas
    }

    pub fn spacing_ratio(&self) -> f64 {
        self.spacing_ratio
    }
}

/// Large-scale channel parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    num_paths: usize,
    pathloss_exponent: f64,
}

impl ChannelParams {
    pub fn new(num_paths: usize, pathloss_exponent: f64) -> Result<Self, Error> {
        if num_paths == 0 {
            return Err(Error::NoPaths);
        }
        Ok(Self {
            num_paths,
            pathloss_exponent: pathloss_exponent.max(0.0),
        })
    }

    pub fn num_paths(&self) -> usize {
        self.num_paths
    }

    pub fn pathloss_exponent(&self) -> f64 {
        self.pathloss_exponent
    }
}

impl Default for ChannelParams {
    /// One path, free-space exponent 2.
    fn default() -> Self {
        Self {
            num_paths: 1,
            pathloss_exponent: 2.0,
        }
    }
}

/// A user's downlink channel together with its SIC decoding capability.
#[derive(Debug, Clone, PartialEq)]
pub struct UserChannel {
    pub user_id: usize,
    /// Physical angle of departure in radians.
    pub theta: f64,
    /// Normalized angle `2 (D/lambda) sin(theta)`.
    pub phi: f64,
    /// Distance to the base station in meters.
    pub distance: f64,
    pub complex_gain: Complex,
    /// Channel vector, one entry per antenna.
    pub vector: Vec<Complex>,
    /// How many other users' signals this user can decode before its own.
    pub decoding_capability: usize,
}

impl UserChannel {
    pub fn with_id(mut self, user_id: usize) -> Self {
        self.user_id = user_id;
        self
    }

    pub fn with_capability(mut self, decoding_capability: usize) -> Self {
        self.decoding_capability = decoding_capability;
        self
    }
}

/// `2 (D/lambda) sin(theta)`.
pub fn normalized_angle(theta: f64, spacing_ratio: f64) -> f64 {
    2.0 * spacing_ratio * libm::sin(theta)
}

/// ULA response towards `theta`: element `i` is `exp(-j 2 pi i (D/lambda) sin(theta))`.
pub fn steering_vector(geometry: &ArrayGeometry, theta: f64) -> Vec<Complex> {
    steering_vector_phi(geometry.num_antennas, normalized_angle(theta, geometry.spacing_ratio))
}

/// Steering vector parameterised directly by the normalized angle.
pub fn steering_vector_phi(num_antennas: usize, phi: f64) -> Vec<Complex> {
    (0..num_antennas)
        .map(|i| {
            // Exact reduction modulo the period 2 so aliased angles give bit-identical vectors.
            let mut x = libm::fmod(i as f64 * phi, 2.0);
            if x < 0.0 {
                x += 2.0;
            }
            let arg = -PI * x;
            Complex::new(libm::cos(arg), libm::sin(arg))
        })
        .collect()
}

/// Builds the channel `a(theta) * alpha / (sqrt(L) (1 + r^eta))`.
///
/// The returned channel has id 0 and capability 0; use
/// [`UserChannel::with_id`] and [`UserChannel::with_capability`] to set them.
pub fn generate_channel(
    geometry: &ArrayGeometry,
    params: &ChannelParams,
    theta: f64,
    distance: f64,
    complex_gain: Complex,
) -> UserChannel {
    let phi = normalized_angle(theta, geometry.spacing_ratio);
    let loss = libm::sqrt(params.num_paths as f64) * (1.0 + libm::pow(distance, params.pathloss_exponent));
    let scale = complex_gain / loss;
    let vector = steering_vector_phi(geometry.num_antennas, phi)
        .into_iter()
        .map(|a| a * scale)
        .collect();
    UserChannel {
        user_id: 0,
        theta,
        phi,
        distance,
        complex_gain,
        vector,
        decoding_capability: 0,
    }
}

/// `h^H w`.
pub fn inner_product(h: &[Complex], w: &[Complex]) -> Complex {
    debug_assert_eq!(h.len(), w.len());
    h.iter().zip(w).map(|(a, b)| a.conj() * b).sum()
}

fn norm(v: &[Complex]) -> f64 {
    libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum())
}

/// Cosine similarity `|h^H w| / (|h| |w|)` between a user channel and a precoder.
///
/// Path loss and the complex gain cancel, so this equals
/// `|a(phi_u)^H a(phi_b)| / M` for a steering-vector precoder. A zero
/// channel has similarity 0.
pub fn cosine_similarity(user: &UserChannel, precoder: &[Complex]) -> f64 {
    vector_similarity(&user.vector, precoder)
}

/// [`cosine_similarity`] on raw vectors.
pub fn vector_similarity(h: &[Complex], w: &[Complex]) -> f64 {
    let denom = norm(h) * norm(w);
    if denom == 0.0 {
        return 0.0;
    }
    let z = inner_product(h, w);
    (libm::hypot(z.re, z.im) / denom).min(1.0)
}

/// Closed-form Fejér kernel `|sin(pi M d / 2) / (M sin(pi d / 2))|` for
/// `d = phi_u - phi_b`.
pub fn fejer_similarity(num_antennas: usize, delta_phi: f64) -> f64 {
    let m = num_antennas as f64;
    let den = m * libm::sin(PI * delta_phi / 2.0);
    if libm::fabs(den) < FEJER_SINGULARITY * m {
        return 1.0;
    }
    libm::fabs(libm::sin(PI * m * delta_phi / 2.0) / den)
}

/// `|h^H w|^2`, the power the user sees through precoder `w`.
pub fn effective_gain(user: &UserChannel, precoder: &[Complex]) -> f64 {
    inner_product(&user.vector, precoder).norm_sqr()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::vec;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn steering_vector_at_broadside_is_all_ones() {
        let g = ArrayGeometry::new(2, 0.37).unwrap();
        let a = steering_vector(&g, 0.0);
        assert_eq!(a, vec![Complex::new(1.0, 0.0); 2]);
    }

    #[test]
    fn steering_vector_at_endfire_alternates() {
        let g = ArrayGeometry::half_wavelength(4).unwrap();
        let a = steering_vector(&g, PI / 2.0);
        for (i, z) in a.iter().enumerate() {
            let want = if i % 2 == 0 { 1.0 } else { -1.0 };
            assert!(close(z.re, want, 1e-12) && close(z.im, 0.0, 1e-12), "{i}: {z}");
        }
    }

    #[test]
    fn steering_vector_is_unit_modulus() {
        let g = ArrayGeometry::half_wavelength(8).unwrap();
        for z in steering_vector(&g, 0.3) {
            assert!(close(z.norm(), 1.0, 1e-12));
        }
    }

    #[test]
    fn normalized_angle_values() {
        assert_eq!(normalized_angle(0.0, 0.5), 0.0);
        assert!(close(normalized_angle(PI / 2.0, 0.5), 1.0, 1e-15));
        assert!(close(normalized_angle(-PI / 6.0, 0.5), -0.5, 1e-15));
    }

    #[test]
    fn channel_at_zero_distance_is_the_steering_vector() {
        let g = ArrayGeometry::half_wavelength(8).unwrap();
        let p = ChannelParams::new(1, 3.7).unwrap();
        let u = generate_channel(&g, &p, 0.4, 0.0, Complex::new(1.0, 0.0));
        assert_eq!(u.vector, steering_vector(&g, 0.4));
        assert!(close(u.phi, normalized_angle(0.4, 0.5), 0.0));
    }

    #[test]
    fn channel_at_unit_distance_is_halved() {
        let g = ArrayGeometry::half_wavelength(8).unwrap();
        let u = generate_channel(&g, &ChannelParams::default(), -0.2, 1.0, Complex::new(1.0, 0.0));
        for (h, a) in u.vector.iter().zip(steering_vector(&g, -0.2)) {
            assert!((h - a / 2.0).norm() < 1e-15);
        }
    }

    #[test]
    fn channel_magnitude_with_gain_and_distance() {
        let g = ArrayGeometry::half_wavelength(8).unwrap();
        let u = generate_channel(&g, &ChannelParams::default(), 0.9, 3.0, Complex::new(2.0, 0.0));
        for h in &u.vector {
            assert!(close(h.norm(), 0.2, 1e-12));
        }
    }

    #[test]
    fn similarity_of_aligned_directions_is_one() {
        let g = ArrayGeometry::half_wavelength(8).unwrap();
        let u = generate_channel(&g, &ChannelParams::default(), 0.3, 2.0, Complex::new(0.3, -1.1));
        assert!(close(cosine_similarity(&u, &steering_vector(&g, 0.3)), 1.0, 1e-12));
    }

    #[test]
    fn similarity_at_first_null_is_zero() {
        let a = steering_vector_phi(8, 0.25);
        let b = steering_vector_phi(8, 0.0);
        assert!(vector_similarity(&a, &b) < 1e-12);
        assert!(fejer_similarity(8, 0.25) < 1e-12);
    }

    #[test]
    fn fejer_limit_at_coincident_directions() {
        assert_eq!(fejer_similarity(16, 0.0), 1.0);
        assert_eq!(fejer_similarity(16, 1e-14), 1.0);
    }

    #[test]
    fn main_lobe_decays_away_from_boresight() {
        let b = steering_vector_phi(8, 0.0);
        let near = vector_similarity(&steering_vector_phi(8, 0.05), &b);
        let far = vector_similarity(&steering_vector_phi(8, 0.12), &b);
        assert!(near > far);
        let near = vector_similarity(&steering_vector_phi(8, -0.05), &b);
        let far = vector_similarity(&steering_vector_phi(8, -0.12), &b);
        assert!(near > far);
    }

    #[test]
    fn self_gain_is_m_squared() {
        let g = ArrayGeometry::half_wavelength(8).unwrap();
        let a = steering_vector(&g, 0.0);
        let u = generate_channel(&g, &ChannelParams::default(), 0.0, 0.0, Complex::new(1.0, 0.0));
        assert!(close(effective_gain(&u, &a), 64.0, 1e-9));
    }

    #[test]
    fn zero_channel_has_zero_gain_and_similarity() {
        let g = ArrayGeometry::half_wavelength(8).unwrap();
        let u = generate_channel(&g, &ChannelParams::default(), 0.1, 1.0, Complex::new(0.0, 0.0));
        let w = steering_vector(&g, 0.1);
        assert_eq!(effective_gain(&u, &w), 0.0);
        assert_eq!(cosine_similarity(&u, &w), 0.0);
    }

    #[test]
    fn gain_with_unit_distance_loss() {
        let g = ArrayGeometry::half_wavelength(8).unwrap();
        let u = generate_channel(&g, &ChannelParams::default(), 0.0, 1.0, Complex::new(1.0, 0.0));
        assert!(close(effective_gain(&u, &steering_vector(&g, 0.0)), 16.0, 1e-12));
    }

    #[test]
    fn rejects_bad_geometry() {
        assert_eq!(ArrayGeometry::new(0, 0.5), Err(Error::NoAntennas));
        assert_eq!(ArrayGeometry::new(4, 0.0), Err(Error::InvalidSpacing));
        assert_eq!(ChannelParams::new(0, 2.0), Err(Error::NoPaths));
    }
}
