mod common;

use std::f64::consts::PI;

use noma_core::channel::{self, generate_channel, ArrayGeometry, ChannelParams};
use noma_core::codebook::{build_codebook, user_beam_set};
use noma_core::Complex;
use proptest::prelude::*;

/// Independent oracle: the normalized inner product written out term by term.
fn brute_similarity(m: usize, phi_u: f64, phi_b: f64) -> f64 {
    let (mut re, mut im) = (0.0, 0.0);
    for i in 0..m {
        let arg = -PI * i as f64 * (phi_u - phi_b);
        re += arg.cos();
        im += arg.sin();
    }
    (re * re + im * im).sqrt() / m as f64
}

proptest! {
    #[test]
    fn inner_product_matches_fejer_kernel(
        m in prop::sample::select(vec![2usize, 4, 8, 16, 32]),
        phi_u in -1.0f64..1.0,
        phi_b in -1.0f64..1.0,
    ) {
        let direct = channel::vector_similarity(
            &channel::steering_vector_phi(m, phi_u),
            &channel::steering_vector_phi(m, phi_b),
        );
        prop_assert!((direct - channel::fejer_similarity(m, phi_u - phi_b)).abs() < 1e-9);
        prop_assert!((direct - brute_similarity(m, phi_u, phi_b)).abs() < 1e-9);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&direct));
    }

    #[test]
    fn steering_vectors_are_unit_modulus(m in 1usize..64, theta in -PI / 2.0..PI / 2.0) {
        let g = ArrayGeometry::half_wavelength(m).unwrap();
        for z in channel::steering_vector(&g, theta) {
            prop_assert!((z.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn gain_is_quadratic_in_alpha(
        theta in -1.5f64..1.5,
        beam in -1.5f64..1.5,
        r in 0.0f64..5.0,
        re in -2.0f64..2.0,
        im in -2.0f64..2.0,
    ) {
        let g = ArrayGeometry::half_wavelength(8).unwrap();
        let w = channel::steering_vector(&g, beam);
        let alpha = Complex::new(re, im);
        let one = generate_channel(&g, &ChannelParams::default(), theta, r, alpha);
        let two = generate_channel(&g, &ChannelParams::default(), theta, r, alpha * 2.0);
        let (a, b) = (channel::effective_gain(&one, &w), channel::effective_gain(&two, &w));
        prop_assert!((b - 4.0 * a).abs() <= 1e-12 * b.max(1e-300));
        // similarity ignores gain and path loss
        let s1 = channel::cosine_similarity(&one, &w);
        let s2 = channel::fejer_similarity(8, one.phi - channel::normalized_angle(beam, 0.5));
        prop_assert!(alpha.norm() < 1e-9 || (s1 - s2).abs() < 1e-9);
    }

    #[test]
    fn best_beam_is_the_exhaustive_maximum(theta in -PI / 2.0..PI / 2.0, b in 1usize..=21) {
        let g = ArrayGeometry::half_wavelength(8).unwrap();
        let cb = build_codebook(20, &g).unwrap();
        let u = generate_channel(&g, &ChannelParams::default(), theta, 3.0, Complex::new(0.2, 0.9));
        let set = user_beam_set(&u, &cb, b).unwrap();
        let max = cb
            .precoders()
            .iter()
            .map(|w| channel::cosine_similarity(&u, w))
            .fold(f64::MIN, f64::max);
        prop_assert_eq!(set.similarities[0], max);
        prop_assert_eq!(set.size(), b);
        let mut distinct = set.beams.clone();
        distinct.sort();
        distinct.dedup();
        prop_assert_eq!(distinct.len(), b);
        prop_assert!(set.similarities.windows(2).all(|w| w[0] >= w[1]));
    }
}

#[test]
fn first_null_of_an_eight_element_array() {
    assert!(channel::fejer_similarity(8, 0.25) < 1e-12);
    assert!(brute_similarity(8, 0.25, 0.0) < 1e-12);
}

#[test]
fn full_beam_set_covers_every_beam() {
    let users = common::random_users(9, 40, 8, 3, false);
    let g = ArrayGeometry::half_wavelength(8).unwrap();
    let cb = build_codebook(20, &g).unwrap();
    for u in &users {
        let mut beams = user_beam_set(u, &cb, 21).unwrap().beams;
        beams.sort();
        assert_eq!(beams, (0..21).collect::<Vec<_>>());
    }
}
