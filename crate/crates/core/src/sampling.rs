//! Seeded random parameter draws for the oracle and invariant suites.
//!
//! Bloch vectors are uniform in the closed unit ball (cube-root radius),
//! `A` uniform on `[0, 1]`, phases uniform on `[0, 2π)`, and β uniform on
//! `[0.01, π − 0.01]` so the dark-port edge is never drawn.

use std::f64::consts::{PI, TAU};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::interferometer::{BeamSplitterAngle, BlochState, DetectorConfig, PhaseShift};

pub const BETA_MARGIN: f64 = 0.01;

/// Deterministic generator for `(seed, stream)`; distinct streams never overlap.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Clone, Copy, Debug)]
pub struct ParameterDraw {
    pub state: BlochState,
    pub detector: DetectorConfig,
    pub beta: BeamSplitterAngle,
    pub phi: PhaseShift,
}

fn unit_direction<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    let cos_t: f64 = rng.gen_range(-1.0..=1.0);
    let sin_t = (1.0 - cos_t * cos_t).max(0.0).sqrt();
    let azimuth = rng.gen_range(0.0..TAU);
    [sin_t * azimuth.cos(), sin_t * azimuth.sin(), cos_t]
}

pub fn bloch_in_ball<R: Rng + ?Sized>(rng: &mut R) -> BlochState {
    let r = rng.gen::<f64>().cbrt();
    let [x, y, z] = unit_direction(rng);
    BlochState::new(r * x, r * y, r * z).expect("radius ≤ 1")
}

pub fn bloch_on_sphere<R: Rng + ?Sized>(rng: &mut R) -> BlochState {
    let [x, y, z] = unit_direction(rng);
    BlochState::new(x, y, z).expect("unit vector")
}

pub fn detector<R: Rng + ?Sized>(rng: &mut R) -> DetectorConfig {
    DetectorConfig::new(rng.gen_range(0.0..=1.0), rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU))
        .expect("sampled within domain")
}

pub fn beta<R: Rng + ?Sized>(rng: &mut R) -> BeamSplitterAngle {
    BeamSplitterAngle::new(rng.gen_range(BETA_MARGIN..=PI - BETA_MARGIN)).expect("inside [0, π]")
}

pub fn phase<R: Rng + ?Sized>(rng: &mut R) -> PhaseShift {
    PhaseShift::new(rng.gen_range(0.0..TAU)).expect("finite")
}

pub fn parameter_draw<R: Rng + ?Sized>(rng: &mut R) -> ParameterDraw {
    ParameterDraw {
        state: bloch_in_ball(rng),
        detector: detector(rng),
        beta: beta(rng),
        phi: phase(rng),
    }
}
