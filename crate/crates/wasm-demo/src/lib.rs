//! Browser bindings for the interferometer demo.
//!
//! The `#[wasm_bindgen]` exports are thin wrappers over the plain functions
//! below, which return flat `Vec<f64>` buffers so JavaScript receives a
//! `Float64Array` without any serialization layer.

use std::f64::consts::{PI, TAU};

use mzi_core::duality::DEFAULT_SCAN_GRID;
use mzi_core::{
    complementarity_residual, detection_probability_closed, distinguishability_closed, path_weights,
    visibility_closed, visibility_scan, BeamSplitterAngle, BlochState, DetectorConfig,
    FringeSampler, PhaseShift, Result,
};
use wasm_bindgen::prelude::*;

/// Values of the slider panel.
#[derive(Clone, Copy, Debug)]
pub struct Setup {
    pub s_x: f64,
    pub lambda: f64,
    pub theta: f64,
    pub a: f64,
    pub gamma: f64,
    pub delta: f64,
    pub beta: f64,
}

impl Setup {
    fn parts(&self) -> Result<(BlochState, DetectorConfig, BeamSplitterAngle)> {
        Ok((
            BlochState::from_purity(self.s_x, self.lambda, self.theta)?,
            DetectorConfig::new(self.a, self.gamma, self.delta)?,
            BeamSplitterAngle::new(self.beta)?,
        ))
    }
}

/// `[φ, p_simulated, p_closed]` triples over `[0, 2π]`.
pub fn fringe(setup: &Setup, points: usize) -> Result<Vec<f64>> {
    let (s, det, beta) = setup.parts()?;
    let sampler = FringeSampler::new(&s, &det, beta);
    let n = points.max(2);
    let mut out = Vec::with_capacity(3 * n);
    for k in 0..n {
        let phi = TAU * k as f64 / (n - 1) as f64;
        out.push(phi);
        out.push(sampler.probability(phi));
        out.push(detection_probability_closed(&s, &det, beta, PhaseShift::new(phi)?));
    }
    Ok(out)
}

/// `[V, V_scan, D, residual, ω_a, ω_b]`; V entries are NaN where undefined.
pub fn point(setup: &Setup) -> Result<Vec<f64>> {
    let (s, det, beta) = setup.parts()?;
    let w = path_weights(s.s_x(), beta)?;
    let d = distinguishability_closed(s.s_x(), beta, det.a_overlap())?;
    let v = visibility_closed(&s, det.a_overlap(), beta).unwrap_or(f64::NAN);
    let residual = complementarity_residual(&s, det.a_overlap(), beta).unwrap_or(f64::NAN);
    let scan = visibility_scan(&s, &det, beta, DEFAULT_SCAN_GRID).unwrap_or(f64::NAN);
    Ok(vec![v, scan, d, residual, w.omega_a(), w.omega_b()])
}

/// `[x, V, D]` triples sweeping `S_x` over `[−√λ, √λ]` (`over_beta = false`)
/// or β over `[0, π]`, other values taken from `setup`. Undefined entries are NaN.
pub fn curve(setup: &Setup, over_beta: bool, points: usize) -> Result<Vec<f64>> {
    setup.parts()?;
    let n = points.max(2);
    let (lo, hi) = if over_beta { (0.0, PI) } else { (-setup.lambda.sqrt(), setup.lambda.sqrt()) };
    let mut out = Vec::with_capacity(3 * n);
    for k in 0..n {
        let x = if k == n - 1 { hi } else { lo + (hi - lo) * k as f64 / (n - 1) as f64 };
        let (s_x, b) = if over_beta { (setup.s_x, x) } else { (x, setup.beta) };
        let s = BlochState::from_purity(s_x, setup.lambda, setup.theta)?;
        let beta = BeamSplitterAngle::new(b)?;
        out.push(x);
        out.push(visibility_closed(&s, setup.a, beta).unwrap_or(f64::NAN));
        out.push(distinguishability_closed(s_x, beta, setup.a).unwrap_or(f64::NAN));
    }
    Ok(out)
}

fn js(e: mzi_core::Error) -> JsError {
    JsError::new(&e.to_string())
}

fn setup(s_x: f64, lambda: f64, theta: f64, a: f64, gamma: f64, delta: f64, beta: f64) -> Setup {
    Setup { s_x, lambda, theta, a, gamma, delta, beta }
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn fringe_curve(
    s_x: f64, lambda: f64, theta: f64, a: f64, gamma: f64, delta: f64, beta: f64, points: usize,
) -> std::result::Result<Vec<f64>, JsError> {
    fringe(&setup(s_x, lambda, theta, a, gamma, delta, beta), points).map_err(js)
}

#[wasm_bindgen]
pub fn duality_point(
    s_x: f64, lambda: f64, theta: f64, a: f64, gamma: f64, delta: f64, beta: f64,
) -> std::result::Result<Vec<f64>, JsError> {
    point(&setup(s_x, lambda, theta, a, gamma, delta, beta)).map_err(js)
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn duality_curve(
    s_x: f64, lambda: f64, theta: f64, a: f64, gamma: f64, delta: f64, beta: f64, over_beta: bool,
    points: usize,
) -> std::result::Result<Vec<f64>, JsError> {
    curve(&setup(s_x, lambda, theta, a, gamma, delta, beta), over_beta, points).map_err(js)
}
