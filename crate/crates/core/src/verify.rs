//! Oracle-equivalence and invariant suites, run on seeded random draws.
//!
//! Each suite records one error value per case and fails a case when the
//! error exceeds the suite tolerance. The summary is deterministic for a
//! given [`RunConfig`].

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::duality::{
    complementarity_residual, distinguishability_closed, distinguishability_trace_norm,
    min_error_basis, path_weights, success_probability, visibility_closed, visibility_scan,
    which_path_operator, MeasurementBasis, PathWeights, DEFAULT_SCAN_GRID,
};
use crate::error::{Error, Result};
use crate::extrema::{visibility_peak_fixed_beta, visibility_peak_fixed_sx};
use crate::interferometer::{
    beam_splitter, bloch_to_density, detection_probability_closed, detection_probability_numeric,
    evolution_unitary, evolve, marking_operator, phase_shifter, rho_f_closed_form,
    BeamSplitterAngle, BlochState, DetectorConfig,
};
use crate::linalg::{hermitian_eig2, inner, tensor, Ket, Mat2, C64};
use crate::sampling::{self, seeded_rng};

/// Grid used by the phase-invariance suite, which runs two scans per draw.
const PHASE_SCAN_GRID: usize = 256;

/// Grid step of the brute-force extremum searches.
pub const EXTREMUM_STEP: f64 = 1e-4;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub draws: usize,
    /// Per-suite tolerance overrides, keyed by suite name.
    pub tolerances: BTreeMap<String, f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { seed: 42, draws: 1000, tolerances: BTreeMap::new() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SuiteResult {
    pub cases: usize,
    pub failures: usize,
    pub max_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct VerifyReport {
    pub suites: BTreeMap<String, SuiteResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.values().all(|s| s.failures == 0)
    }
}

struct Suite {
    tol: f64,
    result: SuiteResult,
}

impl Suite {
    fn record(&mut self, error: f64) {
        let error = if error.is_nan() { f64::INFINITY } else { error };
        self.result.cases += 1;
        if error > self.tol {
            self.result.failures += 1;
        }
        self.result.max_error = self.result.max_error.max(error);
    }

    fn record_result(&mut self, error: Result<f64>) {
        self.record(error.unwrap_or(f64::INFINITY));
    }
}

type Runner = fn(&mut Suite, &mut ChaCha8Rng, usize);

/// `(name, default tolerance, runner)` for every suite, in stream order.
const SUITES: &[(&str, f64, Runner)] = &[
    ("tensor_mixed_product", 1e-12, tensor_mixed_product),
    ("partial_trace_product", 1e-12, partial_trace_product),
    ("eig2_reconstruction", 1e-10, eig2_reconstruction),
    ("trace_norm_triangle", 1e-12, trace_norm_triangle),
    ("unitarity", 1e-12, unitarity),
    ("evolve_density", 1e-10, evolve_density),
    ("evolve_vs_closed_form", 1e-12, evolve_vs_closed_form),
    ("partial_trace_path_mixture", 1e-12, partial_trace_path_mixture),
    ("detection_probability", 1e-10, detection_probability),
    ("visibility_oracle", 1e-9, visibility_oracle),
    ("distinguishability_oracle", 1e-10, distinguishability_oracle),
    ("distinguishability_identity", 1e-12, distinguishability_identity),
    ("phase_invariance", 1e-10, phase_invariance),
    ("complementarity", 1e-12, complementarity),
    ("complementarity_equality", 1e-12, complementarity_equality),
    ("min_error_basis", 1e-10, min_error_basis_suite),
    ("min_error_literal", 1e-8, min_error_literal),
    ("helstrom_prior_bound", 1e-12, helstrom_prior_bound),
    ("extremum_loci", 1e-3, extremum_loci),
    ("extremum_values", 1e-6, extremum_values),
    ("reference_values", 1e-12, reference_values),
];

/// Suite names with their default tolerances.
pub fn default_tolerances() -> BTreeMap<&'static str, f64> {
    SUITES.iter().map(|(name, tol, _)| (*name, *tol)).collect()
}

pub fn run(config: &RunConfig) -> Result<VerifyReport> {
    if config.draws == 0 {
        return Err(Error::invalid("draws must be at least 1"));
    }
    let defaults = default_tolerances();
    for (name, tol) in &config.tolerances {
        if !defaults.contains_key(name.as_str()) {
            return Err(Error::invalid(format!("unknown suite `{name}` in tolerance overrides")));
        }
        if !(tol.is_finite() && *tol >= 0.0) {
            return Err(Error::invalid(format!("tolerance for `{name}` must be finite and ≥ 0")));
        }
    }

    let mut suites = BTreeMap::new();
    for (stream, (name, default_tol, runner)) in SUITES.iter().enumerate() {
        let tol = config.tolerances.get(*name).copied().unwrap_or(*default_tol);
        let mut suite = Suite { tol, result: SuiteResult { cases: 0, failures: 0, max_error: 0.0 } };
        let mut rng = seeded_rng(config.seed, stream as u64);
        runner(&mut suite, &mut rng, config.draws);
        suites.insert(name.to_string(), suite.result);
    }
    Ok(VerifyReport { suites })
}

fn random_matrix(rng: &mut ChaCha8Rng) -> Mat2 {
    let mut z = || C64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
    Mat2::from_rows([[z(), z()], [z(), z()]])
}

fn random_hermitian(rng: &mut ChaCha8Rng) -> Mat2 {
    let a = rng.gen_range(-1.0..=1.0);
    let d = rng.gen_range(-1.0..=1.0);
    let b = C64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
    Mat2::from_rows([[C64::new(a, 0.0), b], [b.conj(), C64::new(d, 0.0)]])
}

fn tensor_mixed_product(suite: &mut Suite, rng: &mut ChaCha8Rng, draws: usize) {
    for _ in 0..draws {
        let [a, b, c, d] = [(); 4].map(|_| random_matrix(rng));
        let lhs = tensor(&a, &b) * tensor(&c, &d);
        suite.record(lhs.max_abs_diff(&tensor(&(a * c), &(b * d))));
        let lin = tensor(&(a + c), &b) - tensor(&a, &b) - tensor(&c, &b);
        suite.record(lin.max_abs_diff(&Default::default()));
    }
}

fn partial_trace_product(suite: &mut Suite, rng: &mut ChaCha8Rng, draws: usize) {
    for _ in 0..draws {
        let path = bloch_to_density(&sampling::bloch_in_ball(rng));
        let det = bloch_to_density(&sampling::bloch_in_ball(rng));
        let joint = path.tensor(&det);
        suite.record(joint.partial_trace_path().matrix().max_abs_diff(det.matrix()));
        suite.record(joint.partial_trace_detector().matrix().max_abs_diff(path.matrix()));
    }
}

fn eigen_residual(h: &Mat2, v: &Ket<2>, value: f64) -> f64 {
    h.apply(v)
        .iter()
        .zip(v)
        .map(|(hv, x)| (hv - x * value).norm())
        .fold(0.0, f64::max)
}

fn eig2_reconstruction(suite: &mut Suite, rng: &mut ChaCha8Rng, draws: usize) {
    for _ in 0..draws {
        let h = random_hermitian(rng);
        let Ok(eig) = hermitian_eig2(&h) else {
            suite.record(f64::INFINITY);
            continue;
        };
        let ortho = MeasurementBasis { m_a: eig.vectors[0], m_b: eig.vectors[1] }.orthonormality_error();
        let residual = eigen_residual(&h, &eig.vectors[0], eig.values[0])
            .max(eigen_residual(&h, &eig.vectors[1], eig.values[1]));
        suite.record(eig.reconstruct().max_abs_diff(&h).max(ortho).max(residual));
    }
}

fn trace_norm_triangle(suite: &mut Suite, rng: &mut ChaCha8Rng, draws: usize) {
    for _ in 0..draws {
        let h = random_hermitian(rng);
        let norm = crate::linalg::trace_norm(&h);
        suite.record_result(norm.map(|n| (h.trace().norm() - n).max(0.0)));
    }
}

fn unitarity(suite: &mut Suite, rng: &mut ChaCha8Rng, draws: usize) {
    for _ in 0..draws {
        let d = sampling::parameter_draw(rng);
        suite.record(phase_shifter(d.phi).unitarity_error());
        suite.record(beam_splitter(d.beta).unitarity_error());
        suite.record(marking_operator(&d.detector).unitarity_error());
        suite.record(evolution_unitary(&d.detector, d.beta, d.phi).unitarity_error());
    }
}

fn evolve_density(suite: &mut Suite, rng: &mut ChaCha8Rng, draws: usize) {
    for _ in 0..draws {
        let d = sampling::parameter_draw(rng);
        let rho = evolve(&d.state, &d.detector, d.beta, d.phi);
        let m = rho.matrix();
        let trace = (m.trace() - C64::new(1.0, 0.0)).norm();
        let negativity = (-rho.eigenvalues()[0]).max(0.0);
        suite.record(m.hermiticity_error().max(trace).max(negativity));
    }
}

fn evolve_vs_closed_form(suite: &mut Suite, rng: &mut ChaCha8Rng, draws: usize) {
    for _ in 0..draws {
        let d = sampling::parameter_draw(rng);
        let pipeline = evolve(&d.state, &d.detector, d.beta, d.phi);
        let closed = rho_f_closed_form(&d.state, &d.detector, d.beta, d.phi);
        suite.record(pipeline.matrix().max_abs_diff(closed.matrix()));
    }
}

fn partial_trace_path_mixture(suite: &mut Suite, rng: &mut ChaCha8Rng, draws: usize) {
    for _ in 0..draws {
        let d = sampling::parameter_draw(rng);
        let reduced = evolve(&d.state, &d.detector, d.beta, d.phi).partial_trace_path();
        let sx = d.state.s_x();
        let want = d.detector.initial_state().matrix().scale_re(0.5 * (1.0 - sx))
            + d.detector.marked_density().matrix().scale_re(0.5 * (1.0 + sx));
        suite.record(reduced.matrix().max_abs_diff(&want));
    }
}

fn detection_probability(suite: &mut Suite, rng: &mut ChaCha8Rng, draws: usize) {
    for _ in 0..draws {
        let d = sampling::parameter_draw(rng);
        let numeric = detection_probability_numeric(&evolve(&d.state, &d.detector, d.beta, d.phi));
        let closed = detection_probability_closed(&d.state, &d.detector, d.beta, d.phi);
        suite.record((numeric - closed).abs());
    }
}

fn visibility_oracle(suite: &mut Suite, rng: &mut ChaCha8Rng, draws: usize) {
    for _ in 0..draws {
        let d = sampling::parameter_draw(rng);
        let scan = visibility_scan(&d.state, &d.detector, d.beta, DEFAULT_SCAN_GRID);
        let closed = visibility_closed(&d.state, d.detector.a_overlap(), d.beta);
        suite.record_result(scan.and_then(|s| Ok((s - closed?).abs())));
    }
}

fn distinguishability_oracle(suite: &mut Suite, rng: &mut ChaCha8Rng, draws: usize) {
    for _ in 0..draws {
        let d = sampling::parameter_draw(rng);
        let sx = d.state.s_x();
        let err = path_weights(sx, d.beta).and_then(|w| {
            let closed = distinguishability_closed(sx, d.beta, d.detector.a_overlap())?;
            Ok((distinguishability_trace_norm(&d.detector, &w) - closed).abs())
        });
        suite.record_result(err);
    }
}

fn distinguishability_identity(suite: &mut Suite, rng: &mut ChaCha8Rng, draws: usize) {
    for _ in 0..draws {
        let d = sampling::parameter_draw(rng);
        let (sx, a) = (d.state.s_x(), d.detector.a_overlap());
        let err = path_weights(sx, d.beta).and_then(|w| {
            let dist = distinguishability_closed(sx, d.beta, a)?;
            Ok((dist * dist + 4.0 * w.omega_a() * w.omega_b() * a * a - 1.0).abs())
        });
        suite.record_result(err);
    }
}

fn phase_invariance(suite: &mut Suite, rng: &mut ChaCha8Rng, draws: usize) {
    for _ in 0..draws {
        let d = sampling::parameter_draw(rng);
        let other = sampling::detector(rng);
        let shifted = DetectorConfig::new(d.detector.a_overlap(), other.gamma(), other.delta())
            .expect("same overlap");
        let sx = d.state.s_x();
        let err = (|| {
            let v1 = visibility_scan(&d.state, &d.detector, d.beta, PHASE_SCAN_GRID)?;
            let v2 = visibility_scan(&d.state, &shifted, d.beta, PHASE_SCAN_GRID)?;
            let w = path_weights(sx, d.beta)?;
            let d1 = distinguishability_trace_norm(&d.detector, &w);
            let d2 = distinguishability_trace_norm(&shifted, &w);
            Ok((v1 - v2).abs().max((d1 - d2).abs()))
        })();
        suite.record_result(err);
    }
}

fn complementarity_error(s: &BlochState, a: f64, beta: BeamSplitterAngle) -> Result<(f64, f64)> {
    let v = visibility_closed(s, a, beta)?;
    let d = distinguishability_closed(s.s_x(), beta, a)?;
    let residual = complementarity_residual(s, a, beta)?;
    let sum = v * v + d * d;
    Ok((sum, residual))
}

fn complementarity(suite: &mut Suite, rng: &mut ChaCha8Rng, draws: usize) {
    for _ in 0..draws {
        let d = sampling::parameter_draw(rng);
        let err = complementarity_error(&d.state, d.detector.a_overlap(), d.beta)
            .map(|(sum, residual)| (1.0 - sum - residual).abs().max(sum - 1.0));
        suite.record_result(err);
    }
}

fn complementarity_equality(suite: &mut Suite, rng: &mut ChaCha8Rng, _draws: usize) {
    const SLICE: usize = 100;
    let equality = |s: &BlochState, a: f64, beta| {
        complementarity_error(s, a, beta).map(|(sum, residual)| (sum - 1.0).abs().max(residual))
    };
    for k in 0..SLICE {
        let s = sampling::bloch_in_ball(rng);
        let a = rng.gen_range(0.0..=1.0);
        let beta = BeamSplitterAngle::new(if k % 2 == 0 { 0.0 } else { PI }).expect("endpoint");
        suite.record_result(equality(&s, a, beta));
    }
    for _ in 0..SLICE {
        let s = sampling::bloch_on_sphere(rng);
        let a = rng.gen_range(0.0..=1.0);
        suite.record_result(equality(&s, a, sampling::beta(rng)));
    }
    for _ in 0..SLICE {
        let s = sampling::bloch_in_ball(rng);
        suite.record_result(equality(&s, 0.0, sampling::beta(rng)));
    }
}

fn min_error_basis_suite(suite: &mut Suite, rng: &mut ChaCha8Rng, draws: usize) {
    for _ in 0..draws {
        let d = sampling::parameter_draw(rng);
        let sx = d.state.s_x();
        let err = (|| {
            let w = path_weights(sx, d.beta)?;
            let basis = min_error_basis(&d.detector, &w)?;
            let gamma = which_path_operator(&d.detector, &w);
            let eig = hermitian_eig2(&gamma)?;
            let residual = eigen_residual(&gamma, &basis.m_a, eig.values[0])
                .max(eigen_residual(&gamma, &basis.m_b, eig.values[1]));
            let dist = distinguishability_closed(sx, d.beta, d.detector.a_overlap())?;
            let helstrom = (success_probability(&basis, &d.detector, &w) - 0.5 * (1.0 + dist)).abs();
            Ok(residual.max(basis.orthonormality_error()).max(helstrom))
        })();
        suite.record_result(err);
    }
}

fn helstrom_prior_bound(suite: &mut Suite, rng: &mut ChaCha8Rng, draws: usize) {
    for _ in 0..draws {
        let d = sampling::parameter_draw(rng);
        let err = path_weights(d.state.s_x(), d.beta).and_then(|w| {
            let basis = min_error_basis(&d.detector, &w)?;
            let p = success_probability(&basis, &d.detector, &w);
            Ok((w.omega_a().max(w.omega_b()) - p).max(0.0))
        });
        suite.record_result(err);
    }
}

/// The minimum-error basis evaluated from its explicit fractions in `|r⟩`
/// and `|s⟩ = U|r⟩`.
///
/// Those fractions assume a real overlap `⟨r|s⟩ = A`, so `|r⟩` is rephased by
/// `e^{iγ}` first (the projector `|r⟩⟨r|` is unchanged). Singular at
/// `A ∈ {0, 1}` and `ω_a = 0`; returns `None` there.
pub fn literal_min_error_basis(det: &DetectorConfig, w: &PathWeights) -> Option<MeasurementBasis> {
    let a = det.a_overlap();
    let (wa, wb) = (w.omega_a(), w.omega_b());
    if a <= 0.0 || a >= 1.0 || wa <= 0.0 {
        return None;
    }
    let root = (1.0 - 4.0 * wa * wb * a * a).sqrt();
    let norm_den = 2.0 * wa * wa * a * a * (1.0 - a * a);
    let base = 1.0 - 4.0 * wa * wb * a * a;
    let a_a = ((base - root * (1.0 - 2.0 * wa * a * a)) / norm_den).sqrt();
    let a_b = ((base + root * (1.0 - 2.0 * wa * a * a)) / norm_den).sqrt();
    let c_a = (1.0 - root) / (2.0 * wa * a);
    let c_b = (1.0 + root) / (2.0 * wa * a);
    let tail = (1.0 - a * a).sqrt();

    let phase = C64::from_polar(1.0, det.gamma());
    let r = det.reference_state().map(|z| z * phase);
    let s = det.marked_state();
    let combine = |c: f64, norm: f64| -> Ket<2> {
        [0, 1].map(|k| (s[k] - r[k] * c) / (norm * tail))
    };
    Some(MeasurementBasis { m_a: combine(c_a, a_a), m_b: combine(c_b, a_b) })
}

/// Largest entrywise distance between `u` and `v` after aligning their
/// global phases.
pub fn phase_aligned_distance(u: &Ket<2>, v: &Ket<2>) -> f64 {
    let overlap = inner(v, u);
    let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { C64::new(1.0, 0.0) };
    u.iter().zip(v).map(|(a, b)| (a - b * phase).norm()).fold(0.0, f64::max)
}

fn min_error_literal(suite: &mut Suite, rng: &mut ChaCha8Rng, draws: usize) {
    let mut recorded = 0;
    while recorded < draws {
        let d = sampling::parameter_draw(rng);
        let a = d.detector.a_overlap();
        let Ok(w) = path_weights(d.state.s_x(), d.beta) else { continue };
        let interior = |x: f64| (0.05..=0.95).contains(&x);
        if !interior(a) || !interior(w.omega_a()) || !interior(w.omega_b()) {
            continue;
        }
        recorded += 1;
        let err = match (min_error_basis(&d.detector, &w), literal_min_error_basis(&d.detector, &w)) {
            (Ok(num), Some(lit)) => phase_aligned_distance(&num.m_a, &lit.m_a)
                .max(phase_aligned_distance(&num.m_b, &lit.m_b)),
            _ => f64::INFINITY,
        };
        suite.record(err);
    }
}

/// Argmax/argmin of `f` on `lo, lo + step, …, hi` (first index on ties).
pub fn grid_extremum(lo: f64, hi: f64, step: f64, maximize: bool, f: impl Fn(f64) -> Option<f64>) -> Option<(f64, f64)> {
    let n = ((hi - lo) / step).round() as usize;
    let mut best: Option<(f64, f64)> = None;
    for k in 0..=n {
        let x = if k == n { hi } else { lo + step * k as f64 };
        let Some(y) = f(x) else { continue };
        let better = match best {
            None => true,
            Some((_, b)) => if maximize { y > b } else { y < b },
        };
        if better {
            best = Some((x, y));
        }
    }
    best
}

/// Brute-force peak of `V(S_x)` for fixed `(λ, β)`.
pub fn grid_peak_over_sx(lambda: f64, a: f64, beta: BeamSplitterAngle) -> Option<(f64, f64)> {
    let r = lambda.sqrt();
    grid_extremum(-r, r, EXTREMUM_STEP, true, |x| {
        let s = BlochState::from_purity(x, lambda, 0.0).ok()?;
        visibility_closed(&s, a, beta).ok()
    })
}

/// Brute-force peak of `V(β)` for fixed `(S_x, λ)`.
pub fn grid_peak_over_beta(s_x: f64, lambda: f64, a: f64) -> Option<(f64, f64)> {
    let s = BlochState::from_purity(s_x, lambda, 0.0).ok()?;
    grid_extremum(0.0, PI, EXTREMUM_STEP, true, |b| {
        visibility_closed(&s, a, BeamSplitterAngle::new(b).ok()?).ok()
    })
}

/// Brute-force valley of `D(β)` for fixed `S_x`.
pub fn grid_valley_over_beta(s_x: f64, a: f64) -> Option<(f64, f64)> {
    grid_extremum(0.0, PI, EXTREMUM_STEP, false, |b| {
        distinguishability_closed(s_x, BeamSplitterAngle::new(b).ok()?, a).ok()
    })
}

/// Brute-force valley of `D(S_x)` for fixed β.
pub fn grid_valley_over_sx(beta: BeamSplitterAngle, a: f64) -> Option<(f64, f64)> {
    grid_extremum(-1.0, 1.0, EXTREMUM_STEP, false, |x| distinguishability_closed(x, beta, a).ok())
}

/// Figure parameter grid plus a few random points for the extremum checks.
fn extremum_cases(rng: &mut ChaCha8Rng, extra: usize) -> Vec<(f64, f64, f64, f64)> {
    // (λ, β, S_x, A)
    let mut cases = Vec::new();
    for lambda in [9.0 / 25.0, 1.0] {
        for beta in [FRAC_PI_4, FRAC_PI_2, 3.0 * FRAC_PI_4] {
            for a in [1.0 / 3.0, 0.8] {
                cases.push((lambda, beta, -0.5, a));
                cases.push((lambda, beta, 0.0, a));
                cases.push((lambda, beta, 0.5, a));
            }
        }
    }
    for _ in 0..extra {
        let lambda = rng.gen_range(0.05..=1.0);
        let beta = rng.gen_range(0.2..=PI - 0.2);
        let r = 0.9 * f64::sqrt(lambda);
        cases.push((lambda, beta, rng.gen_range(-r..=r), rng.gen_range(0.05..=1.0)));
    }
    cases
}

fn extremum_loci(suite: &mut Suite, rng: &mut ChaCha8Rng, draws: usize) {
    for (lambda, b, sx, a) in extremum_cases(rng, (draws / 100).max(1)) {
        let beta = BeamSplitterAngle::new(b).expect("interior β");
        let peak_sx = grid_peak_over_sx(lambda, a, beta).map(|(x, _)| (x + lambda * b.cos()).abs());
        suite.record(peak_sx.unwrap_or(f64::INFINITY));
        let peak_beta = grid_peak_over_beta(sx, lambda, a).map(|(x, _)| (x - (-sx).acos()).abs());
        suite.record(peak_beta.unwrap_or(f64::INFINITY));
        let valley_beta = grid_valley_over_beta(sx, a).map(|(x, _)| (x - (-sx).acos()).abs());
        suite.record(valley_beta.unwrap_or(f64::INFINITY));
        let valley_sx = grid_valley_over_sx(beta, a).map(|(x, _)| (x + b.cos()).abs());
        suite.record(valley_sx.unwrap_or(f64::INFINITY));
    }
}

fn extremum_values(suite: &mut Suite, rng: &mut ChaCha8Rng, draws: usize) {
    for (lambda, b, sx, a) in extremum_cases(rng, (draws / 100).max(1)) {
        let beta = BeamSplitterAngle::new(b).expect("interior β");
        let err = (|| {
            let predicted = visibility_peak_fixed_beta(lambda, a, beta).ok()?.value;
            Some((grid_peak_over_sx(lambda, a, beta)?.1 - predicted).abs())
        })();
        suite.record(err.unwrap_or(f64::INFINITY));
        let err = (|| {
            let predicted = visibility_peak_fixed_sx(sx, lambda, a).ok()?.value;
            Some((grid_peak_over_beta(sx, lambda, a)?.1 - predicted).abs())
        })();
        suite.record(err.unwrap_or(f64::INFINITY));
        let floor = (1.0 - a * a).sqrt();
        let err = grid_valley_over_beta(sx, a).map(|(_, v)| (v - floor).abs());
        suite.record(err.unwrap_or(f64::INFINITY));
    }
}

fn reference_values(suite: &mut Suite, _rng: &mut ChaCha8Rng, _draws: usize) {
    let third = 1.0 / 3.0;
    let s = BlochState::new(0.0, 0.6, 0.0).expect("valid");
    suite.record_result(
        visibility_closed(&s, third, BeamSplitterAngle::SYMMETRIC).map(|v| (v - 0.2).abs()),
    );
    for sx in [-0.5f64, 0.0, 0.5] {
        let beta = BeamSplitterAngle::new((-sx).acos()).expect("valid");
        suite.record_result(distinguishability_closed(sx, beta, 0.8).map(|d| (d - 0.6).abs()));
    }
    for b in [0.0, PI] {
        let beta = BeamSplitterAngle::new(b).expect("endpoint");
        let s = BlochState::new(0.3, -0.4, 0.5).expect("valid");
        suite.record_result(visibility_closed(&s, third, beta).map(f64::abs));
        suite.record_result(distinguishability_closed(0.3, beta, third).map(|d| (d - 1.0).abs()));
    }
}
