//! Wave and particle measures: fringe visibility, which-path
//! distinguishability, and the complementarity residual between them.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interferometer::{BeamSplitterAngle, BlochState, DetectorConfig, FringeSampler, DOMAIN_TOL};
use crate::linalg::{trace_norm, DensityOperator, Mat2};

pub use crate::measurement::{min_error_basis, success_probability, MeasurementBasis};

/// Smallest admissible `1 + S_x cos β`; below it port `a` never fires.
pub const DENOMINATOR_TOL: f64 = 1e-12;

/// Default φ-grid size for [`visibility_scan`].
pub const DEFAULT_SCAN_GRID: usize = 4096;

/// Minimum φ-grid size accepted by [`visibility_scan`].
pub const MIN_SCAN_GRID: usize = 64;

const REFINE_WIDTH: f64 = 1e-12;
const REFINE_MAX_ITERS: usize = 200;

/// Prior weights of the two marked detector states.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PathWeights {
    omega_a: f64,
    omega_b: f64,
}

impl PathWeights {
    pub fn new(omega_a: f64, omega_b: f64) -> Result<Self> {
        let in_unit = |w: f64| w.is_finite() && (0.0..=1.0).contains(&w);
        if !in_unit(omega_a) || !in_unit(omega_b) || (omega_a + omega_b - 1.0).abs() > 1e-12 {
            return Err(Error::invalid(format!(
                "path weights ({omega_a}, {omega_b}) are not a probability pair"
            )));
        }
        Ok(Self { omega_a, omega_b })
    }

    pub fn omega_a(&self) -> f64 {
        self.omega_a
    }

    pub fn omega_b(&self) -> f64 {
        self.omega_b
    }
}

fn check_overlap(a: f64) -> Result<()> {
    if a.is_finite() && (0.0..=1.0).contains(&a) {
        Ok(())
    } else {
        Err(Error::invalid(format!("overlap A = {a} outside [0, 1]")))
    }
}

fn check_sx(s_x: f64) -> Result<()> {
    if s_x.is_finite() && s_x.abs() <= 1.0 + DOMAIN_TOL {
        Ok(())
    } else {
        Err(Error::invalid(format!("S_x = {s_x} outside [-1, 1]")))
    }
}

/// `1 + S_x cos β`, the mean port-`a` intensity times two.
fn port_denominator(s_x: f64, beta: BeamSplitterAngle) -> f64 {
    1.0 + s_x * beta.cos()
}

/// `1 − S_x²` in factored form, accurate near `|S_x| = 1`.
fn one_minus_sq(x: f64) -> f64 {
    ((1.0 - x) * (1.0 + x)).max(0.0)
}

fn nondegenerate(s_x: f64, beta: BeamSplitterAngle) -> Result<f64> {
    let den = port_denominator(s_x, beta);
    if den > DENOMINATOR_TOL {
        Ok(den)
    } else {
        Err(Error::invalid(format!(
            "1 + S_x cos β = {den:.3e}: port a has zero intensity (S_x = {s_x}, β = {})",
            beta.value()
        )))
    }
}

/// `ω_a = cos²(β/2)(1 + S_x)/(1 + S_x cos β)`, `ω_b = sin²(β/2)(1 − S_x)/(1 + S_x cos β)`.
pub fn path_weights(s_x: f64, beta: BeamSplitterAngle) -> Result<PathWeights> {
    check_sx(s_x)?;
    let den = nondegenerate(s_x, beta)?;
    let (sh, ch) = beta.half_sin_cos();
    let omega_a = (ch * ch * (1.0 + s_x) / den).clamp(0.0, 1.0);
    let omega_b = (sh * sh * (1.0 - s_x) / den).clamp(0.0, 1.0);
    Ok(PathWeights { omega_a, omega_b })
}

/// Closed-form fringe visibility `A sin β √(λ − S_x²) / (1 + S_x cos β)`.
pub fn visibility_closed(s: &BlochState, a: f64, beta: BeamSplitterAngle) -> Result<f64> {
    check_overlap(a)?;
    let den = port_denominator(s.s_x(), beta);
    if den <= DENOMINATOR_TOL {
        return Err(Error::UndefinedVisibility(format!(
            "1 + S_x cos β = {den:.3e} (S_x = {}, β = {})",
            s.s_x(),
            beta.value()
        )));
    }
    Ok((a * beta.sin() * s.transverse_magnitude() / den).clamp(0.0, 1.0))
}

/// Ternary search for the extremum of `f` inside `[center − half, center + half]`.
fn refine_extremum(f: impl Fn(f64) -> f64, center: f64, half: f64, grid_best: f64, maximize: bool) -> f64 {
    let sign = if maximize { 1.0 } else { -1.0 };
    let g = |x: f64| sign * f(x);
    let (mut lo, mut hi) = (center - half, center + half);
    let mut best = sign * grid_best;
    for _ in 0..REFINE_MAX_ITERS {
        if hi - lo <= REFINE_WIDTH {
            break;
        }
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        let (g1, g2) = (g(m1), g(m2));
        best = best.max(g1).max(g2);
        if g1 < g2 {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    sign * best.max(g(0.5 * (lo + hi)))
}

/// Visibility measured the long way: sample `p(φ)` from the full evolution on
/// a uniform grid over `[0, 2π)`, refine the extreme samples by ternary
/// search, and form `(max − min)/(max + min)`.
///
/// Grid ties resolve to the smallest φ.
pub fn visibility_scan(
    s: &BlochState,
    det: &DetectorConfig,
    beta: BeamSplitterAngle,
    grid_size: usize,
) -> Result<f64> {
    if grid_size < MIN_SCAN_GRID {
        return Err(Error::invalid(format!(
            "scan grid {grid_size} smaller than {MIN_SCAN_GRID}"
        )));
    }
    let step = TAU / grid_size as f64;
    let sampler = FringeSampler::new(s, det, beta);
    let p = |phi: f64| sampler.probability(phi);

    let (mut imax, mut imin) = (0, 0);
    let (mut pmax, mut pmin) = (f64::NEG_INFINITY, f64::INFINITY);
    for k in 0..grid_size {
        let v = p(step * k as f64);
        if v > pmax {
            pmax = v;
            imax = k;
        }
        if v < pmin {
            pmin = v;
            imin = k;
        }
    }

    let max = refine_extremum(p, step * imax as f64, step, pmax, true);
    let min = refine_extremum(p, step * imin as f64, step, pmin, false);
    let total = max + min;
    if total < 1e-12 {
        return Err(Error::UndefinedVisibility(format!(
            "max p + min p = {total:.3e}"
        )));
    }
    Ok(((max - min) / total).clamp(0.0, 1.0))
}

/// `ρ_f^D = ω_b ρ_in^D + ω_a U ρ_in^D U†`.
pub fn detector_mixture(det: &DetectorConfig, w: &PathWeights) -> DensityOperator<2> {
    let m = det.initial_state().matrix().scale_re(w.omega_b)
        + det.marked_density().matrix().scale_re(w.omega_a);
    DensityOperator::new_unchecked(m)
}

/// `Γ = ω_a U ρ_in^D U† − ω_b ρ_in^D`, whose trace norm is the distinguishability.
pub fn which_path_operator(det: &DetectorConfig, w: &PathWeights) -> Mat2 {
    det.marked_density().matrix().scale_re(w.omega_a)
        - det.initial_state().matrix().scale_re(w.omega_b)
}

/// Closed-form distinguishability
/// `√(1 − sin²β (1 − S_x²) A² / (1 + S_x cos β)²)`.
pub fn distinguishability_closed(s_x: f64, beta: BeamSplitterAngle, a: f64) -> Result<f64> {
    check_sx(s_x)?;
    check_overlap(a)?;
    let den = nondegenerate(s_x, beta)?;
    let sb = beta.sin();
    let lost = sb * sb * one_minus_sq(s_x) * a * a / (den * den);
    Ok((1.0 - lost).max(0.0).sqrt().min(1.0))
}

/// `Tr|Γ|` evaluated from the eigenvalues of Γ.
pub fn distinguishability_trace_norm(det: &DetectorConfig, w: &PathWeights) -> f64 {
    trace_norm(&which_path_operator(det, w)).expect("Γ is Hermitian by construction")
}

/// `1 − V² − D² = A² sin²β (1 − λ) / (1 + S_x cos β)²`.
pub fn complementarity_residual(s: &BlochState, a: f64, beta: BeamSplitterAngle) -> Result<f64> {
    check_overlap(a)?;
    let den = nondegenerate(s.s_x(), beta)?;
    let sb = beta.sin();
    let t = s.transverse_magnitude();
    let mixedness = (one_minus_sq(s.s_x()) - t * t).max(0.0);
    Ok(a * a * sb * sb * mixedness / (den * den))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DualityReport {
    pub visibility: f64,
    pub distinguishability: f64,
    /// `1 − V² − D²`.
    pub residual: f64,
}

impl DualityReport {
    /// `V² + D²`.
    pub fn complementarity_sum(&self) -> f64 {
        self.visibility * self.visibility + self.distinguishability * self.distinguishability
    }
}

pub fn duality_report(
    s: &BlochState,
    det: &DetectorConfig,
    beta: BeamSplitterAngle,
) -> Result<DualityReport> {
    let a = det.a_overlap();
    Ok(DualityReport {
        visibility: visibility_closed(s, a, beta)?,
        distinguishability: distinguishability_closed(s.s_x(), beta, a)?,
        residual: complementarity_residual(s, a, beta)?,
    })
}
