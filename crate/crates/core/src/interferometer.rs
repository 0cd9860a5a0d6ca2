//! The apparatus: symmetric BS1, phase shifters, a which-path detector on
//! path `a`, and an asymmetric BS2.
//!
//! Path basis ordering is `(|b⟩, |a⟩)`, so `σ_z = |b⟩⟨b| − |a⟩⟨a| = diag(1, −1)`
//! and output port `a` is the second basis vector. Joint states are ordered
//! path ⊗ detector.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::{Error, Result};
use crate::linalg::{block_diag, tensor, DensityOperator, Ket, Mat2, Mat4, C64, ONE, ZERO};

/// Slack allowed when checking `λ ≤ 1` and angle ranges.
pub const DOMAIN_TOL: f64 = 1e-12;

/// Input path-qubit state given by its Bloch vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochState {
    s_x: f64,
    s_y: f64,
    s_z: f64,
}

impl BlochState {
    pub fn new(s_x: f64, s_y: f64, s_z: f64) -> Result<Self> {
        if !(s_x.is_finite() && s_y.is_finite() && s_z.is_finite()) {
            return Err(Error::invalid("Bloch components must be finite"));
        }
        let state = Self { s_x, s_y, s_z };
        let lambda = state.purity();
        if lambda > 1.0 + DOMAIN_TOL {
            return Err(Error::invalid(format!(
                "Bloch vector length² = {lambda} exceeds 1"
            )));
        }
        Ok(state)
    }

    /// State with given `S_x` and `λ`, the transverse part `√(λ − S_x²)` split as
    /// `S_y = r sin θ`, `S_z = r cos θ`.
    pub fn from_purity(s_x: f64, lambda: f64, transverse_angle: f64) -> Result<Self> {
        if !(s_x.is_finite() && lambda.is_finite() && transverse_angle.is_finite()) {
            return Err(Error::invalid("Bloch parameters must be finite"));
        }
        if !(0.0..=1.0 + DOMAIN_TOL).contains(&lambda) {
            return Err(Error::invalid(format!("λ = {lambda} outside [0, 1]")));
        }
        let transverse_sq = lambda - s_x * s_x;
        if transverse_sq < -DOMAIN_TOL {
            return Err(Error::invalid(format!("S_x² = {} exceeds λ = {lambda}", s_x * s_x)));
        }
        let r = transverse_sq.max(0.0).sqrt();
        let (sin, cos) = transverse_angle.sin_cos();
        Self::new(s_x, r * sin, r * cos)
    }

    pub fn s_x(&self) -> f64 {
        self.s_x
    }

    pub fn s_y(&self) -> f64 {
        self.s_y
    }

    pub fn s_z(&self) -> f64 {
        self.s_z
    }

    /// `λ = S_x² + S_y² + S_z²`.
    pub fn purity(&self) -> f64 {
        self.s_x * self.s_x + self.s_y * self.s_y + self.s_z * self.s_z
    }

    pub fn is_pure(&self) -> bool {
        (self.purity() - 1.0).abs() <= DOMAIN_TOL
    }

    /// `|S_z + iS_y| = √(λ − S_x²)`, the fringe amplitude factor.
    pub fn transverse_magnitude(&self) -> f64 {
        self.s_y.hypot(self.s_z)
    }

    /// `α = arg(S_z + iS_y)`, zero when the transverse part vanishes.
    pub fn fringe_phase(&self) -> f64 {
        if self.s_y == 0.0 && self.s_z == 0.0 {
            0.0
        } else {
            self.s_y.atan2(self.s_z)
        }
    }
}

/// Pure detector state `|r⟩` and the marking unitary `U`.
///
/// `U = [[A e^{iγ}, −√(1−A²) e^{−iδ}], [√(1−A²) e^{iδ}, A e^{−iγ}]]` acting on
/// `|r⟩ = (1, 0)`, so `⟨r|U|r⟩ = A e^{iγ}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DetectorConfig {
    a_overlap: f64,
    gamma: f64,
    delta: f64,
}

impl DetectorConfig {
    pub fn new(a_overlap: f64, gamma: f64, delta: f64) -> Result<Self> {
        if !(a_overlap.is_finite() && gamma.is_finite() && delta.is_finite()) {
            return Err(Error::invalid("detector parameters must be finite"));
        }
        if !(0.0..=1.0).contains(&a_overlap) {
            return Err(Error::invalid(format!("overlap A = {a_overlap} outside [0, 1]")));
        }
        Ok(Self { a_overlap, gamma, delta })
    }

    /// `γ = δ = 0`.
    pub fn with_overlap(a_overlap: f64) -> Result<Self> {
        Self::new(a_overlap, 0.0, 0.0)
    }

    pub fn a_overlap(&self) -> f64 {
        self.a_overlap
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn unitary(&self) -> Mat2 {
        let a = self.a_overlap;
        let c = (1.0 - a * a).max(0.0).sqrt();
        Mat2::from_rows([
            [C64::from_polar(a, self.gamma), -C64::from_polar(c, -self.delta)],
            [C64::from_polar(c, self.delta), C64::from_polar(a, -self.gamma)],
        ])
    }

    /// `|r⟩`, the first detector basis vector.
    pub fn reference_state(&self) -> Ket<2> {
        [ONE, ZERO]
    }

    /// `|s⟩ = U|r⟩`.
    pub fn marked_state(&self) -> Ket<2> {
        self.unitary().apply(&self.reference_state())
    }

    /// `⟨r|U|r⟩ = Tr_D(U ρ_in^D)`.
    pub fn overlap(&self) -> C64 {
        C64::from_polar(self.a_overlap, self.gamma)
    }

    /// `ρ_in^D = |r⟩⟨r|`.
    pub fn initial_state(&self) -> DensityOperator<2> {
        DensityOperator::pure(&self.reference_state()).expect("reference state is normalized")
    }

    /// `U ρ_in^D U†`.
    pub fn marked_density(&self) -> DensityOperator<2> {
        self.initial_state().evolve(&self.unitary())
    }
}

/// BS2 mixing angle `β ∈ [0, π]`; `π/2` is the symmetric splitter.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct BeamSplitterAngle(f64);

impl BeamSplitterAngle {
    pub const SYMMETRIC: Self = Self(FRAC_PI_2);

    /// Values within `1e-12` of an endpoint snap to exactly `0` or `π`.
    pub fn new(beta: f64) -> Result<Self> {
        if !beta.is_finite() || !(-DOMAIN_TOL..=PI + DOMAIN_TOL).contains(&beta) {
            return Err(Error::invalid(format!("β = {beta} outside [0, π]")));
        }
        let beta = if beta.abs() <= DOMAIN_TOL {
            0.0
        } else if (beta - PI).abs() <= DOMAIN_TOL {
            PI
        } else {
            beta
        };
        Ok(Self(beta))
    }

    pub fn value(&self) -> f64 {
        self.0
    }

    /// True for full transmission (`β = 0`) or full reflection (`β = π`).
    pub fn is_trivial(&self) -> bool {
        self.0 == 0.0 || self.0 == PI
    }

    /// `sin β`, exactly zero at the endpoints.
    pub fn sin(&self) -> f64 {
        if self.is_trivial() {
            0.0
        } else {
            self.0.sin()
        }
    }

    pub fn cos(&self) -> f64 {
        self.0.cos()
    }

    /// `(sin(β/2), cos(β/2))`, exact at the endpoints.
    pub fn half_sin_cos(&self) -> (f64, f64) {
        if self.0 == PI {
            (1.0, 0.0)
        } else {
            (0.5 * self.0).sin_cos()
        }
    }
}

/// Relative arm phase, canonicalized to `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct PhaseShift(f64);

impl PhaseShift {
    pub fn new(phi: f64) -> Result<Self> {
        if !phi.is_finite() {
            return Err(Error::invalid("phase must be finite"));
        }
        let canonical = phi.rem_euclid(TAU);
        Ok(Self(if canonical >= TAU { 0.0 } else { canonical }))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// `ρ = ½(1 + S_x σ_x + S_y σ_y + S_z σ_z)`.
pub fn bloch_to_density(s: &BlochState) -> DensityOperator<2> {
    let m = Mat2::identity()
        + Mat2::pauli_x().scale_re(s.s_x)
        + Mat2::pauli_y().scale_re(s.s_y)
        + Mat2::pauli_z().scale_re(s.s_z);
    DensityOperator::new_unchecked(m.scale_re(0.5))
}

fn phase_rotation(angle: f64) -> Mat2 {
    Mat2::from_rows([
        [C64::from_polar(1.0, -angle), ZERO],
        [ZERO, C64::from_polar(1.0, angle)],
    ])
}

/// `U_P(φ) = exp(−iφσ_z) = diag(e^{−iφ}, e^{iφ})`.
pub fn phase_shifter(phi: PhaseShift) -> Mat2 {
    phase_rotation(phi.value())
}

/// `U_B(β) = exp(−i(β/2)σ_y)`.
pub fn beam_splitter(beta: BeamSplitterAngle) -> Mat2 {
    let (s, c) = beta.half_sin_cos();
    Mat2::from_rows([
        [C64::new(c, 0.0), C64::new(-s, 0.0)],
        [C64::new(s, 0.0), C64::new(c, 0.0)],
    ])
}

/// `M = |b⟩⟨b| ⊗ I + |a⟩⟨a| ⊗ U`.
pub fn marking_operator(det: &DetectorConfig) -> Mat4 {
    block_diag(&Mat2::identity(), &det.unitary())
}

/// Full joint unitary `U_B(β)·M·U_P·U_B(π/2)`.
///
/// `φ` is the relative phase between the arms. `exp(−iφσ_z)` imprints twice
/// its argument between `|b⟩` and `|a⟩`, so the shifter is applied at `φ/2`.
pub fn evolution_unitary(det: &DetectorConfig, beta: BeamSplitterAngle, phi: PhaseShift) -> Mat4 {
    let id = Mat2::identity();
    let bs2 = tensor(&beam_splitter(beta), &id);
    let shift = tensor(&phase_rotation(0.5 * phi.value()), &id);
    let bs1 = tensor(&beam_splitter(BeamSplitterAngle::SYMMETRIC), &id);
    bs2 * marking_operator(det) * shift * bs1
}

/// Joint path ⊗ detector state after the particle leaves BS2.
pub fn evolve(
    s: &BlochState,
    det: &DetectorConfig,
    beta: BeamSplitterAngle,
    phi: PhaseShift,
) -> DensityOperator<4> {
    bloch_to_density(s)
        .tensor(&det.initial_state())
        .evolve(&evolution_unitary(det, beta, phi))
}

/// The same state as [`evolve`], summed term by term from its four-term
/// expansion in `ρ_in^D`, `ρ_in^D U†`, `U ρ_in^D` and `U ρ_in^D U†`.
pub fn rho_f_closed_form(
    s: &BlochState,
    det: &DetectorConfig,
    beta: BeamSplitterAngle,
    phi: PhaseShift,
) -> DensityOperator<4> {
    let (sx, sy, sz) = (s.s_x, s.s_y, s.s_z);
    let (cb, sb) = (beta.cos(), beta.sin());
    let (px, py, pz) = (Mat2::pauli_x(), Mat2::pauli_y(), Mat2::pauli_z());
    let id = Mat2::identity();
    let i = crate::linalg::I;

    let rho = *det.initial_state().matrix();
    let u = det.unitary();
    let ud = u.adjoint();

    let cross = pz.scale_re(sb) - px.scale_re(cb);
    let e_minus = C64::from_polar(1.0, -phi.value());
    let e_plus = C64::from_polar(1.0, phi.value());

    let t1 = tensor(&(id + pz.scale_re(cb) + px.scale_re(sb)), &rho).scale_re(0.25 * (1.0 - sx));
    let t2 = tensor(&(cross - py.scale(i)), &(rho * ud))
        .scale(-0.25 * e_minus * C64::new(sz, -sy));
    let t3 = tensor(&(cross + py.scale(i)), &(u * rho))
        .scale(-0.25 * e_plus * C64::new(sz, sy));
    let t4 = tensor(&(id - pz.scale_re(cb) - px.scale_re(sb)), &(u * rho * ud))
        .scale_re(0.25 * (1.0 + sx));

    DensityOperator::new_unchecked(t1 + t2 + t3 + t4)
}

/// Probability that the particle exits through port `a`:
/// `Tr[(½(1 − σ_z) ⊗ I) ρ_f]`, clamped to `[0, 1]`.
pub fn detection_probability_numeric(rho_f: &DensityOperator<4>) -> f64 {
    let m = rho_f.matrix();
    (m.get(2, 2).re + m.get(3, 3).re).clamp(0.0, 1.0)
}

/// Port-`a` probability as a function of φ with the φ-independent parts of
/// the evolution precomputed: the state after BS1 and the map `(BS2 ⊗ I)·M`.
///
/// Agrees with `detection_probability_numeric(&evolve(..))` to rounding.
#[derive(Clone, Debug)]
pub struct FringeSampler {
    after_bs1: Mat4,
    /// Rows 2 and 3 (port `a`) of `(BS2 ⊗ I)·M`.
    out_rows: [[C64; 4]; 2],
}

impl FringeSampler {
    pub fn new(s: &BlochState, det: &DetectorConfig, beta: BeamSplitterAngle) -> Self {
        let id = Mat2::identity();
        let bs1 = tensor(&beam_splitter(BeamSplitterAngle::SYMMETRIC), &id);
        let joint = bloch_to_density(s).tensor(&det.initial_state());
        let after_bs1 = joint.matrix().conjugate_by(&bs1);
        let q = tensor(&beam_splitter(beta), &id) * marking_operator(det);
        Self { after_bs1, out_rows: [q.entries()[2], q.entries()[3]] }
    }

    pub fn probability(&self, phi: f64) -> f64 {
        // Phase shifter at φ/2 on the path factor: diag(e^{−iφ/2}, e^{iφ/2}) ⊗ I.
        let lead = C64::from_polar(1.0, -0.5 * phi);
        let d = [lead, lead, lead.conj(), lead.conj()];
        let rho = self.after_bs1.entries();
        let mut p = 0.0;
        for row in &self.out_rows {
            let amp: [C64; 4] = std::array::from_fn(|j| row[j] * d[j]);
            for j in 0..4 {
                for k in 0..4 {
                    p += (amp[j] * rho[j][k] * amp[k].conj()).re;
                }
            }
        }
        p.clamp(0.0, 1.0)
    }
}

/// Closed-form port-`a` probability
/// `½(1 + S_x cos β) + (A/2)√(λ − S_x²) sin β cos(α + γ + φ)`.
pub fn detection_probability_closed(
    s: &BlochState,
    det: &DetectorConfig,
    beta: BeamSplitterAngle,
    phi: PhaseShift,
) -> f64 {
    let mean = 0.5 * (1.0 + s.s_x * beta.cos());
    let amplitude = 0.5 * det.a_overlap() * s.transverse_magnitude() * beta.sin();
    let phase = s.fringe_phase() + det.gamma() + phi.value();
    (mean + amplitude * phase.cos()).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn fringe_sampler_matches_full_evolution() {
        let s = BlochState::new(0.3, -0.5, 0.4).unwrap();
        let det = DetectorConfig::new(0.6, 0.7, -1.9).unwrap();
        let beta = BeamSplitterAngle::new(2.1).unwrap();
        let sampler = FringeSampler::new(&s, &det, beta);
        for k in 0..64 {
            let phi = PhaseShift::new(0.1 * k as f64).unwrap();
            let full = detection_probability_numeric(&evolve(&s, &det, beta, phi));
            assert!((sampler.probability(phi.value()) - full).abs() < 1e-14);
        }
    }

    #[test]
    fn bloch_state_domain() {
        assert!(BlochState::new(0.6, 0.8, 0.1).is_err());
        assert!(BlochState::new(f64::NAN, 0.0, 0.0).is_err());
        assert!(BlochState::new(0.6, 0.8, 0.0).unwrap().is_pure());
        assert!(!BlochState::new(0.0, 0.6, 0.0).unwrap().is_pure());
        assert!(BlochState::from_purity(0.7, 0.36, 0.0).is_err());
        let s = BlochState::from_purity(0.6, 0.36, 1.0).unwrap();
        assert_eq!(s.transverse_magnitude(), 0.0);
    }

    #[test]
    fn fringe_phase_convention() {
        assert_eq!(BlochState::new(0.3, 0.0, 0.0).unwrap().fringe_phase(), 0.0);
        assert_eq!(BlochState::new(0.3, -0.0, -0.0).unwrap().fringe_phase(), 0.0);
        let s = BlochState::new(0.0, 0.5, 0.0).unwrap();
        assert!((s.fringe_phase() - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn bloch_to_density_examples() {
        let half = DensityOperator::<2>::maximally_mixed();
        let m = bloch_to_density(&BlochState::new(0.0, 0.0, 0.0).unwrap());
        assert_eq!(m, half);
        let up = bloch_to_density(&BlochState::new(0.0, 0.0, 1.0).unwrap());
        assert_eq!(*up.matrix(), Mat2::diag([1.0, 0.0]));
        let y = bloch_to_density(&BlochState::new(0.0, 0.6, 0.0).unwrap());
        let want = Mat2::from_rows([[c(0.5, 0.0), c(0.0, -0.3)], [c(0.0, 0.3), c(0.5, 0.0)]]);
        assert!(y.matrix().max_abs_diff(&want) < 1e-16);
    }

    #[test]
    fn phase_shifter_examples() {
        let p = |x| phase_shifter(PhaseShift::new(x).unwrap());
        assert!(p(0.0).max_abs_diff(&Mat2::identity()) < 1e-16);
        assert!(p(PI).max_abs_diff(&Mat2::identity().scale_re(-1.0)) < 1e-15);
        let want = Mat2::from_rows([[c(0.0, -1.0), ZERO], [ZERO, c(0.0, 1.0)]]);
        assert!(p(FRAC_PI_2).max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn beam_splitter_examples() {
        let b = |x| beam_splitter(BeamSplitterAngle::new(x).unwrap());
        assert_eq!(b(0.0), Mat2::identity());
        let flip = Mat2::from_rows([[ZERO, c(-1.0, 0.0)], [ONE, ZERO]]);
        assert_eq!(b(PI), flip);
        let sym = Mat2::from_rows([[ONE, c(-1.0, 0.0)], [ONE, ONE]]).scale_re(FRAC_1_SQRT_2);
        assert!(b(FRAC_PI_2).max_abs_diff(&sym) < 1e-15);
        assert!(BeamSplitterAngle::new(-0.1).is_err());
        assert!(BeamSplitterAngle::new(PI + 1e-9).is_err());
        assert_eq!(BeamSplitterAngle::new(PI + 1e-13).unwrap().value(), PI);
    }

    #[test]
    fn phase_shift_canonical_range() {
        assert_eq!(PhaseShift::new(TAU).unwrap().value(), 0.0);
        assert_eq!(PhaseShift::new(-1e-18).unwrap().value(), 0.0);
        assert!((PhaseShift::new(-FRAC_PI_2).unwrap().value() - 1.5 * PI).abs() < 1e-15);
        assert!(PhaseShift::new(f64::INFINITY).is_err());
    }

    #[test]
    fn marking_operator_examples() {
        let trivial = DetectorConfig::new(1.0, 0.0, 0.0).unwrap();
        assert!(marking_operator(&trivial).max_abs_diff(&Mat4::identity()) < 1e-16);
        let orth = DetectorConfig::new(0.0, 0.0, 0.0).unwrap();
        let flip = Mat2::from_rows([[ZERO, c(-1.0, 0.0)], [ONE, ZERO]]);
        assert!(marking_operator(&orth).max_abs_diff(&block_diag(&Mat2::identity(), &flip)) < 1e-16);
    }

    #[test]
    fn detector_overlap_matches_parameters() {
        let det = DetectorConfig::new(0.4, 2.5, -1.0).unwrap();
        let r = det.reference_state();
        let overlap = crate::linalg::inner(&r, &det.marked_state());
        assert!((overlap.norm() - 0.4).abs() < 1e-15);
        assert!((overlap.arg() - 2.5).abs() < 1e-14);
        assert!(det.unitary().unitarity_error() < 1e-15);
        assert!((det.unitary().get(0, 0) * det.unitary().get(1, 1)
            - det.unitary().get(0, 1) * det.unitary().get(1, 0)
            - ONE)
            .norm()
            < 1e-15);
        assert!(DetectorConfig::new(1.01, 0.0, 0.0).is_err());
    }

    #[test]
    fn trivial_pipeline_segments() {
        let s = BlochState::new(0.0, 0.0, 1.0).unwrap();
        let det = DetectorConfig::with_overlap(1.0).unwrap();
        let rho = evolve(&s, &det, BeamSplitterAngle::new(0.0).unwrap(), PhaseShift::new(0.0).unwrap());
        let bs1 = beam_splitter(BeamSplitterAngle::SYMMETRIC);
        let path = Mat2::diag([1.0, 0.0]).conjugate_by(&bs1);
        let want = tensor(&path, &Mat2::diag([1.0, 0.0]));
        assert!(rho.matrix().max_abs_diff(&want) < 1e-15);
        assert!((rho.matrix().trace() - ONE).norm() < 1e-15);
    }

    #[test]
    fn closed_form_single_term_limits() {
        let det = DetectorConfig::new(0.3, 0.7, 0.2).unwrap();
        let beta = BeamSplitterAngle::new(FRAC_PI_4).unwrap();
        let phi = PhaseShift::new(1.1).unwrap();
        let (cb, sb) = (beta.cos(), beta.sin());
        let id = Mat2::identity();
        let path_b = id + Mat2::pauli_z().scale_re(cb) + Mat2::pauli_x().scale_re(sb);
        let path_a = id - Mat2::pauli_z().scale_re(cb) - Mat2::pauli_x().scale_re(sb);

        let only_fourth = rho_f_closed_form(&BlochState::new(1.0, 0.0, 0.0).unwrap(), &det, beta, phi);
        let want = tensor(&path_a, det.marked_density().matrix()).scale_re(0.5);
        assert!(only_fourth.matrix().max_abs_diff(&want) < 1e-16);

        let only_first = rho_f_closed_form(&BlochState::new(-1.0, 0.0, 0.0).unwrap(), &det, beta, phi);
        let want = tensor(&path_b, det.initial_state().matrix()).scale_re(0.5);
        assert!(only_first.matrix().max_abs_diff(&want) < 1e-16);
    }

    #[test]
    fn port_projector_examples() {
        let det = DetectorConfig::with_overlap(0.5).unwrap().initial_state();
        let on_a = DensityOperator::new(Mat2::diag([0.0, 1.0])).unwrap().tensor(&det);
        let on_b = DensityOperator::new(Mat2::diag([1.0, 0.0])).unwrap().tensor(&det);
        assert_eq!(detection_probability_numeric(&on_a), 1.0);
        assert_eq!(detection_probability_numeric(&on_b), 0.0);
        assert_eq!(detection_probability_numeric(&DensityOperator::maximally_mixed()), 0.5);
    }

    #[test]
    fn closed_probability_limits() {
        let s = BlochState::new(0.3, 0.4, -0.5).unwrap();
        let det = DetectorConfig::new(0.8, 0.3, 0.0).unwrap();
        let flat = BeamSplitterAngle::new(0.0).unwrap();
        for phi in [0.0, 1.0, 4.0] {
            let p = detection_probability_closed(&s, &det, flat, PhaseShift::new(phi).unwrap());
            assert!((p - 0.65).abs() < 1e-15);
        }
        let beta = BeamSplitterAngle::new(1.2).unwrap();
        let n = 360;
        let mean: f64 = (0..n)
            .map(|k| {
                let phi = PhaseShift::new(TAU * k as f64 / n as f64).unwrap();
                detection_probability_closed(&s, &det, beta, phi)
            })
            .sum::<f64>()
            / n as f64;
        assert!((mean - 0.5 * (1.0 + 0.3 * beta.cos())).abs() < 1e-10);
    }
}
