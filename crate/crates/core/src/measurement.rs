//! Minimum-error (Helstrom) measurement on the detector.

use crate::duality::{which_path_operator, PathWeights};
use crate::error::{Error, Result};
use crate::interferometer::DetectorConfig;
use crate::linalg::{hermitian_eig2, inner, Ket, ONE, ZERO};

/// Smallest eigenvalue gap of Γ for which the optimal basis is unique.
pub const BASIS_GAP_TOL: f64 = 1e-12;

/// Orthonormal detector basis. Outcome `m_a` is read as "path a"
/// (detector in `U|r⟩`), outcome `m_b` as "path b" (detector in `|r⟩`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementBasis {
    pub m_a: Ket<2>,
    pub m_b: Ket<2>,
}

impl MeasurementBasis {
    pub fn canonical() -> Self {
        Self { m_a: [ONE, ZERO], m_b: [ZERO, ONE] }
    }

    /// `max(|⟨M_a|M_b⟩|, |‖M_a‖ − 1|, |‖M_b‖ − 1|)`.
    pub fn orthonormality_error(&self) -> f64 {
        let n = |v: &Ket<2>| (crate::linalg::norm(v) - 1.0).abs();
        inner(&self.m_a, &self.m_b).norm().max(n(&self.m_a)).max(n(&self.m_b))
    }
}

/// Eigenbasis of `Γ = ω_a U ρ_in^D U† − ω_b ρ_in^D`.
///
/// `m_a` is the eigenvector of the positive (upper) eigenvalue and `m_b` of the
/// lower one, which makes the basis optimal for guessing the path. When the
/// spectrum is degenerate (identical detector states with equal priors) every
/// basis is optimal; the error carries the canonical basis.
pub fn min_error_basis(det: &DetectorConfig, w: &PathWeights) -> Result<MeasurementBasis> {
    let eig = hermitian_eig2(&which_path_operator(det, w))?;
    let gap = eig.gap();
    if gap <= BASIS_GAP_TOL {
        return Err(Error::DegenerateBasis { gap, canonical: MeasurementBasis::canonical() });
    }
    Ok(MeasurementBasis { m_a: eig.vectors[0], m_b: eig.vectors[1] })
}

/// Probability of guessing the path correctly:
/// `ω_b |⟨M_b|r⟩|² + ω_a |⟨M_a|U|r⟩|²`.
pub fn success_probability(basis: &MeasurementBasis, det: &DetectorConfig, w: &PathWeights) -> f64 {
    w.omega_b() * inner(&basis.m_b, &det.reference_state()).norm_sqr()
        + w.omega_a() * inner(&basis.m_a, &det.marked_state()).norm_sqr()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::{distinguishability_closed, path_weights};
    use crate::interferometer::BeamSplitterAngle;

    #[test]
    fn orthogonal_states_are_their_own_basis() {
        let det = DetectorConfig::new(0.0, 0.0, 0.4).unwrap();
        let w = PathWeights::new(0.5, 0.5).unwrap();
        let basis = min_error_basis(&det, &w).unwrap();
        let s = det.marked_state();
        let r = det.reference_state();
        assert!((inner(&basis.m_a, &s).norm() - 1.0).abs() < 1e-15);
        assert!((inner(&basis.m_b, &r).norm() - 1.0).abs() < 1e-15);
        assert!((success_probability(&basis, &det, &w) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn identical_states_equal_priors_are_degenerate() {
        let det = DetectorConfig::new(1.0, 0.6, 0.0).unwrap();
        let w = PathWeights::new(0.5, 0.5).unwrap();
        match min_error_basis(&det, &w) {
            Err(Error::DegenerateBasis { canonical, .. }) => {
                assert_eq!(canonical, MeasurementBasis::canonical())
            }
            other => panic!("expected degenerate basis, got {other:?}"),
        }
    }

    #[test]
    fn eigen_relations_and_helstrom_value() {
        let det = DetectorConfig::new(0.55, 1.7, -0.3).unwrap();
        let beta = BeamSplitterAngle::new(0.9).unwrap();
        let w = path_weights(0.25, beta).unwrap();
        let basis = min_error_basis(&det, &w).unwrap();
        assert!(basis.orthonormality_error() < 1e-14);

        let gamma = which_path_operator(&det, &w);
        let eig = hermitian_eig2(&gamma).unwrap();
        assert!(eig.values[0] > 0.0 && eig.values[1] < 0.0);
        let residual = |v: &Ket<2>, l: f64| {
            let gv = gamma.apply(v);
            gv.iter().zip(v).map(|(a, b)| (a - b * l).norm()).fold(0.0, f64::max)
        };
        assert!(residual(&basis.m_a, eig.values[0]) < 1e-14);
        assert!(residual(&basis.m_b, eig.values[1]) < 1e-14);

        let d = distinguishability_closed(0.25, beta, 0.55).unwrap();
        let p = success_probability(&basis, &det, &w);
        assert!((p - 0.5 * (1.0 + d)).abs() < 1e-12);
        assert!(p >= w.omega_a().max(w.omega_b()) - 1e-12);

        let swapped = MeasurementBasis { m_a: basis.m_b, m_b: basis.m_a };
        assert!((success_probability(&swapped, &det, &w) - 0.5 * (1.0 - d)).abs() < 1e-12);
    }
}
