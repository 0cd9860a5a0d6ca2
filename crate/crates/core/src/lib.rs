//! Wave-particle duality in a Mach-Zehnder interferometer whose second beam
//! splitter is asymmetric and whose arm `a` carries a which-path detector.
//!
//! Every measure has two independent routes: a closed form and a brute-force
//! evaluation on the simulated density matrices. [`verify`] runs both against
//! each other.

pub mod duality;
pub mod error;
pub mod extrema;
pub mod interferometer;
pub mod linalg;
mod measurement;
pub mod sampling;
pub mod sweep;
pub mod verify;

pub use duality::{
    complementarity_residual, detector_mixture, distinguishability_closed,
    distinguishability_trace_norm, duality_report, min_error_basis, path_weights,
    success_probability, visibility_closed, visibility_scan, DualityReport, MeasurementBasis,
    PathWeights,
};
pub use error::{Error, Result};
pub use extrema::{
    distinguishability_valley, visibility_peak_fixed_beta, visibility_peak_fixed_sx, Extremum,
};
pub use interferometer::{
    beam_splitter, bloch_to_density, detection_probability_closed, detection_probability_numeric,
    evolve, marking_operator, phase_shifter, rho_f_closed_form, BeamSplitterAngle, BlochState,
    DetectorConfig, FringeSampler, PhaseShift,
};
