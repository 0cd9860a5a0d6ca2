//! Locations and values of the visibility peaks and the distinguishability
//! valley.

use crate::duality::{distinguishability_closed, visibility_closed};
use crate::error::{Error, Result};
use crate::interferometer::{BeamSplitterAngle, BlochState, DOMAIN_TOL};

/// Extremum of a one-parameter curve: where it sits and how high it reaches.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Extremum {
    pub argument: f64,
    pub value: f64,
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda.is_finite() && (0.0..=1.0 + DOMAIN_TOL).contains(&lambda) {
        Ok(())
    } else {
        Err(Error::invalid(format!("λ = {lambda} outside [0, 1]")))
    }
}

/// Peak of `V(S_x)` at fixed β and λ: `S_x* = −λ cos β`,
/// `V* = A √λ sin β / √(1 − λ cos²β)`.
pub fn visibility_peak_fixed_beta(lambda: f64, a: f64, beta: BeamSplitterAngle) -> Result<Extremum> {
    check_lambda(lambda)?;
    if lambda == 0.0 {
        return Err(Error::NoExtremum("λ = 0 admits only S_x = 0, where V ≡ 0".into()));
    }
    if beta.is_trivial() {
        return Err(Error::NoExtremum(format!("V ≡ 0 at β = {}", beta.value())));
    }
    let s_x = -lambda * beta.cos();
    let state = BlochState::from_purity(s_x, lambda, 0.0)?;
    Ok(Extremum { argument: s_x, value: visibility_closed(&state, a, beta)? })
}

/// Peak of `V(β)` at fixed `S_x` and λ: `β* = arccos(−S_x)`,
/// `V* = A √(λ − S_x²) / √(1 − S_x²)`.
pub fn visibility_peak_fixed_sx(s_x: f64, lambda: f64, a: f64) -> Result<Extremum> {
    check_lambda(lambda)?;
    if !s_x.is_finite() || s_x * s_x > lambda + DOMAIN_TOL {
        return Err(Error::invalid(format!("S_x = {s_x} incompatible with λ = {lambda}")));
    }
    if s_x.abs() >= 1.0 {
        return Err(Error::NoExtremum(format!("V ≡ 0 in β at S_x = {s_x}")));
    }
    let beta = BeamSplitterAngle::new((-s_x).acos())?;
    let state = BlochState::from_purity(s_x, lambda, 0.0)?;
    Ok(Extremum { argument: beta.value(), value: visibility_closed(&state, a, beta)? })
}

/// Valley of `D(β)` at fixed `S_x`: `β* = arccos(−S_x)`, `D* = √(1 − A²)`.
pub fn distinguishability_valley(s_x: f64, a: f64) -> Result<Extremum> {
    if !s_x.is_finite() || s_x.abs() > 1.0 {
        return Err(Error::invalid(format!("S_x = {s_x} outside [-1, 1]")));
    }
    if s_x.abs() == 1.0 {
        return Err(Error::NoExtremum(format!("D ≡ 1 at S_x = {s_x}")));
    }
    let beta = BeamSplitterAngle::new((-s_x).acos())?;
    Ok(Extremum { argument: beta.value(), value: distinguishability_closed(s_x, beta, a)? })
}
