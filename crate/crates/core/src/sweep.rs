//! One-parameter sweeps over `S_x` or β, and the preset curve families
//! behind the visibility and distinguishability figures.
//!
//! CSV output uses 17 significant digits, `.` as decimal separator and LF line
//! endings. Quantities that are undefined at a point are left empty.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt::Write as _;

use crate::duality::{
    complementarity_residual, distinguishability_closed, distinguishability_trace_norm,
    path_weights, visibility_closed, visibility_scan, MIN_SCAN_GRID,
};
use crate::error::{Error, Result};
use crate::interferometer::{BeamSplitterAngle, BlochState, DetectorConfig, DOMAIN_TOL};

pub const CSV_HEADER: &str = "param,V_closed,V_scan,D_closed,D_trace,residual,omega_a,omega_b";

/// φ-grid used for `V_scan` in sweeps; ternary refinement makes the result
/// independent of the grid once the extrema are bracketed.
pub const SWEEP_SCAN_GRID: usize = 256;

pub const FIGURE_POINTS: usize = 501;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweptParameter {
    Sx,
    Beta,
}

impl SweptParameter {
    pub fn name(&self) -> &'static str {
        match self {
            SweptParameter::Sx => "s_x",
            SweptParameter::Beta => "beta",
        }
    }
}

/// A sweep over one parameter with every other parameter held fixed.
///
/// The transverse Bloch component `√(λ − S_x²)` is split as
/// `S_y = r sin θ`, `S_z = r cos θ` with `θ = transverse_angle`.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub swept: SweptParameter,
    pub lambda: f64,
    /// Fixed `S_x`; ignored when sweeping `S_x`.
    pub s_x: f64,
    /// Fixed β; ignored when sweeping β.
    pub beta: f64,
    pub transverse_angle: f64,
    pub a_overlap: f64,
    pub gamma: f64,
    pub delta: f64,
    pub range: (f64, f64),
    pub steps: usize,
    pub scan_grid: usize,
}

impl SweepSpec {
    /// Sweep of `S_x` across its full admissible range `[−√λ, √λ]`.
    pub fn over_sx(lambda: f64, beta: f64, a_overlap: f64, steps: usize) -> Self {
        let r = lambda.max(0.0).sqrt();
        Self {
            swept: SweptParameter::Sx,
            lambda,
            s_x: 0.0,
            beta,
            transverse_angle: 0.0,
            a_overlap,
            gamma: 0.0,
            delta: 0.0,
            range: (-r, r),
            steps,
            scan_grid: SWEEP_SCAN_GRID,
        }
    }

    /// Sweep of β across `[0, π]`.
    pub fn over_beta(lambda: f64, s_x: f64, a_overlap: f64, steps: usize) -> Self {
        Self {
            swept: SweptParameter::Beta,
            lambda,
            s_x,
            beta: FRAC_PI_2,
            transverse_angle: 0.0,
            a_overlap,
            gamma: 0.0,
            delta: 0.0,
            range: (0.0, PI),
            steps,
            scan_grid: SWEEP_SCAN_GRID,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [
            self.lambda,
            self.s_x,
            self.beta,
            self.transverse_angle,
            self.a_overlap,
            self.gamma,
            self.delta,
            self.range.0,
            self.range.1,
        ]
        .iter()
        .all(|x| x.is_finite());
        if !finite {
            return Err(Error::invalid("sweep parameters must be finite"));
        }
        if self.steps < 2 {
            return Err(Error::invalid(format!("steps = {} (need at least 2)", self.steps)));
        }
        if self.scan_grid < MIN_SCAN_GRID {
            return Err(Error::invalid(format!(
                "scan grid {} smaller than {MIN_SCAN_GRID}",
                self.scan_grid
            )));
        }
        if !(0.0..=1.0 + DOMAIN_TOL).contains(&self.lambda) {
            return Err(Error::invalid(format!("λ = {} outside [0, 1]", self.lambda)));
        }
        DetectorConfig::new(self.a_overlap, self.gamma, self.delta)?;
        let (lo, hi) = self.range;
        if lo >= hi {
            return Err(Error::invalid(format!("empty range [{lo}, {hi}]")));
        }
        match self.swept {
            SweptParameter::Sx => {
                let bound = self.lambda.sqrt() + DOMAIN_TOL;
                if lo < -bound || hi > bound {
                    return Err(Error::invalid(format!(
                        "S_x range [{lo}, {hi}] exceeds ±√λ = ±{}",
                        self.lambda.sqrt()
                    )));
                }
                BeamSplitterAngle::new(self.beta)?;
            }
            SweptParameter::Beta => {
                BeamSplitterAngle::new(lo)?;
                BeamSplitterAngle::new(hi)?;
                BlochState::from_purity(self.s_x, self.lambda, self.transverse_angle)?;
            }
        }
        Ok(())
    }

    /// Evenly spaced parameter values; the last equals `range.1` exactly.
    pub fn points(&self) -> Vec<f64> {
        let (lo, hi) = self.range;
        let last = self.steps - 1;
        (0..self.steps)
            .map(|k| if k == last { hi } else { lo + (hi - lo) * k as f64 / last as f64 })
            .collect()
    }
}

/// One sweep point. `None` marks a quantity undefined at that point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub param: f64,
    pub v_closed: Option<f64>,
    pub v_scan: Option<f64>,
    pub d_closed: Option<f64>,
    pub d_trace: Option<f64>,
    pub residual: Option<f64>,
    pub omega_a: Option<f64>,
    pub omega_b: Option<f64>,
}

impl SweepRow {
    fn fields(&self) -> [Option<f64>; 8] {
        [
            Some(self.param),
            self.v_closed,
            self.v_scan,
            self.d_closed,
            self.d_trace,
            self.residual,
            self.omega_a,
            self.omega_b,
        ]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sweep {
    pub rows: Vec<SweepRow>,
    /// One message per point with undefined quantities.
    pub warnings: Vec<String>,
}

fn keep<T>(r: Result<T>, issues: &mut Vec<String>) -> Option<T> {
    r.map_err(|e| {
        let msg = e.to_string();
        if !issues.contains(&msg) {
            issues.push(msg);
        }
    })
    .ok()
}

fn sweep_row(spec: &SweepSpec, x: f64, det: &DetectorConfig) -> Result<(SweepRow, Vec<String>)> {
    let (s_x, beta) = match spec.swept {
        SweptParameter::Sx => (x, spec.beta),
        SweptParameter::Beta => (spec.s_x, x),
    };
    let state = BlochState::from_purity(s_x, spec.lambda, spec.transverse_angle)?;
    let beta = BeamSplitterAngle::new(beta)?;
    let a = det.a_overlap();

    let mut issues = Vec::new();
    let v_closed = keep(visibility_closed(&state, a, beta), &mut issues);
    let v_scan = keep(visibility_scan(&state, det, beta, spec.scan_grid), &mut issues);
    let weights = keep(path_weights(s_x, beta), &mut issues);
    let d_closed = keep(distinguishability_closed(s_x, beta, a), &mut issues);
    let residual = keep(complementarity_residual(&state, a, beta), &mut issues);
    let row = SweepRow {
        param: x,
        v_closed,
        v_scan,
        d_closed,
        d_trace: weights.map(|w| distinguishability_trace_norm(det, &w)),
        residual,
        omega_a: weights.map(|w| w.omega_a()),
        omega_b: weights.map(|w| w.omega_b()),
    };
    Ok((row, issues))
}

pub fn run_sweep(spec: &SweepSpec) -> Result<Sweep> {
    spec.validate()?;
    let det = DetectorConfig::new(spec.a_overlap, spec.gamma, spec.delta)?;
    let mut rows = Vec::with_capacity(spec.steps);
    let mut warnings = Vec::new();
    for x in spec.points() {
        let (row, issues) = sweep_row(spec, x, &det)?;
        if !issues.is_empty() {
            warnings.push(format!(
                "{} = {}: {}",
                spec.swept.name(),
                format_number(x),
                issues.join("; ")
            ));
        }
        rows.push(row);
    }
    Ok(Sweep { rows, warnings })
}

/// 17 significant digits in scientific notation; round-trips any `f64`.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

fn push_row(out: &mut String, prefix: Option<f64>, row: &SweepRow) {
    let mut first = true;
    for field in prefix.into_iter().map(Some).chain(row.fields()) {
        if !first {
            out.push(',');
        }
        first = false;
        if let Some(v) = field {
            out.push_str(&format_number(v));
        }
    }
    out.push('\n');
}

/// CSV with [`CSV_HEADER`] and one line per row.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(160 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        push_row(&mut out, None, row);
    }
    out
}

/// A named family of sweeps sharing a swept parameter, one per fixed value.
#[derive(Clone, Debug, PartialEq)]
pub struct FigureSpec {
    pub name: &'static str,
    /// `(fixed β or S_x, sweep)` per curve.
    pub curves: Vec<(f64, SweepSpec)>,
}

impl FigureSpec {
    pub fn swept(&self) -> SweptParameter {
        self.curves[0].1.swept
    }
}

pub const FIGURE_BETAS: [f64; 3] = [FRAC_PI_4, FRAC_PI_2, 3.0 * FRAC_PI_4];
pub const FIGURE_SXS: [f64; 3] = [-0.5, 0.0, 0.5];

fn sx_family(name: &'static str, lambda: f64, a: f64) -> FigureSpec {
    FigureSpec {
        name,
        curves: FIGURE_BETAS
            .iter()
            .map(|&b| (b, SweepSpec::over_sx(lambda, b, a, FIGURE_POINTS)))
            .collect(),
    }
}

fn beta_family(name: &'static str, lambda: f64, a: f64) -> FigureSpec {
    FigureSpec {
        name,
        curves: FIGURE_SXS
            .iter()
            .map(|&sx| (sx, SweepSpec::over_beta(lambda, sx, a, FIGURE_POINTS)))
            .collect(),
    }
}

/// The eight curve families: visibility (`fig2*`, A = 1/3, λ ∈ {9/25, 1}) and
/// distinguishability (`fig3*`, A ∈ {1/3, 4/5}, pure input).
pub fn figure_specs() -> Vec<FigureSpec> {
    let third = 1.0 / 3.0;
    let mixed = 9.0 / 25.0;
    vec![
        sx_family("fig2a", mixed, third),
        beta_family("fig2b", mixed, third),
        sx_family("fig2c", 1.0, third),
        beta_family("fig2d", 1.0, third),
        sx_family("fig3a", 1.0, third),
        beta_family("fig3b", 1.0, third),
        sx_family("fig3c", 1.0, 0.8),
        beta_family("fig3d", 1.0, 0.8),
    ]
}

/// Computed figure: CSV text (`curve` column first) plus warnings.
#[derive(Clone, Debug, PartialEq)]
pub struct FigureData {
    pub name: &'static str,
    pub curves: Vec<(f64, Sweep)>,
}

impl FigureData {
    pub fn csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "curve,{CSV_HEADER}");
        for (fixed, sweep) in &self.curves {
            for row in &sweep.rows {
                push_row(&mut out, Some(*fixed), row);
            }
        }
        out
    }

    pub fn warnings(&self) -> impl Iterator<Item = String> + '_ {
        self.curves.iter().flat_map(move |(fixed, sweep)| {
            sweep
                .warnings
                .iter()
                .map(move |w| format!("{} (curve {}): {w}", self.name, format_number(*fixed)))
        })
    }
}

pub fn compute_figure(spec: &FigureSpec) -> Result<FigureData> {
    let curves = spec
        .curves
        .iter()
        .map(|(fixed, sweep)| Ok((*fixed, run_sweep(sweep)?)))
        .collect::<Result<_>>()?;
    Ok(FigureData { name: spec.name, curves })
}
