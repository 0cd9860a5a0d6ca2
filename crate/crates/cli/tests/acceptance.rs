//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};
use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use mzi_core::duality::which_path_operator;
use mzi_core::linalg::{inner, Ket, Mat2};
use mzi_core::sampling::{self, seeded_rng, ParameterDraw};
use mzi_core::verify::{literal_min_error_basis, phase_aligned_distance};
use mzi_core::{
    detection_probability_closed, detection_probability_numeric, distinguishability_closed,
    distinguishability_trace_norm, evolve, min_error_basis, path_weights, rho_f_closed_form,
    success_probability, visibility_closed, visibility_scan, BeamSplitterAngle, BlochState,
};

const SEED: u64 = 20240611;
const DRAWS: usize = 1000;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn draws(stream: u64) -> Vec<ParameterDraw> {
    let mut rng = seeded_rng(SEED, stream);
    (0..DRAWS).map(|_| sampling::parameter_draw(&mut rng)).collect()
}

fn beta(x: f64) -> BeamSplitterAngle {
    BeamSplitterAngle::new(x).expect("valid β")
}

/// Max error of `f` over the draws; errors count as +∞.
fn max_err(ds: &[ParameterDraw], f: impl Fn(&ParameterDraw) -> Option<f64>) -> f64 {
    ds.iter()
        .map(|d| f(d).filter(|e| !e.is_nan()).unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max)
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn pipeline_equivalence() -> Outcome {
    let ds = draws(1);
    let (err, t) = timed(|| {
        max_err(&ds, |d| {
            let pipe = evolve(&d.state, &d.detector, d.beta, d.phi);
            let closed = rho_f_closed_form(&d.state, &d.detector, d.beta, d.phi);
            Some(pipe.matrix().max_abs_diff(closed.matrix()))
        })
    });
    outcome(err <= 1e-12 && t < Duration::from_secs(5), format!("max entry error {err:.2e}, {t:.2?}"))
}

fn detection_probability() -> Outcome {
    let ds = draws(2);
    let err = max_err(&ds, |d| {
        let numeric = detection_probability_numeric(&evolve(&d.state, &d.detector, d.beta, d.phi));
        Some((numeric - detection_probability_closed(&d.state, &d.detector, d.beta, d.phi)).abs())
    });
    outcome(err <= 1e-10, format!("max error {err:.2e}"))
}

fn visibility_oracle() -> Outcome {
    let ds = draws(3);
    let (err, t) = timed(|| {
        max_err(&ds, |d| {
            let scan = visibility_scan(&d.state, &d.detector, d.beta, 4096).ok()?;
            let closed = visibility_closed(&d.state, d.detector.a_overlap(), d.beta).ok()?;
            Some((scan - closed).abs())
        })
    });
    outcome(err <= 1e-9 && t < Duration::from_secs(60), format!("max error {err:.2e}, {t:.2?}"))
}

fn distinguishability_oracle() -> Outcome {
    let ds = draws(4);
    let oracle = max_err(&ds, |d| {
        let w = path_weights(d.state.s_x(), d.beta).ok()?;
        let closed = distinguishability_closed(d.state.s_x(), d.beta, d.detector.a_overlap()).ok()?;
        Some((distinguishability_trace_norm(&d.detector, &w) - closed).abs())
    });
    let identity = max_err(&ds, |d| {
        let a = d.detector.a_overlap();
        let w = path_weights(d.state.s_x(), d.beta).ok()?;
        let dist = distinguishability_closed(d.state.s_x(), d.beta, a).ok()?;
        Some((dist * dist + 4.0 * w.omega_a() * w.omega_b() * a * a - 1.0).abs())
    });
    outcome(
        oracle <= 1e-10 && identity <= 1e-12,
        format!("oracle {oracle:.2e}, identity {identity:.2e}"),
    )
}

fn reference_values() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    let s = BlochState::from_purity(0.0, 9.0 / 25.0, 0.0).expect("valid");
    let v = visibility_closed(&s, 1.0 / 3.0, beta(FRAC_PI_2)).expect("defined");
    ok &= (v - 0.2).abs() <= 1e-12;
    notes.push(format!("V = {v}"));
    for sx in [-0.5f64, 0.0, 0.5] {
        let d = distinguishability_closed(sx, beta((-sx).acos()), 0.8).expect("defined");
        ok &= (d - 0.6).abs() <= 1e-12;
        notes.push(format!("D(S_x={sx}) = {d}"));
    }
    for b in [0.0, PI] {
        for (sx, sy, sz) in [(0.0, 0.6, 0.0), (0.3, -0.4, 0.5), (-0.9, 0.1, 0.2)] {
            let s = BlochState::new(sx, sy, sz).expect("valid");
            for a in [0.0, 1.0 / 3.0, 0.8, 1.0] {
                ok &= visibility_closed(&s, a, beta(b)) == Ok(0.0);
                ok &= distinguishability_closed(sx, beta(b), a) == Ok(1.0);
            }
        }
    }
    notes.push("β∈{0,π}: V=0, D=1 exact".into());
    outcome(ok, notes.join("; "))
}

/// First index wins ties, matching a left-to-right scan.
fn grid_arg(lo: f64, hi: f64, maximize: bool, f: impl Fn(f64) -> f64) -> f64 {
    let n = ((hi - lo) / 1e-4).round() as usize;
    let mut best = (lo, f(lo));
    for k in 1..=n {
        let x = if k == n { hi } else { lo + 1e-4 * k as f64 };
        let y = f(x);
        if (maximize && y > best.1) || (!maximize && y < best.1) {
            best = (x, y);
        }
    }
    best.0
}

fn extremum_loci() -> Outcome {
    let mut worst: f64 = 0.0;
    let a = 1.0 / 3.0;
    for lambda in [9.0 / 25.0, 0.64, 1.0] {
        let r = f64::sqrt(lambda);
        for b in [PI / 4.0, FRAC_PI_3, FRAC_PI_2, 2.0 * FRAC_PI_3, 3.0 * PI / 4.0] {
            let peak = grid_arg(-r, r, true, |x| {
                let s = BlochState::from_purity(x, lambda, 0.0).expect("in ball");
                visibility_closed(&s, a, beta(b)).unwrap_or(f64::NAN)
            });
            worst = worst.max((peak + lambda * b.cos()).abs());
        }
        for sx in [-0.5 * r, 0.0, 0.5 * r] {
            let s = BlochState::from_purity(sx, lambda, 0.0).expect("in ball");
            let peak = grid_arg(0.0, PI, true, |b| visibility_closed(&s, a, beta(b)).unwrap_or(f64::NAN));
            worst = worst.max((peak - (-sx).acos()).abs());
        }
    }
    let mut valleys = Vec::new();
    for (sx, expected) in [(-0.5, FRAC_PI_3), (0.0, FRAC_PI_2), (0.5, 2.0 * FRAC_PI_3)] {
        for a in [1.0 / 3.0, 0.8] {
            let valley = grid_arg(0.0, PI, false, |b| {
                distinguishability_closed(sx, beta(b), a).unwrap_or(f64::NAN)
            });
            worst = worst.max((valley - expected).abs());
            valleys.push(valley);
        }
    }
    outcome(worst <= 1e-3, format!("worst locus error {worst:.2e}; D valleys {valleys:.4?}"))
}

fn complementarity() -> Outcome {
    let ds = draws(7);
    let formula = max_err(&ds, |d| {
        let s = &d.state;
        let a = d.detector.a_overlap();
        let v = visibility_closed(s, a, d.beta).ok()?;
        let dist = distinguishability_closed(s.s_x(), d.beta, a).ok()?;
        let den = 1.0 + s.s_x() * d.beta.cos();
        let lambda = s.s_x().powi(2) + s.s_y().powi(2) + s.s_z().powi(2);
        let expected = a * a * d.beta.sin().powi(2) * (1.0 - lambda) / (den * den);
        Some((1.0 - v * v - dist * dist - expected).abs())
    });

    let mut rng = seeded_rng(SEED, 70);
    let mut slices = [0.0f64; 3];
    let sum_err = |s: &BlochState, a: f64, b: BeamSplitterAngle| -> f64 {
        let v = visibility_closed(s, a, b).unwrap_or(f64::NAN);
        let d = distinguishability_closed(s.s_x(), b, a).unwrap_or(f64::NAN);
        let e = (v * v + d * d - 1.0).abs();
        if e.is_nan() { f64::INFINITY } else { e }
    };
    for k in 0..100 {
        let s = sampling::bloch_in_ball(&mut rng);
        let a = sampling::detector(&mut rng).a_overlap();
        slices[0] = slices[0].max(sum_err(&s, a, beta(if k % 2 == 0 { 0.0 } else { PI })));
    }
    for _ in 0..100 {
        let s = sampling::bloch_on_sphere(&mut rng);
        let a = sampling::detector(&mut rng).a_overlap();
        slices[1] = slices[1].max(sum_err(&s, a, sampling::beta(&mut rng)));
    }
    for _ in 0..100 {
        let s = sampling::bloch_in_ball(&mut rng);
        slices[2] = slices[2].max(sum_err(&s, 0.0, sampling::beta(&mut rng)));
    }
    let ok = formula <= 1e-12 && slices.iter().all(|e| *e <= 1e-12);
    outcome(ok, format!("residual formula {formula:.2e}; equality slices β∈{{0,π}} {:.2e}, λ=1 {:.2e}, A=0 {:.2e}", slices[0], slices[1], slices[2]))
}

fn eigen_residual(h: &Mat2, v: &Ket<2>) -> f64 {
    // Rayleigh quotient as the eigenvalue estimate.
    let hv = h.apply(v);
    let lambda = inner(v, &hv);
    hv.iter().zip(v).map(|(x, y)| (x - y * lambda).norm()).fold(0.0, f64::max)
}

fn min_error_measurement() -> Outcome {
    let ds = draws(8);
    let mut eig: f64 = 0.0;
    let mut ortho: f64 = 0.0;
    let mut success: f64 = 0.0;
    let mut literal: f64 = 0.0;
    let mut interior = 0;
    for d in &ds {
        let Ok(w) = path_weights(d.state.s_x(), d.beta) else { continue };
        let Ok(basis) = min_error_basis(&d.detector, &w) else { continue };
        let gamma = which_path_operator(&d.detector, &w);
        eig = eig.max(eigen_residual(&gamma, &basis.m_a)).max(eigen_residual(&gamma, &basis.m_b));
        ortho = ortho.max(basis.orthonormality_error());
        let dist = distinguishability_closed(d.state.s_x(), d.beta, d.detector.a_overlap()).expect("defined");
        success = success.max((success_probability(&basis, &d.detector, &w) - 0.5 * (1.0 + dist)).abs());
        let inside = |x: f64| (0.05..=0.95).contains(&x);
        if inside(d.detector.a_overlap()) && inside(w.omega_a()) && inside(w.omega_b()) {
            interior += 1;
            let e = literal_min_error_basis(&d.detector, &w)
                .map(|lit| phase_aligned_distance(&basis.m_a, &lit.m_a).max(phase_aligned_distance(&basis.m_b, &lit.m_b)))
                .unwrap_or(f64::INFINITY);
            literal = literal.max(e);
        }
    }
    let ok = eig <= 1e-10 && ortho <= 1e-10 && literal <= 1e-8 && success <= 1e-10 && interior > 100;
    outcome(ok, format!("eigen {eig:.2e}, orthonormal {ortho:.2e}, literal {literal:.2e} ({interior} interior), success {success:.2e}"))
}

fn run_figures(dir: &Path) -> Result<Duration, String> {
    let start = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_mzi"))
        .arg("figures")
        .arg("--output-dir")
        .arg(dir)
        .status()
        .map_err(|e| e.to_string())?;
    let t = start.elapsed();
    if status.success() { Ok(t) } else { Err(format!("figures exited with {status}")) }
}

/// Number of sign changes in the non-zero consecutive differences.
fn sign_changes(ys: &[f64]) -> usize {
    let diffs: Vec<bool> = ys.windows(2).map(|w| w[1] - w[0]).filter(|d| *d != 0.0).map(|d| d > 0.0).collect();
    diffs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn figure_shapes(dir: &Path, name: &str) -> Result<(), String> {
    let text = fs::read_to_string(dir.join(format!("{name}.csv"))).map_err(|e| e.to_string())?;
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().ok_or("empty csv")?.split(',').collect();
    let rising_first = name.starts_with("fig2");
    let col = header.iter().position(|h| *h == if rising_first { "V_closed" } else { "D_closed" }).ok_or("missing column")?;
    let mut curves: Vec<(String, Vec<f64>)> = Vec::new();
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        let y: f64 = fields[col].parse().map_err(|_| format!("{name}: unparsable `{}`", fields[col]))?;
        match curves.last_mut() {
            Some((c, ys)) if c == fields[0] => ys.push(y),
            _ => curves.push((fields[0].to_string(), vec![y])),
        }
    }
    if curves.len() != 3 || curves.iter().any(|(_, ys)| ys.len() != 501) {
        return Err(format!("{name}: expected 3 curves of 501 points"));
    }
    for (c, ys) in &curves {
        let first_up = ys[1] > ys[0];
        if sign_changes(ys) != 1 || first_up != rising_first {
            return Err(format!("{name} curve {c}: shape violates single turn"));
        }
    }
    Ok(())
}

fn figure_reproduction() -> Outcome {
    let base = std::env::temp_dir().join(format!("mzi-acceptance-{}", std::process::id()));
    let (first, second) = (base.join("run1"), base.join("run2"));
    let result = (|| -> Result<String, String> {
        let t1 = run_figures(&first)?;
        let t2 = run_figures(&second)?;
        let names = ["fig2a", "fig2b", "fig2c", "fig2d", "fig3a", "fig3b", "fig3c", "fig3d"];
        for name in names {
            let file = format!("{name}.csv");
            let a = fs::read(first.join(&file)).map_err(|e| format!("{file}: {e}"))?;
            let b = fs::read(second.join(&file)).map_err(|e| format!("{file}: {e}"))?;
            if a != b {
                return Err(format!("{file} differs between runs"));
            }
            figure_shapes(&first, name)?;
        }
        let slowest = t1.max(t2);
        if slowest >= Duration::from_secs(10) {
            return Err(format!("figures took {slowest:.2?}"));
        }
        Ok(format!("8 CSVs byte-identical, single-turn shapes, slowest run {slowest:.2?}"))
    })();
    let _ = fs::remove_dir_all(&base);
    match result {
        Ok(detail) => outcome(true, detail),
        Err(detail) => outcome(false, detail),
    }
}

fn main() -> ExitCode {
    // libtest-style flags (e.g. --list from IDE tooling) get a trivial answer.
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let criteria: [Criterion; 9] = [
        ("1 pipeline equivalence", pipeline_equivalence),
        ("2 detection probability", detection_probability),
        ("3 visibility oracle", visibility_oracle),
        ("4 distinguishability oracle", distinguishability_oracle),
        ("5 reference point values", reference_values),
        ("6 extremum loci", extremum_loci),
        ("7 complementarity", complementarity),
        ("8 minimum-error measurement", min_error_measurement),
        ("9 figure reproduction", figure_reproduction),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let o = check();
        println!("{} criterion {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.ok);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
