//! Command-line entry points: single-theta verification, sweeps over the
//! moduli interval, zero-locus export and the golden-value regression table.
//!
//! The binary is a thin wrapper over [`run`]; everything here is callable as
//! a library, which is how the integration tests drive it. Reports are
//! serialized with floats quantized to 12 significant digits so identical
//! configurations produce byte-identical output.

use std::fmt::Write as _;
use std::io::Write;
use std::sync::Once;

use serde::Serialize;
use serde_json::Value;

use crate::error::{ChypError, Result};
use crate::group::{build_group, theta_hi, theta_lo, Word};
use crate::optim::{
    constrained_extrema, constrained_extrema_swept, global_min, sweep_min, MinMode, OptimConfig,
};
use crate::verify::{chart_for_pair, full_report, transition_bracket, DirichletReport};

/// Parses an angle given in radians or as a fraction of pi, e.g. `5pi/6`,
/// `pi`, `0.95pi`, `2.61799`. Decimal inputs that undershoot or overshoot
/// an interval endpoint by less than 1e-3 (a truncated transcendental) snap
/// to the endpoint; anything further out is rejected downstream.
pub fn parse_theta(s: &str) -> Result<f64> {
    let t = s.trim().to_ascii_lowercase();
    let bad = || ChypError::InvalidConfig(format!("cannot parse angle '{s}'"));
    let value = if let Some(idx) = t.find("pi") {
        let (num, rest) = t.split_at(idx);
        let rest = &rest[2..];
        let mut value = if num.is_empty() { 1.0 } else { num.parse::<f64>().map_err(|_| bad())? };
        value *= std::f64::consts::PI;
        if let Some(den) = rest.strip_prefix('/') {
            value /= den.parse::<f64>().map_err(|_| bad())?;
        } else if !rest.is_empty() {
            return Err(bad());
        }
        value
    } else {
        t.parse::<f64>().map_err(|_| bad())?
    };
    if value < theta_lo() && theta_lo() - value < 1e-3 {
        return Ok(theta_lo());
    }
    if value > theta_hi() && value - theta_hi() < 1e-3 {
        return Ok(theta_hi());
    }
    Ok(value)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Text,
    Csv,
}

#[derive(Clone, Debug)]
pub enum Command {
    Verify { theta: f64 },
    Sweep { from: f64, to: f64, steps: usize },
    ExportLocus { pair: (Word, Word), theta: f64, steps: usize },
    Golden,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub optim: OptimConfig,
    pub mode: MinMode,
    pub format: OutputFormat,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        self.optim.validate()?;
        let check_theta = |theta: f64| -> Result<()> {
            if !(theta_lo() - 1e-12..=theta_hi() + 1e-12).contains(&theta) {
                return Err(ChypError::ThetaOutOfRange {
                    theta,
                    lo: theta_lo(),
                    hi: theta_hi(),
                });
            }
            Ok(())
        };
        match &self.command {
            Command::Verify { theta } => check_theta(*theta),
            Command::Sweep { from, to, steps } => {
                check_theta(*from)?;
                check_theta(*to)?;
                if *steps < 2 {
                    return Err(ChypError::InvalidConfig("sweep needs at least 2 steps".into()));
                }
                Ok(())
            }
            Command::ExportLocus { theta, .. } => check_theta(*theta),
            Command::Golden => Ok(()),
        }
    }
}

static THREAD_POOL: Once = Once::new();

/// Caps the rayon worker count from `CHYP_THREADS` once per process.
pub fn init_threads() {
    THREAD_POOL.call_once(|| {
        if let Ok(v) = std::env::var("CHYP_THREADS") {
            if let Ok(n) = v.parse::<usize>() {
                if n >= 1 {
                    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
                }
            }
        }
    });
}

fn quantize_f64(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn quantize_value(v: &mut Value) {
    match v {
        Value::Number(n) => {
            if let Some(x) = n.as_f64() {
                if n.is_f64() {
                    if let Some(q) = serde_json::Number::from_f64(quantize_f64(x)) {
                        *v = Value::Number(q);
                    }
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(quantize_value),
        Value::Object(map) => map.values_mut().for_each(quantize_value),
        _ => {}
    }
}

/// Serializes with floats rounded to 12 significant digits; identical inputs
/// give byte-identical output.
pub fn to_deterministic_json<T: Serialize>(value: &T) -> Result<String> {
    let mut v = serde_json::to_value(value)
        .map_err(|e| ChypError::InvalidConfig(format!("serialization failed: {e}")))?;
    quantize_value(&mut v);
    serde_json::to_string_pretty(&v)
        .map_err(|e| ChypError::InvalidConfig(format!("serialization failed: {e}")))
}

fn report_text(report: &DirichletReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "Dirichlet verification at theta = {:.12}", report.theta);
    let _ = writeln!(s, "model: {}", report.model);
    let _ = writeln!(s, "{:-<74}", "");
    let _ = writeln!(s, "{:<22}{:<14}{:>12}  status", "pair", "outcome", "value");
    for v in &report.verdicts {
        let value = v
            .value
            .or(v.margin)
            .map(|x| format!("{x:.6}"))
            .unwrap_or_else(|| "-".to_string());
        let outcome = match (&v.covered_by, v.outcome.as_str()) {
            (Some(by), "CoveredBy") => format!("Covered[{by}]"),
            _ => v.outcome.clone(),
        };
        let _ = writeln!(
            s,
            "{:<22}{:<14}{:>12}  {}",
            format!("{} {}", v.pair, v.bisectors),
            outcome,
            value,
            if v.ok { "ok" } else { "MISMATCH" }
        );
    }
    let _ = writeln!(s, "{:-<74}", "");
    for r in &report.relations {
        let _ = writeln!(
            s,
            "relation {:<20} residual {:>9.2e}  {}",
            r.name,
            r.residual,
            if r.ok { "ok" } else { "FAIL" }
        );
    }
    let _ = writeln!(
        s,
        "tangency at q12: |<q,q>| = {:.2e}, equidistance residual {:.2e}  {}",
        report.tangency.fixed_point_norm,
        report.tangency.equidistance_residual,
        if report.tangency.ok { "ok" } else { "FAIL" }
    );
    let _ = writeln!(s, "coaxial separation margin: {:.6}", report.coaxial_margin);
    let _ = writeln!(
        s,
        "independence: |det S residual| = {:.2e} (tol {:.2e}), coplanarity {:.2e}",
        report.independence.closed_residual,
        report.independence.closed_tol,
        report.independence.coplanar_residual
    );
    for p in &report.side_pairings {
        let _ = writeln!(
            s,
            "side pairing {:<7} residual {:>9.2e}  {}",
            p.word,
            p.max_residual,
            if p.ok { "ok" } else { "FAIL" }
        );
    }
    for c in &report.ridge_cycles {
        let witness = c.witness_value.map(|v| format!(" witness {v:.4}")).unwrap_or_default();
        let _ = writeln!(
            s,
            "ridge cycle {:<9} {}  residual {:.2e}{}  {}",
            c.name,
            c.relation,
            c.product_residual,
            witness,
            if c.ok { "ok" } else { "FAIL" }
        );
    }
    for f in &report.facets {
        let _ = writeln!(
            s,
            "facet {:<14} margin {:>10.6}  {}",
            f.facet,
            f.margin,
            if f.ok { "ok" } else { "FAIL" }
        );
    }
    for (w, ok) in &report.cusp_unipotent {
        let _ = writeln!(s, "cusp {w}: unipotent {}", if *ok { "ok" } else { "FAIL" });
    }
    if let Some(rows) = &report.klein_cross_check {
        for (pair, outcome, ok) in rows {
            let _ = writeln!(
                s,
                "klein {:<14} {:<10} {}",
                pair,
                outcome,
                if *ok { "ok" } else { "MISMATCH" }
            );
        }
    }
    let _ = writeln!(s, "presentation: {}", if report.presentation_ok { "ok" } else { "FAIL" });
    let _ = writeln!(s, "overall: {}", if report.pass { "PASS" } else { "FAIL" });
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub theta: f64,
    pub min_b12_b23: f64,
    pub h_b12_b32: f64,
    pub h_b12_b43: f64,
    pub h_b12_b24: f64,
    pub min_b12_b34: f64,
    pub b12_b34_empty: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    pub rows: Vec<SweepRow>,
    pub transition_bracket: (f64, f64),
    pub pass: bool,
}

/// The h-factor normalizations of the subspace objectives: the closed-form
/// prefactors split off the restricted-chart norm, positive (after sign
/// conventions) on the whole interval.
pub mod prefactor {
    pub fn b12_b32(theta: f64) -> f64 {
        let c = theta.cos();
        -256.0 * (0.5 + c).powi(3) * (c - 0.75) * (-0.5 + c) * (c * c - c / 2.0 - 0.75)
    }

    pub fn b12_b43(theta: f64) -> f64 {
        let c = theta.cos();
        -2.0 * (1.0 + 2.0 * c).powi(3)
    }

    pub fn b12_b24(theta: f64) -> f64 {
        let c = theta.cos();
        -(1.0 + 2.0 * c).powi(3)
    }
}

fn pair_min_at(theta: f64, w2: Word, pref: fn(f64) -> f64, cfg: &OptimConfig) -> Result<f64> {
    let g = build_group(theta)?;
    let chart = chart_for_pair(&g, Word::A(1), w2)?;
    let p = pref(theta);
    let f = move |x: &[f64]| chart.norm_at(x) / p;
    let local = OptimConfig { grid_2d: cfg.grid_2d.min(256), ..cfg.clone() };
    Ok(global_min(&f, 2, MinMode::Numeric, None, &local)?.value)
}

fn unit_pref(_: f64) -> f64 {
    1.0
}

pub fn run_sweep(from: f64, to: f64, steps: usize, cfg: &OptimConfig) -> Result<SweepReport> {
    let rows: Vec<SweepRow> = (0..steps)
        .map(|k| {
            let theta = from + (to - from) * k as f64 / (steps - 1) as f64;
            let min_b12_b23 = pair_min_at(theta, Word::A(2), unit_pref, cfg)?;
            let h_b12_b32 = pair_min_at(theta, Word::AInv(2), prefactor::b12_b32, cfg)?;
            let h_b12_b43 = pair_min_at(theta, Word::AInv(3), prefactor::b12_b43, cfg)?;
            let h_b12_b24 = pair_min_at(theta, Word::A2A3, prefactor::b12_b24, cfg)?;
            let min_b12_b34 = pair_min_at(theta, Word::A(3), unit_pref, cfg)?;
            Ok(SweepRow {
                theta,
                min_b12_b23,
                h_b12_b32,
                h_b12_b43,
                h_b12_b24,
                min_b12_b34,
                b12_b34_empty: min_b12_b34 > 0.0,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let bracket = transition_bracket(cfg, 1e-4)?;
    let pass = rows
        .iter()
        .all(|r| r.min_b12_b23 > 0.0 && r.h_b12_b32 > 0.0 && r.h_b12_b43 > 0.0 && r.h_b12_b24 > 0.0);
    Ok(SweepReport { from, to, steps, rows, transition_bracket: bracket, pass })
}

fn sweep_text(report: &SweepReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<10}{:>12}{:>12}{:>12}{:>12}{:>12}  B34 status",
        "theta", "B12^B23", "h(B12^B32)", "h(B12^B43)", "h(B12^B24)", "B12^B34"
    );
    for r in &report.rows {
        let _ = writeln!(
            s,
            "{:<10.6}{:>12.4}{:>12.4}{:>12.4}{:>12.4}{:>12.4}  {}",
            r.theta,
            r.min_b12_b23,
            r.h_b12_b32,
            r.h_b12_b43,
            r.h_b12_b24,
            r.min_b12_b34,
            if r.b12_b34_empty { "empty" } else { "nonempty" }
        );
    }
    let _ = writeln!(
        s,
        "B12 ^ B34 emptiness transition inside ({:.6}, {:.6})",
        report.transition_bracket.0, report.transition_bracket.1
    );
    let _ = writeln!(s, "overall: {}", if report.pass { "PASS" } else { "FAIL" });
    s
}

/// One row of the golden regression table.
#[derive(Clone, Debug, Serialize)]
pub struct GoldenEntry {
    pub name: String,
    pub computed: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn golden_entry(name: &str, computed: f64, expected: f64, tolerance: f64) -> GoldenEntry {
    GoldenEntry {
        name: name.to_string(),
        computed,
        expected,
        tolerance,
        pass: (computed - expected).abs() <= tolerance,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GoldenReport {
    pub entries: Vec<GoldenEntry>,
    pub pass: bool,
}

/// Runs the reference table of minima and extrema. Entries whose reference
/// values are not reproducible from the construction documented alongside
/// them fail here with the reproduced value printed next to the reference
/// one; the verification facts they support (every minimum positive, every
/// extremum attained at the left endpoint) are asserted by `verify`.
pub fn run_golden(cfg: &OptimConfig) -> Result<GoldenReport> {
    let mut entries = Vec::new();

    // 2-dimensional minima at the left endpoint, tolerance 0.05.
    let g2 = build_group(theta_lo())?.reduce_to_pu21()?;
    let cases = [
        ("2d min B12^B23", Word::A(2), 12.752),
        ("2d min B12^B32", Word::AInv(2), 4.78),
        ("2d min B12^B43", Word::AInv(3), 20.51),
        ("2d min B12^B24", Word::A2A3, 4.58),
    ];
    for (name, w, expected) in cases {
        let chart = chart_for_pair(&g2, Word::A(1), w)?;
        let f = |x: &[f64]| chart.norm_at(x);
        let r = global_min(&f, 2, MinMode::Numeric, None, cfg)?;
        entries.push(golden_entry(name, r.value, expected, 0.05));
    }

    // Constrained extrema on the boundary of B12 ^ B34, tolerance 0.05, and
    // the constant center distance to 1e-9.
    let chart = chart_for_pair(&g2, Word::A(1), Word::A(3))?;
    let f13 = chart.functional(g2.lift(Word::A1A2))?;
    let (lo, hi) = constrained_extrema(&chart, move |x: &[f64]| f13.eval(x), cfg)?;
    entries.push(golden_entry("2d dist2(p13) min on B12^B34 locus", lo, 5.85, 0.05));
    entries.push(golden_entry("2d dist2(p13) max on B12^B34 locus", hi, 14.23, 0.05));
    let d0 = chart.dist2_to(&[0.7, -2.1], g2.center())?;
    entries.push(golden_entry(
        "2d dist2(p0) constant on B12^B34",
        d0,
        8.0 + 8.0 * 3.0f64.sqrt(),
        1e-9,
    ));

    // Sweeps of the subspace objectives over the moduli interval,
    // relative tolerance 1e-3.
    let sweep = |w2: Word, pref: fn(f64) -> f64| -> Result<(f64, f64)> {
        let family = move |theta: f64| -> Result<_> {
            let g = build_group(theta)?;
            let chart = chart_for_pair(&g, Word::A(1), w2)?;
            let p = pref(theta);
            Ok(move |x: &[f64]| chart.norm_at(x) / p)
        };
        let r = sweep_min(family, 2, (theta_lo(), theta_hi()), cfg.theta_steps, cfg)?;
        Ok((r.overall.value, r.overall.theta.unwrap()))
    };
    type SweepCase = (&'static str, Word, fn(f64) -> f64, f64);
    let sweep_cases: [SweepCase; 4] = [
        ("sweep min B12^B23 (full norm)", Word::A(2), unit_pref, 734.88),
        ("sweep min h(B12^B32)", Word::AInv(2), prefactor::b12_b32, 6.5305),
        ("sweep min h(B12^B43)", Word::AInv(3), prefactor::b12_b43, 1521.583),
        ("sweep min h(B12^B24)", Word::A2A3, prefactor::b12_b24, 275.152),
    ];
    for (name, w2, pref, expected) in sweep_cases {
        let (value, at) = sweep(w2, pref)?;
        entries.push(golden_entry(name, value, expected, 1e-3 * expected.abs()));
        entries.push(golden_entry(
            &format!("{name} attained at theta"),
            at,
            theta_lo(),
            1e-3,
        ));
    }

    // Constrained gap extrema on the B12 ^ B34 boundary, swept; +-1%.
    let family = |theta: f64| -> Result<_> {
        let g = build_group(theta)?;
        let chart = chart_for_pair(&g, Word::A(1), Word::A(3))?;
        let f0 = chart.functional(g.center())?;
        let fc = chart.functional(g.lift(Word::A1A2))?;
        let gap = move |x: &[f64]| f0.eval(x) - fc.eval(x);
        Ok((chart, gap))
    };
    let (gap_min, gap_max) =
        constrained_extrema_swept(family, (theta_lo(), theta_hi()), cfg.theta_steps, cfg)?;
    entries.push(golden_entry("swept gap min on B12^B34 locus", gap_min, 99.42, 0.01 * 99.42));
    entries.push(golden_entry("swept gap max on B12^B34 locus", gap_max, 921.79, 0.01 * 921.79));

    // Transition bracket for B12 ^ B34 emptiness.
    let bracket = transition_bracket(cfg, 1e-4)?;
    let mid = 0.5 * (bracket.0 + bracket.1);
    entries.push(GoldenEntry {
        name: "B12^B34 transition in (2.70, 2.78)".into(),
        computed: mid,
        expected: 2.74,
        tolerance: 0.04,
        pass: bracket.0 > 2.70 && bracket.1 < 2.78,
    });

    let pass = entries.iter().all(|e| e.pass);
    Ok(GoldenReport { entries, pass })
}

fn golden_text(report: &GoldenReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<42}{:>14}{:>14}{:>11}  status",
        "entry", "computed", "reference", "tolerance"
    );
    for e in &report.entries {
        let _ = writeln!(
            s,
            "{:<42}{:>14.6}{:>14.6}{:>11.2e}  {}",
            e.name,
            e.computed,
            e.expected,
            e.tolerance,
            if e.pass { "PASS" } else { "FAIL" }
        );
    }
    let _ = writeln!(s, "overall: {}", if report.pass { "PASS" } else { "FAIL" });
    s
}

fn locus_csv(pair: (Word, Word), theta: f64, steps: usize, cfg: &OptimConfig) -> Result<String> {
    let _ = cfg;
    let at_lo = (theta - theta_lo()).abs() <= 1e-12;
    let g = build_group(theta)?;
    let group = if at_lo { g.reduce_to_pu21()? } else { g };
    let chart = chart_for_pair(&group, pair.0, pair.1)?;
    let dim = group.dim();
    let mut s = String::new();
    let angle_names: &[&str] = if chart.arity() == 2 { &["r", "s"] } else { &["r", "s", "t"] };
    let mut header: Vec<String> = angle_names.iter().map(|a| a.to_string()).collect();
    for i in 1..=dim {
        header.push(format!("re_v{i}"));
        header.push(format!("im_v{i}"));
    }
    let _ = writeln!(s, "{}", header.join(","));
    for (angles, v) in chart.zero_locus(steps) {
        let mut row: Vec<String> = angles.iter().map(|a| format!("{a:.12e}")).collect();
        for z in v.coords().iter() {
            row.push(format!("{:.12e}", quantize_f64(z.re)));
            row.push(format!("{:.12e}", quantize_f64(z.im)));
        }
        let _ = writeln!(s, "{}", row.join(","));
    }
    Ok(s)
}

/// Executes a command, writing the artifact to `out`; returns the process
/// exit code (0 iff every check in scope passed).
pub fn run(config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    init_threads();
    config.validate()?;
    match &config.command {
        Command::Verify { theta } => {
            let report = full_report(*theta, &config.optim)?;
            match config.format {
                OutputFormat::Json => writeln!(out, "{}", to_deterministic_json(&report)?)?,
                _ => write!(out, "{}", report_text(&report))?,
            }
            Ok(if report.pass { 0 } else { 1 })
        }
        Command::Sweep { from, to, steps } => {
            let report = run_sweep(*from, *to, *steps, &config.optim)?;
            match config.format {
                OutputFormat::Json => writeln!(out, "{}", to_deterministic_json(&report)?)?,
                _ => write!(out, "{}", sweep_text(&report))?,
            }
            Ok(if report.pass { 0 } else { 1 })
        }
        Command::ExportLocus { pair, theta, steps } => {
            let csv = locus_csv(*pair, *theta, *steps, &config.optim)?;
            write!(out, "{csv}")?;
            Ok(0)
        }
        Command::Golden => {
            let report = run_golden(&config.optim)?;
            match config.format {
                OutputFormat::Json => writeln!(out, "{}", to_deterministic_json(&report)?)?,
                _ => write!(out, "{}", golden_text(&report))?,
            }
            Ok(if report.pass { 0 } else { 1 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn fast_cfg() -> OptimConfig {
        OptimConfig { grid_2d: 128, grid_3d: 64, theta_steps: 12, refine_tol: 1e-9 }
    }

    #[test]
    fn theta_parsing_forms() {
        assert!((parse_theta("5pi/6").unwrap() - theta_lo()).abs() < 1e-15);
        assert!((parse_theta("pi").unwrap() - PI).abs() < 1e-15);
        assert!((parse_theta("0.95pi").unwrap() - 0.95 * PI).abs() < 1e-15);
        assert!((parse_theta("2.7").unwrap() - 2.7).abs() < 1e-15);
        // Truncated decimals just outside the interval snap to the endpoint.
        assert_eq!(parse_theta("2.61799").unwrap(), theta_lo());
        assert_eq!(parse_theta("3.1415926535898").unwrap(), PI);
        assert!(parse_theta("6pi/").is_err());
        assert!(parse_theta("abc").is_err());
    }

    #[test]
    fn sweep_rows_emptiness_consistency() {
        // When the swept minima stay positive, every per-theta status is
        // empty; B12^B34 flips exactly once across the interval.
        let report =
            run_sweep(theta_lo(), crate::group::theta_hi(), 9, &fast_cfg()).unwrap();
        assert!(report.pass);
        for r in &report.rows {
            assert!(r.min_b12_b23 > 0.0 && r.h_b12_b32 > 0.0);
            assert_eq!(r.b12_b34_empty, r.min_b12_b34 > 0.0);
        }
        assert!(!report.rows.first().unwrap().b12_b34_empty);
        assert!(report.rows.last().unwrap().b12_b34_empty);
        let (lo, hi) = report.transition_bracket;
        assert!(theta_lo() < lo && lo < hi && hi < crate::group::theta_hi());
    }

    #[test]
    fn config_rejects_out_of_range_theta() {
        let cfg = RunConfig {
            command: Command::Verify { theta: 0.5 },
            optim: fast_cfg(),
            mode: MinMode::Numeric,
            format: OutputFormat::Json,
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn verify_json_is_deterministic_and_passes_at_left_endpoint() {
        let cfg = RunConfig {
            command: Command::Verify { theta: theta_lo() },
            optim: fast_cfg(),
            mode: MinMode::Numeric,
            format: OutputFormat::Json,
        };
        let mut a = Vec::new();
        let mut b = Vec::new();
        let code_a = run(&cfg, &mut a).unwrap();
        let code_b = run(&cfg, &mut b).unwrap();
        assert_eq!(code_a, 0);
        assert_eq!(code_b, 0);
        assert_eq!(a, b, "identical configs must produce byte-identical JSON");
        let parsed: serde_json::Value = serde_json::from_slice(&a).unwrap();
        assert_eq!(parsed["pass"], serde_json::Value::Bool(true));
    }

    #[test]
    fn locus_csv_rows_satisfy_equation() {
        let cfg = RunConfig {
            command: Command::ExportLocus {
                pair: (Word::A(1), Word::A(3)),
                theta: theta_lo(),
                steps: 256,
            },
            optim: fast_cfg(),
            mode: MinMode::Numeric,
            format: OutputFormat::Csv,
        };
        let mut buf = Vec::new();
        let code = run(&cfg, &mut buf).unwrap();
        assert_eq!(code, 0);
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "r,s,re_v1,im_v1,re_v2,im_v2,re_v3,im_v3");
        let g = build_group(theta_lo()).unwrap().reduce_to_pu21().unwrap();
        let chart = chart_for_pair(&g, Word::A(1), Word::A(3)).unwrap();
        let mut count = 0;
        for line in lines {
            let cols: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
            assert_eq!(cols.len(), 8);
            assert!(chart.norm_at(&[cols[0], cols[1]]).abs() < 1e-7);
            count += 1;
        }
        assert!(count > 32);
    }

    #[test]
    fn word_pair_parsing() {
        assert_eq!(Word::parse("A1"), Some(Word::A(1)));
        assert_eq!(Word::parse("A1A2"), Some(Word::A1A2));
    }
}
