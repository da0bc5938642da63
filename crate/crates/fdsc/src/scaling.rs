//! Gate-count sweeps over lattice sizes and power-law fits.

use std::fmt::Write as _;
use std::time::Instant;

use fdsc_core::synth::{best_of_greedy, synthesize, Strategy, SynthError};
use fdsc_core::verify::verify_circuit;

use crate::format::build_family;

pub const CSV_HEADER: &str = "family,strategy,L,n_qubits,s_size,gate_count,wall_ms";

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingRow {
    pub l: usize,
    pub n_qubits: usize,
    pub s_size: usize,
    pub gate_count: usize,
    pub wall_ms: f64,
    /// `Some(pass)` when the size was verified.
    pub verified: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingResult {
    pub family: String,
    pub strategy: String,
    pub rows: Vec<ScalingRow>,
    pub failures: Vec<(usize, String)>,
    pub fit: Option<Fit>,
}

/// Ordinary least squares of `ln y` on `ln x`; `None` below three points.
pub fn fit_power_law(points: &[(f64, f64)]) -> Option<Fit> {
    if points.len() < 3 {
        return None;
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = logs.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = logs
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    let r_squared = if syy == 0.0 { 1.0 } else { 1.0 - ss_res / syy };
    Some(Fit {
        slope,
        intercept,
        r_squared,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepOptions {
    pub verify_upto: Option<usize>,
    /// Seeded greedy restarts; only meaningful for the greedy strategy.
    pub restarts: usize,
    pub record_timing: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            verify_upto: None,
            restarts: 1,
            record_timing: true,
        }
    }
}

/// Synthesizes `family` at each size. Failing sizes are recorded and the
/// sweep goes on.
pub fn run_scaling(
    family: &str,
    strategy: &Strategy,
    sizes: &[usize],
    opts: &SweepOptions,
) -> ScalingResult {
    let mut sizes = sizes.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for l in sizes {
        match run_one(family, strategy, l, opts) {
            Ok(row) => rows.push(row),
            Err(msg) => failures.push((l, msg)),
        }
    }
    let points: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.gate_count > 0)
        .map(|r| (r.l as f64, r.gate_count as f64))
        .collect();
    ScalingResult {
        family: family.into(),
        strategy: strategy.name().into(),
        fit: fit_power_law(&points),
        rows,
        failures,
    }
}

fn run_one(family: &str, strategy: &Strategy, l: usize, opts: &SweepOptions) -> Result<ScalingRow, String> {
    let code = build_family(family, l)
        .ok_or_else(|| format!("unknown family {family:?}"))?
        .map_err(|e| e.to_string())?;
    let start = Instant::now();
    let circ = match (strategy, opts.restarts) {
        (Strategy::Greedy { seed }, r) if r > 1 => {
            let first = seed.unwrap_or(0);
            best_of_greedy(&code, first..first + r as u64)
                .map(|best| best.expect("at least one restart").1)
        }
        _ => synthesize(&code, strategy),
    }
    .map_err(|e: SynthError| e.to_string())?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let verified = match opts.verify_upto {
        Some(max) if l <= max => Some(verify_circuit(&code, &circ).map_err(|e| e.to_string())?.pass),
        _ => None,
    };
    Ok(ScalingRow {
        l,
        n_qubits: code.n_qubits(),
        s_size: circ.plus_qubits().len(),
        gate_count: circ.gate_count(),
        wall_ms: if opts.record_timing { wall_ms } else { 0.0 },
        verified,
    })
}

impl ScalingResult {
    /// Header, one row per size, then `#` comment lines for verification,
    /// failures and the fit.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{CSV_HEADER}").unwrap();
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{},{:.3}",
                self.family, self.strategy, r.l, r.n_qubits, r.s_size, r.gate_count, r.wall_ms
            )
            .unwrap();
        }
        for r in &self.rows {
            if let Some(pass) = r.verified {
                writeln!(out, "# verify L={} {}", r.l, if pass { "pass" } else { "FAIL" }).unwrap();
            }
        }
        for (l, msg) in &self.failures {
            writeln!(out, "# error L={l} {msg}").unwrap();
        }
        if let Some(f) = self.fit {
            writeln!(
                out,
                "# fit slope={} intercept={} r_squared={}",
                f.slope, f.intercept, f.r_squared
            )
            .unwrap();
        }
        out
    }

    pub fn all_verified(&self) -> bool {
        self.rows.iter().all(|r| r.verified != Some(false))
    }
}

/// `(L, gate_count)` pairs from the data rows of a CSV written by [`ScalingResult::to_csv`].
pub fn rows_from_csv(text: &str) -> Vec<(usize, usize)> {
    text.lines()
        .skip(1)
        .filter(|line| !line.starts_with('#') && !line.is_empty())
        .filter_map(|line| {
            let cols: Vec<&str> = line.split(',').collect();
            Some((cols.get(2)?.parse().ok()?, cols.get(5)?.parse().ok()?))
        })
        .collect()
}

/// The fit recorded in the `# fit` line.
pub fn fit_from_csv(text: &str) -> Option<Fit> {
    let line = text.lines().find_map(|l| l.strip_prefix("# fit "))?;
    let mut slope = None;
    let mut intercept = None;
    let mut r_squared = None;
    for kv in line.split_whitespace() {
        let (k, v) = kv.split_once('=')?;
        let v: f64 = v.parse().ok()?;
        match k {
            "slope" => slope = Some(v),
            "intercept" => intercept = Some(v),
            "r_squared" => r_squared = Some(v),
            _ => {}
        }
    }
    Some(Fit {
        slope: slope?,
        intercept: intercept?,
        r_squared: r_squared?,
    })
}
