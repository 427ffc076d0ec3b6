//! Command-line front end: kernel evaluation, branching decomposition and
//! the verification suites, emitting CSV or JSON for downstream plotting.
//!
//! The CSV schema is fixed:
//! `mode,d,p,q,n_or_x,re_z,im_z,re_value,im_value,re_branching,im_branching,re_remainder,im_remainder,error_estimate,nodes`
//! — fields not applicable to a mode are left empty, never omitted. All
//! floats carry 17 significant digits, so identical configurations produce
//! byte-identical files. Configuration is accepted both as flags and as a
//! JSON config file (`--config`); flags override file values. Grid rows are
//! evaluated in parallel and written in deterministic row order; the
//! `RAYON_NUM_THREADS` environment variable bounds the worker count.

use crate::continuum::{
    continuum_branching, continuum_kernel, Signature, SpacePoint,
};
use crate::error::{Error, Result};
use crate::lattice::{lattice_branching, lattice_kernel, ThresholdContext};
use crate::quadrature::{ExtrapolationLadder, TorusGrid};
use crate::series::SeriesControl;
use crate::util::{fmt_f64, parse_complex};
use crate::verify::{
    boundary_jump_test, ray_limit_test, run_all_suites, run_identity_suite, CheckReport,
    RayTarget, SUITE_IDS,
};
use crate::Complex;
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use std::io::Write;
use std::path::PathBuf;

/// Exit status: success.
pub const EXIT_OK: i32 = 0;
/// Exit status: numeric failure (domain error, failed check).
pub const EXIT_NUMERIC: i32 = 1;
/// Exit status: configuration error.
pub const EXIT_CONFIG: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "latgreen",
    about = "Resolvent kernels of the discrete Laplacian and the ultra-hyperbolic model operator near spectral thresholds",
    version
)]
struct Cli {
    /// JSON config file; explicit flags override file values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Mode>,
}

#[derive(Subcommand, Debug)]
enum Mode {
    /// Evaluate the lattice kernel k(z,n) at z = w + 4q.
    EvalLattice(CommonArgs),
    /// Evaluate the truncated continuum kernel k_gamma(z,x).
    EvalContinuum(CommonArgs),
    /// Decompose the lattice kernel into branching + remainder
    /// (or run a ray-limit report with --ray/--ladder).
    BranchLattice(CommonArgs),
    /// Decompose the continuum kernel into branching + remainder
    /// (or run a ray-limit report with --ray/--ladder).
    BranchContinuum(CommonArgs),
    /// Run verification suites and emit a JSON report.
    Verify(CommonArgs),
}

impl Mode {
    fn name(&self) -> &'static str {
        match self {
            Mode::EvalLattice(_) => "eval-lattice",
            Mode::EvalContinuum(_) => "eval-continuum",
            Mode::BranchLattice(_) => "branch-lattice",
            Mode::BranchContinuum(_) => "branch-continuum",
            Mode::Verify(_) => "verify",
        }
    }

    fn args(&self) -> &CommonArgs {
        match self {
            Mode::EvalLattice(a)
            | Mode::EvalContinuum(a)
            | Mode::BranchLattice(a)
            | Mode::BranchContinuum(a)
            | Mode::Verify(a) => a,
        }
    }
}

#[derive(Args, Debug, Default, Clone)]
struct CommonArgs {
    /// Lattice dimension d.
    #[arg(long)]
    d: Option<u32>,
    /// Number of minus signs q (threshold 4q; continuum signature (p,q)).
    #[arg(long)]
    q: Option<u32>,
    /// Continuum signature p.
    #[arg(long)]
    p: Option<u32>,
    /// Lattice points, e.g. "0,0" or "0,0;1,0".
    #[arg(long)]
    n: Option<String>,
    /// Continuum points (real coordinates), e.g. "0,0" or "0.5,0;0,0".
    #[arg(long)]
    x: Option<String>,
    /// Threshold-relative spectral parameters w as a+bi list, e.g. "0.1+0.5i".
    #[arg(long)]
    w: Option<String>,
    /// Spectral parameters z (continuum), a+bi list.
    #[arg(long)]
    z: Option<String>,
    /// Rectangular grid over Re: "start:stop:count".
    #[arg(long)]
    grid_re: Option<String>,
    /// Rectangular grid over Im: "start:stop:count".
    #[arg(long)]
    grid_im: Option<String>,
    /// Ray angles in degrees, e.g. "90" or "30,90,150".
    #[arg(long)]
    ray: Option<String>,
    /// Extrapolation ladder "base,ratio,steps", e.g. "1e-2,0.5,8".
    #[arg(long)]
    ladder: Option<String>,
    /// Branching scale for negative controls (default 1).
    #[arg(long)]
    perturbation: Option<f64>,
    /// Torus nodes per dimension (default 64 for d<=2, 48 for d=3, 24 above).
    #[arg(long)]
    grid: Option<usize>,
    /// Truncation radius gamma for the continuum kernel (default 1).
    #[arg(long)]
    gamma: Option<f64>,
    /// Series degree budget.
    #[arg(long)]
    max_total_degree: Option<usize>,
    /// Absolute series/quadrature tolerance.
    #[arg(long)]
    abs_tol: Option<f64>,
    /// Relative series tolerance.
    #[arg(long)]
    rel_tol: Option<f64>,
    /// Verification suite: all | specfun | continuum-identities |
    /// lattice-identities | eigenequations.
    #[arg(long)]
    suite: Option<String>,
    /// Include measured runtimes in verify reports (breaks byte-identical
    /// output across runs).
    #[arg(long)]
    timings: bool,
    /// Output format: csv | json.
    #[arg(long)]
    format: Option<String>,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<String>,
}

/// The structured config-file mirror of the CLI surface.
#[derive(Debug, Default, Clone, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub mode: Option<String>,
    pub d: Option<u32>,
    pub q: Option<u32>,
    pub p: Option<u32>,
    pub n: Option<String>,
    pub x: Option<String>,
    pub w: Option<String>,
    pub z: Option<String>,
    pub grid_re: Option<String>,
    pub grid_im: Option<String>,
    pub ray: Option<String>,
    pub ladder: Option<String>,
    pub perturbation: Option<f64>,
    pub grid: Option<usize>,
    pub gamma: Option<f64>,
    pub max_total_degree: Option<usize>,
    pub abs_tol: Option<f64>,
    pub rel_tol: Option<f64>,
    pub suite: Option<String>,
    pub timings: Option<bool>,
    pub output_format: Option<String>,
    pub output_path: Option<String>,
}

impl RunConfig {
    fn overlay(mut self, a: &CommonArgs) -> Self {
        macro_rules! take {
            ($f:ident) => {
                if a.$f.is_some() {
                    self.$f = a.$f.clone();
                }
            };
        }
        take!(d);
        take!(q);
        take!(p);
        take!(n);
        take!(x);
        take!(w);
        take!(z);
        take!(grid_re);
        take!(grid_im);
        take!(ray);
        take!(ladder);
        take!(perturbation);
        take!(grid);
        take!(gamma);
        take!(max_total_degree);
        take!(abs_tol);
        take!(rel_tol);
        take!(suite);
        if a.timings {
            self.timings = Some(true);
        }
        if a.format.is_some() {
            self.output_format = a.format.clone();
        }
        if a.out.is_some() {
            self.output_path = a.out.clone();
        }
        self
    }

    fn series_control(&self) -> SeriesControl {
        let mut ctl = SeriesControl::default();
        if let Some(m) = self.max_total_degree {
            ctl.max_total_degree = m;
        }
        if let Some(t) = self.abs_tol {
            ctl.abs_tol = t;
        }
        if let Some(t) = self.rel_tol {
            ctl.rel_tol = t;
        }
        ctl
    }
}

fn cfg_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

fn parse_points(text: &str) -> Result<Vec<Vec<f64>>> {
    text.split(';')
        .map(|pt| {
            pt.split(',')
                .map(|v| {
                    v.trim()
                        .parse::<f64>()
                        .map_err(|e| cfg_err(format!("bad coordinate {v:?}: {e}")))
                })
                .collect()
        })
        .collect()
}

fn parse_int_points(text: &str) -> Result<Vec<Vec<i64>>> {
    text.split(';')
        .map(|pt| {
            pt.split(',')
                .map(|v| {
                    v.trim()
                        .parse::<i64>()
                        .map_err(|e| cfg_err(format!("bad lattice coordinate {v:?}: {e}")))
                })
                .collect()
        })
        .collect()
}

fn parse_complex_list(text: &str) -> Result<Vec<Complex>> {
    text.split(',')
        .map(|v| parse_complex(v).map_err(cfg_err))
        .collect()
}

fn parse_range(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(cfg_err(format!("range {text:?} must be start:stop:count")));
    }
    let start: f64 = parts[0]
        .parse()
        .map_err(|e| cfg_err(format!("bad range start: {e}")))?;
    let stop: f64 = parts[1]
        .parse()
        .map_err(|e| cfg_err(format!("bad range stop: {e}")))?;
    let count: usize = parts[2]
        .parse()
        .map_err(|e| cfg_err(format!("bad range count: {e}")))?;
    if count == 0 {
        return Err(cfg_err("range count must be positive"));
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    let step = (stop - start) / (count - 1) as f64;
    Ok((0..count).map(|k| start + k as f64 * step).collect())
}

fn parse_ladder(text: &str) -> Result<ExtrapolationLadder> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(cfg_err("ladder must be base,ratio,steps"));
    }
    let base: f64 = parts[0]
        .parse()
        .map_err(|e| cfg_err(format!("bad ladder base: {e}")))?;
    let ratio: f64 = parts[1]
        .parse()
        .map_err(|e| cfg_err(format!("bad ladder ratio: {e}")))?;
    let steps: usize = parts[2]
        .parse()
        .map_err(|e| cfg_err(format!("bad ladder steps: {e}")))?;
    ExtrapolationLadder::new(base, ratio, steps)
}

fn parse_rays_deg(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map(|deg| deg * std::f64::consts::PI / 180.0)
                .map_err(|e| cfg_err(format!("bad ray angle {v:?}: {e}")))
        })
        .collect()
}

/// Spectral samples from an explicit list, a rectangular grid, or a
/// ray × ladder product, in deterministic order.
fn spectral_samples(cfg: &RunConfig, key_w: bool) -> Result<Vec<Complex>> {
    let list = if key_w { &cfg.w } else { &cfg.z };
    if let Some(text) = list {
        return parse_complex_list(text);
    }
    if let (Some(re), Some(im)) = (&cfg.grid_re, &cfg.grid_im) {
        let res = parse_range(re)?;
        let ims = parse_range(im)?;
        let mut out = Vec::with_capacity(res.len() * ims.len());
        for &r in &res {
            for &i in &ims {
                out.push(Complex::new(r, i));
            }
        }
        return Ok(out);
    }
    if let (Some(ray), Some(ladder)) = (&cfg.ray, &cfg.ladder) {
        let rays = parse_rays_deg(ray)?;
        let lad = parse_ladder(ladder)?;
        let mut out = Vec::new();
        for &phi in &rays {
            for &eps in &lad.offsets() {
                out.push(Complex::from_polar(eps, phi));
            }
        }
        return Ok(out);
    }
    Err(cfg_err(
        "no spectral samples: provide --w/--z, --grid-re with --grid-im, or --ray with --ladder",
    ))
}

fn default_torus_nodes(d: u32) -> usize {
    match d {
        0..=2 => 64,
        3 => 48,
        _ => 24,
    }
}

#[derive(Clone, Debug, serde::Serialize)]
struct Row {
    mode: String,
    d: u32,
    p: u32,
    q: u32,
    n_or_x: String,
    re_z: f64,
    im_z: f64,
    re_value: Option<f64>,
    im_value: Option<f64>,
    re_branching: Option<f64>,
    im_branching: Option<f64>,
    re_remainder: Option<f64>,
    im_remainder: Option<f64>,
    error_estimate: Option<f64>,
    nodes: Option<u64>,
}

const CSV_HEADER: &str = "mode,d,p,q,n_or_x,re_z,im_z,re_value,im_value,re_branching,im_branching,re_remainder,im_remainder,error_estimate,nodes";

fn opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

impl Row {
    fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},\"{}\",{},{},{},{},{},{},{},{},{},{}",
            self.mode,
            self.d,
            self.p,
            self.q,
            self.n_or_x,
            fmt_f64(self.re_z),
            fmt_f64(self.im_z),
            opt(self.re_value),
            opt(self.im_value),
            opt(self.re_branching),
            opt(self.im_branching),
            opt(self.re_remainder),
            opt(self.im_remainder),
            opt(self.error_estimate),
            self.nodes.map(|n| n.to_string()).unwrap_or_default(),
        )
    }
}

fn write_output(cfg: &RunConfig, body: &str) -> Result<()> {
    match &cfg.output_path {
        Some(path) => {
            std::fs::write(path, body)?;
        }
        None => {
            std::io::stdout().write_all(body.as_bytes())?;
        }
    }
    Ok(())
}

fn emit_rows(cfg: &RunConfig, rows: &[Row]) -> Result<()> {
    let format = cfg.output_format.as_deref().unwrap_or("csv");
    let body = match format {
        "csv" => {
            let mut s = String::from(CSV_HEADER);
            s.push('\n');
            for r in rows {
                s.push_str(&r.csv_line());
                s.push('\n');
            }
            s
        }
        "json" => {
            let mut s = serde_json::to_string_pretty(rows)
                .map_err(|e| cfg_err(format!("json serialization: {e}")))?;
            s.push('\n');
            s
        }
        other => return Err(cfg_err(format!("unknown output format {other:?}"))),
    };
    write_output(cfg, &body)
}

fn point_label(coords: &[f64]) -> String {
    coords
        .iter()
        .map(|v| {
            if v.fract() == 0.0 && v.abs() < 1e15 {
                format!("{}", *v as i64)
            } else {
                format!("{v}")
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}

fn run_eval_lattice(cfg: &RunConfig, decompose: bool) -> Result<i32> {
    let d = cfg.d.ok_or_else(|| cfg_err("--d is required"))?;
    let q = cfg.q.ok_or_else(|| cfg_err("--q is required"))?;
    let ctx = ThresholdContext::new(d, q)?;
    let points = parse_int_points(cfg.n.as_deref().ok_or_else(|| cfg_err("--n is required"))?)?;
    for p in &points {
        if p.len() != d as usize {
            return Err(cfg_err(format!("point {p:?} does not have d = {d} entries")));
        }
    }
    let ws = spectral_samples(cfg, true)?;
    let nodes = cfg.grid.unwrap_or_else(|| default_torus_nodes(d));
    let grid = TorusGrid::new(d as usize, nodes)?;
    let ctl = cfg.series_control();
    let mode = if decompose {
        "branch-lattice"
    } else {
        "eval-lattice"
    };

    let tasks: Vec<(Complex, &Vec<i64>)> = ws
        .iter()
        .flat_map(|&w| points.iter().map(move |n| (w, n)))
        .collect();
    let results: Vec<(Row, bool)> = tasks
        .par_iter()
        .map(|&(w, n)| {
            let z = w + ctx.threshold_value();
            let label = point_label(&n.iter().map(|&v| v as f64).collect::<Vec<_>>());
            let mut row = Row {
                mode: mode.to_string(),
                d,
                p: ctx.p(),
                q,
                n_or_x: label,
                re_z: z.re,
                im_z: z.im,
                re_value: None,
                im_value: None,
                re_branching: None,
                im_branching: None,
                re_remainder: None,
                im_remainder: None,
                error_estimate: None,
                nodes: None,
            };
            let outcome = (|| -> Result<()> {
                let sample = lattice_kernel(d, z, n, &grid)?;
                row.re_value = Some(sample.value.re);
                row.im_value = Some(sample.value.im);
                row.error_estimate = Some(sample.error_estimate);
                row.nodes = Some(sample.quadrature_nodes);
                if decompose {
                    let b = lattice_branching(&ctx, w, n, &ctl)?;
                    let r = sample.value - b;
                    row.re_branching = Some(b.re);
                    row.im_branching = Some(b.im);
                    row.re_remainder = Some(r.re);
                    row.im_remainder = Some(r.im);
                }
                Ok(())
            })();
            match outcome {
                Ok(()) => (row, true),
                Err(e) => {
                    eprintln!("latgreen: {mode} at z = {z}, n = {n:?}: {e}");
                    (row, false)
                }
            }
        })
        .collect();

    let rows: Vec<Row> = results.iter().map(|(r, _)| r.clone()).collect();
    emit_rows(cfg, &rows)?;
    Ok(if results.iter().all(|(_, ok)| *ok) {
        EXIT_OK
    } else {
        EXIT_NUMERIC
    })
}

fn run_eval_continuum(cfg: &RunConfig, decompose: bool) -> Result<i32> {
    let p = cfg.p.ok_or_else(|| cfg_err("--p is required"))?;
    let q = cfg.q.ok_or_else(|| cfg_err("--q is required"))?;
    let sig = Signature::new(p, q)?;
    let d = sig.d();
    let points = parse_points(cfg.x.as_deref().ok_or_else(|| cfg_err("--x is required"))?)?;
    for pt in &points {
        if pt.len() != d as usize {
            return Err(cfg_err(format!("point {pt:?} does not have d = {d} entries")));
        }
    }
    let zs = spectral_samples(cfg, false)?;
    let gamma = cfg.gamma.unwrap_or(1.0);
    let ctl = cfg.series_control();
    let mode = if decompose {
        "branch-continuum"
    } else {
        "eval-continuum"
    };

    let tasks: Vec<(Complex, &Vec<f64>)> = zs
        .iter()
        .flat_map(|&z| points.iter().map(move |x| (z, x)))
        .collect();
    let results: Vec<(Row, bool)> = tasks
        .par_iter()
        .map(|&(z, xr)| {
            let x = SpacePoint::from_reals(xr);
            let mut row = Row {
                mode: mode.to_string(),
                d,
                p,
                q,
                n_or_x: point_label(xr),
                re_z: z.re,
                im_z: z.im,
                re_value: None,
                im_value: None,
                re_branching: None,
                im_branching: None,
                re_remainder: None,
                im_remainder: None,
                error_estimate: None,
                nodes: None,
            };
            let outcome = (|| -> Result<()> {
                let quad = continuum_kernel(sig, z, &x, gamma, &ctl)?;
                row.re_value = Some(quad.value.re);
                row.im_value = Some(quad.value.im);
                row.error_estimate = Some(quad.error_estimate);
                row.nodes = Some(quad.nodes);
                if decompose {
                    let b = continuum_branching(sig, z, &x, &ctl)?;
                    let r = quad.value - b;
                    row.re_branching = Some(b.re);
                    row.im_branching = Some(b.im);
                    row.re_remainder = Some(r.re);
                    row.im_remainder = Some(r.im);
                }
                Ok(())
            })();
            match outcome {
                Ok(()) => (row, true),
                Err(e) => {
                    eprintln!("latgreen: {mode} at z = {z}, x = {xr:?}: {e}");
                    (row, false)
                }
            }
        })
        .collect();

    let rows: Vec<Row> = results.iter().map(|(r, _)| r.clone()).collect();
    emit_rows(cfg, &rows)?;
    Ok(if results.iter().all(|(_, ok)| *ok) {
        EXIT_OK
    } else {
        EXIT_NUMERIC
    })
}

fn run_ray_report(cfg: &RunConfig, lattice: bool) -> Result<i32> {
    let rays = parse_rays_deg(cfg.ray.as_deref().unwrap())?;
    let ladder = parse_ladder(cfg.ladder.as_deref().ok_or_else(|| {
        cfg_err("--ladder is required together with --ray")
    })?)?;
    let perturbation = cfg.perturbation.unwrap_or(1.0);
    let ctl = cfg.series_control();
    let target = if lattice {
        let d = cfg.d.ok_or_else(|| cfg_err("--d is required"))?;
        let q = cfg.q.ok_or_else(|| cfg_err("--q is required"))?;
        let points =
            parse_int_points(cfg.n.as_deref().ok_or_else(|| cfg_err("--n is required"))?)?;
        if points.len() != 1 {
            return Err(cfg_err("ray mode takes exactly one point"));
        }
        RayTarget::Lattice {
            ctx: ThresholdContext::new(d, q)?,
            n: points[0].clone(),
        }
    } else {
        let p = cfg.p.ok_or_else(|| cfg_err("--p is required"))?;
        let q = cfg.q.ok_or_else(|| cfg_err("--q is required"))?;
        let points =
            parse_points(cfg.x.as_deref().ok_or_else(|| cfg_err("--x is required"))?)?;
        if points.len() != 1 {
            return Err(cfg_err("ray mode takes exactly one point"));
        }
        RayTarget::Continuum {
            sig: Signature::new(p, q)?,
            x: SpacePoint::from_reals(&points[0]),
            gamma: cfg.gamma.unwrap_or(1.0),
        }
    };
    let report = ray_limit_test(&target, &rays, &ladder, perturbation, &ctl)?;
    let mut body = serde_json::to_string_pretty(&report)
        .map_err(|e| cfg_err(format!("json serialization: {e}")))?;
    body.push('\n');
    write_output(cfg, &body)?;
    Ok(EXIT_OK)
}

fn run_verify(cfg: &RunConfig) -> Result<i32> {
    let suite = cfg.suite.as_deref().unwrap_or("all");
    let ctl = {
        let mut c = cfg.series_control();
        // Identity checks need tails below the strictest tolerances.
        if cfg.abs_tol.is_none() {
            c.abs_tol = 1e-14;
        }
        if cfg.rel_tol.is_none() {
            c.rel_tol = 1e-14;
        }
        c
    };
    let mut reports = if suite == "all" {
        run_all_suites(&ctl)?
    } else if SUITE_IDS.contains(&suite) {
        run_identity_suite(suite, &ctl)?
    } else {
        return Err(Error::UnknownSuite(suite.to_string()));
    };
    // Deterministic byte-identical output: runtimes are zeroed unless
    // explicitly requested.
    if !cfg.timings.unwrap_or(false) {
        for r in &mut reports {
            r.runtime_ms = 0;
        }
    }
    let all_passed = reports.iter().all(|r| r.passed);
    let mut body = serde_json::to_string_pretty(&reports)
        .map_err(|e| cfg_err(format!("json serialization: {e}")))?;
    body.push('\n');
    write_output(cfg, &body)?;
    Ok(if all_passed { EXIT_OK } else { EXIT_NUMERIC })
}

/// Boundary-jump diagnostic exposed for scripting: not a subcommand of its
/// own; reachable through `branch-lattice --w <real>` with a ladder.
fn run_boundary_jump(cfg: &RunConfig, w_real: f64) -> Result<i32> {
    let d = cfg.d.ok_or_else(|| cfg_err("--d is required"))?;
    let q = cfg.q.ok_or_else(|| cfg_err("--q is required"))?;
    let ctx = ThresholdContext::new(d, q)?;
    let points = parse_int_points(cfg.n.as_deref().ok_or_else(|| cfg_err("--n is required"))?)?;
    if points.len() != 1 {
        return Err(cfg_err("boundary mode takes exactly one point"));
    }
    let ladder = parse_ladder(
        cfg.ladder
            .as_deref()
            .ok_or_else(|| cfg_err("--ladder is required for a real w"))?,
    )?;
    let nodes = cfg.grid.unwrap_or_else(|| default_torus_nodes(d));
    let tol = cfg.abs_tol.unwrap_or(1e-4);
    let ctl = cfg.series_control();
    let report: CheckReport =
        boundary_jump_test(&ctx, &points[0], w_real, &ladder, nodes, tol, &ctl)?;
    let passed = report.passed;
    let mut body = serde_json::to_string_pretty(&report)
        .map_err(|e| cfg_err(format!("json serialization: {e}")))?;
    body.push('\n');
    write_output(cfg, &body)?;
    Ok(if passed { EXIT_OK } else { EXIT_NUMERIC })
}

fn dispatch(mode: &str, cfg: &RunConfig) -> Result<i32> {
    match mode {
        "eval-lattice" => run_eval_lattice(cfg, false),
        "eval-continuum" => run_eval_continuum(cfg, false),
        "branch-lattice" => {
            if cfg.ray.is_some() && cfg.w.is_none() {
                return run_ray_report(cfg, true);
            }
            // A single real w with a ladder runs the boundary-jump check.
            if let Some(wtext) = &cfg.w {
                let ws = parse_complex_list(wtext)?;
                if ws.len() == 1 && ws[0].im == 0.0 && cfg.ladder.is_some() {
                    return run_boundary_jump(cfg, ws[0].re);
                }
            }
            run_eval_lattice(cfg, true)
        }
        "branch-continuum" => {
            if cfg.ray.is_some() && cfg.z.is_none() {
                return run_ray_report(cfg, false);
            }
            run_eval_continuum(cfg, true)
        }
        "verify" => run_verify(cfg),
        other => Err(cfg_err(format!("unknown mode {other:?}"))),
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // clap handles --help/--version with success exit codes.
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let file_cfg = match &cli.config {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => match serde_json::from_str::<RunConfig>(&text) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("latgreen: bad config file {}: {e}", path.display());
                    return EXIT_CONFIG;
                }
            },
            Err(e) => {
                eprintln!("latgreen: cannot read config {}: {e}", path.display());
                return EXIT_CONFIG;
            }
        },
        None => RunConfig::default(),
    };
    let (mode_name, merged) = match &cli.command {
        Some(mode) => (
            mode.name().to_string(),
            file_cfg.overlay(mode.args()),
        ),
        None => match &file_cfg.mode {
            Some(m) => (m.clone(), file_cfg.clone()),
            None => {
                eprintln!("latgreen: no mode given (subcommand or config \"mode\")");
                return EXIT_CONFIG;
            }
        },
    };
    match dispatch(&mode_name, &merged) {
        Ok(code) => code,
        Err(Error::Config(msg)) => {
            eprintln!("latgreen: config error: {msg}");
            EXIT_CONFIG
        }
        Err(Error::UnknownSuite(s)) => {
            eprintln!("latgreen: unknown suite {s:?}");
            EXIT_CONFIG
        }
        Err(e) => {
            eprintln!("latgreen: {e}");
            EXIT_NUMERIC
        }
    }
}
