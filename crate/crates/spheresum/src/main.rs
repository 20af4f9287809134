//! Thin command-line front end: each subcommand wraps one library operation
//! and emits the CSV schema that operation declares. Exit codes: 0 success,
//! 1 usage error, 2 numerical failure, 3 scenario FAIL under --strict.

use clap::{Args, Parser, Subcommand};
use spheresum::csvout::{sig17, write_atomic};
use spheresum::error::Error;
use spheresum::experiments::{
    run, scenario_by_name, smooth_catalog, Verdict, DEFAULT_LADDER,
};
use spheresum::kernels::{
    asymptotic_fit_constant, riesz_kernel_exact, AsymptoticProfile, KernelProfile,
};
use spheresum::quadrature::{integrate_1d, integrate_sphere};
use spheresum::sphere::geodesic_distance;
use spheresum::summation::{partial_sum_kernel, partial_sum_spectral};
use spheresum::{Method, QuadratureRule, Result, SpherePoint, SummationParams};
use std::collections::HashMap;
use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "spheresum", version, about = "Summation of eigenfunction expansions on S^N")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the exact kernel on a gamma grid (CSV: gamma,value)
    Kernel(CommonOpts),
    /// Tabulate the oscillatory leading term and its error envelopes
    /// (CSV: gamma,leading,second_env,remainder_env)
    Asymptotic(CommonOpts),
    /// One partial sum E_n at the scenario's observation point
    Sum(CommonOpts),
    /// Convergence ladder for one (alpha, method) cell
    /// (CSV: scenario,method,N,alpha,n,value,abs_value,route_gap)
    Sweep(CommonOpts),
    /// Full scenario run: per-cell records, summary, manifest
    Scenario {
        #[command(flatten)]
        opts: CommonOpts,
        /// Exit 3 if any summary verdict is FAIL
        #[arg(long)]
        strict: bool,
    },
    /// Internal consistency checks: identity, route agreement, kernel mass,
    /// reproducing property
    Selftest(CommonOpts),
}

/// Every config-file key has a flag twin; flags win on conflict.
#[derive(Args, Debug, Clone, Default)]
struct CommonOpts {
    /// Sphere dimension N
    #[arg(long)]
    dim: Option<usize>,
    /// Summation order alpha
    #[arg(long)]
    alpha: Option<f64>,
    /// riesz or cesaro
    #[arg(long)]
    method: Option<String>,
    /// Cutoff degree n
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated cutoff ladder, e.g. 16,24,32
    #[arg(long = "n-ladder")]
    n_ladder: Option<String>,
    /// Cap radius at the observation point
    #[arg(long)]
    eps1: Option<f64>,
    /// Cap radius at the antipode
    #[arg(long)]
    eps2: Option<f64>,
    /// Singularity strength for the antipodal-singular scenario
    #[arg(long)]
    beta: Option<f64>,
    /// Quadrature panels per integral
    #[arg(long = "quad-panels")]
    quad_panels: Option<usize>,
    /// Gauss-Legendre points per panel
    #[arg(long = "quad-points")]
    quad_points: Option<usize>,
    /// Output file (CSV commands) or directory (scenario runs)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Flat key=value config file
    #[arg(long)]
    config: Option<PathBuf>,
    /// Scenario name from the catalog
    #[arg(long)]
    scenario: Option<String>,
}

/// Flag and config values resolved against the defaults.
struct Resolved {
    dim: usize,
    alpha: f64,
    method: Method,
    n: usize,
    ladder: Vec<usize>,
    /// true when the ladder came from a flag or config key rather than the
    /// default; scenarios keep their own ladder otherwise
    ladder_explicit: bool,
    eps1: f64,
    eps2: f64,
    beta: f64,
    rule: QuadratureRule,
    out: Option<PathBuf>,
    scenario: String,
}

fn parse_config_file(path: &PathBuf) -> Result<HashMap<String, String>> {
    const KNOWN: [&str; 12] = [
        "dim",
        "alpha",
        "method",
        "n",
        "n_ladder",
        "eps1",
        "eps2",
        "beta",
        "quad_panels",
        "quad_points",
        "out",
        "scenario",
    ];
    let text = std::fs::read_to_string(path)?;
    let mut map = HashMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::InvalidArgument(format!(
                "{}:{}: expected key=value, got '{line}'",
                path.display(),
                lineno + 1
            )));
        };
        let key = key.trim();
        if !KNOWN.contains(&key) {
            return Err(Error::InvalidArgument(format!(
                "{}:{}: unknown config key '{key}'",
                path.display(),
                lineno + 1
            )));
        }
        map.insert(key.to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn parse<T: std::str::FromStr>(key: &str, raw: &str) -> Result<T> {
    raw.parse()
        .map_err(|_| Error::InvalidArgument(format!("cannot parse {key}='{raw}'")))
}

fn parse_ladder(raw: &str) -> Result<Vec<usize>> {
    raw.split(',')
        .map(|s| parse("n_ladder", s.trim()))
        .collect()
}

fn resolve(opts: &CommonOpts) -> Result<Resolved> {
    let cfg = match &opts.config {
        Some(path) => parse_config_file(path)?,
        None => HashMap::new(),
    };
    let pick = |flag: Option<String>, key: &str| -> Option<String> {
        flag.or_else(|| cfg.get(key).cloned())
    };
    let dim = match pick(opts.dim.map(|v| v.to_string()), "dim") {
        Some(raw) => parse("dim", &raw)?,
        None => 2,
    };
    let alpha = match pick(opts.alpha.map(|v| v.to_string()), "alpha") {
        Some(raw) => parse("alpha", &raw)?,
        None => (dim as f64 - 1.0) / 2.0,
    };
    let method: Method = match pick(opts.method.clone(), "method") {
        Some(raw) => raw.parse()?,
        None => Method::Riesz,
    };
    let n = match pick(opts.n.map(|v| v.to_string()), "n") {
        Some(raw) => parse("n", &raw)?,
        None => 32,
    };
    let picked_ladder = pick(opts.n_ladder.clone(), "n_ladder");
    let ladder_explicit = picked_ladder.is_some();
    let ladder = match picked_ladder {
        Some(raw) => parse_ladder(&raw)?,
        None => DEFAULT_LADDER.to_vec(),
    };
    let eps1 = match pick(opts.eps1.map(|v| v.to_string()), "eps1") {
        Some(raw) => parse("eps1", &raw)?,
        None => 0.4,
    };
    let eps2 = match pick(opts.eps2.map(|v| v.to_string()), "eps2") {
        Some(raw) => parse("eps2", &raw)?,
        None => 0.4,
    };
    let beta = match pick(opts.beta.map(|v| v.to_string()), "beta") {
        Some(raw) => parse("beta", &raw)?,
        None => 1.8,
    };
    let panels = match pick(opts.quad_panels.map(|v| v.to_string()), "quad_panels") {
        Some(raw) => parse("quad_panels", &raw)?,
        None => 64,
    };
    let points = match pick(opts.quad_points.map(|v| v.to_string()), "quad_points") {
        Some(raw) => parse("quad_points", &raw)?,
        None => 16,
    };
    let out = opts
        .out
        .clone()
        .or_else(|| cfg.get("out").map(PathBuf::from));
    let scenario = pick(opts.scenario.clone(), "scenario").unwrap_or_else(|| "theorem1".into());
    Ok(Resolved {
        dim,
        alpha,
        method,
        n,
        ladder,
        ladder_explicit,
        eps1,
        eps2,
        beta,
        rule: QuadratureRule::new(panels, points)?,
        out,
        scenario,
    })
}

/// Print to stdout or write atomically to --out.
fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => write_atomic(path, content),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn uniform_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
        .collect()
}

fn cmd_kernel(r: &Resolved) -> Result<()> {
    let params = SummationParams::new(r.dim, r.n, r.alpha, r.method)?;
    let points = (4 * r.n + 1).max(513);
    let profile = KernelProfile::compute(params, uniform_grid(0.0, PI, points))?;
    emit(&r.out, &profile.to_csv())
}

fn cmd_asymptotic(r: &Resolved) -> Result<()> {
    let params = SummationParams::new(r.dim, r.n, r.alpha, r.method)?;
    let margin = PI / (2.0 * (r.n as f64 + 1.0));
    let lo = (margin + 1e-9).max(0.5);
    let hi = (PI - margin - 1e-9).min(PI - 0.5);
    if !(lo < hi) {
        return Err(Error::InvalidArgument(format!(
            "validity window is empty at n={}; increase n",
            r.n
        )));
    }
    let grid = uniform_grid(lo, hi, 513);
    let profile = AsymptoticProfile::compute(params, grid.clone())?;
    let fit = asymptotic_fit_constant(&params, &grid)?;
    eprintln!(
        "fitted C = {} (max |exact - leading| = {}) over [{lo:.4}, {hi:.4}] at n={}",
        sig17(fit.c),
        sig17(fit.max_abs_diff),
        r.n
    );
    emit(&r.out, &profile.to_csv())
}

fn cmd_sum(r: &Resolved) -> Result<()> {
    let sc = scenario_by_name(&r.scenario, r.dim, r.eps1, r.eps2, r.alpha, r.beta)?;
    let params = SummationParams::new(r.dim, r.n, r.alpha, r.method)?;
    let value = partial_sum_kernel(&sc.function, &params, &sc.point, &r.rule)?;
    println!("{}", sig17(value));
    Ok(())
}

fn cmd_sweep(r: &Resolved) -> Result<()> {
    use spheresum::summation::{convergence_sweep, ConvergenceRecord};
    let sc = scenario_by_name(&r.scenario, r.dim, r.eps1, r.eps2, r.alpha, r.beta)?;
    let records = convergence_sweep(
        &sc.name,
        &sc.function,
        &sc.point,
        r.alpha,
        r.method,
        &r.ladder,
        &r.rule,
    )?;
    let mut csv = String::from(ConvergenceRecord::CSV_HEADER);
    csv.push('\n');
    for rec in &records {
        csv.push_str(&rec.csv_row());
        csv.push('\n');
    }
    emit(&r.out, &csv)
}

fn cmd_scenario(r: &Resolved, strict: bool) -> Result<u8> {
    let mut sc = scenario_by_name(&r.scenario, r.dim, r.eps1, r.eps2, r.alpha, r.beta)?;
    if r.ladder_explicit {
        sc = sc.with_ladder(r.ladder.clone());
    }
    let out_dir = r
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("runs").join(&sc.name));
    let manifest = run(&sc, &out_dir, &r.rule)?;
    println!("{}", spheresum::experiments::SummaryRow::CSV_HEADER);
    for row in &manifest.summary {
        println!("{}", row.csv_row());
    }
    println!(
        "antipodal_integral={} status={:?}",
        sig17(manifest.antipodal.value),
        manifest.antipodal.status
    );
    for path in &manifest.outputs {
        eprintln!("wrote {}", path.display());
    }
    let failed = manifest.summary.iter().any(|s| s.verdict == Verdict::Fail);
    if strict && failed {
        eprintln!("strict mode: at least one FAIL verdict");
        return Ok(3);
    }
    Ok(0)
}

fn cmd_selftest(r: &Resolved) -> Result<u8> {
    let mut ok = true;
    let mut check = |name: &str, pass: bool, detail: String| {
        println!("{}: {} ({detail})", name, if pass { "PASS" } else { "FAIL" });
        ok &= pass;
    };

    let x = SpherePoint::north_pole(r.dim)?;
    let one = spheresum::summation::TestFunction::new("one", std::sync::Arc::new(|_: &SpherePoint| 1.0));

    // multiplier normalization: E_n(1) = 1 under both methods
    let mut worst = 0.0_f64;
    for method in [Method::Riesz, Method::Cesaro] {
        let params = SummationParams::new(r.dim, 16, (r.dim as f64 - 1.0) / 2.0, method)?;
        let v = partial_sum_kernel(&one, &params, &x, &r.rule)?;
        worst = worst.max((v - 1.0).abs());
    }
    check("identity", worst < 1e-7, format!("max |E_n(1) - 1| = {worst:.3e}"));

    // the two partial-sum routes agree across the smooth catalog
    let mut gap = 0.0_f64;
    for f in smooth_catalog(r.dim)? {
        for n in [4usize, 8, 16] {
            for alpha in [0.5, 1.0] {
                let params = SummationParams::new(r.dim, n, alpha, Method::Riesz)?;
                let a = partial_sum_spectral(&f, &params, &x, &r.rule)?;
                let b = partial_sum_kernel(&f, &params, &x, &r.rule)?;
                gap = gap.max((a - b).abs());
            }
        }
    }
    check("route-equivalence", gap < 1e-6, format!("max gap = {gap:.3e}"));

    // kernel mass over the sphere
    let mut mass_err = 0.0_f64;
    for n in [16usize, 64] {
        let params = SummationParams::new(r.dim, n, (r.dim as f64 - 1.0) / 2.0, r.method)?;
        let rule = r.rule.with_min_nodes(20 * n)?;
        let mass = integrate_1d(
            &|g: f64| {
                riesz_kernel_exact(&params, g).unwrap()
                    * spheresum::special::surface_area(r.dim - 1)
                    * g.sin().powi(r.dim as i32 - 1)
            },
            0.0,
            PI,
            &rule,
        )?;
        mass_err = mass_err.max((mass - 1.0).abs());
    }
    check("kernel-mass", mass_err < 1e-8, format!("max |mass - 1| = {mass_err:.3e}"));

    // reproducing property of the zonal projectors:
    // int Z_k(x.y) Z_k(z.y) dsigma(y) = Z_k(x.z), and cross terms vanish
    let z = SpherePoint::new({
        let mut c = vec![0.0; r.dim + 1];
        c[0] = 0.6;
        c[r.dim] = 0.8;
        c
    })?;
    let mut reproduce_err = 0.0_f64;
    for k in [1usize, 3] {
        let got = integrate_sphere(
            &|y: &SpherePoint| {
                let a = geodesic_distance(&x, y).unwrap();
                let b = geodesic_distance(&z, y).unwrap();
                spheresum::kernels::zonal_projector(k, r.dim, a).unwrap()
                    * spheresum::kernels::zonal_projector(k, r.dim, b).unwrap()
            },
            &x,
            &r.rule,
        )?;
        let want =
            spheresum::kernels::zonal_projector(k, r.dim, geodesic_distance(&x, &z)?)?;
        reproduce_err = reproduce_err.max((got - want).abs());
    }
    let cross = integrate_sphere(
        &|y: &SpherePoint| {
            let a = geodesic_distance(&x, y).unwrap();
            let b = geodesic_distance(&z, y).unwrap();
            spheresum::kernels::zonal_projector(1, r.dim, a).unwrap()
                * spheresum::kernels::zonal_projector(2, r.dim, b).unwrap()
        },
        &x,
        &r.rule,
    )?;
    reproduce_err = reproduce_err.max(cross.abs());
    check(
        "reproducing-property",
        reproduce_err < 1e-8,
        format!("max error = {reproduce_err:.3e}"),
    );

    if ok {
        println!("selftest: all checks passed");
        Ok(0)
    } else {
        Ok(2)
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::InvalidArgument(_) | Error::DimensionMismatch { .. } => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match &cli.command {
        Command::Kernel(opts) => resolve(opts).and_then(|r| cmd_kernel(&r).map(|_| 0)),
        Command::Asymptotic(opts) => resolve(opts).and_then(|r| cmd_asymptotic(&r).map(|_| 0)),
        Command::Sum(opts) => resolve(opts).and_then(|r| cmd_sum(&r).map(|_| 0)),
        Command::Sweep(opts) => resolve(opts).and_then(|r| cmd_sweep(&r).map(|_| 0)),
        Command::Scenario { opts, strict } => {
            resolve(opts).and_then(|r| cmd_scenario(&r, *strict))
        }
        Command::Selftest(opts) => resolve(opts).and_then(|r| cmd_selftest(&r)),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
