//! Named experiment scenarios and the orchestration that turns them into
//! reproducible CSV runs.
//!
//! Each scenario fixes a test function, an observation point, and a grid of
//! (alpha, method) cells to sweep over a cutoff ladder. Construction is
//! strict: a scenario whose hypotheses are not machine-checkable (cap radii,
//! alpha range, integrability arithmetic) fails to build rather than running
//! silently out of regime. Verdicts separate what the theory asserts
//! (decay-to-zero scenarios get PASS/FAIL against declared thresholds) from
//! what is merely demonstrated (exploratory scenarios are OBSERVED, never
//! judged).

use crate::csvout::{sig17, write_atomic};
use crate::error::{Error, Result};
use crate::fit::{loglog_fit, trailing_half_max};
use crate::kernels::Method;
use crate::quadrature::QuadratureRule;
use crate::sphere::{antipode, geodesic_distance, SpherePoint, SphericalCap};
use crate::summation::{
    antipodal_integral, convergence_sweep, AntipodalReport, AntipodalStatus, ConvergenceRecord,
    TestFunction,
};
use sha2::{Digest, Sha256};
use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::sync::Arc;

/// Default cutoff ladder: geometric-ish spacing, slope-fit friendly, and
/// desk-scale runtime on S^2.
pub const DEFAULT_LADDER: [usize; 9] = [16, 24, 32, 48, 64, 96, 128, 192, 256];

/// Width of the antipodal window the diagnostic integral uses.
pub const DEFAULT_ANTIPODAL_EPS: f64 = 0.5;

/// Integrability witness advertised by the bounded-antipodal scenario.
pub const DEFAULT_P_WITNESS: f64 = 1.5;

/// Pointwise evaluation of singular functions clamps the distance here.
pub const DEFAULT_MOLLIFY_RADIUS: f64 = 1e-3;

/// What a scenario's dynamics are expected to do, which fixes how its
/// summary rows are judged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    /// Hypotheses of a convergence statement hold; decay is asserted.
    DecayToZero,
    /// Hypotheses are deliberately violated; no assertion either way.
    NoDecayExpected,
    /// Demonstration outside any stated regime.
    Exploratory,
    /// f = 1 must be reproduced exactly at every cutoff.
    IdentityOne,
}

impl Expectation {
    pub fn name(self) -> &'static str {
        match self {
            Expectation::DecayToZero => "decay-to-zero",
            Expectation::NoDecayExpected => "no-decay-expected",
            Expectation::Exploratory => "exploratory",
            Expectation::IdentityOne => "identity-one",
        }
    }
}

/// Judgment of one (alpha, method) cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Observed,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Observed => "OBSERVED",
        }
    }
}

/// A named, fully validated experiment: function, point, parameter grid,
/// and the expectation its verdicts are judged against.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub function: TestFunction,
    pub point: SpherePoint,
    pub alphas: Vec<f64>,
    pub methods: Vec<Method>,
    pub ladder: Vec<usize>,
    pub expectation: Expectation,
    pub antipodal_eps: f64,
    /// Conjugate-exponent bookkeeping, present when the scenario advertises
    /// an L^p witness.
    pub p_witness: Option<f64>,
    /// Ordered key=value pairs covered by the manifest hash.
    pub config: Vec<(String, String)>,
}

impl Scenario {
    /// Replace the cutoff ladder, keeping the hashed config in sync.
    pub fn with_ladder(mut self, ladder: Vec<usize>) -> Self {
        let joined = ladder
            .iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>()
            .join(",");
        match self.config.iter_mut().find(|(k, _)| k == "ladder") {
            Some(slot) => slot.1 = joined,
            None => self.config.push(("ladder".into(), joined)),
        }
        self.ladder = ladder;
        self
    }
}

/// One summary row; serializes under
/// `scenario,method,N,alpha,slope,trailing_max,verdict`.
#[derive(Debug, Clone)]
pub struct SummaryRow {
    pub scenario: String,
    pub method: Method,
    pub dim: usize,
    pub alpha: f64,
    pub slope: f64,
    pub trailing_max: f64,
    pub verdict: Verdict,
}

impl SummaryRow {
    pub const CSV_HEADER: &'static str = "scenario,method,N,alpha,slope,trailing_max,verdict";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.scenario,
            self.method.name(),
            self.dim,
            sig17(self.alpha),
            sig17(self.slope),
            sig17(self.trailing_max),
            self.verdict.name()
        )
    }
}

/// Everything a completed run reports besides the CSV files themselves.
#[derive(Debug, Clone)]
pub struct RunManifest {
    pub scenario: String,
    pub config_hash: String,
    pub tool_version: String,
    pub timestamp_unix: u64,
    pub outputs: Vec<PathBuf>,
    pub summary: Vec<SummaryRow>,
    pub records: Vec<ConvergenceRecord>,
    pub antipodal: AntipodalReport,
}

/// exp(1 - 1/(1 - s^2)) inside |s| < 1, zero outside: a smooth profile with
/// peak value 1 and all derivatives vanishing at the support boundary.
pub fn bump_profile(s: f64) -> f64 {
    if s.abs() < 1.0 {
        (1.0 - 1.0 / (1.0 - s * s)).exp()
    } else {
        0.0
    }
}

/// Smooth ramp: 0 for s <= 0, 1 for s >= 1, strictly increasing between.
pub fn smooth_ramp(s: f64) -> f64 {
    fn a(s: f64) -> f64 {
        if s > 0.0 {
            (-1.0 / s).exp()
        } else {
            0.0
        }
    }
    let num = a(s);
    num / (num + a(1.0 - s))
}

/// Colatitude band bump about the north pole of S^dim: supported on
/// lo <= gamma <= hi, peak 1 at the midpoint, with the complementary caps
/// recorded as vanishing caps.
fn band_bump(dim: usize, lo: f64, hi: f64, id: &str) -> Result<TestFunction> {
    if !(0.0 < lo && lo < hi && hi < PI) {
        return Err(Error::InvalidArgument(format!(
            "band [{lo}, {hi}] does not fit inside (0, pi)"
        )));
    }
    let pole = SpherePoint::north_pole(dim)?;
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let center = pole.clone();
    let eval = move |y: &SpherePoint| {
        let gamma = geodesic_distance(&center, y).unwrap();
        bump_profile((gamma - mid) / half)
    };
    Ok(TestFunction::new(id, Arc::new(eval))
        .with_cap(SphericalCap::new(pole.clone(), lo)?)
        .with_cap(SphericalCap::new(antipode(&pole), PI - hi)?)
        .with_peak_abs(1.0)
        .with_lp_note("smooth, bounded by 1; in L^p for every p"))
}

fn check_eps(label: &str, eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps < PI / 4.0) {
        return Err(Error::InvalidArgument(format!(
            "{label} must lie in (0, pi/4), got {eps}"
        )));
    }
    Ok(())
}

fn critical_order(dim: usize) -> f64 {
    (dim as f64 - 1.0) / 2.0
}

fn base_config(name: &str, dim: usize) -> Vec<(String, String)> {
    vec![
        ("scenario".into(), name.to_string()),
        ("dim".into(), dim.to_string()),
    ]
}

fn push_grid_config(cfg: &mut Vec<(String, String)>, sc: &Scenario) {
    let alphas = sc
        .alphas
        .iter()
        .map(|a| format!("{a:?}"))
        .collect::<Vec<_>>()
        .join(",");
    let methods = sc
        .methods
        .iter()
        .map(|m| m.name().to_string())
        .collect::<Vec<_>>()
        .join(",");
    let ladder = sc
        .ladder
        .iter()
        .map(|n| n.to_string())
        .collect::<Vec<_>>()
        .join(",");
    cfg.push(("alphas".into(), alphas));
    cfg.push(("methods".into(), methods));
    cfg.push(("ladder".into(), ladder));
    cfg.push(("expectation".into(), sc.expectation.name().into()));
    cfg.push(("antipodal_eps".into(), format!("{:?}", sc.antipodal_eps)));
}

fn finish_scenario(mut sc: Scenario, extra: &[(&str, String)]) -> Scenario {
    let mut cfg = base_config(&sc.name, sc.point.dim());
    for (k, v) in extra {
        cfg.push((k.to_string(), v.clone()));
    }
    push_grid_config(&mut cfg, &sc);
    sc.config = cfg;
    sc
}

/// Both caps vanish and the order sits at the critical index (N-1)/2:
/// the regime where decay at the observation point is asserted.
pub fn scenario_theorem1(eps1: f64, eps2: f64, dim: usize) -> Result<Scenario> {
    check_eps("eps1", eps1)?;
    check_eps("eps2", eps2)?;
    let lo = eps1 + 0.2;
    let hi = PI - eps2 - 0.2;
    let function = band_bump(dim, lo, hi, "band-bump")?;
    let point = SpherePoint::north_pole(dim)?;
    let sc = Scenario {
        name: "theorem1".into(),
        function,
        point,
        alphas: vec![critical_order(dim)],
        methods: vec![Method::Riesz],
        ladder: DEFAULT_LADDER.to_vec(),
        expectation: Expectation::DecayToZero,
        antipodal_eps: DEFAULT_ANTIPODAL_EPS,
        p_witness: None,
        config: Vec::new(),
    };
    Ok(finish_scenario(
        sc,
        &[
            ("eps1", format!("{eps1:?}")),
            ("eps2", format!("{eps2:?}")),
        ],
    ))
}

/// One vanishing cap at the observation point plus a bounded bump at the
/// antipode; alpha anywhere in [(N-1)/2, N-1) and an explicit L^p witness
/// above the localization threshold 2 - 2/(N+1).
pub fn scenario_theorem2(eps1: f64, alpha: f64, dim: usize, p_witness: f64) -> Result<Scenario> {
    check_eps("eps1", eps1)?;
    let lo_a = critical_order(dim);
    let hi_a = dim as f64 - 1.0;
    if !(alpha >= lo_a && alpha < hi_a) {
        return Err(Error::InvalidArgument(format!(
            "alpha={alpha} outside the admissible order range [(N-1)/2, N-1) = [{lo_a}, {hi_a}) at N={dim}"
        )));
    }
    let p_min = 2.0 - 2.0 / (dim as f64 + 1.0);
    if !(p_witness > p_min) {
        return Err(Error::InvalidArgument(format!(
            "p_witness={p_witness} must exceed 2 - 2/(N+1) = {p_min} at N={dim}"
        )));
    }
    let pole = SpherePoint::north_pole(dim)?;
    let band = band_bump(dim, eps1 + 0.2, 2.4, "band-part")?;
    let center = pole.clone();
    let eval = move |y: &SpherePoint| {
        let gamma = geodesic_distance(&center, y).unwrap();
        band.value(y) + bump_profile((PI - gamma) / 0.35)
    };
    let function = TestFunction::new("band-plus-antipodal-bump", Arc::new(eval))
        .with_cap(SphericalCap::new(pole.clone(), eps1)?)
        .with_peak_abs(1.0)
        .with_lp_note("smooth, bounded by 1; in L^p for every p");
    let sc = Scenario {
        name: "theorem2".into(),
        function,
        point: pole,
        alphas: vec![alpha],
        methods: vec![Method::Riesz],
        ladder: DEFAULT_LADDER.to_vec(),
        expectation: Expectation::DecayToZero,
        antipodal_eps: DEFAULT_ANTIPODAL_EPS,
        p_witness: Some(p_witness),
        config: Vec::new(),
    };
    Ok(finish_scenario(
        sc,
        &[
            ("eps1", format!("{eps1:?}")),
            ("alpha", format!("{alpha:?}")),
            ("p_witness", format!("{p_witness:?}")),
        ],
    ))
}

/// Power-law singularity dist(antipode, .)^{-beta} at the antipode, smooth
/// ramp away from the vanishing cap at the observation point. The probe
/// wants f integrable but outside every L^p above the localization
/// threshold p_min = 2 - 2/(N+1): dist^{-beta} is in L^p iff beta p < N,
/// which pins beta to [N / p_min, N) = [(N+1)/2, N).
pub fn scenario_antipodal_singular(eps1: f64, beta: f64, dim: usize) -> Result<Scenario> {
    scenario_antipodal_singular_with_mollify(eps1, beta, dim, DEFAULT_MOLLIFY_RADIUS)
}

/// Same scenario with an explicit mollification radius (the distance clamp
/// applied before raising to -beta).
pub fn scenario_antipodal_singular_with_mollify(
    eps1: f64,
    beta: f64,
    dim: usize,
    mollify: f64,
) -> Result<Scenario> {
    check_eps("eps1", eps1)?;
    if !(mollify > 0.0 && mollify < 0.1) {
        return Err(Error::InvalidArgument(format!(
            "mollification radius must lie in (0, 0.1), got {mollify}"
        )));
    }
    let n = dim as f64;
    if beta >= n {
        return Err(Error::InvalidArgument(format!(
            "beta={beta} >= N={dim}: dist^(-beta) is not integrable on S^{dim}"
        )));
    }
    let p_min = 2.0 - 2.0 / (n + 1.0);
    let beta_lo = n / p_min;
    if beta < beta_lo {
        return Err(Error::InvalidArgument(format!(
            "beta={beta} leaves f in L^p past the threshold p={p_min}; the probe needs beta in [{beta_lo}, {n})"
        )));
    }
    let pole = SpherePoint::north_pole(dim)?;
    let xbar = antipode(&pole);
    let center = pole.clone();
    let sing = xbar.clone();
    let ramp_width = 0.2;
    let eval = move |y: &SpherePoint| {
        let gamma = geodesic_distance(&center, y).unwrap();
        let d = geodesic_distance(&sing, y).unwrap().max(mollify);
        smooth_ramp((gamma - eps1) / ramp_width) * d.powf(-beta)
    };
    let peak = mollify.powf(-beta);
    let function = TestFunction::new("antipodal-power-law", Arc::new(eval))
        .with_cap(SphericalCap::new(pole.clone(), eps1)?)
        .with_singularity(xbar, beta)
        .with_peak_abs(peak)
        .with_lp_note(&format!(
            "in L^1, outside L^p for p > {p_min:.6} (beta={beta})"
        ));
    let sc = Scenario {
        name: "antipodal-singular".into(),
        function,
        point: pole,
        alphas: vec![critical_order(dim)],
        methods: vec![Method::Riesz],
        ladder: DEFAULT_LADDER.to_vec(),
        expectation: Expectation::NoDecayExpected,
        antipodal_eps: DEFAULT_ANTIPODAL_EPS,
        p_witness: None,
        config: Vec::new(),
    };
    Ok(finish_scenario(
        sc,
        &[
            ("eps1", format!("{eps1:?}")),
            ("beta", format!("{beta:?}")),
            ("mollify_radius", format!("{mollify:?}")),
        ],
    ))
}

/// The band-bump function summed below the critical index; demonstration
/// only, nothing is asserted there.
pub fn scenario_below_critical(eps1: f64, eps2: f64, dim: usize) -> Result<Scenario> {
    let mut sc = scenario_theorem1(eps1, eps2, dim)?;
    sc.name = "below-critical".into();
    sc.alphas = vec![critical_order(dim) / 2.0];
    sc.expectation = Expectation::Exploratory;
    sc.config = Vec::new();
    Ok(finish_scenario(
        sc,
        &[
            ("eps1", format!("{eps1:?}")),
            ("eps2", format!("{eps2:?}")),
        ],
    ))
}

/// The band-bump function under both summation methods at the critical
/// index; reports paired slopes without ranking the methods.
pub fn scenario_cesaro_compare(eps1: f64, eps2: f64, dim: usize) -> Result<Scenario> {
    let mut sc = scenario_theorem1(eps1, eps2, dim)?;
    sc.name = "cesaro-compare".into();
    sc.methods = vec![Method::Riesz, Method::Cesaro];
    sc.expectation = Expectation::Exploratory;
    sc.config = Vec::new();
    Ok(finish_scenario(
        sc,
        &[
            ("eps1", format!("{eps1:?}")),
            ("eps2", format!("{eps2:?}")),
        ],
    ))
}

/// f = 1 under both methods: every partial sum must return exactly 1, the
/// multiplier normalization check in scenario form.
pub fn scenario_identity(dim: usize) -> Result<Scenario> {
    let function = TestFunction::new("one", Arc::new(|_: &SpherePoint| 1.0))
        .with_peak_abs(1.0)
        .with_lp_note("constant");
    let sc = Scenario {
        name: "identity".into(),
        function,
        point: SpherePoint::north_pole(dim)?,
        alphas: vec![critical_order(dim)],
        methods: vec![Method::Riesz, Method::Cesaro],
        ladder: DEFAULT_LADDER.to_vec(),
        expectation: Expectation::IdentityOne,
        antipodal_eps: DEFAULT_ANTIPODAL_EPS,
        p_witness: None,
        config: Vec::new(),
    };
    Ok(finish_scenario(sc, &[]))
}

/// Catalog dispatch by scenario name, with the shared knobs every entry
/// understands. `alpha` is honored where the scenario admits a range
/// (theorem2); the others pin their own order.
pub fn scenario_by_name(
    name: &str,
    dim: usize,
    eps1: f64,
    eps2: f64,
    alpha: f64,
    beta: f64,
) -> Result<Scenario> {
    match name {
        "theorem1" => scenario_theorem1(eps1, eps2, dim),
        "theorem2" => scenario_theorem2(eps1, alpha, dim, DEFAULT_P_WITNESS),
        "antipodal-singular" => scenario_antipodal_singular(eps1, beta, dim),
        "below-critical" => scenario_below_critical(eps1, eps2, dim),
        "cesaro-compare" => scenario_cesaro_compare(eps1, eps2, dim),
        "identity" => scenario_identity(dim),
        other => Err(Error::InvalidArgument(format!(
            "unknown scenario '{other}'; catalog: theorem1, theorem2, antipodal-singular, below-critical, cesaro-compare, identity"
        ))),
    }
}

/// The five smooth functions the cross-route checks sweep: constant,
/// a degree-1 harmonic, a degree-2 zonal, a full-spectrum exponential,
/// and the compactly supported band bump.
pub fn smooth_catalog(dim: usize) -> Result<Vec<TestFunction>> {
    use crate::special::{gegenbauer_at_one, gegenbauer_eval_all};
    let nu = (dim as f64 - 1.0) / 2.0;

    let one = TestFunction::new("one", Arc::new(|_: &SpherePoint| 1.0)).with_peak_abs(1.0);

    let coordinate =
        TestFunction::new("coordinate", Arc::new(|y: &SpherePoint| y.coords()[0])).with_peak_abs(1.0);

    let scale = gegenbauer_at_one(nu, 2);
    let zonal2 = TestFunction::new(
        "zonal-degree-2",
        Arc::new(move |y: &SpherePoint| {
            // unit-vector roundoff can push the coordinate past 1
            let t = y.coords().last().copied().unwrap().clamp(-1.0, 1.0);
            gegenbauer_eval_all(nu, 2, t).unwrap()[2] / scale
        }),
    )
    .with_peak_abs(1.0);

    let tilt = {
        let mut c = vec![0.35; dim + 1];
        c[0] = 0.6;
        c[dim] = -0.5;
        SpherePoint::new(c)?
    };
    let exponential = TestFunction::new(
        "off-axis-exponential",
        Arc::new(move |y: &SpherePoint| tilt.dot(y).exp()),
    )
    .with_peak_abs(std::f64::consts::E);

    let band = band_bump(dim, 0.6, PI - 0.6, "band-bump")?;

    Ok(vec![one, coordinate, zonal2, exponential, band])
}

fn verdict_for(
    expectation: Expectation,
    values: &[f64],
    peak_abs: f64,
    slope: f64,
    trailing_max: f64,
) -> Verdict {
    match expectation {
        Expectation::DecayToZero => {
            if slope < 0.0 && trailing_max < 0.05 * peak_abs {
                Verdict::Pass
            } else {
                Verdict::Fail
            }
        }
        Expectation::IdentityOne => {
            if values.iter().all(|v| (v - 1.0).abs() < 1e-7) {
                Verdict::Pass
            } else {
                Verdict::Fail
            }
        }
        Expectation::NoDecayExpected | Expectation::Exploratory => Verdict::Observed,
    }
}

fn config_hash(scenario: &Scenario, rule: &QuadratureRule) -> String {
    let mut hasher = Sha256::new();
    for (k, v) in &scenario.config {
        hasher.update(k.as_bytes());
        hasher.update(b"=");
        hasher.update(v.as_bytes());
        hasher.update(b"\n");
    }
    hasher.update(format!(
        "quad_panels={}\nquad_points={}\n",
        rule.panels, rule.points_per_panel
    ));
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Conjugate exponent q of p (1/p + 1/q = 1).
fn conjugate_exponent(p: f64) -> f64 {
    p / (p - 1.0)
}

/// Execute every grid cell of the scenario, writing one records CSV per
/// cell, a summary CSV, and a key=value manifest into out_dir. Files are
/// written atomically; on any failure the partial outputs are removed.
pub fn run(scenario: &Scenario, out_dir: &Path, rule: &QuadratureRule) -> Result<RunManifest> {
    std::fs::create_dir_all(out_dir)?;
    let mut outputs: Vec<PathBuf> = Vec::new();
    let attempt = (|| -> Result<(Vec<SummaryRow>, Vec<ConvergenceRecord>, AntipodalReport)> {
        let mut summary = Vec::new();
        let mut all_records = Vec::new();
        for &alpha in &scenario.alphas {
            for &method in &scenario.methods {
                let records = convergence_sweep(
                    &scenario.name,
                    &scenario.function,
                    &scenario.point,
                    alpha,
                    method,
                    &scenario.ladder,
                    rule,
                )?;
                let mut csv = String::from(ConvergenceRecord::CSV_HEADER);
                csv.push('\n');
                for r in &records {
                    csv.push_str(&r.csv_row());
                    csv.push('\n');
                }
                let path = out_dir.join(format!(
                    "{}-{}-alpha{:?}.csv",
                    scenario.name,
                    method.name(),
                    alpha
                ));
                write_atomic(&path, &csv)?;
                outputs.push(path);
                let values: Vec<f64> = records.iter().map(|r| r.value).collect();
                let (slope, _) = loglog_fit(&scenario.ladder, &values)?;
                let trailing = trailing_half_max(&values);
                summary.push(SummaryRow {
                    scenario: scenario.name.clone(),
                    method,
                    dim: scenario.point.dim(),
                    alpha,
                    slope,
                    trailing_max: trailing,
                    verdict: verdict_for(
                        scenario.expectation,
                        &values,
                        scenario.function.peak_abs,
                        slope,
                        trailing,
                    ),
                });
                all_records.extend(records);
            }
        }
        let antipodal = antipodal_integral(
            &scenario.function,
            &scenario.point,
            scenario.antipodal_eps,
            rule,
        )?;
        let mut csv = String::from(SummaryRow::CSV_HEADER);
        csv.push('\n');
        for row in &summary {
            csv.push_str(&row.csv_row());
            csv.push('\n');
        }
        let summary_path = out_dir.join(format!("{}-summary.csv", scenario.name));
        write_atomic(&summary_path, &csv)?;
        outputs.push(summary_path);
        Ok((summary, all_records, antipodal))
    })();
    let (summary, records, antipodal) = match attempt {
        Ok(v) => v,
        Err(e) => {
            for p in &outputs {
                let _ = std::fs::remove_file(p);
            }
            return Err(e);
        }
    };

    let config_hash = config_hash(scenario, rule);
    let tool_version = env!("CARGO_PKG_VERSION").to_string();
    let timestamp_unix = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);

    let mut manifest_text = String::new();
    manifest_text.push_str(&format!("scenario={}\n", scenario.name));
    manifest_text.push_str(&format!("tool_version={tool_version}\n"));
    manifest_text.push_str(&format!("timestamp_unix={timestamp_unix}\n"));
    manifest_text.push_str(&format!("config_hash={config_hash}\n"));
    for (k, v) in &scenario.config {
        if k != "scenario" {
            manifest_text.push_str(&format!("{k}={v}\n"));
        }
    }
    manifest_text.push_str(&format!("quad_panels={}\n", rule.panels));
    manifest_text.push_str(&format!("quad_points={}\n", rule.points_per_panel));
    manifest_text.push_str(&format!("function={}\n", scenario.function.id));
    if !scenario.function.lp_note.is_empty() {
        manifest_text.push_str(&format!("lp_note={}\n", scenario.function.lp_note));
    }
    if let Some((_, beta)) = &scenario.function.singularity {
        manifest_text.push_str(&format!("singularity_beta={beta:?}\n"));
        manifest_text.push_str(&format!(
            "mollified_peak={}\n",
            sig17(scenario.function.peak_abs)
        ));
    }
    if let Some(p) = scenario.p_witness {
        // the two exponent readings of the Holder step do not agree; record
        // both and test only the final integral
        let q = conjugate_exponent(p);
        let n = scenario.point.dim() as f64;
        manifest_text.push_str(&format!("holder_q={q:?}\n"));
        manifest_text.push_str(&format!(
            "holder_exponent_product_form={:?}\n",
            (n - 1.0) * q / 2.0 - n - 1.0
        ));
        manifest_text.push_str(&format!(
            "holder_exponent_condition_form={:?}\n",
            q * (n - 1.0) / 2.0 - n
        ));
    }
    manifest_text.push_str(&format!("antipodal_value={}\n", sig17(antipodal.value)));
    manifest_text.push_str(&format!(
        "antipodal_status={}\n",
        match antipodal.status {
            AntipodalStatus::Finite => "finite",
            AntipodalStatus::Diverging => "diverging",
        }
    ));
    for row in &summary {
        manifest_text.push_str(&format!(
            "verdict_{}_alpha{:?}={}\n",
            row.method.name(),
            row.alpha,
            row.verdict.name()
        ));
    }
    for p in &outputs {
        manifest_text.push_str(&format!("output={}\n", p.display()));
    }
    let manifest_path = out_dir.join(format!("{}-manifest.txt", scenario.name));
    write_atomic(&manifest_path, &manifest_text)?;
    outputs.push(manifest_path);

    Ok(RunManifest {
        scenario: scenario.name.clone(),
        config_hash,
        tool_version,
        timestamp_unix,
        outputs,
        summary,
        records,
        antipodal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tmp_dir(tag: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!(
            "spheresum-test-{}-{tag}",
            std::process::id()
        ));
        let _ = std::fs::remove_dir_all(&dir);
        dir
    }

    #[test]
    fn profile_and_ramp_shapes() {
        assert_eq!(bump_profile(1.0), 0.0);
        assert_eq!(bump_profile(-1.2), 0.0);
        assert!((bump_profile(0.0) - 1.0).abs() < 1e-15);
        assert!(bump_profile(0.5) > bump_profile(0.9));
        assert_eq!(smooth_ramp(0.0), 0.0);
        assert_eq!(smooth_ramp(1.0), 1.0);
        assert!(smooth_ramp(0.3) < smooth_ramp(0.7));
    }

    #[test]
    fn theorem1_scenario_validates_and_vanishes_on_caps() {
        assert!(scenario_theorem1(0.9, 0.4, 2).is_err());
        assert!(scenario_theorem1(0.4, -0.1, 2).is_err());
        let sc = scenario_theorem1(0.4, 0.4, 2).unwrap();
        assert_eq!(sc.alphas, vec![0.5]);
        assert_eq!(sc.expectation, Expectation::DecayToZero);
        assert_eq!(sc.function.vanishing_caps.len(), 2);
        assert_eq!(sc.function.value(&sc.point), 0.0);
        assert_eq!(sc.function.value(&antipode(&sc.point)), 0.0);
        let sc3 = scenario_theorem1(0.4, 0.4, 3).unwrap();
        assert_eq!(sc3.alphas, vec![1.0]);
    }

    #[test]
    fn theorem2_scenario_range_checks() {
        let err = scenario_theorem2(0.4, 1.0, 2, 1.5).unwrap_err().to_string();
        assert!(err.contains("[0.5, 1)"), "{err}");
        let err = scenario_theorem2(0.4, 0.5, 2, 1.2).unwrap_err().to_string();
        assert!(err.contains("2 - 2/(N+1)"), "{err}");
        let sc = scenario_theorem2(0.4, 0.5, 2, 1.5).unwrap();
        assert_eq!(sc.function.vanishing_caps.len(), 1);
        assert_eq!(sc.function.value(&sc.point), 0.0);
        // bounded bump peaks at the antipode
        let v = sc.function.value(&antipode(&sc.point));
        assert!((v - 1.0).abs() < 1e-12, "antipodal value {v}");
        assert_eq!(sc.p_witness, Some(1.5));
    }

    #[test]
    fn antipodal_singular_scenario_beta_window() {
        // too tame: stays in L^p above the threshold
        assert!(scenario_antipodal_singular(0.4, 1.0, 2).is_err());
        // too wild: not even integrable
        assert!(scenario_antipodal_singular(0.4, 2.2, 2).is_err());
        let sc = scenario_antipodal_singular(0.4, 1.8, 2).unwrap();
        assert_eq!(sc.expectation, Expectation::NoDecayExpected);
        assert_eq!(sc.function.value(&sc.point), 0.0);
        let near = sc.function.value(&antipode(&sc.point));
        assert!((near - 1e-3_f64.powf(-1.8)).abs() / near < 1e-12);
        assert!(sc.function.singularity.is_some());
    }

    #[test]
    fn catalog_dispatch_and_unknown_name() {
        for name in [
            "theorem1",
            "theorem2",
            "antipodal-singular",
            "below-critical",
            "cesaro-compare",
            "identity",
        ] {
            let sc = scenario_by_name(name, 2, 0.4, 0.4, 0.5, 1.8).unwrap();
            assert_eq!(sc.name, name);
        }
        assert!(scenario_by_name("nope", 2, 0.4, 0.4, 0.5, 1.8).is_err());
    }

    #[test]
    fn smooth_catalog_has_five_entries() {
        let cat = smooth_catalog(2).unwrap();
        assert_eq!(cat.len(), 5);
        let north = SpherePoint::north_pole(2).unwrap();
        // degree-2 zonal normalized to 1 at its pole
        assert!((cat[2].value(&north) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn config_hash_tracks_every_field() {
        let rule = QuadratureRule::default_rule();
        let a = scenario_theorem1(0.4, 0.4, 2).unwrap();
        let b = scenario_theorem1(0.41, 0.4, 2).unwrap();
        let a2 = scenario_theorem1(0.4, 0.4, 2).unwrap();
        assert_eq!(config_hash(&a, &rule), config_hash(&a2, &rule));
        assert_ne!(config_hash(&a, &rule), config_hash(&b, &rule));
        let coarse = QuadratureRule::new(32, 16).unwrap();
        assert_ne!(config_hash(&a, &rule), config_hash(&a, &coarse));
        let mut c = scenario_theorem1(0.4, 0.4, 2).unwrap();
        c.ladder = vec![4, 8];
        let c = finish_scenario(c, &[("eps1", "0.4".into()), ("eps2", "0.4".into())]);
        assert_ne!(config_hash(&a, &rule), config_hash(&c, &rule));
    }

    #[test]
    fn identity_run_passes_and_reports() {
        let mut sc = scenario_identity(2).unwrap();
        sc.ladder = vec![2, 3, 4];
        sc.config.clear();
        let sc = finish_scenario(sc, &[]);
        let dir = tmp_dir("identity");
        let rule = QuadratureRule::default_rule();
        let manifest = run(&sc, &dir, &rule).unwrap();
        assert_eq!(manifest.summary.len(), 2);
        for row in &manifest.summary {
            assert_eq!(row.verdict, Verdict::Pass);
        }
        for r in &manifest.records {
            assert!((r.value - 1.0).abs() < 1e-7);
        }
        // records CSVs (2 cells) + summary + manifest
        assert_eq!(manifest.outputs.len(), 4);
        for p in &manifest.outputs {
            assert!(p.exists(), "missing {}", p.display());
        }
        let summary_text = std::fs::read_to_string(
            manifest
                .outputs
                .iter()
                .find(|p| p.to_string_lossy().contains("summary"))
                .unwrap(),
        )
        .unwrap();
        assert!(summary_text.starts_with(SummaryRow::CSV_HEADER));
        assert!(summary_text.contains(",PASS"));
        let _ = std::fs::remove_dir_all(&dir);
    }

    #[test]
    fn reruns_are_byte_identical() {
        let mut sc = scenario_theorem1(0.4, 0.4, 2).unwrap();
        sc.ladder = vec![4, 6, 8, 12];
        sc.config.clear();
        let sc = finish_scenario(
            sc,
            &[("eps1", "0.4".into()), ("eps2", "0.4".into())],
        );
        let rule = QuadratureRule::default_rule();
        let dir1 = tmp_dir("rerun-a");
        let dir2 = tmp_dir("rerun-b");
        let m1 = run(&sc, &dir1, &rule).unwrap();
        let m2 = run(&sc, &dir2, &rule).unwrap();
        assert_eq!(m1.config_hash, m2.config_hash);
        for (p1, p2) in m1.outputs.iter().zip(&m2.outputs) {
            if p1.extension().map(|e| e == "csv").unwrap_or(false) {
                let b1 = std::fs::read(p1).unwrap();
                let b2 = std::fs::read(p2).unwrap();
                assert_eq!(b1, b2, "{} differs", p1.display());
            }
        }
        let _ = std::fs::remove_dir_all(&dir1);
        let _ = std::fs::remove_dir_all(&dir2);
    }
}
