//! Zonal kernels of the summation methods on S^N.
//!
//! The degree-k zonal projector is Z_k(cos gamma) = c_{k,N} C_k^{(N-1)/2}(cos gamma)
//! with c_{k,N} fixed by the reproducing property through Z_k(1) = a_k / omega_N,
//! which reduces to the closed form c_{k,N} = (2k+N-1) / ((N-1) omega_N) since
//! C_k^{(N-1)/2}(1) equals the same binomial as a_k up to (2k+N-1)/(N-1).
//!
//! The summation kernel is Theta_n^alpha(cos gamma) = sum_k m_k Z_k(cos gamma)
//! with m_k the Riesz multiplier (1 - lambda_k/lambda_n)^alpha or the Cesaro
//! ratio A_{n-k}^alpha / A_n^alpha. The asymptotic evaluator reproduces the
//! oscillatory leading term verbatim together with the two error envelopes it
//! is stated with; the fit helper measures how well that description tracks
//! the exact kernel.

use crate::error::{Error, Result};
use crate::fit::loglog_fit;
use crate::special::{eigenvalue, gegenbauer_eval_all, surface_area};
use rayon::prelude::*;
use std::f64::consts::PI;

/// Summation method for the partial sums E_n^alpha.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Riesz,
    Cesaro,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Riesz => "riesz",
            Method::Cesaro => "cesaro",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "riesz" => Ok(Method::Riesz),
            "cesaro" => Ok(Method::Cesaro),
            other => Err(Error::InvalidArgument(format!(
                "unknown method '{other}', expected riesz or cesaro"
            ))),
        }
    }
}

/// Parameters of one partial-sum evaluation: sphere dimension N, cutoff
/// degree n, order alpha, and the summation method.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummationParams {
    pub dim: usize,
    pub n: usize,
    pub alpha: f64,
    pub method: Method,
}

impl SummationParams {
    pub fn new(dim: usize, n: usize, alpha: f64, method: Method) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidArgument(format!(
                "sphere dimension must be >= 2, got {dim}"
            )));
        }
        if n < 1 {
            return Err(Error::InvalidArgument(
                "cutoff degree n must be >= 1 (the Riesz multiplier divides by lambda_n)".into(),
            ));
        }
        if !(alpha >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "summation order alpha must be >= 0, got {alpha}"
            )));
        }
        Ok(Self {
            dim,
            n,
            alpha,
            method,
        })
    }
}

/// Riesz multiplier (1 - lambda_k/lambda_n)^alpha, in [0, 1].
///
/// The k = n term is 0 for every alpha including alpha = 0, so the Riesz
/// sum at alpha = 0 differs from the sharp cutoff in exactly that one term.
pub fn riesz_multiplier(k: usize, params: &SummationParams) -> Result<f64> {
    if k > params.n {
        return Err(Error::InvalidArgument(format!(
            "multiplier degree k={k} exceeds cutoff n={}",
            params.n
        )));
    }
    if k == params.n {
        return Ok(0.0);
    }
    let ratio = eigenvalue(k, params.dim) / eigenvalue(params.n, params.dim);
    Ok((1.0 - ratio).powf(params.alpha))
}

/// ln A_m^alpha for A_m^alpha = C(m+alpha, m), via log-gamma differences.
fn ln_cesaro_number(m: f64, alpha: f64) -> f64 {
    libm::lgamma(m + alpha + 1.0) - libm::lgamma(alpha + 1.0) - libm::lgamma(m + 1.0)
}

/// Cesaro (C, alpha) multiplier A_{n-k}^alpha / A_n^alpha, in (0, 1].
pub fn cesaro_multiplier(k: usize, params: &SummationParams) -> Result<f64> {
    if k > params.n {
        return Err(Error::InvalidArgument(format!(
            "multiplier degree k={k} exceeds cutoff n={}",
            params.n
        )));
    }
    let a = params.alpha;
    Ok((ln_cesaro_number((params.n - k) as f64, a) - ln_cesaro_number(params.n as f64, a)).exp())
}

/// Multiplier of degree k under params.method.
pub fn multiplier(k: usize, params: &SummationParams) -> Result<f64> {
    match params.method {
        Method::Riesz => riesz_multiplier(k, params),
        Method::Cesaro => cesaro_multiplier(k, params),
    }
}

/// Zonal projector Z_k^N(cos gamma), normalized by Z_k(1) = a_k / omega_N.
pub fn zonal_projector(k: usize, dim: usize, gamma: f64) -> Result<f64> {
    Ok(zonal_scales(dim, k)[k]
        * gegenbauer_eval_all((dim as f64 - 1.0) / 2.0, k, gamma.cos())?[k])
}

/// The normalization constants c_{k,N} = (2k+N-1)/((N-1) omega_N) for k = 0..kmax.
pub fn zonal_scales(dim: usize, kmax: usize) -> Vec<f64> {
    let denom = (dim as f64 - 1.0) * surface_area(dim);
    (0..=kmax)
        .map(|k| (2.0 * k as f64 + dim as f64 - 1.0) / denom)
        .collect()
}

/// Exact kernel Theta_n^alpha(cos gamma) = sum_{k=0}^n m_k Z_k(cos gamma),
/// one Gegenbauer recurrence pass per call.
pub fn riesz_kernel_exact(params: &SummationParams, gamma: f64) -> Result<f64> {
    let nu = (params.dim as f64 - 1.0) / 2.0;
    let polys = gegenbauer_eval_all(nu, params.n, gamma.cos())?;
    let scales = zonal_scales(params.dim, params.n);
    let mut acc = 0.0;
    for k in 0..=params.n {
        acc += multiplier(k, params)? * scales[k] * polys[k];
    }
    Ok(acc)
}

/// Kernel sampled on a gamma grid; serializes as `gamma,value`.
#[derive(Debug, Clone)]
pub struct KernelProfile {
    pub params: SummationParams,
    pub gammas: Vec<f64>,
    pub values: Vec<f64>,
}

impl KernelProfile {
    /// Evaluate the exact kernel over the grid (grid points are independent,
    /// so the map runs in parallel).
    pub fn compute(params: SummationParams, gammas: Vec<f64>) -> Result<Self> {
        if gammas.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "kernel profile grid must be strictly increasing".into(),
            ));
        }
        let values = gammas
            .par_iter()
            .map(|&g| riesz_kernel_exact(&params, g))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            params,
            gammas,
            values,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("gamma,value\n");
        for (g, v) in self.gammas.iter().zip(&self.values) {
            out.push_str(&crate::csvout::sig17(*g));
            out.push(',');
            out.push_str(&crate::csvout::sig17(*v));
            out.push('\n');
        }
        out
    }
}

/// The three displayed components of the kernel asymptotics: the oscillatory
/// leading term, and the two envelopes whose bounded coefficients are unknown
/// (error budgets, not values).
#[derive(Debug, Clone, Copy)]
pub struct AsymptoticBreakdown {
    pub leading: f64,
    pub second: f64,
    pub remainder: f64,
}

/// Evaluate the asymptotic description of Theta_n^alpha at gamma:
///
///   leading   = n^{(N-1)/2-alpha} (N-1) sin[(n+N/2+alpha/2) gamma - pi(N-1+2alpha)/4]
///               / ((2 sin gamma)^{(N-1)/2} (2 sin(gamma/2))^{1+alpha})
///   second    = n^{(N-3)/2-alpha} / ((sin gamma)^{(N+1)/2} (sin(gamma/2))^{1+alpha})
///   remainder = 1 / ((n+1) (sin(gamma/2))^{1+N})
///
/// valid only inside the window |pi/2 - gamma| < (n/(n+1)) pi/2.
pub fn riesz_kernel_asymptotic(params: &SummationParams, gamma: f64) -> Result<AsymptoticBreakdown> {
    let n = params.n as f64;
    if (PI / 2.0 - gamma).abs() >= n / (n + 1.0) * PI / 2.0 {
        return Err(Error::OutsideValidityWindow {
            gamma,
            n: params.n,
        });
    }
    let nn = params.dim as f64;
    let alpha = params.alpha;
    let half_exp = (nn - 1.0) / 2.0;
    let phase = (n + nn / 2.0 + alpha / 2.0) * gamma - PI * (nn - 1.0 + 2.0 * alpha) / 4.0;
    let sin_g = gamma.sin();
    let sin_half = (gamma / 2.0).sin();
    let leading = n.powf(half_exp - alpha) * (nn - 1.0) * phase.sin()
        / ((2.0 * sin_g).powf(half_exp) * (2.0 * sin_half).powf(1.0 + alpha));
    let second = n.powf((nn - 3.0) / 2.0 - alpha)
        / (sin_g.powf((nn + 1.0) / 2.0) * sin_half.powf(1.0 + alpha));
    let remainder = 1.0 / ((n + 1.0) * sin_half.powf(1.0 + nn));
    Ok(AsymptoticBreakdown {
        leading,
        second,
        remainder,
    })
}

/// Asymptotic breakdown sampled on a gamma grid; serializes as
/// `gamma,leading,second_env,remainder_env`.
#[derive(Debug, Clone)]
pub struct AsymptoticProfile {
    pub params: SummationParams,
    pub gammas: Vec<f64>,
    pub breakdowns: Vec<AsymptoticBreakdown>,
}

impl AsymptoticProfile {
    pub fn compute(params: SummationParams, gammas: Vec<f64>) -> Result<Self> {
        if gammas.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "asymptotic profile grid must be strictly increasing".into(),
            ));
        }
        let breakdowns = gammas
            .iter()
            .map(|&g| riesz_kernel_asymptotic(&params, g))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            params,
            gammas,
            breakdowns,
        })
    }

    pub fn to_csv(&self) -> String {
        use crate::csvout::sig17;
        let mut out = String::from("gamma,leading,second_env,remainder_env\n");
        for (g, b) in self.gammas.iter().zip(&self.breakdowns) {
            out.push_str(&format!(
                "{},{},{},{}\n",
                sig17(*g),
                sig17(b.leading),
                sig17(b.second),
                sig17(b.remainder)
            ));
        }
        out
    }
}

/// Brute-force fit of the constant relating |exact - leading| to the envelope
/// sum over a gamma grid.
#[derive(Debug, Clone, Copy)]
pub struct AsymptoticFit {
    /// max over the grid of |exact - leading| / (second + remainder)
    pub c: f64,
    /// max over the grid of |exact - leading|
    pub max_abs_diff: f64,
}

pub fn asymptotic_fit_constant(params: &SummationParams, gammas: &[f64]) -> Result<AsymptoticFit> {
    let mut c = 0.0_f64;
    let mut max_abs_diff = 0.0_f64;
    for &g in gammas {
        let exact = riesz_kernel_exact(params, g)?;
        let b = riesz_kernel_asymptotic(params, g)?;
        let diff = (exact - b.leading).abs();
        max_abs_diff = max_abs_diff.max(diff);
        c = c.max(diff / (b.second + b.remainder));
    }
    Ok(AsymptoticFit { c, max_abs_diff })
}

/// Fitted growth of the kernel magnitude over a cutoff ladder:
/// max_{gamma in [gamma0, pi]} |Theta_n| when gamma0 is given, or the pole
/// value Theta_n(1) when it is not. Returns (slope, intercept) of the
/// log-log fit.
pub fn kernel_bound_check(
    dim: usize,
    alpha: f64,
    method: Method,
    gamma0: Option<f64>,
    ladder: &[usize],
) -> Result<(f64, f64)> {
    if ladder.len() < 3 {
        return Err(Error::DegenerateLadder {
            need: 3,
            got: ladder.len(),
        });
    }
    if let Some(g0) = gamma0 {
        if !(g0 > 0.0 && g0 < PI) {
            return Err(Error::InvalidArgument(format!(
                "gamma0 must lie in (0, pi), got {g0}"
            )));
        }
    }
    let maxes = ladder
        .par_iter()
        .map(|&n| -> Result<f64> {
            let params = SummationParams::new(dim, n, alpha, method)?;
            match gamma0 {
                None => riesz_kernel_exact(&params, 0.0),
                Some(g0) => {
                    // grid dense enough to land near the oscillation peaks
                    let points = (8 * n).max(512);
                    let mut peak = 0.0_f64;
                    for i in 0..=points {
                        let g = g0 + (PI - g0) * i as f64 / points as f64;
                        peak = peak.max(riesz_kernel_exact(&params, g)?.abs());
                    }
                    Ok(peak)
                }
            }
        })
        .collect::<Result<Vec<_>>>()?;
    loglog_fit(ladder, &maxes)
}
