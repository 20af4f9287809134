//! Least-squares line fits for convergence and growth-rate diagnostics.

use crate::error::{Error, Result};

/// Ordinary least squares y = slope * x + intercept.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Result<(f64, f64)> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::DegenerateLadder {
            need: 2,
            got: xs.len().min(ys.len()),
        });
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if sxx == 0.0 {
        return Err(Error::InvalidArgument(
            "degenerate fit: all abscissae equal".into(),
        ));
    }
    let slope = sxy / sxx;
    Ok((slope, my - slope * mx))
}

/// Slope and intercept of log y against log x. Zero or negative samples are
/// floored far below any meaningful scale so an exact numerical zero cannot
/// poison the fit with -inf.
pub fn loglog_fit(xs: &[usize], ys: &[f64]) -> Result<(f64, f64)> {
    let lx: Vec<f64> = xs.iter().map(|&x| (x as f64).ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|&y| y.abs().max(1e-300).ln()).collect();
    linear_fit(&lx, &ly)
}

/// Max of |y| over the trailing half of the sequence (the decay proxy used
/// by the scenario verdicts; single entries oscillate too much to trust).
pub fn trailing_half_max(ys: &[f64]) -> f64 {
    let start = ys.len() / 2;
    ys[start..]
        .iter()
        .map(|y| y.abs())
        .fold(0.0, f64::max)
}
