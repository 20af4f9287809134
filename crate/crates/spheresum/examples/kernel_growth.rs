//! Fits growth exponents of the kernel maximum over a cutoff ladder.
//! Three regimes on S^2:
//!
//! - at the critical order, max over a band away from the pole grows
//!   no faster than n^{1/2};
//! - at the pole the kernel grows like n^N regardless of order;
//! - above the critical order (alpha = 1 here) the band maximum is bounded.
//!
//! Each fit is the least-squares slope of log max|Theta| against log n.

use spheresum::kernels::kernel_bound_check;
use spheresum::{Method, Result};

fn main() -> Result<()> {
    let dim = 2;
    let ladder = [16usize, 32, 64, 128, 256];
    let critical = (dim as f64 - 1.0) / 2.0;

    let (band_slope, _) =
        kernel_bound_check(dim, critical, Method::Riesz, Some(0.5), &ladder)?;
    println!("band [0.5, pi], alpha = {critical}: slope = {band_slope:.4}  (expect <= 0.5 + fit slack)");

    let (pole_slope, _) = kernel_bound_check(dim, critical, Method::Riesz, None, &ladder)?;
    println!("pole included,  alpha = {critical}: slope = {pole_slope:.4}  (expect about {dim})");

    let (bounded_slope, _) =
        kernel_bound_check(dim, 1.0, Method::Riesz, Some(0.5), &ladder)?;
    println!("band [0.5, pi], alpha = 1.0: slope = {bounded_slope:.4}  (bounded: expect <= 0)");

    println!();
    println!("the n^{{1/2}} band growth at the critical order is exactly the rate the");
    println!("oscillatory leading term carries; the pole term always wins by n^{{N - 1/2}}.");
    Ok(())
}
