//! Runs the theorem1 scenario: an integrable function vanishing on caps
//! around the observation point and its antipode, summed by the weighted
//! method at the critical order. The partial sums must tend to zero at the
//! point; the run prints the ladder, the fitted log-log slope, and the
//! verdict the sweep driver assigns.

use std::path::Path;

use spheresum::experiments::{run, scenario_theorem1};
use spheresum::{QuadratureRule, Result};

fn main() -> Result<()> {
    let scenario = scenario_theorem1(0.4, 0.4, 2)?;
    let rule = QuadratureRule::default_rule();
    let out_dir = Path::new("runs/examples/theorem1_decay");
    let manifest = run(&scenario, out_dir, &rule)?;

    println!("scenario {}, config hash {}", manifest.scenario, manifest.config_hash);
    println!();
    println!("{:>6} {:>24} {:>14}", "n", "E_n f(x)", "route gap");
    for r in &manifest.records {
        let gap = r
            .route_gap
            .map(|g| format!("{g:.3e}"))
            .unwrap_or_else(|| "-".into());
        println!("{:>6} {:>24.16e} {:>14}", r.n, r.value, gap);
    }
    println!();
    for row in &manifest.summary {
        println!(
            "{} / alpha = {}: slope = {:.4}, trailing max = {:.4e}, verdict = {}",
            row.method.name(),
            row.alpha,
            row.slope,
            row.trailing_max,
            row.verdict.name()
        );
    }
    println!();
    println!("antipodal weighted integral = {:.6e} ({:?})",
        manifest.antipodal.value, manifest.antipodal.status);
    println!("outputs:");
    for p in &manifest.outputs {
        println!("  {}", p.display());
    }
    Ok(())
}
