//! Runs the below-critical scenario: the same smooth two-cap function the
//! theorem1 scenario uses, but summed at alpha = 0.25, half the critical
//! index on S^2. No decay claim covers this order, so the sweep records the
//! ladder as an observation; the run is kept in the catalog because its
//! determinism matters (reruns must be byte-identical) and because the
//! contrast with the critical-order ladder is instructive.

use std::path::Path;

use spheresum::experiments::{run, scenario_below_critical};
use spheresum::{QuadratureRule, Result};

fn main() -> Result<()> {
    let scenario = scenario_below_critical(0.4, 0.4, 2)?;
    let rule = QuadratureRule::default_rule();
    let manifest = run(&scenario, Path::new("runs/examples/below_critical"), &rule)?;

    println!("alpha = 0.25 against critical 0.5, N = 2");
    println!("{:>6} {:>24}", "n", "E_n f(x)");
    for r in &manifest.records {
        println!("{:>6} {:>24.16e}", r.n, r.value);
    }
    println!();
    for row in &manifest.summary {
        println!(
            "slope = {:.4}, trailing max = {:.4e}, verdict = {}",
            row.slope, row.trailing_max, row.verdict.name()
        );
    }
    println!();
    println!("whatever the ladder does here is data, not a theorem: below the");
    println!("critical index the kernel tails are too heavy for the two-cap");
    println!("argument, and no decay (or failure of decay) is asserted.");
    Ok(())
}
