//! `spheresum`: Riesz and Cesaro summation of Laplace-Beltrami eigenfunction
//! expansions on the unit sphere S^N.
//!
//! The crate evaluates partial sums E_n^alpha f(x) by two independent routes
//! (spectral projections and a 1-D zonal-kernel integral), tabulates the
//! summation kernels and their oscillatory asymptotics, and packages the
//! localization experiments as reproducible, CSV-emitting scenarios.
//!
//! The primary interface is the `examples/` directory, one runnable program
//! per capability:
//!
//! ```text
//! examples/
//! ├── kernel_profile.rs      tabulate the exact kernel Theta_n^alpha on a gamma grid
//! ├── asymptotic_vs_exact.rs leading oscillatory term against the exact kernel
//! ├── kernel_growth.rs       fitted growth exponents at the pole and on [gamma0, pi]
//! ├── route_equivalence.rs   spectral vs kernel partial sums across the smooth catalog
//! ├── theorem1_decay.rs      both caps vanish, critical order: the decay ladder
//! ├── theorem2_decay.rs      one cap plus a bounded antipodal bump: decay + finiteness
//! ├── antipodal_singular.rs  power-law antipodal mass and the divergence flag
//! ├── below_critical.rs      order below the critical index, demonstration only
//! └── cesaro_compare.rs      Riesz and Cesaro side by side on one scenario
//! ```
//!
//! Run any of them with:
//!
//! ```bash
//! cargo run --release --example kernel_profile
//! cargo run --release --example theorem1_decay
//! ```
//!
//! Each example prints a short account of what it computed and writes its
//! CSV files under `runs/`. The thin `spheresum` binary exposes the same
//! operations as subcommands (`kernel`, `asymptotic`, `sum`, `sweep`,
//! `scenario`, `selftest`) for scripted use; see the README for the flag
//! reference and exit codes.
//!
//! ## Layout
//!
//! - [`sphere`]: points on S^N, geodesic distance, caps, slice frames.
//! - [`special`]: Gegenbauer recurrences, eigenvalues, multiplicities.
//! - [`quadrature`]: composite Gauss-Legendre, graded panels, surface slices.
//! - [`kernels`]: multipliers, zonal projectors, exact and asymptotic kernels.
//! - [`summation`]: the two partial-sum routes, antipodal diagnostics, sweeps.
//! - [`experiments`]: scenario catalog, verdicts, manifests.
//! - [`fit`], [`csvout`]: slope fitting and deterministic serialization.

pub mod csvout;
pub mod error;
pub mod experiments;
pub mod fit;
pub mod kernels;
pub mod quadrature;
pub mod sphere;
pub mod special;
pub mod summation;

pub use error::{Error, Result};
pub use kernels::{Method, SummationParams};
pub use quadrature::QuadratureRule;
pub use sphere::SpherePoint;
pub use summation::TestFunction;
