//! Exact theory, Monte Carlo simulation and empirical intermittency diagnostics
//! for discrete superpositions of Lévy-driven Ornstein-Uhlenbeck type processes.
//!
//! The crate is organised along the chain the computations follow:
//!
//! - [`marginals`]: self-decomposable marginal laws (Gamma, inverse Gaussian,
//!   variance gamma, normal inverse Gaussian, tempered stable), their cumulant
//!   transforms and cumulants.
//! - [`analytics`]: covariance, the slowly varying function `L*`, exact
//!   partial-sum cumulants through the AR(1) representation, asymptotic
//!   constants `D_m`, the theoretical scaling function and CLT norming.
//! - [`simulate`]: reproducible Monte Carlo of finite and truncated infinite
//!   superpositions.
//! - [`estimate`]: k-statistics, absolute moments, log-log scaling fits,
//!   intermittency verdicts and normality diagnostics.
//!
//! [`special`] and [`quadrature`] hold the numerical plumbing shared by the
//! modules above.

pub mod analytics;
pub mod error;
pub mod estimate;
pub mod marginals;
pub mod quadrature;
pub mod simulate;
pub mod special;

pub(crate) mod parallel;

pub use error::{Error, Result};
pub use marginals::{Law, MarginalFamily};

/// Version of this crate, recorded in experiment manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
