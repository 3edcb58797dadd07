//! Exact and asymptotic theory for partial sums of supOU superpositions.
//!
//! Conventions: `a = 2(1 - H)` is the covariance decay exponent, and the
//! slowly varying function is `L*(t) = t^a R(t)`, so `R(t) = L*(t) / t^a`
//! holds exactly. Asymptotic constants `D_m` are stated relative to `L*`.

mod clt;
mod constants;
mod covariance;
mod cumulants;
mod scaling;
mod spec;

pub use clt::{clt_norming, CltNorming};
pub use constants::{
    asymptotic_constant, asymptotic_integrals_quadrature, AsymptoticConstant, QuadratureCheck,
};
pub use covariance::{
    covariance, slowly_varying, slowly_varying_bounds, slowly_varying_limit, SlowlyVaryingBounds,
};
pub use cumulants::{
    ar_coefficients, asymptotic_cumulant, cumulant_report, exact_cumulant,
    exact_cumulant_components, exact_cumulants, partial_sum_variance_exact, ArCoefficients,
    CumulantEntry, CumulantReport, KmaxPolicy,
};
pub use scaling::{tau_over_q_increasing, theoretical_tau, ScalingFunction};
pub use spec::{Component, SupouSpec, Truncated};
