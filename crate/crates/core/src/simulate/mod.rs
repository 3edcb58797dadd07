//! Monte Carlo engine for finite and truncated infinite superpositions.
//!
//! Each component is simulated at integer times through its AR(1) form
//! `X(i) = ρ X(i-1) + W(i)`, starting from a stationary draw of `X(0)`. This is
//! exact in law at integer times for every family with an exact innovation
//! scheme (currently Gamma); other families use a cumulant-matched surrogate
//! and every result produced from them is flagged [`Exactness::Approximate`].

mod path;
mod replicate;
mod rng;
mod samplers;

pub use path::{simulate_superposition, simulate_terminal, PathSample, SuperpositionSampler};
pub use replicate::{replicate, replicate_paths, Ensemble};
pub use rng::RngStream;
pub use samplers::{
    sample_innovation, sample_stationary, Exactness, Innovation, InnovationSampler,
    StationarySampler,
};
