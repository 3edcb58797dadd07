use serde::Serialize;

use super::path::{PathSample, SuperpositionSampler};
use super::rng::RngStream;
use super::samplers::Exactness;
use crate::analytics::Component;
use crate::error::Result;
use crate::parallel::ordered_map;

/// Independent replications of the centered terminal partial sum.
///
/// Replication `r` uses stream `r` of the master seed, and results are
/// collected in replication order, so the ensemble does not depend on the
/// number of worker threads.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ensemble {
    pub master_seed: u64,
    pub n: usize,
    pub exactness: Exactness,
    pub centered_sums: Vec<f64>,
}

pub fn replicate(
    components: &[Component],
    n: usize,
    replications: usize,
    master_seed: u64,
) -> Result<Ensemble> {
    let sampler = SuperpositionSampler::new(components)?;
    let centered_sums = ordered_map(replications, |r| {
        sampler.terminal(n, &mut RngStream::new(master_seed, r as u64))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(Ensemble { master_seed, n, exactness: sampler.exactness(), centered_sums })
}

/// Full paths for replications `0..count`, drawn from the same streams as
/// [`replicate`]; the last partial sum of path `r` equals entry `r` of the
/// ensemble.
pub fn replicate_paths(
    components: &[Component],
    n: usize,
    count: usize,
    master_seed: u64,
) -> Result<Vec<PathSample>> {
    let sampler = SuperpositionSampler::new(components)?;
    ordered_map(count, |r| sampler.path(n, r as u64, &mut RngStream::new(master_seed, r as u64)))
        .into_iter()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::marginals::MarginalFamily;

    #[test]
    fn paths_agree_with_ensemble() {
        let comps =
            vec![Component::new(MarginalFamily::gamma(1.0, 1.0).unwrap(), 0.2).unwrap()];
        let e = replicate(&comps, 64, 5, 42).unwrap();
        let paths = replicate_paths(&comps, 64, 5, 42).unwrap();
        for (p, s) in paths.iter().zip(&e.centered_sums) {
            let last = *p.centered_partial_sums.last().unwrap();
            assert!((last - s).abs() < 1e-9 * (1.0 + s.abs()));
        }
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let comps =
            vec![Component::new(MarginalFamily::gamma(1.0, 1.0).unwrap(), 0.2).unwrap()];
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| replicate(&comps, 100, 300, 9).unwrap())
        };
        assert_eq!(run(1), run(4));
    }
}
