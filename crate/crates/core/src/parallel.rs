//! Order-fixed parallel reductions.
//!
//! Floating-point sums depend on association order, so every parallel
//! reduction here splits the index range into fixed-size chunks, reduces each
//! chunk sequentially and folds the chunk results in index order. The result
//! is bit-identical for any number of worker threads.

use rayon::prelude::*;

const CHUNK: usize = 1024;

/// Sums `term(i)` for `i in start..end` elementwise into a vector of length
/// `width`.
pub(crate) fn chunked_vec_sum<F>(start: usize, end: usize, width: usize, term: F) -> Vec<f64>
where
    F: Fn(usize, &mut [f64]) + Sync,
{
    if end <= start {
        return vec![0.0; width];
    }
    let chunks: Vec<(usize, usize)> = (start..end)
        .step_by(CHUNK)
        .map(|lo| (lo, (lo + CHUNK).min(end)))
        .collect();
    let partials: Vec<Vec<f64>> = chunks
        .par_iter()
        .map(|&(lo, hi)| {
            let mut acc = vec![0.0; width];
            for i in lo..hi {
                term(i, &mut acc);
            }
            acc
        })
        .collect();
    let mut total = vec![0.0; width];
    for part in partials {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    total
}

/// Maps `f` over `0..count` in parallel, returning results in index order.
pub(crate) fn ordered_map<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    (0..count).into_par_iter().map(&f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunked_sum_is_thread_count_invariant() {
        let term = |i: usize, acc: &mut [f64]| {
            let x = 1.0 / (i as f64 + 1.0).sqrt();
            acc[0] += x;
            acc[1] += x * x;
        };
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let many = rayon::ThreadPoolBuilder::new().num_threads(8).build().unwrap();
        let a = one.install(|| chunked_vec_sum(0, 100_000, 2, term));
        let b = many.install(|| chunked_vec_sum(0, 100_000, 2, term));
        assert_eq!(a[0].to_bits(), b[0].to_bits());
        assert_eq!(a[1].to_bits(), b[1].to_bits());
    }

    #[test]
    fn empty_range_sums_to_zero() {
        assert_eq!(chunked_vec_sum(5, 5, 3, |_, _| unreachable!()), vec![0.0; 3]);
    }
}
