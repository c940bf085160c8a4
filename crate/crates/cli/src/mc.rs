//! Thread-parallel Monte Carlo over Haar-random pure states.

use povm_coherence::coherence::Measure;
use povm_coherence::haar::{check_mc_request, chunk_sizes, mc_chunk, McEstimate, McPartial};
use povm_coherence::{Povm, Result};
use rayon::prelude::*;

/// Same chunks and streams as the sequential `haar::mc_average`, evaluated
/// on the rayon pool and merged in chunk order, so the estimate is
/// bit-identical to the sequential one for any thread count.
pub fn par_mc_average(e: &Povm, measure: Measure, samples: usize, seed: u64) -> Result<McEstimate> {
    check_mc_request(measure, samples)?;
    let sizes: Vec<usize> = chunk_sizes(samples).collect();
    let partials: Vec<McPartial> = sizes
        .par_iter()
        .enumerate()
        .map(|(i, &n)| mc_chunk(e, measure, seed, i, n))
        .collect();
    let mut total = McPartial::default();
    for p in &partials {
        total.merge(p);
    }
    Ok(total.estimate())
}
