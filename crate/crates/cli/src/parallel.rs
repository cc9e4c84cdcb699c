//! Rayon drivers over the core's partition primitives. Partitioning never
//! changes results: exact scans combine by summation, recognition checks by
//! smallest counterexample, Monte Carlo by summing per-batch hits (each
//! batch owns a generator stream keyed by its index alone).

use rayon::prelude::*;

use fdca_core::automaton::{LayeredAutomaton, RecognitionReport, SuppressionMask};
use fdca_core::grid::{configuration_count, Configuration};
use fdca_core::patterns::{
    count_exact_range, estimate_from_hits, monte_carlo_batch_count, monte_carlo_batch_hits,
    CountMethod, CountResult, HammingBallClass,
};

use crate::error::Result;

/// Number of work items a space of `total` elements splits into.
fn partition_ranges(total: u128, parts: u128) -> Vec<(u128, u128)> {
    let parts = parts.clamp(1, total.max(1));
    let step = total.div_ceil(parts);
    let mut ranges = Vec::new();
    let mut lo = 0;
    while lo < total {
        let hi = (lo + step).min(total);
        ranges.push((lo, hi));
        lo = hi;
    }
    ranges
}

fn default_parts() -> u128 {
    (rayon::current_num_threads() as u128) * 8
}

/// Exact unique-instance count over the whole space, scanned in parallel.
pub fn count_exact_parallel(
    zone_side: u32,
    ball: &HammingBallClass,
    mask: &SuppressionMask,
    cap: u32,
) -> Result<CountResult> {
    let total = configuration_count(zone_side)?;
    // cap is enforced by the first range scan
    let counts = partition_ranges(total, default_parts())
        .into_par_iter()
        .map(|(lo, hi)| count_exact_range(zone_side, ball, mask, lo, hi, cap))
        .collect::<fdca_core::Result<Vec<u128>>>()?;
    Ok(CountResult::exact(counts.into_iter().sum(), CountMethod::Exact))
}

/// Monte Carlo estimate with batches fanned out across workers.
pub fn estimate_monte_carlo_parallel(
    zone_side: u32,
    ball: &HammingBallClass,
    mask: &SuppressionMask,
    samples: u64,
    seed: u64,
) -> Result<CountResult> {
    let batches = monte_carlo_batch_count(samples);
    let chunk = batches.div_ceil(default_parts() as u64).max(1);
    let hits: u64 = (0..batches.div_ceil(chunk))
        .into_par_iter()
        .map(|i| {
            let lo = i * chunk;
            let hi = ((i + 1) * chunk).min(batches);
            monte_carlo_batch_hits(zone_side, ball, mask, samples, seed, lo, hi)
        })
        .collect::<fdca_core::Result<Vec<u64>>>()?
        .into_iter()
        .sum();
    Ok(estimate_from_hits(zone_side, hits, samples, seed)?)
}

/// Exhaustive recognition check in parallel; the reported counterexample is
/// the first in enumeration order, independent of worker count.
pub fn verify_recognition_parallel<F>(
    automaton: &LayeredAutomaton,
    class: F,
    cap: u32,
) -> Result<RecognitionReport>
where
    F: Fn(&Configuration) -> bool + Sync,
{
    let total = configuration_count(automaton.zone_side())?;
    let firsts = partition_ranges(total, default_parts())
        .into_par_iter()
        .map(|(lo, hi)| {
            fdca_core::automaton::verify_recognition_range(automaton, &class, lo, hi, cap)
        })
        .collect::<fdca_core::Result<Vec<Option<Configuration>>>>()?;
    let counterexample = firsts
        .into_iter()
        .flatten()
        .min_by_key(|c| c.to_packed().expect("enumerable zones fit packed form"));
    Ok(RecognitionReport { agrees: counterexample.is_none(), counterexample, checked: total })
}
