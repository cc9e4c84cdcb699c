//! Counting cross-checks against an independent brute-force oracle.
//!
//! The oracle below shares no code with the library's counting path: it
//! works on plain bool matrices, compares windows cell by cell, and never
//! packs bits. Frozen constants were additionally reproduced by an external
//! implementation before the library was written.

use fdca_core::automaton::SuppressionMask;
use fdca_core::grid::{Configuration, DEFAULT_ENUMERATION_CAP as CAP};
use fdca_core::patterns::{
    count_exact, count_exact_range, estimate_monte_carlo, hamming_ball, is_unique_instance,
    AngularPattern, CountValue,
};

/// Exact unique-instance count at zone side 4, pattern side 3 (corner).
const P1_W4_S3: u128 = 4854;

fn corner_matrix(s: usize) -> Vec<Vec<bool>> {
    let mut m = vec![vec![false; s]; s];
    for row in 0..s {
        m[row][0] = true;
    }
    for col in 0..s {
        m[s - 1][col] = true;
    }
    m
}

/// Instance count with explicit 2D grids: anchors are cells whose full
/// window stays inside the zone; a window matches when it differs from the
/// template in at most one cell.
fn naive_instance_count(grid: &[Vec<bool>], template: &[Vec<bool>]) -> u32 {
    let w = grid.len();
    let s = template.len();
    let r = (s - 1) / 2;
    let mut count = 0;
    for anchor_row in r..w - r {
        for anchor_col in r..w - r {
            let mut diff = 0;
            for i in 0..s {
                for j in 0..s {
                    if grid[anchor_row - r + i][anchor_col - r + j] != template[i][j] {
                        diff += 1;
                    }
                }
            }
            if diff <= 1 {
                count += 1;
            }
        }
    }
    count
}

fn naive_unique_count(w: usize, s: usize) -> u128 {
    let template = corner_matrix(s);
    let mut total = 0u128;
    for packed in 0..1u64 << (w * w) {
        let grid: Vec<Vec<bool>> = (0..w)
            .map(|row| (0..w).map(|col| packed >> (row * w + col) & 1 == 1).collect())
            .collect();
        if naive_instance_count(&grid, &template) == 1 {
            total += 1;
        }
    }
    total
}

#[test]
fn exact_count_matches_naive_oracle_and_frozen_value() {
    let ball = hamming_ball(&AngularPattern::corner(3).unwrap());
    let mask = SuppressionMask::new(4, 1).unwrap();
    let counted = count_exact(4, &ball, &mask, CAP).unwrap();
    assert_eq!(counted.point(), P1_W4_S3);
    assert_eq!(naive_unique_count(4, 3), P1_W4_S3);
}

#[test]
fn per_configuration_agreement_with_naive_oracle() {
    // spot-check the per-input predicate, not just the grand total
    let ball = hamming_ball(&AngularPattern::corner(3).unwrap());
    let mask = SuppressionMask::new(4, 1).unwrap();
    let template = corner_matrix(3);
    for packed in (0..1u64 << 16).step_by(7) {
        let config = Configuration::from_packed(4, u128::from(packed)).unwrap();
        let grid: Vec<Vec<bool>> = (0..4)
            .map(|row| (0..4).map(|col| packed >> (row * 4 + col) & 1 == 1).collect())
            .collect();
        assert_eq!(
            is_unique_instance(&config, &ball, &mask).unwrap(),
            naive_instance_count(&grid, &template) == 1,
            "packed {packed:#x}"
        );
    }
}

#[test]
fn partitioned_scan_equals_full_scan() {
    let ball = hamming_ball(&AngularPattern::corner(3).unwrap());
    let mask = SuppressionMask::new(4, 1).unwrap();
    let total = 1u128 << 16;
    for parts in [2u128, 5, 8] {
        let step = total / parts;
        let mut sum = 0;
        let mut lo = 0;
        while lo < total {
            let hi = (lo + step).min(total);
            sum += count_exact_range(4, &ball, &mask, lo, hi, CAP).unwrap();
            lo = hi;
        }
        assert_eq!(sum, P1_W4_S3, "{parts} partitions");
    }
}

#[test]
fn monte_carlo_intervals_cover_exact_count() {
    // individual 95% intervals are allowed to miss ~1 time in 20; the
    // coverage claim is binomial over a fixed (hence deterministic) seed set
    let ball = hamming_ball(&AngularPattern::corner(3).unwrap());
    let mask = SuppressionMask::new(4, 1).unwrap();
    let mut covered = 0;
    for seed in 0u64..10 {
        let estimate = estimate_monte_carlo(4, &ball, &mask, 20_000, seed).unwrap();
        match estimate.value {
            CountValue::Estimate { ci_lower, ci_upper, .. } => {
                if ci_lower <= P1_W4_S3 && P1_W4_S3 <= ci_upper {
                    covered += 1;
                }
            }
            CountValue::Exact(_) => panic!("estimate expected"),
        }
    }
    assert!(covered >= 8, "only {covered}/10 intervals covered the exact count");
}
