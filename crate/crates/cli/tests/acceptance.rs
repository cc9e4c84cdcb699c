//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line (run with `--nocapture` to see them).
//!
//! Frozen regression constants in this file were computed by brute-force
//! enumeration oracles written before and independently of the library
//! (and are re-derived in-repo by `fdca-core/tests/counting_oracle.rs`).

use std::time::Instant;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fdca_cli::config::{ExperimentConfig, ReportFormat};
use fdca_cli::experiment::run_experiment;
use fdca_cli::parallel::{count_exact_parallel, estimate_monte_carlo_parallel};
use fdca_cli::report::emit_report;
use fdca_core::automaton::{apply_layer, LocalRule, SuppressionMask};
use fdca_core::complexity::{lambda_two, ComplexityMeasure};
use fdca_core::grid::{
    enumerate_configurations, hamming_distance, local_configuration, BoundaryPolicy,
    Configuration, LocalConfiguration, DEFAULT_ENUMERATION_CAP as CAP,
};
use fdca_core::patterns::{
    build_recognizer_pair, count_exact, count_exact_range, count_single_active,
    estimate_from_hits, estimate_monte_carlo, hamming_ball, is_unique_instance,
    monte_carlo_batch_count, monte_carlo_batch_hits, unique_class_lower_bound, AngularPattern,
    CountValue,
};

/// Exact unique-instance counts for the corner pattern at s = 3, frozen
/// from the pre-build enumeration oracle.
const P1_W4: u128 = 4854;
const P1_W5: u128 = 5_343_984;

fn conclude(criterion: u32, name: &str, ok: bool) {
    println!(
        "ACCEPTANCE {criterion} ({name}): {}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {criterion} ({name}) failed");
}

#[test]
fn criterion_1_ball_cardinality_law() {
    let mut ok = true;
    for (side, expected) in [(3u32, 10u128), (5, 26)] {
        let ball = hamming_ball(&AngularPattern::corner(side).unwrap());
        let n = u128::from(side * side);
        ok &= ball.cardinality() == expected && ball.cardinality() == n + 1;
    }
    conclude(1, "ball cardinality |x'| = n + 1", ok);
}

#[test]
fn criterion_2_oracle_equivalence_w4() {
    let started = Instant::now();
    let pattern = AngularPattern::corner(3).unwrap();
    let ball = hamming_ball(&pattern);
    let mask = SuppressionMask::new(4, 1).unwrap();
    let (one_layer, two_layer) = build_recognizer_pair(4, &pattern).unwrap();

    // deliberately single-threaded: the criterion bounds serial runtime
    let mut mismatches = 0u32;
    let mut checked = 0u64;
    for config in enumerate_configurations(4, CAP).unwrap() {
        let class = is_unique_instance(&config, &ball, &mask).unwrap();
        let two = two_layer.evaluate(&config).unwrap();
        let one = one_layer.evaluate(&config).unwrap();
        if two != class || one != two {
            mismatches += 1;
        }
        checked += 1;
    }
    let elapsed = started.elapsed();
    println!("  scanned {checked} configurations single-threaded in {elapsed:?}");
    conclude(
        2,
        "2-layer == class == 1-layer over all 65536 inputs",
        mismatches == 0 && checked == 65_536 && elapsed.as_secs() < 10,
    );
}

#[test]
fn criterion_3_exact_count_regression() {
    let pattern = AngularPattern::corner(3).unwrap();
    let ball = hamming_ball(&pattern);

    let mask4 = SuppressionMask::new(4, 1).unwrap();
    let w4 = count_exact(4, &ball, &mask4, CAP).unwrap().point();

    let mask5 = SuppressionMask::new(5, 1).unwrap();
    let started = Instant::now();
    let w5_serial = count_exact(5, &ball, &mask5, CAP).unwrap().point();
    let serial_time = started.elapsed();

    let started = Instant::now();
    let w5_parallel = count_exact_parallel(5, &ball, &mask5, CAP).unwrap().point();
    let parallel_time = started.elapsed();

    // explicit uneven partitioning, summed by hand
    let total = 1u128 << 25;
    let cuts = [0u128, 1 << 20, 1 << 23, (1 << 23) + 12345, 1 << 24, total];
    let mut w5_partitioned = 0u128;
    for pair in cuts.windows(2) {
        w5_partitioned += count_exact_range(5, &ball, &mask5, pair[0], pair[1], CAP).unwrap();
    }

    println!(
        "  w=5 scan: serial {w5_serial} in {serial_time:?}, parallel {w5_parallel} in {parallel_time:?}"
    );
    conclude(
        3,
        "frozen exact counts reproduce; partitions match serial",
        w4 == P1_W4
            && w5_serial == P1_W5
            && w5_parallel == P1_W5
            && w5_partitioned == P1_W5
            && parallel_time.as_secs() < 900,
    );
}

#[test]
fn criterion_4_single_active_output_law() {
    let mut ok = true;
    for w in 4u32..=10 {
        let mask = SuppressionMask::new(w, 1).unwrap();
        // analytic value, cross-checked by enumeration inside for w^2 <= 25
        let counted = count_single_active(w, &mask, CAP).unwrap().point();
        let n = u128::from(w * w);
        let b = n - u128::from((w - 2) * (w - 2));
        ok &= counted == n - b;
        ok &= u128::from(mask.suppressed_count()) == b;
    }
    conclude(4, "single-active-output count equals N - B for w in 4..=10", ok);
}

#[test]
fn criterion_5_speedup_trend_ladder() {
    let config = ExperimentConfig {
        zone_sides: vec![4, 5, 6],
        pattern_side: 3,
        measure: "dnf_terms".into(),
        enumeration_cap: CAP,
        mc_samples: 1_000_000,
        mc_seed: 42,
        ..ExperimentConfig::default()
    };
    let report = run_experiment(&config).unwrap();

    let mut ok = true;
    // exact rows pinned, estimated row well-formed
    ok &= report.rows[0].p1 == P1_W4 && report.rows[0].p1_method == "exact";
    ok &= report.rows[1].p1 == P1_W5 && report.rows[1].p1_method == "exact";
    ok &= report.rows[2].p1_method == "monte_carlo";
    ok &= report.rows.iter().map(|r| r.lambda2).eq([164, 259, 376]);

    // interval-certified strict decrease (estimated rows judged at their
    // CI ends, which is exactly what the trend verdict encodes)
    ok &= report.trends.ratio == "strictly_decreasing";
    ok &= report.trends.c1 == "strictly_decreasing";
    ok &= report.trends.c2 == "strictly_decreasing";

    // point sequences decrease as well
    for pair in report.rows.windows(2) {
        ok &= pair[1].c1 < pair[0].c1 && pair[1].c2 < pair[0].c2 && pair[1].ratio < pair[0].ratio;
    }

    // monotone growth of the class itself, with the estimate at its lower end
    let estimate = &report.estimates[0];
    ok &= estimate.samples >= 1_000_000;
    ok &= P1_W4 < P1_W5 && P1_W5 < estimate.ci_lower;

    // recognition checks ran for both enumerable rungs and agree
    ok &= report.recognition_checks.len() == 2;
    ok &= report
        .recognition_checks
        .iter()
        .all(|c| c.two_layer_agrees && c.one_layer_agrees);

    for row in &report.rows {
        println!(
            "  w={} P1={} ({}) ratio={:.3e} c1={:.3e} c2={:.3e}",
            row.w, row.p1, row.p1_method, row.ratio, row.c1, row.c2
        );
    }
    conclude(5, "lambda2/lambda1, c1, c2 strictly decreasing over w in {4,5,6}", ok);
}

#[test]
fn criterion_6_bound_audit() {
    let pattern = AngularPattern::corner(3).unwrap();
    let ball = hamming_ball(&pattern);
    let mut ok = true;

    let p1_of = |w: u32| -> u128 {
        let mask = SuppressionMask::new(w, 1).unwrap();
        if w <= 5 {
            count_exact_parallel(w, &ball, &mask, CAP).unwrap().point()
        } else {
            estimate_monte_carlo_parallel(w, &ball, &mask, 1_000_000, 42).unwrap().point()
        }
    };

    let mut last_holds = Vec::new();
    for w in [4u32, 5, 6] {
        let n = u128::from(w * w);
        let window = 9u128;
        let b = n - u128::from((w - 2) * (w - 2));
        let bound = unique_class_lower_bound(n, b, window).unwrap();
        // independent recomputation with explicit arithmetic
        let margin = n - window - 2;
        ok &= bound == (n - b) * (window + 1) * margin * margin * margin;

        let p1 = p1_of(w);
        let holds = p1 > bound;
        println!("  w={w}: bound={bound} P1={p1} -> {}", if holds { "holds" } else { "fails" });
        last_holds.push(holds);
    }
    // desk-scale expectation: the asymptotic bound fails at w=4 and holds
    // from w=5 on; the audit itself must stay exact and consistent
    ok &= last_holds == [false, true, true];
    ok &= unique_class_lower_bound(16, 12, 9).unwrap() == 5000 && 5000 > P1_W4;
    ok &= unique_class_lower_bound(25, 16, 9).unwrap() == 246_960 && 246_960 < P1_W5;
    conclude(6, "lower-bound audit computes exactly and records holds/fails", ok);
}

#[test]
fn criterion_7_monte_carlo_calibration() {
    let pattern = AngularPattern::corner(3).unwrap();
    let ball = hamming_ball(&pattern);
    let mask = SuppressionMask::new(4, 1).unwrap();

    let mut covered = 0u32;
    for seed in 0u64..20 {
        let estimate = estimate_monte_carlo(4, &ball, &mask, 100_000, seed).unwrap();
        if let CountValue::Estimate { ci_lower, ci_upper, .. } = estimate.value {
            if ci_lower <= P1_W4 && P1_W4 <= ci_upper {
                covered += 1;
            }
        }
    }
    println!("  {covered}/20 intervals cover the exact count");

    // bit-identical reproduction across worker layouts for one seed
    let serial = estimate_monte_carlo(4, &ball, &mask, 100_000, 3).unwrap();
    let parallel = estimate_monte_carlo_parallel(4, &ball, &mask, 100_000, 3).unwrap();
    let batches = monte_carlo_batch_count(100_000);
    let mut hits = 0;
    for (lo, hi) in [(0, 7u64), (7, 50), (50, batches)] {
        hits += monte_carlo_batch_hits(4, &ball, &mask, 100_000, 3, lo, hi).unwrap();
    }
    let rebuilt = estimate_from_hits(4, hits, 100_000, 3).unwrap();

    conclude(
        7,
        "95% interval coverage >= 17/20 and worker-count invariance",
        covered >= 17 && serial == parallel && serial == rebuilt,
    );
}

#[test]
fn criterion_8_property_suites() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xFDCA);
    let mut ok = true;

    // global-map locality: 10^4 random out-of-window flips
    let mask = SuppressionMask::new(6, 1).unwrap();
    let mut trials = 0u32;
    while trials < 10_000 {
        let rule = random_rule(&mut rng);
        let config = random_config(&mut rng, 6);
        let row = 1 + (rng.next_u32() % 4);
        let col = 1 + (rng.next_u32() % 4);
        let flip_row = rng.next_u32() % 6;
        let flip_col = rng.next_u32() % 6;
        if (i64::from(flip_row) - i64::from(row)).abs() <= 1
            && (i64::from(flip_col) - i64::from(col)).abs() <= 1
        {
            continue;
        }
        let before = apply_layer(&rule, &config, &mask, BoundaryPolicy::ZERO).unwrap();
        let mut flipped = config.clone();
        flipped.set_cell(flip_row, flip_col, !flipped.get(flip_row, flip_col));
        let after = apply_layer(&rule, &flipped, &mask, BoundaryPolicy::ZERO).unwrap();
        ok &= before.get(row, col) == after.get(row, col);
        trials += 1;
    }
    println!("  locality: {trials} trials");

    // interior shift equivariance
    for _ in 0..1000 {
        let rule = random_rule(&mut rng);
        let config = random_config(&mut rng, 6);
        for (dr, dc) in [(1u32, 0u32), (0, 1)] {
            let mut trimmed = Configuration::zero(6).unwrap();
            let mut shifted = Configuration::zero(6).unwrap();
            for row in 0..6 - dr {
                for col in 0..6 - dc {
                    trimmed.set_cell(row, col, config.get(row, col));
                    shifted.set_cell(row + dr, col + dc, config.get(row, col));
                }
            }
            let out = apply_layer(&rule, &trimmed, &mask, BoundaryPolicy::ZERO).unwrap();
            let out_shifted = apply_layer(&rule, &shifted, &mask, BoundaryPolicy::ZERO).unwrap();
            for row in 1..5u32 {
                for col in 1..5u32 {
                    if mask.is_active(i64::from(row + dr), i64::from(col + dc)) {
                        ok &= out.get(row, col) == out_shifted.get(row + dr, col + dc);
                    }
                }
            }
        }
    }
    println!("  shift equivariance: 1000 trials x 2 directions");

    // measure monotonicity inside declared ranges
    for measure in [
        ComplexityMeasure::dnf_terms(),
        ComplexityMeasure::dnf_literals(),
        ComplexityMeasure::min_dnf_cnf(),
    ] {
        for n in [1u128, 4, 9, 16, 25] {
            let p_max = measure.monotone_p_max(n);
            for _ in 0..200 {
                let p = u128::from(rng.next_u64()) % p_max;
                ok &= measure.eval(n, p).unwrap() <= measure.eval(n, p + 1).unwrap();
                if p <= measure.monotone_p_max(n - (n > 1) as u128) {
                    ok &= measure.eval(n, p).unwrap() <= measure.eval(n + 1, p).unwrap();
                }
            }
        }
    }
    println!("  measure monotonicity: 3 measures x 5 sizes x 200 samples");

    // exact additive decomposition of the 2-layer cost
    let terms = ComplexityMeasure::dnf_terms();
    for _ in 0..2000 {
        let zone = 1 + u128::from(rng.next_u32() % 1000);
        let window = 1 + u128::from(rng.next_u32() % 25);
        let p = u128::from(rng.next_u64()) % (1 << window.min(63));
        let p2 = u128::from(rng.next_u32() % 1000);
        let cost = lambda_two(&terms, zone, window, p, p2).unwrap();
        ok &= cost.total == cost.layer_term + cost.top_term;
        ok &= cost.layer_term == zone * terms.eval(window, p).unwrap();
        ok &= cost.top_term == terms.eval(zone, p2).unwrap();
    }
    println!("  lambda2 decomposition: 2000 tuples");

    // Hamming-metric axioms
    for _ in 0..10_000 {
        let radius = 1 + (rng.next_u32() % 2) as u8;
        let a = random_window(&mut rng, radius);
        let b = random_window(&mut rng, radius);
        let c = random_window(&mut rng, radius);
        let d = |x: &LocalConfiguration, y: &LocalConfiguration| hamming_distance(x, y).unwrap();
        ok &= d(&a, &a) == 0;
        ok &= d(&a, &b) == d(&b, &a);
        ok &= (d(&a, &b) == 0) == (a == b);
        ok &= d(&a, &c) <= d(&a, &b) + d(&b, &c);
    }
    println!("  Hamming metric axioms: 10000 triples");

    conclude(8, "property suites (locality, shifts, monotonicity, decomposition, metric)", ok);
}

fn random_config(rng: &mut ChaCha8Rng, side: u32) -> Configuration {
    let cells = side * side;
    let mask = (1u128 << cells) - 1;
    let raw = (u128::from(rng.next_u64()) << 64 | u128::from(rng.next_u64())) & mask;
    Configuration::from_packed(side, raw).unwrap()
}

fn random_window(rng: &mut ChaCha8Rng, radius: u8) -> LocalConfiguration {
    let cells = fdca_core::grid::window_cells(radius);
    let raw = (u128::from(rng.next_u64()) << 64 | u128::from(rng.next_u64())) & ((1 << cells) - 1);
    LocalConfiguration::new(radius, raw).unwrap()
}

fn random_rule(rng: &mut ChaCha8Rng) -> LocalRule {
    let words: Vec<u64> = (0..8).map(|_| rng.next_u64()).collect();
    let accepted = (0..512u128).filter(|v| words[(v / 64) as usize] >> (v % 64) & 1 == 1);
    LocalRule::from_table(1, accepted).unwrap()
}

/// Reports stay byte-identical for identical configurations (re-run of the
/// cheap single-rung ladder).
#[test]
fn report_reproducibility() {
    let config = ExperimentConfig {
        zone_sides: vec![4],
        mc_samples: 1000,
        ..ExperimentConfig::default()
    };
    let a = emit_report(&run_experiment(&config).unwrap(), ReportFormat::Json).unwrap();
    let b = emit_report(&run_experiment(&config).unwrap(), ReportFormat::Json).unwrap();
    assert_eq!(a, b);
    let c = emit_report(&run_experiment(&config).unwrap(), ReportFormat::Csv).unwrap();
    let d = emit_report(&run_experiment(&config).unwrap(), ReportFormat::Csv).unwrap();
    assert_eq!(c, d);
}
