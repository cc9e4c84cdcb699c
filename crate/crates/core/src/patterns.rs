//! Angular patterns, their radius-1 Hamming balls, and the class of zone
//! configurations containing exactly one interior-anchored near-instance:
//! exact counting by exhaustive scan, analytic counting of single-hit layer
//! outputs, seeded Monte Carlo estimation, and construction of the matched
//! 1-layer / 2-layer recognizer pair.
//!
//! Counting conventions (pinned so every counter agrees by construction):
//! instances are anchored at the pattern's center cell, the anchor must be
//! an interior cell (its window wholly inside the zone), and overlapping
//! near-instances count once per anchor.

use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::{
    build_one_layer, build_two_layer_with, EdgeMode, LayeredAutomaton, LocalRule, SuppressionMask,
    TopRule,
};
use crate::complexity::CountBounds;
use crate::error::{Error, Result};
use crate::grid::{
    enumerate_configurations, enumerate_range, local_configuration, BoundaryPolicy, Configuration,
    LocalConfiguration, MAX_PACKED_SIDE, MAX_WINDOW_RADIUS,
};

/// Largest pattern side: windows pack into 128 bits, so (2r+1) <= 11.
pub const MAX_PATTERN_SIDE: u32 = 2 * MAX_WINDOW_RADIUS as u32 + 1;

/// Minimum Monte Carlo sample count.
pub const MIN_MC_SAMPLES: u64 = 1000;

/// Samples per Monte Carlo batch. Each batch draws from its own generator
/// stream (stream id = batch index), so any partitioning of batches across
/// workers reproduces the serial result bit-exactly.
pub const MC_BATCH_SAMPLES: u64 = 1024;

/// An odd-sided square template with at least one marked cell; the default
/// shape is a right-angle corner. Bit layout matches [`LocalConfiguration`]:
/// bit `row * side + col`, top-left first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AngularPattern {
    side: u32,
    bits: u128,
}

impl AngularPattern {
    /// The corner shape: every cell of the leftmost column and of the bottom
    /// row is 1 (2s - 1 marked cells), the rest 0.
    pub fn corner(side: u32) -> Result<Self> {
        let mut bits: u128 = 0;
        for row in 0..side {
            bits |= 1 << (row * side);
        }
        for col in 0..side {
            bits |= 1 << ((side - 1) * side + col);
        }
        AngularPattern::from_bits(side, bits)
    }

    /// Arbitrary template from packed bits (odd side >= 3, not all zero).
    pub fn from_bits(side: u32, bits: u128) -> Result<Self> {
        if side < 3 || side % 2 == 0 || side > MAX_PATTERN_SIDE {
            return Err(Error::BadPatternSide { side });
        }
        let cells = side * side;
        if cells < 128 && bits >> cells != 0 {
            return Err(Error::PackedOutOfRange { packed: bits, cells });
        }
        if bits == 0 {
            return Err(Error::EmptyPattern);
        }
        Ok(AngularPattern { side, bits })
    }

    pub fn side(&self) -> u32 {
        self.side
    }

    /// n = side^2.
    pub fn cell_count(&self) -> u32 {
        self.side * self.side
    }

    /// Window radius (side - 1) / 2 of the matching neighborhood.
    pub fn radius(&self) -> u8 {
        ((self.side - 1) / 2) as u8
    }

    pub fn packed(&self) -> u128 {
        self.bits
    }

    pub fn ones(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn cell(&self, row: u32, col: u32) -> bool {
        assert!(row < self.side && col < self.side, "cell ({row},{col}) outside pattern");
        self.bits >> (row * self.side + col) & 1 == 1
    }

    pub fn to_local(&self) -> LocalConfiguration {
        LocalConfiguration::new(self.radius(), self.bits).expect("pattern bits validated")
    }
}

/// All windows within Hamming distance 1 of a pattern: the pattern itself
/// plus every single-bit flip, n + 1 members in all.
#[derive(Debug, Clone)]
pub struct HammingBallClass {
    center: LocalConfiguration,
    members: Vec<LocalConfiguration>,
}

/// Materializes the radius-1 ball around the pattern.
pub fn hamming_ball(pattern: &AngularPattern) -> HammingBallClass {
    let center = pattern.to_local();
    let mut members = Vec::with_capacity(center.size() as usize + 1);
    members.push(center);
    for bit in 0..center.size() {
        members.push(center.with_bit_flipped(bit));
    }
    members.sort_unstable();
    HammingBallClass { center, members }
}

impl HammingBallClass {
    pub fn center(&self) -> &LocalConfiguration {
        &self.center
    }

    pub fn radius(&self) -> u8 {
        self.center.radius()
    }

    pub fn pattern_side(&self) -> u32 {
        self.center.window_side()
    }

    pub fn members(&self) -> &[LocalConfiguration] {
        &self.members
    }

    /// p = n + 1.
    pub fn cardinality(&self) -> u128 {
        self.members.len() as u128
    }

    /// Membership by distance; windows of a different radius are never
    /// members.
    pub fn contains(&self, window: &LocalConfiguration) -> bool {
        window.radius() == self.center.radius()
            && (window.packed() ^ self.center.packed()).count_ones() <= 1
    }

    /// The ball as an explicit-member layer rule. This is a second route to
    /// membership (sorted-list lookup rather than distance), so automata
    /// built from it genuinely cross-check the distance-based counters.
    pub fn member_rule(&self) -> Result<LocalRule> {
        LocalRule::from_members(self.radius(), self.members.iter().copied())
    }
}

fn validate_counting_geometry(
    config_side: u32,
    ball: &HammingBallClass,
    mask: &SuppressionMask,
) -> Result<()> {
    if config_side != mask.zone_side() {
        return Err(Error::SideMismatch { expected: mask.zone_side(), actual: config_side });
    }
    if mask.radius() != ball.radius() {
        return Err(Error::MaskRadiusMismatch { mask: mask.radius(), window: ball.radius() });
    }
    Ok(())
}

/// Number of interior anchors whose window lies in the ball. Overlapping
/// near-instances are counted independently per anchor.
pub fn count_instances(
    config: &Configuration,
    ball: &HammingBallClass,
    mask: &SuppressionMask,
) -> Result<u32> {
    validate_counting_geometry(config.side(), ball, mask)?;
    if ball.pattern_side() > config.side() {
        return Err(Error::PatternTooLarge {
            pattern_side: ball.pattern_side(),
            zone_side: config.side(),
        });
    }
    let mut count = 0;
    for (row, col) in mask.active_cells() {
        let window = local_configuration(
            config,
            (i64::from(row), i64::from(col)),
            ball.radius(),
            BoundaryPolicy::ZERO,
        )?;
        if ball.contains(&window) {
            count += 1;
        }
    }
    Ok(count)
}

/// Whether the configuration contains exactly one near-instance.
pub fn is_unique_instance(
    config: &Configuration,
    ball: &HammingBallClass,
    mask: &SuppressionMask,
) -> Result<bool> {
    validate_counting_geometry(config.side(), ball, mask)?;
    if ball.pattern_side() > config.side() {
        return Err(Error::PatternTooLarge {
            pattern_side: ball.pattern_side(),
            zone_side: config.side(),
        });
    }
    let mut count = 0u32;
    for (row, col) in mask.active_cells() {
        let window = local_configuration(
            config,
            (i64::from(row), i64::from(col)),
            ball.radius(),
            BoundaryPolicy::ZERO,
        )?;
        if ball.contains(&window) {
            count += 1;
            if count > 1 {
                return Ok(false);
            }
        }
    }
    Ok(count == 1)
}

/// Provenance of a counted or estimated quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    Exact,
    Analytic,
    MonteCarlo,
}

impl CountMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            CountMethod::Exact => "exact",
            CountMethod::Analytic => "analytic",
            CountMethod::MonteCarlo => "monte_carlo",
        }
    }
}

/// Either an exact count or a seeded estimate with its 95% interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountValue {
    Exact(u128),
    Estimate {
        point: u128,
        ci_lower: u128,
        ci_upper: u128,
        samples: u64,
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountResult {
    pub value: CountValue,
    pub method: CountMethod,
}

impl CountResult {
    pub fn exact(value: u128, method: CountMethod) -> Self {
        CountResult { value: CountValue::Exact(value), method }
    }

    pub fn point(&self) -> u128 {
        match self.value {
            CountValue::Exact(v) => v,
            CountValue::Estimate { point, .. } => point,
        }
    }

    pub fn bounds(&self) -> CountBounds {
        match self.value {
            CountValue::Exact(v) => CountBounds::exact(v),
            CountValue::Estimate { point, ci_lower, ci_upper, .. } => {
                CountBounds { point, lower: ci_lower, upper: ci_upper }
            }
        }
    }

    pub fn is_estimate(&self) -> bool {
        matches!(self.value, CountValue::Estimate { .. })
    }
}

/// Exact size of the unique-instance class by scanning every configuration
/// of the zone. Degenerate geometries (no interior anchors) count 0 without
/// scanning.
pub fn count_exact(
    zone_side: u32,
    ball: &HammingBallClass,
    mask: &SuppressionMask,
    cap: u32,
) -> Result<CountResult> {
    validate_counting_geometry(zone_side, ball, mask)?;
    if mask.active_count() == 0 {
        return Ok(CountResult::exact(0, CountMethod::Exact));
    }
    let mut count: u128 = 0;
    for config in enumerate_configurations(zone_side, cap)? {
        if is_unique_instance(&config, ball, mask)? {
            count += 1;
        }
    }
    Ok(CountResult::exact(count, CountMethod::Exact))
}

/// Partition primitive for [`count_exact`]: unique-instance configurations
/// within `start..end` of the enumeration order. Disjoint ranges sum to the
/// full-space count regardless of how the space is partitioned.
pub fn count_exact_range(
    zone_side: u32,
    ball: &HammingBallClass,
    mask: &SuppressionMask,
    start: u128,
    end: u128,
    cap: u32,
) -> Result<u128> {
    validate_counting_geometry(zone_side, ball, mask)?;
    if mask.active_count() == 0 {
        return Ok(0);
    }
    let mut count: u128 = 0;
    for config in enumerate_range(zone_side, start, end, cap)? {
        if is_unique_instance(&config, ball, mask)? {
            count += 1;
        }
    }
    Ok(count)
}

/// Size of the single-hit layer-output class: N - B, the number of active
/// cells. When the zone is enumerable under `cap`, the analytic value is
/// cross-checked by counting configurations with exactly one 1 located at
/// an active cell.
pub fn count_single_active(zone_side: u32, mask: &SuppressionMask, cap: u32) -> Result<CountResult> {
    if zone_side != mask.zone_side() {
        return Err(Error::SideMismatch { expected: mask.zone_side(), actual: zone_side });
    }
    let analytic = u128::from(mask.active_count());
    if zone_side <= MAX_PACKED_SIDE && zone_side * zone_side <= cap {
        let mut found: u128 = 0;
        for config in enumerate_configurations(zone_side, cap)? {
            if config
                .single_one()
                .is_some_and(|(row, col)| mask.is_active(i64::from(row), i64::from(col)))
            {
                found += 1;
            }
        }
        if found != analytic {
            return Err(Error::CrossCheckFailed { expected: analytic, found });
        }
    }
    Ok(CountResult::exact(analytic, CountMethod::Analytic))
}

/// Number of batches a sample count splits into.
pub fn monte_carlo_batch_count(samples: u64) -> u64 {
    samples.div_ceil(MC_BATCH_SAMPLES)
}

/// Unique-instance hits over the batches `batch_start..batch_end` of a
/// `samples`-sample run. Batch b draws its configurations from stream b of
/// a generator seeded with `seed`; each sample consumes exactly
/// ceil(side^2 / 64) words. Summing disjoint batch ranges reproduces the
/// serial hit count bit-exactly.
pub fn monte_carlo_batch_hits(
    zone_side: u32,
    ball: &HammingBallClass,
    mask: &SuppressionMask,
    samples: u64,
    seed: u64,
    batch_start: u64,
    batch_end: u64,
) -> Result<u64> {
    validate_counting_geometry(zone_side, ball, mask)?;
    if zone_side > MAX_PACKED_SIDE {
        return Err(Error::ZoneTooLarge { side: zone_side, max: MAX_PACKED_SIDE });
    }
    let batches = monte_carlo_batch_count(samples);
    if batch_start > batch_end || batch_end > batches {
        return Err(Error::RangeOutOfBounds {
            start: u128::from(batch_start),
            end: u128::from(batch_end),
            total: u128::from(batches),
        });
    }
    let cells = zone_side * zone_side;
    let two_words = cells > 64;
    let value_mask: u128 = if cells >= 128 { u128::MAX } else { (1 << cells) - 1 };
    let degenerate = mask.active_count() == 0;

    let mut hits = 0u64;
    for batch in batch_start..batch_end {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(batch);
        let in_batch = MC_BATCH_SAMPLES.min(samples - batch * MC_BATCH_SAMPLES);
        for _ in 0..in_batch {
            let mut packed = u128::from(rng.next_u64());
            if two_words {
                packed |= u128::from(rng.next_u64()) << 64;
            }
            packed &= value_mask;
            if degenerate {
                continue;
            }
            let config = Configuration::from_packed(zone_side, packed)?;
            if is_unique_instance(&config, ball, mask)? {
                hits += 1;
            }
        }
    }
    Ok(hits)
}

/// Scales a hit fraction to a count estimate over the 2^(side^2) space with
/// an exact-integer 95% Wilson interval (outward-rounded).
pub fn estimate_from_hits(
    zone_side: u32,
    hits: u64,
    samples: u64,
    seed: u64,
) -> Result<CountResult> {
    if zone_side == 0 || zone_side > MAX_PACKED_SIDE {
        return Err(Error::ZoneTooLarge { side: zone_side, max: MAX_PACKED_SIDE });
    }
    if samples < MIN_MC_SAMPLES {
        return Err(Error::TooFewSamples { samples, min: MIN_MC_SAMPLES });
    }
    let (point, ci_lower, ci_upper) =
        crate::numeric::wilson_bounds_scaled(hits, samples, zone_side * zone_side)?;
    Ok(CountResult {
        value: CountValue::Estimate { point, ci_lower, ci_upper, samples, seed },
        method: CountMethod::MonteCarlo,
    })
}

/// Monte Carlo estimate of the unique-instance count: `samples` uniform
/// configurations (every cell an independent fair bit) from the seeded
/// generator. Identical (seed, samples) always reproduce the same estimate.
pub fn estimate_monte_carlo(
    zone_side: u32,
    ball: &HammingBallClass,
    mask: &SuppressionMask,
    samples: u64,
    seed: u64,
) -> Result<CountResult> {
    if samples < MIN_MC_SAMPLES {
        return Err(Error::TooFewSamples { samples, min: MIN_MC_SAMPLES });
    }
    let batches = monte_carlo_batch_count(samples);
    let hits = monte_carlo_batch_hits(zone_side, ball, mask, samples, seed, 0, batches)?;
    estimate_from_hits(zone_side, hits, samples, seed)
}

/// Closed-form lower bound on the unique-instance class size:
/// (N - B) * (n + 1) * (N - n - 2)^3. Defined only for N > n + 2; the bound
/// is an asymptotic device and routinely fails at desk-scale zones, so
/// callers report holds/fails instead of asserting it.
pub fn unique_class_lower_bound(
    zone_cells: u128,
    suppressed: u128,
    window_cells: u128,
) -> Result<u128> {
    if zone_cells <= window_cells + 2 {
        return Err(Error::BoundUndefined { zone_cells, window_cells });
    }
    let active = zone_cells.checked_sub(suppressed).ok_or(Error::Overflow("N - B"))?;
    let margin = zone_cells - window_cells - 2;
    let cubed = margin
        .checked_mul(margin)
        .and_then(|m| m.checked_mul(margin))
        .ok_or(Error::Overflow("(N - n - 2)^3"))?;
    active
        .checked_mul(window_cells + 1)
        .and_then(|v| v.checked_mul(cubed))
        .ok_or(Error::Overflow("class lower bound"))
}

/// Builds the matched recognizer pair for a pattern over a zone:
/// a 1-layer automaton whose top rule is unique-instance membership, and a
/// 2-layer automaton whose first layer detects ball members and whose top
/// rule accepts exactly one active 1.
pub fn build_recognizer_pair(
    zone_side: u32,
    pattern: &AngularPattern,
) -> Result<(LayeredAutomaton, LayeredAutomaton)> {
    build_recognizer_pair_with(zone_side, pattern, BoundaryPolicy::ZERO, EdgeMode::Suppress)
}

/// [`build_recognizer_pair`] with explicit boundary fill and edge-cell
/// treatment for the 2-layer automaton. The recognized class itself is
/// always defined through the suppression mask; `EdgeMode::BoundaryFill`
/// exists to compare the alternative edge reading against it.
pub fn build_recognizer_pair_with(
    zone_side: u32,
    pattern: &AngularPattern,
    boundary: BoundaryPolicy,
    edge_mode: EdgeMode,
) -> Result<(LayeredAutomaton, LayeredAutomaton)> {
    if zone_side <= pattern.side() {
        return Err(Error::ZoneNotLargerThanPattern {
            zone_side,
            pattern_side: pattern.side(),
        });
    }
    let ball = hamming_ball(pattern);
    let mask = SuppressionMask::new(zone_side, ball.radius())?;

    let class_ball = ball.clone();
    let one_layer = build_one_layer(
        zone_side,
        TopRule::new(
            "unique-instance",
            move |config| {
                is_unique_instance(config, &class_ball, &mask)
                    .expect("geometry validated at construction")
            },
            None,
        ),
    )?;

    let top_mask = mask;
    let two_layer = build_two_layer_with(
        zone_side,
        ball.member_rule()?,
        TopRule::new(
            "exactly-one-active",
            move |config| {
                config
                    .single_one()
                    .is_some_and(|(row, col)| top_mask.is_active(i64::from(row), i64::from(col)))
            },
            Some(u128::from(mask.active_count())),
        ),
        boundary,
        edge_mode,
    )?;

    Ok((one_layer, two_layer))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::DEFAULT_ENUMERATION_CAP as CAP;

    #[test]
    fn corner_pattern_shape() {
        let p3 = AngularPattern::corner(3).unwrap();
        assert_eq!(p3.ones(), 5);
        assert_eq!(p3.packed(), 0b111_001_001);
        assert_eq!(p3.radius(), 1);
        assert!(p3.cell(0, 0) && p3.cell(2, 2) && !p3.cell(0, 1));

        let p5 = AngularPattern::corner(5).unwrap();
        assert_eq!(p5.ones(), 9);
        assert_eq!(p5.cell_count(), 25);
    }

    #[test]
    fn pattern_validation() {
        assert!(matches!(AngularPattern::corner(4), Err(Error::BadPatternSide { side: 4 })));
        assert!(matches!(AngularPattern::corner(1), Err(Error::BadPatternSide { side: 1 })));
        assert!(matches!(AngularPattern::from_bits(3, 0), Err(Error::EmptyPattern)));
        assert!(AngularPattern::from_bits(3, 1 << 9).is_err());
    }

    #[test]
    fn ball_cardinality_is_n_plus_one() {
        let ball3 = hamming_ball(&AngularPattern::corner(3).unwrap());
        assert_eq!(ball3.cardinality(), 10);
        let ball5 = hamming_ball(&AngularPattern::corner(5).unwrap());
        assert_eq!(ball5.cardinality(), 26);
    }

    #[test]
    fn ball_membership() {
        let pattern = AngularPattern::corner(3).unwrap();
        let ball = hamming_ball(&pattern);
        let center = pattern.to_local();
        assert!(ball.contains(&center));
        assert!(ball.contains(&center.with_bit_flipped(4)));
        assert!(!ball.contains(&center.with_bit_flipped(4).with_bit_flipped(5)));
        // member-rule route agrees with the distance route on every window
        let rule = ball.member_rule().unwrap();
        for packed in 0..512u128 {
            let w = LocalConfiguration::new(1, packed).unwrap();
            assert_eq!(rule.matches(&w).unwrap(), ball.contains(&w));
        }
    }

    fn place_corner(config: &mut Configuration, pattern: &AngularPattern, top: u32, left: u32) {
        for row in 0..pattern.side() {
            for col in 0..pattern.side() {
                if pattern.cell(row, col) {
                    config.set_cell(top + row, left + col, true);
                }
            }
        }
    }

    #[test]
    fn instance_counting_matches_hand_placements() {
        let pattern = AngularPattern::corner(3).unwrap();
        let ball = hamming_ball(&pattern);

        let mask5 = SuppressionMask::new(5, 1).unwrap();
        let zero = Configuration::zero(5).unwrap();
        assert_eq!(count_instances(&zero, &ball, &mask5).unwrap(), 0);
        assert!(!is_unique_instance(&zero, &ball, &mask5).unwrap());

        let mut one = Configuration::zero(5).unwrap();
        place_corner(&mut one, &pattern, 1, 1);
        assert_eq!(count_instances(&one, &ball, &mask5).unwrap(), 1);
        assert!(is_unique_instance(&one, &ball, &mask5).unwrap());

        let mut two = Configuration::zero(7).unwrap();
        let mask7 = SuppressionMask::new(7, 1).unwrap();
        place_corner(&mut two, &pattern, 0, 0);
        place_corner(&mut two, &pattern, 4, 4);
        assert_eq!(count_instances(&two, &ball, &mask7).unwrap(), 2);
        assert!(!is_unique_instance(&two, &ball, &mask7).unwrap());
    }

    #[test]
    fn counting_geometry_errors() {
        let ball = hamming_ball(&AngularPattern::corner(3).unwrap());
        let config = Configuration::zero(5).unwrap();

        let wrong_radius = SuppressionMask::new(5, 2).unwrap();
        assert!(matches!(
            count_instances(&config, &ball, &wrong_radius),
            Err(Error::MaskRadiusMismatch { mask: 2, window: 1 })
        ));

        let wrong_side = SuppressionMask::new(4, 1).unwrap();
        assert!(matches!(
            count_instances(&config, &ball, &wrong_side),
            Err(Error::SideMismatch { .. })
        ));

        let tiny = Configuration::zero(2).unwrap();
        let tiny_mask = SuppressionMask::new(2, 1).unwrap();
        assert!(matches!(
            count_instances(&tiny, &ball, &tiny_mask),
            Err(Error::PatternTooLarge { pattern_side: 3, zone_side: 2 })
        ));
    }

    #[test]
    fn single_active_law() {
        for (side, expect) in [(4u32, 4u128), (5, 9), (2, 0)] {
            let mask = SuppressionMask::new(side, 1).unwrap();
            let result = count_single_active(side, &mask, CAP).unwrap();
            assert_eq!(result.point(), expect, "side {side}");
            assert_eq!(result.method, CountMethod::Analytic);
        }
    }

    #[test]
    fn lower_bound_values() {
        assert_eq!(unique_class_lower_bound(16, 12, 9).unwrap(), 5000);
        assert_eq!(unique_class_lower_bound(25, 16, 9).unwrap(), 246_960);
        assert!(matches!(
            unique_class_lower_bound(11, 0, 9),
            Err(Error::BoundUndefined { zone_cells: 11, window_cells: 9 })
        ));
    }

    #[test]
    fn degenerate_zone_counts_zero() {
        // pattern side 3 in a zone of side 3: no anchor strictly interior
        // to a zone *larger* than the pattern, so the pair is refused...
        let pattern = AngularPattern::corner(3).unwrap();
        assert!(matches!(
            build_recognizer_pair(3, &pattern),
            Err(Error::ZoneNotLargerThanPattern { zone_side: 3, pattern_side: 3 })
        ));
        // ...while counting over an undersized zone is simply empty
        let ball = hamming_ball(&pattern);
        let mask = SuppressionMask::new(2, 1).unwrap();
        assert_eq!(count_exact(2, &ball, &mask, CAP).unwrap().point(), 0);
    }

    #[test]
    fn monte_carlo_is_deterministic() {
        let ball = hamming_ball(&AngularPattern::corner(3).unwrap());
        let mask = SuppressionMask::new(4, 1).unwrap();
        let a = estimate_monte_carlo(4, &ball, &mask, 2000, 7).unwrap();
        let b = estimate_monte_carlo(4, &ball, &mask, 2000, 7).unwrap();
        assert_eq!(a, b);
        let c = estimate_monte_carlo(4, &ball, &mask, 2000, 8).unwrap();
        assert!(a != c, "different seeds should sample differently");
        assert!(matches!(
            estimate_monte_carlo(4, &ball, &mask, 999, 7),
            Err(Error::TooFewSamples { samples: 999, min: MIN_MC_SAMPLES })
        ));
    }

    #[test]
    fn monte_carlo_partitions_agree() {
        let ball = hamming_ball(&AngularPattern::corner(3).unwrap());
        let mask = SuppressionMask::new(4, 1).unwrap();
        let samples = 5000u64;
        let batches = monte_carlo_batch_count(samples);
        let serial = monte_carlo_batch_hits(4, &ball, &mask, samples, 3, 0, batches).unwrap();
        let mut split = 0;
        for (lo, hi) in [(0, 2), (2, 3), (3, batches)] {
            split += monte_carlo_batch_hits(4, &ball, &mask, samples, 3, lo, hi).unwrap();
        }
        assert_eq!(serial, split);
    }

    #[test]
    fn degenerate_estimate_is_zero_with_upper_tail() {
        let pattern = AngularPattern::corner(3).unwrap();
        let ball = hamming_ball(&pattern);
        let mask = SuppressionMask::new(2, 1).unwrap();
        let result = estimate_monte_carlo(2, &ball, &mask, 1000, 11).unwrap();
        match result.value {
            CountValue::Estimate { point, ci_lower, ci_upper, .. } => {
                assert_eq!((point, ci_lower), (0, 0));
                assert!(ci_upper > 0);
            }
            CountValue::Exact(_) => panic!("estimate expected"),
        }
    }
}
