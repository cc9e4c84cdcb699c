//! Layered automata over a bounded working zone: local rules, the induced
//! global map, 1- and 2-layer construction, and exhaustive recognition
//! checks.
//!
//! A layer's local rule maps each cell's window to a binary state; the top
//! rule reads the entire final configuration and yields the single
//! recognition bit (only one top cell participates in recognition, so the
//! rest of the top layer is ignored). A class of input configurations is
//! recognized when the top bit is 1 exactly on its members.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use once_cell::race::OnceBox;

use crate::error::{Error, Result};
use crate::grid::{
    enumerate_configurations, enumerate_range, local_configuration, window_cells, BoundaryPolicy,
    Configuration, LocalConfiguration, MAX_SIDE, MAX_WINDOW_RADIUS,
};

/// Largest window cell count for which a truth table or a predicate
/// enumeration is permitted (2^25 entries).
pub const MAX_TABLE_CELLS: u32 = 25;

type WindowPredicate = Box<dyn Fn(&LocalConfiguration) -> bool + Send + Sync>;
type ZonePredicate = Box<dyn Fn(&Configuration) -> bool + Send + Sync>;

/// Recognized-set storage. The set of windows mapped to 1 is tiny for
/// typical detector layers (explicit members), mid-sized for table-backed
/// rules, and astronomically large for zone-level classes (predicate plus a
/// cardinality source).
pub enum RecognizedSet {
    /// Sorted, deduplicated packed window values.
    Members(Vec<u128>),
    /// Bitmap over all 2^n windows, bit = packed window value.
    Table(Vec<u64>),
    /// Membership by predicate; cardinality enumerable only for small
    /// windows, otherwise it must be supplied analytically.
    Predicate {
        predicate: WindowPredicate,
        cardinality: Option<u128>,
    },
}

/// One layer's local map: neighborhood radius plus the recognized set.
/// Output alphabet is binary; a cell fires iff its window is recognized.
pub struct LocalRule {
    radius: u8,
    set: RecognizedSet,
    cached_p: OnceBox<u128>,
}

impl core::fmt::Debug for LocalRule {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let kind = match &self.set {
            RecognizedSet::Members(m) => ("members", m.len()),
            RecognizedSet::Table(_) => ("table", 0),
            RecognizedSet::Predicate { .. } => ("predicate", 0),
        };
        f.debug_struct("LocalRule")
            .field("radius", &self.radius)
            .field("set", &kind.0)
            .finish()
    }
}

impl LocalRule {
    /// Rule recognizing exactly the listed windows. All members must share
    /// the rule radius. Degenerate (empty) sets are permitted.
    pub fn from_members(
        radius: u8,
        members: impl IntoIterator<Item = LocalConfiguration>,
    ) -> Result<Self> {
        if radius > MAX_WINDOW_RADIUS {
            return Err(Error::WindowTooLarge { radius, max: MAX_WINDOW_RADIUS });
        }
        let mut packed = Vec::new();
        for member in members {
            if member.radius() != radius {
                return Err(Error::RadiusMismatch { a: radius, b: member.radius() });
            }
            packed.push(member.packed());
        }
        packed.sort_unstable();
        packed.dedup();
        Ok(LocalRule {
            radius,
            set: RecognizedSet::Members(packed),
            cached_p: OnceBox::new(),
        })
    }

    /// Table-backed rule accepting the given packed window values. Only
    /// windows up to [`MAX_TABLE_CELLS`] cells fit a materialized table.
    pub fn from_table(radius: u8, accepted: impl IntoIterator<Item = u128>) -> Result<Self> {
        let cells = window_cells(radius);
        if cells > MAX_TABLE_CELLS {
            return Err(Error::TableTooLarge { cells, max: MAX_TABLE_CELLS });
        }
        let mut bits = alloc::vec![0u64; (1usize << cells).div_ceil(64)];
        for value in accepted {
            if value >> cells != 0 {
                return Err(Error::PackedOutOfRange { packed: value, cells });
            }
            bits[(value / 64) as usize] |= 1 << (value % 64);
        }
        Ok(LocalRule {
            radius,
            set: RecognizedSet::Table(bits),
            cached_p: OnceBox::new(),
        })
    }

    /// Predicate-backed rule. Without an analytic cardinality the recognized
    /// count is obtainable only for windows enumerable under
    /// [`MAX_TABLE_CELLS`].
    pub fn from_predicate<F>(radius: u8, predicate: F, cardinality: Option<u128>) -> Result<Self>
    where
        F: Fn(&LocalConfiguration) -> bool + Send + Sync + 'static,
    {
        if radius > MAX_WINDOW_RADIUS {
            return Err(Error::WindowTooLarge { radius, max: MAX_WINDOW_RADIUS });
        }
        Ok(LocalRule {
            radius,
            set: RecognizedSet::Predicate {
                predicate: Box::new(predicate),
                cardinality,
            },
            cached_p: OnceBox::new(),
        })
    }

    /// Rule recognizing nothing.
    pub fn empty(radius: u8) -> Result<Self> {
        LocalRule::from_members(radius, [])
    }

    pub fn radius(&self) -> u8 {
        self.radius
    }

    /// Neighborhood size n = (2r + 1)^2.
    pub fn neighborhood_size(&self) -> u32 {
        window_cells(self.radius)
    }

    /// Whether the rule maps this window to 1.
    pub fn matches(&self, window: &LocalConfiguration) -> Result<bool> {
        if window.radius() != self.radius {
            return Err(Error::RadiusMismatch { a: self.radius, b: window.radius() });
        }
        Ok(self.matches_packed(window.packed()))
    }

    fn matches_packed(&self, packed: u128) -> bool {
        match &self.set {
            RecognizedSet::Members(members) => members.binary_search(&packed).is_ok(),
            RecognizedSet::Table(bits) => bits[(packed / 64) as usize] >> (packed % 64) & 1 == 1,
            RecognizedSet::Predicate { predicate, .. } => {
                let window = LocalConfiguration::new(self.radius, packed)
                    .expect("packed value within window range");
                predicate(&window)
            }
        }
    }

    /// Exact cardinality p of the recognized set. Enumerates the window
    /// space for predicate rules without an analytic count (small windows
    /// only); the result is cached, so repeated calls are cheap.
    pub fn recognized_cardinality(&self) -> Result<u128> {
        if let Some(p) = self.cached_p.get() {
            return Ok(*p);
        }
        let p = match &self.set {
            RecognizedSet::Members(members) => members.len() as u128,
            RecognizedSet::Table(bits) => {
                bits.iter().map(|w| u128::from(w.count_ones())).sum()
            }
            RecognizedSet::Predicate { predicate, cardinality } => {
                if let Some(p) = cardinality {
                    *p
                } else {
                    let cells = self.neighborhood_size();
                    if cells > MAX_TABLE_CELLS {
                        return Err(Error::CardinalityUnavailable { cells });
                    }
                    let mut count: u128 = 0;
                    for packed in 0..1u128 << cells {
                        let window = LocalConfiguration::new(self.radius, packed)
                            .expect("packed value within window range");
                        if predicate(&window) {
                            count += 1;
                        }
                    }
                    count
                }
            }
        };
        let _ = self.cached_p.set(Box::new(p));
        Ok(p)
    }
}

/// The top cell's rule: a predicate over the entire final configuration
/// (its neighborhood is the whole working zone).
pub struct TopRule {
    label: String,
    predicate: ZonePredicate,
    cardinality: Option<u128>,
}

impl core::fmt::Debug for TopRule {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("TopRule").field("label", &self.label).finish()
    }
}

impl TopRule {
    pub fn new<F>(label: &str, predicate: F, cardinality: Option<u128>) -> Self
    where
        F: Fn(&Configuration) -> bool + Send + Sync + 'static,
    {
        TopRule {
            label: String::from(label),
            predicate: Box::new(predicate),
            cardinality,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn evaluate(&self, config: &Configuration) -> bool {
        (self.predicate)(config)
    }

    /// Exact cardinality of the recognized zone-configuration class:
    /// the analytic value when attached, otherwise by exhaustive scan
    /// (zone_side^2 <= cap).
    pub fn recognized_cardinality(&self, zone_side: u32, cap: u32) -> Result<u128> {
        if let Some(p) = self.cardinality {
            return Ok(p);
        }
        let mut count: u128 = 0;
        for config in enumerate_configurations(zone_side, cap)? {
            if self.evaluate(&config) {
                count += 1;
            }
        }
        Ok(count)
    }
}

/// Interior/suppressed split of a layer's cells: a cell is active when its
/// whole neighborhood stays inside the working zone. Suppressed cells
/// (count B) are forced to 0 by the layer application, so downstream layers
/// see a well-defined value there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SuppressionMask {
    zone_side: u32,
    radius: u8,
}

impl SuppressionMask {
    pub fn new(zone_side: u32, radius: u8) -> Result<Self> {
        if zone_side == 0 || zone_side > MAX_SIDE {
            return Err(Error::SideOutOfRange { side: zone_side, max: MAX_SIDE });
        }
        Ok(SuppressionMask { zone_side, radius })
    }

    /// Mask with every cell active (radius 0).
    pub fn full(zone_side: u32) -> Result<Self> {
        SuppressionMask::new(zone_side, 0)
    }

    pub fn zone_side(&self) -> u32 {
        self.zone_side
    }

    pub fn radius(&self) -> u8 {
        self.radius
    }

    pub fn is_active(&self, row: i64, col: i64) -> bool {
        let r = i64::from(self.radius);
        let side = i64::from(self.zone_side);
        row >= r && col >= r && row < side - r && col < side - r
    }

    /// Interior cell count (w - 2r)^2, or 0 when the radius swallows the zone.
    pub fn active_count(&self) -> u64 {
        let w = u64::from(self.zone_side);
        let d = 2 * u64::from(self.radius);
        if d >= w {
            0
        } else {
            (w - d) * (w - d)
        }
    }

    /// B: number of suppressed cells, N - active_count.
    pub fn suppressed_count(&self) -> u64 {
        let w = u64::from(self.zone_side);
        w * w - self.active_count()
    }

    pub fn active_cells(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        let side = self.zone_side;
        (0..side).flat_map(move |row| (0..side).map(move |col| (row, col)))
            .filter(move |&(row, col)| self.is_active(i64::from(row), i64::from(col)))
    }
}

/// How cells whose neighborhood leaves the zone are treated by layer
/// application: suppressed to 0, or computed over boundary-filled windows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EdgeMode {
    #[default]
    Suppress,
    BoundaryFill,
}

/// An ordered stack of at most one local layer plus the top rule, over a
/// square working zone with fixed boundary conditions. Immutable after
/// construction.
pub struct LayeredAutomaton {
    zone_side: u32,
    layers: Vec<LocalRule>,
    top: TopRule,
    boundary: BoundaryPolicy,
    edge_mode: EdgeMode,
}

impl core::fmt::Debug for LayeredAutomaton {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("LayeredAutomaton")
            .field("zone_side", &self.zone_side)
            .field("layers", &self.layers.len())
            .field("top", &self.top.label())
            .field("edge_mode", &self.edge_mode)
            .finish()
    }
}

impl LayeredAutomaton {
    pub fn zone_side(&self) -> u32 {
        self.zone_side
    }

    /// N = zone_side^2.
    pub fn zone_cells(&self) -> u32 {
        self.zone_side * self.zone_side
    }

    pub fn layers(&self) -> &[LocalRule] {
        &self.layers
    }

    pub fn top(&self) -> &TopRule {
        &self.top
    }

    pub fn boundary(&self) -> BoundaryPolicy {
        self.boundary
    }

    pub fn edge_mode(&self) -> EdgeMode {
        self.edge_mode
    }

    /// Suppression mask the given local layer runs under.
    pub fn layer_mask(&self, layer: usize) -> SuppressionMask {
        let radius = match self.edge_mode {
            EdgeMode::Suppress => self.layers[layer].radius(),
            EdgeMode::BoundaryFill => 0,
        };
        SuppressionMask::new(self.zone_side, radius).expect("side validated at construction")
    }

    /// Runs every local layer in order, then the top rule; the returned bit
    /// is the distinguished top cell's state.
    pub fn evaluate(&self, input: &Configuration) -> Result<bool> {
        if input.side() != self.zone_side {
            return Err(Error::SideMismatch { expected: self.zone_side, actual: input.side() });
        }
        match self.layers.len() {
            0 => Ok(self.top.evaluate(input)),
            _ => {
                let mut current = apply_layer(&self.layers[0], input, &self.layer_mask(0), self.boundary)?;
                for (i, rule) in self.layers.iter().enumerate().skip(1) {
                    current = apply_layer(rule, &current, &self.layer_mask(i), self.boundary)?;
                }
                Ok(self.top.evaluate(&current))
            }
        }
    }
}

/// One synchronous step of a layer's global map: every active cell fires
/// iff its window is recognized; suppressed cells output 0.
pub fn apply_layer(
    rule: &LocalRule,
    input: &Configuration,
    mask: &SuppressionMask,
    policy: BoundaryPolicy,
) -> Result<Configuration> {
    if input.side() != mask.zone_side() {
        return Err(Error::SideMismatch { expected: mask.zone_side(), actual: input.side() });
    }
    let mut output = Configuration::zero(input.side())?;
    for row in 0..input.side() {
        for col in 0..input.side() {
            if !mask.is_active(i64::from(row), i64::from(col)) {
                continue;
            }
            let window = local_configuration(
                input,
                (i64::from(row), i64::from(col)),
                rule.radius(),
                policy,
            )?;
            if rule.matches_packed(window.packed()) {
                output.set_cell(row, col, true);
            }
        }
    }
    Ok(output)
}

/// 1-layer automaton: the top rule consumes the whole input zone, so the
/// recognized input class is exactly the top rule's class.
pub fn build_one_layer(zone_side: u32, top: TopRule) -> Result<LayeredAutomaton> {
    if zone_side == 0 || zone_side > MAX_SIDE {
        return Err(Error::SideOutOfRange { side: zone_side, max: MAX_SIDE });
    }
    Ok(LayeredAutomaton {
        zone_side,
        layers: Vec::new(),
        top,
        boundary: BoundaryPolicy::ZERO,
        edge_mode: EdgeMode::Suppress,
    })
}

/// 2-layer automaton: one local layer, then the top rule over the layer's
/// output. The layer's neighborhood must leave at least one interior cell.
pub fn build_two_layer(zone_side: u32, layer: LocalRule, top: TopRule) -> Result<LayeredAutomaton> {
    build_two_layer_with(zone_side, layer, top, BoundaryPolicy::ZERO, EdgeMode::Suppress)
}

/// [`build_two_layer`] with explicit boundary fill and edge-cell treatment.
pub fn build_two_layer_with(
    zone_side: u32,
    layer: LocalRule,
    top: TopRule,
    boundary: BoundaryPolicy,
    edge_mode: EdgeMode,
) -> Result<LayeredAutomaton> {
    if zone_side == 0 || zone_side > MAX_SIDE {
        return Err(Error::SideOutOfRange { side: zone_side, max: MAX_SIDE });
    }
    if 2 * u32::from(layer.radius()) >= zone_side {
        return Err(Error::RadiusTooLargeForZone { radius: layer.radius(), side: zone_side });
    }
    Ok(LayeredAutomaton {
        zone_side,
        layers: alloc::vec![layer],
        top,
        boundary,
        edge_mode,
    })
}

/// Outcome of an exhaustive recognition check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecognitionReport {
    pub agrees: bool,
    /// First configuration (in enumeration order) where automaton and class
    /// predicate disagree.
    pub counterexample: Option<Configuration>,
    pub checked: u128,
}

/// Exhaustively checks that the automaton's recognition bit coincides with
/// the class predicate over the full configuration space.
pub fn verify_recognition<F>(
    automaton: &LayeredAutomaton,
    class: F,
    cap: u32,
) -> Result<RecognitionReport>
where
    F: Fn(&Configuration) -> bool,
{
    let mut checked: u128 = 0;
    for config in enumerate_configurations(automaton.zone_side(), cap)? {
        checked += 1;
        if automaton.evaluate(&config)? != class(&config) {
            return Ok(RecognitionReport { agrees: false, counterexample: Some(config), checked });
        }
    }
    Ok(RecognitionReport { agrees: true, counterexample: None, checked })
}

/// Partition-friendly variant: first disagreement within `start..end` of the
/// enumeration order, or None. Workers over disjoint ranges combine by
/// taking the counterexample with the smallest packed value.
pub fn verify_recognition_range<F>(
    automaton: &LayeredAutomaton,
    class: F,
    start: u128,
    end: u128,
    cap: u32,
) -> Result<Option<Configuration>>
where
    F: Fn(&Configuration) -> bool,
{
    for config in enumerate_range(automaton.zone_side(), start, end, cap)? {
        if automaton.evaluate(&config)? != class(&config) {
            return Ok(Some(config));
        }
    }
    Ok(None)
}
