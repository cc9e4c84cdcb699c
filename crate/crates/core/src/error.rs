use thiserror::Error;

/// Errors raised by grid, automaton, complexity, and counting operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zone side {side} is out of range (must be 1..={max})")]
    SideOutOfRange { side: u32, max: u32 },

    #[error("zone side {side} exceeds the packed-scan limit (side <= {max})")]
    ZoneTooLarge { side: u32, max: u32 },

    #[error("configuration sides differ: expected {expected}, got {actual}")]
    SideMismatch { expected: u32, actual: u32 },

    #[error("window radii differ: {a} vs {b}")]
    RadiusMismatch { a: u8, b: u8 },

    #[error("window radius {radius} exceeds the packing limit (radius <= {max})")]
    WindowTooLarge { radius: u8, max: u8 },

    #[error("packed value {packed} does not fit a grid of {cells} cells")]
    PackedOutOfRange { packed: u128, cells: u32 },

    #[error(
        "{cells} cells exceed the enumeration cap of {cap}; \
         use Monte Carlo estimation for zones this large"
    )]
    EnumerationCapExceeded { cells: u32, cap: u32 },

    #[error("enumeration range {start}..{end} exceeds the space of {total} configurations")]
    RangeOutOfBounds { start: u128, end: u128, total: u128 },

    #[error("truth table over {cells} window cells is too large (limit {max})")]
    TableTooLarge { cells: u32, max: u32 },

    #[error(
        "recognized-set cardinality of a predicate rule over {cells} window cells \
         cannot be enumerated; supply an analytic cardinality"
    )]
    CardinalityUnavailable { cells: u32 },

    #[error("layer radius {radius} leaves no interior cells in a zone of side {side}")]
    RadiusTooLargeForZone { radius: u8, side: u32 },

    #[error("automaton with {layers} local layers is unsupported (at most 1)")]
    TooManyLayers { layers: usize },

    #[error("recognized-class cardinality {p} exceeds the {cells}-cell window space")]
    CardinalityOutOfRange { p: u128, cells: u128 },

    #[error("pattern side {pattern_side} does not fit interior placement in zone side {zone_side}")]
    PatternTooLarge { pattern_side: u32, zone_side: u32 },

    #[error("zone side {zone_side} must exceed pattern side {pattern_side}")]
    ZoneNotLargerThanPattern { zone_side: u32, pattern_side: u32 },

    #[error("pattern side {side} must be odd and at least 3")]
    BadPatternSide { side: u32 },

    #[error("pattern must contain at least one cell in state 1")]
    EmptyPattern,

    #[error("suppression mask radius {mask} does not match window radius {window}")]
    MaskRadiusMismatch { mask: u8, window: u8 },

    #[error("need at least {min} samples, got {samples}")]
    TooFewSamples { samples: u64, min: u64 },

    #[error("sample count {samples} exceeds the supported maximum {max}")]
    TooManySamples { samples: u64, max: u64 },

    #[error("lower bound undefined: zone of {zone_cells} cells must exceed window size {window_cells} plus 2")]
    BoundUndefined { zone_cells: u128, window_cells: u128 },

    #[error("analytic count {expected} disagrees with enumeration cross-check {found}")]
    CrossCheckFailed { expected: u128, found: u128 },

    #[error("series row has an empty recognized class (P1 = 0); speedup ratios need nontrivial classes")]
    TrivialClass,

    #[error("one-layer cost evaluates to zero; speedup ratios are undefined")]
    ZeroCost,

    #[error("series rows must be sorted by strictly increasing zone size")]
    UnsortedSeries,

    #[error("complexity exponent must be positive")]
    BadExponent,

    #[error("unknown complexity measure `{0}`")]
    UnknownMeasure(alloc::string::String),

    #[error("measure `{0}` declares no exponent; trend bounds need one")]
    NoExponent(alloc::string::String),

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
