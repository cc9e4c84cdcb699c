//! Cell-complexity measures L(n, p), sequential/parallel recognition costs
//! of 1- and 2-layer automata, and finite-ladder speedup diagnostics.
//!
//! A cell's cost is a function of its neighborhood size n and the
//! cardinality p of the class of windows it recognizes. For a 1-layer
//! automaton over N = w^2 cells recognizing a class of P1 inputs,
//!
//! ```text
//! lambda1 = mu1 = L(N, P1)
//! ```
//!
//! and for a 2-layer automaton whose first layer recognizes p windows of
//! size n and whose top cell recognizes P2 layer outputs,
//!
//! ```text
//! lambda2 = N * L(n, p) + L(N, P2)      (layer cells run sequentially)
//! mu2     =     L(n, p) + L(N, P2)      (layer cells run in parallel)
//! ```
//!
//! All built-in measures evaluate in exact integer arithmetic and ratio
//! trends are decided by exact rational comparison, so rounding can never
//! manufacture a monotone verdict. Decomposition pays off exactly when both
//! L(N, P2)/L(N, P1) and N*L(n, p)/L(N, P1) shrink as the zone grows; the
//! diagnostics report those two ratios, the full cost ratio, and their
//! strict-decrease verdicts over a finite ladder of zone sizes. Verdicts
//! never claim limits, only the observed finite trend.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::numeric::checked_pow;

/// Exact non-negative rational, compared by value (not by representation).
#[derive(Debug, Clone, Copy)]
pub struct Frac {
    num: u128,
    den: u128,
}

impl Frac {
    /// Panics if `den == 0`; cost denominators are checked before use.
    pub fn new(num: u128, den: u128) -> Self {
        assert!(den > 0, "zero denominator");
        Frac { num, den }
    }

    pub fn num(&self) -> u128 {
        self.num
    }

    pub fn den(&self) -> u128 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialEq for Frac {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Frac {}

impl PartialOrd for Frac {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Frac {
    /// Exact comparison by continued-fraction descent; never overflows,
    /// unlike cross-multiplication.
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut an, mut ad, mut bn, mut bd) = (self.num, self.den, other.num, other.den);
        loop {
            let (qa, qb) = (an / ad, bn / bd);
            if qa != qb {
                return qa.cmp(&qb);
            }
            let (ra, rb) = (an % ad, bn % bd);
            match (ra == 0, rb == 0) {
                (true, true) => return Ordering::Equal,
                (true, false) => return Ordering::Less,
                (false, true) => return Ordering::Greater,
                // compare tails: ra/ad vs rb/bd flips under reciprocation
                (false, false) => (an, ad, bn, bd) = (bd, rb, ad, ra),
            }
        }
    }
}

enum MeasureImpl {
    /// Number of terms of the canonical disjunctive normal form: L = p.
    DnfTerms,
    /// Number of literals of the canonical DNF: L = n * p.
    DnfLiterals,
    /// Shorter of the canonical DNF and CNF literal counts:
    /// L = n * min(p, 2^n - p). Monotone in p only up to the midpoint.
    MinDnfCnf,
    Custom {
        eval: Box<dyn Fn(u128, u128) -> Result<u128> + Send + Sync>,
        exponent: Option<u32>,
        monotone_p_max: Box<dyn Fn(u128) -> u128 + Send + Sync>,
    },
}

/// A named cell-complexity measure with its declared growth exponent and
/// the p-range on which it is monotone.
pub struct ComplexityMeasure {
    name: String,
    imp: MeasureImpl,
}

impl core::fmt::Debug for ComplexityMeasure {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("ComplexityMeasure").field("name", &self.name).finish()
    }
}

pub const BUILTIN_MEASURES: [&str; 3] = ["dnf_terms", "dnf_literals", "min_dnf_cnf"];

impl ComplexityMeasure {
    pub fn dnf_terms() -> Self {
        ComplexityMeasure { name: String::from("dnf_terms"), imp: MeasureImpl::DnfTerms }
    }

    pub fn dnf_literals() -> Self {
        ComplexityMeasure { name: String::from("dnf_literals"), imp: MeasureImpl::DnfLiterals }
    }

    pub fn min_dnf_cnf() -> Self {
        ComplexityMeasure { name: String::from("min_dnf_cnf"), imp: MeasureImpl::MinDnfCnf }
    }

    /// Registers a custom measure. `exponent` is the a of L(y, z) = Theta(z^a)
    /// when known; leaving it out disables the trend-bound checks that need
    /// it. `monotone_p_max` bounds the p-range on which the measure is
    /// monotone for a given n.
    pub fn custom<E, M>(name: &str, eval: E, exponent: Option<u32>, monotone_p_max: M) -> Self
    where
        E: Fn(u128, u128) -> Result<u128> + Send + Sync + 'static,
        M: Fn(u128) -> u128 + Send + Sync + 'static,
    {
        ComplexityMeasure {
            name: String::from(name),
            imp: MeasureImpl::Custom {
                eval: Box::new(eval),
                exponent,
                monotone_p_max: Box::new(monotone_p_max),
            },
        }
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "dnf_terms" => Ok(Self::dnf_terms()),
            "dnf_literals" => Ok(Self::dnf_literals()),
            "min_dnf_cnf" => Ok(Self::min_dnf_cnf()),
            _ => Err(Error::UnknownMeasure(String::from(name))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// L(n, p). Errors when p exceeds the 2^n window space or the value
    /// overflows 128 bits.
    pub fn eval(&self, n: u128, p: u128) -> Result<u128> {
        if n <= 127 && p > 1 << n {
            return Err(Error::CardinalityOutOfRange { p, cells: n });
        }
        match &self.imp {
            MeasureImpl::DnfTerms => Ok(p),
            MeasureImpl::DnfLiterals => n.checked_mul(p).ok_or(Error::Overflow("n * p")),
            MeasureImpl::MinDnfCnf => {
                if p == 0 {
                    return Ok(0);
                }
                let shorter = match n {
                    0..=127 => p.min((1 << n) - p),
                    // 2^128 - p, representable because p >= 1
                    128 => p.min((u128::MAX - p) + 1),
                    // complement exceeds any u128 p
                    _ => p,
                };
                n.checked_mul(shorter).ok_or(Error::Overflow("n * min(p, 2^n - p)"))
            }
            MeasureImpl::Custom { eval, .. } => eval(n, p),
        }
    }

    /// Declared a with L(y, z) = Theta(z^a); all built-ins are linear in p
    /// on their monotone range.
    pub fn exponent(&self) -> Option<u32> {
        match &self.imp {
            MeasureImpl::Custom { exponent, .. } => *exponent,
            _ => Some(1),
        }
    }

    /// Largest p (for the given n) up to which the measure is guaranteed
    /// monotone in p.
    pub fn monotone_p_max(&self, n: u128) -> u128 {
        match &self.imp {
            MeasureImpl::DnfTerms | MeasureImpl::DnfLiterals => match n {
                0..=127 => 1 << n,
                _ => u128::MAX,
            },
            // symmetric midpoint of the window space
            MeasureImpl::MinDnfCnf => match n {
                0 => 1,
                1..=128 => 1 << (n - 1),
                _ => u128::MAX,
            },
            MeasureImpl::Custom { monotone_p_max, .. } => monotone_p_max(n),
        }
    }

    /// Whether (n, p) lies in the declared monotone range. Callers should
    /// surface a warning when it does not; values are still computed.
    pub fn in_monotone_range(&self, n: u128, p: u128) -> bool {
        p <= self.monotone_p_max(n)
    }
}

/// lambda of a 1-layer automaton: L(N, P1).
pub fn lambda_one(measure: &ComplexityMeasure, zone_cells: u128, p1: u128) -> Result<u128> {
    measure.eval(zone_cells, p1)
}

/// mu of a 1-layer automaton equals its sequential cost: a single cell
/// participates, so there is nothing to parallelize.
pub fn mu_one(measure: &ComplexityMeasure, zone_cells: u128, p1: u128) -> Result<u128> {
    lambda_one(measure, zone_cells, p1)
}

/// Addends of the 2-layer sequential cost.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoLayerCost {
    /// N * L(n, p): every zone cell realizes the layer rule.
    pub layer_term: u128,
    /// L(N, P2): the top cell over the layer output.
    pub top_term: u128,
    pub total: u128,
}

/// lambda of a 2-layer automaton: N * L(n, p) + L(N, P2), returned with both
/// addends so reports can re-validate the decomposition exactly.
pub fn lambda_two(
    measure: &ComplexityMeasure,
    zone_cells: u128,
    window_cells: u128,
    p: u128,
    p2: u128,
) -> Result<TwoLayerCost> {
    let layer_term = zone_cells
        .checked_mul(measure.eval(window_cells, p)?)
        .ok_or(Error::Overflow("N * L(n, p)"))?;
    let top_term = measure.eval(zone_cells, p2)?;
    let total = layer_term.checked_add(top_term).ok_or(Error::Overflow("lambda2"))?;
    Ok(TwoLayerCost { layer_term, top_term, total })
}

/// mu of a 2-layer automaton: L(n, p) + L(N, P2), layer cells in parallel.
pub fn mu_two(
    measure: &ComplexityMeasure,
    zone_cells: u128,
    window_cells: u128,
    p: u128,
    p2: u128,
) -> Result<u128> {
    let layer = measure.eval(window_cells, p)?;
    let top = measure.eval(zone_cells, p2)?;
    layer.checked_add(top).ok_or(Error::Overflow("mu2"))
}

/// All four costs of an A1/A2 pair over the same class, plus the cost ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComplexityBreakdown {
    pub lambda1: u128,
    pub mu1: u128,
    pub lambda2: u128,
    pub mu2: u128,
    pub layer1_term: u128,
    pub top_term: u128,
    pub ratio: Frac,
}

/// Evaluates the full cost breakdown at exact inputs. `p1` must name a
/// nontrivial class (positive count and cost).
pub fn breakdown(
    measure: &ComplexityMeasure,
    zone_cells: u128,
    window_cells: u128,
    p: u128,
    p1: u128,
    p2: u128,
) -> Result<ComplexityBreakdown> {
    if p1 == 0 {
        return Err(Error::TrivialClass);
    }
    let lambda1 = lambda_one(measure, zone_cells, p1)?;
    if lambda1 == 0 {
        return Err(Error::ZeroCost);
    }
    let two = lambda_two(measure, zone_cells, window_cells, p, p2)?;
    Ok(ComplexityBreakdown {
        lambda1,
        mu1: mu_one(measure, zone_cells, p1)?,
        lambda2: two.total,
        mu2: mu_two(measure, zone_cells, window_cells, p, p2)?,
        layer1_term: two.layer_term,
        top_term: two.top_term,
        ratio: Frac::new(two.total, lambda1),
    })
}

/// A count that may carry estimation uncertainty: `lower == upper == point`
/// for exact values, a 95% interval otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountBounds {
    pub point: u128,
    pub lower: u128,
    pub upper: u128,
}

impl CountBounds {
    pub fn exact(value: u128) -> Self {
        CountBounds { point: value, lower: value, upper: value }
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.point && self.upper == self.point
    }
}

/// One ladder entry: zone size N, window size n, recognized-window count p,
/// input-class count P1 (possibly estimated), layer-output-class count P2.
#[derive(Debug, Clone, Copy)]
pub struct SeriesRow {
    pub zone_cells: u128,
    pub window_cells: u128,
    pub p: u128,
    pub p1: CountBounds,
    pub p2: u128,
}

/// A ratio with the uncertainty induced by an estimated P1. `upper` is None
/// when the estimate's lower bound is 0 and the ratio is unbounded above.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RatioBounds {
    pub point: Frac,
    pub lower: Frac,
    pub upper: Option<Frac>,
}

impl RatioBounds {
    fn exact(value: Frac) -> Self {
        RatioBounds { point: value, lower: value, upper: Some(value) }
    }
}

/// Verdict over a finite ladder; `StrictlyDecreasing` means every step is a
/// certified decrease even at the unfavorable ends of the intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trend {
    StrictlyDecreasing,
    NonMonotone,
    InsufficientData,
}

impl Trend {
    pub fn as_str(&self) -> &'static str {
        match self {
            Trend::StrictlyDecreasing => "strictly_decreasing",
            Trend::NonMonotone => "non_monotone",
            Trend::InsufficientData => "insufficient_data",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct DiagnosticsRow {
    /// L(N, P2) / L(N, P1): top-cell cost relative to the 1-layer cost.
    pub c1: RatioBounds,
    /// N * L(n, p) / L(N, P1): layer cost relative to the 1-layer cost.
    pub c2: RatioBounds,
    /// lambda2 / lambda1.
    pub ratio: RatioBounds,
}

#[derive(Debug, Clone)]
pub struct SpeedupDiagnostics {
    pub rows: Vec<DiagnosticsRow>,
    pub c1_trend: Trend,
    pub c2_trend: Trend,
    pub ratio_trend: Trend,
}

/// Per-row decomposition ratios and their strict-decrease verdicts over a
/// ladder sorted by increasing zone size. For estimated P1 rows the verdict
/// compares interval ends, so it certifies the decrease rather than merely
/// observing it at the point estimates.
pub fn speedup_diagnostics(
    measure: &ComplexityMeasure,
    series: &[SeriesRow],
) -> Result<SpeedupDiagnostics> {
    validate_series(series)?;
    let mut rows = Vec::with_capacity(series.len());
    for entry in series {
        let lambda1 = lambda1_bounds(measure, entry)?;
        let two = lambda_two(measure, entry.zone_cells, entry.window_cells, entry.p, entry.p2)?;
        rows.push(DiagnosticsRow {
            c1: ratio_bounds(two.top_term, &lambda1),
            c2: ratio_bounds(two.layer_term, &lambda1),
            ratio: ratio_bounds(two.total, &lambda1),
        });
    }
    Ok(SpeedupDiagnostics {
        c1_trend: certified_decrease(rows.iter().map(|r| &r.c1)),
        c2_trend: certified_decrease(rows.iter().map(|r| &r.c2)),
        ratio_trend: certified_decrease(rows.iter().map(|r| &r.ratio)),
        rows,
    })
}

/// Root-extracted rational: value = (num/den)^(1/root). Rows sharing a root
/// compare by the underlying fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootFrac {
    pub frac: Frac,
    pub root: u32,
}

#[derive(Debug, Clone, Copy)]
pub struct RootFracBounds {
    pub point: RootFrac,
    pub lower: RootFrac,
    pub upper: Option<RootFrac>,
}

#[derive(Debug, Clone, Copy)]
pub struct CorollaryRow {
    /// P2 / P1, the class-size ratio that controls the top-cost condition
    /// for polynomially-growing measures.
    pub p2_over_p1: RatioBounds,
    /// p * N^(1/a) / P1, carried as its a-th power for exact comparison;
    /// its vanishing is sufficient for the layer-cost condition.
    pub p_bound: RootFracBounds,
}

#[derive(Debug, Clone)]
pub struct CorollaryCheck {
    pub rows: Vec<CorollaryRow>,
    pub p2_trend: Trend,
    pub p_bound_trend: Trend,
}

/// For measures with L(y, z) = Theta(z^a): reports P2/P1 and
/// p * N^(1/a) / P1 per row with strict-decrease verdicts.
pub fn corollary_check(exponent: u32, series: &[SeriesRow]) -> Result<CorollaryCheck> {
    if exponent == 0 {
        return Err(Error::BadExponent);
    }
    validate_series(series)?;
    let mut rows = Vec::with_capacity(series.len());
    for entry in series {
        if entry.p1.point == 0 {
            return Err(Error::TrivialClass);
        }
        let p2_over_p1 = count_ratio_bounds(entry.p2, &entry.p1);

        // (p * N^(1/a) / P1)^a = p^a * N / P1^a
        let num = checked_pow(entry.p, exponent, "p^a")?
            .checked_mul(entry.zone_cells)
            .ok_or(Error::Overflow("p^a * N"))?;
        let at = |p1: u128| -> Result<RootFrac> {
            Ok(RootFrac {
                frac: Frac::new(num, checked_pow(p1, exponent, "P1^a")?),
                root: exponent,
            })
        };
        let p_bound = RootFracBounds {
            point: at(entry.p1.point)?,
            lower: at(entry.p1.upper)?,
            upper: if entry.p1.lower > 0 { Some(at(entry.p1.lower)?) } else { None },
        };
        rows.push(CorollaryRow { p2_over_p1, p_bound });
    }
    Ok(CorollaryCheck {
        p2_trend: certified_decrease(rows.iter().map(|r| &r.p2_over_p1)),
        p_bound_trend: certified_decrease_roots(rows.iter().map(|r| &r.p_bound)),
        rows,
    })
}

fn validate_series(series: &[SeriesRow]) -> Result<()> {
    for pair in series.windows(2) {
        if pair[1].zone_cells <= pair[0].zone_cells {
            return Err(Error::UnsortedSeries);
        }
    }
    Ok(())
}

struct Lambda1Bounds {
    at_point: u128,
    at_lower: u128,
    at_upper: u128,
}

fn lambda1_bounds(measure: &ComplexityMeasure, entry: &SeriesRow) -> Result<Lambda1Bounds> {
    if entry.p1.point == 0 {
        return Err(Error::TrivialClass);
    }
    let at_point = measure.eval(entry.zone_cells, entry.p1.point)?;
    if at_point == 0 {
        return Err(Error::ZeroCost);
    }
    Ok(Lambda1Bounds {
        at_point,
        at_lower: measure.eval(entry.zone_cells, entry.p1.lower)?,
        at_upper: measure.eval(entry.zone_cells, entry.p1.upper)?,
    })
}

/// num / lambda1 with the interval induced by P1's interval: the ratio is
/// smallest at P1's upper end and largest (possibly unbounded) at its lower
/// end. Ends are re-ordered around the point in case the measure leaves its
/// monotone range.
fn ratio_bounds(num: u128, lambda1: &Lambda1Bounds) -> RatioBounds {
    let point = Frac::new(num, lambda1.at_point);
    if lambda1.at_lower == lambda1.at_point && lambda1.at_upper == lambda1.at_point {
        return RatioBounds::exact(point);
    }
    let mut lower = if lambda1.at_upper > 0 { Frac::new(num, lambda1.at_upper) } else { point };
    let mut upper = if lambda1.at_lower > 0 { Some(Frac::new(num, lambda1.at_lower)) } else { None };
    if lower > point {
        lower = point;
    }
    if let Some(hi) = upper {
        if hi < point {
            upper = Some(point);
        }
    }
    RatioBounds { point, lower, upper }
}

fn count_ratio_bounds(num: u128, p1: &CountBounds) -> RatioBounds {
    let point = Frac::new(num, p1.point);
    if p1.is_exact() {
        return RatioBounds::exact(point);
    }
    RatioBounds {
        point,
        lower: Frac::new(num, p1.upper),
        upper: if p1.lower > 0 { Some(Frac::new(num, p1.lower)) } else { None },
    }
}

fn certified_decrease<'a>(rows: impl Iterator<Item = &'a RatioBounds>) -> Trend {
    decrease_over(rows.map(|r| (r.lower, r.upper)))
}

fn certified_decrease_roots<'a>(rows: impl Iterator<Item = &'a RootFracBounds>) -> Trend {
    decrease_over(rows.map(|r| (r.lower.frac, r.upper.map(|u| u.frac))))
}

fn decrease_over(bounds: impl Iterator<Item = (Frac, Option<Frac>)>) -> Trend {
    let items: Vec<_> = bounds.collect();
    if items.len() < 2 {
        return Trend::InsufficientData;
    }
    for pair in items.windows(2) {
        let (prev_lower, _) = pair[0];
        match pair[1].1 {
            // an unbounded ratio can never certify a decrease
            None => return Trend::NonMonotone,
            Some(next_upper) => {
                if next_upper >= prev_lower {
                    return Trend::NonMonotone;
                }
            }
        }
    }
    Trend::StrictlyDecreasing
}
