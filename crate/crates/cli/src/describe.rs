//! Declarative automaton description files (TOML).
//!
//! A description names the working-zone side, the boundary fill, the
//! edge-cell treatment, at most one local layer with its recognized-set
//! source, and the top rule. Recognized sets come from an inline pattern
//! with a Hamming radius, a truth-table file, or a named built-in.
//! Emission is canonical, so emit(parse(emit(d))) == emit(d) byte-exactly.
//!
//! ```toml
//! zone_side = 4
//! boundary_fill = 0
//! edge_cells = "suppress"
//!
//! [[layer]]
//! radius = 1
//!
//! [layer.recognized]
//! kind = "hamming_ball"
//! pattern = ["100", "100", "111"]
//! hamming_radius = 1
//!
//! [top]
//! kind = "exactly_one_active"
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use fdca_core::automaton::{
    build_one_layer, build_two_layer_with, EdgeMode, LayeredAutomaton, LocalRule, SuppressionMask,
    TopRule,
};
use fdca_core::grid::{window_cells, BoundaryPolicy};
use fdca_core::patterns::{hamming_ball, is_unique_instance, AngularPattern, HammingBallClass};

use crate::error::{CliError, Result};
use crate::formats::{parse_pattern_rows, parse_truth_table, pattern_rows};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeCells {
    #[default]
    Suppress,
    BoundaryFill,
}

impl From<EdgeCells> for EdgeMode {
    fn from(value: EdgeCells) -> EdgeMode {
        match value {
            EdgeCells::Suppress => EdgeMode::Suppress,
            EdgeCells::BoundaryFill => EdgeMode::BoundaryFill,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RecognizedSource {
    /// All windows within the Hamming radius of an inline pattern. Only
    /// radius 1 is supported; the field is explicit so files are
    /// self-describing.
    HammingBall { pattern: Vec<String>, hamming_radius: u32 },
    /// Accepted windows listed in a separate truth-table file, resolved
    /// relative to the description file.
    TruthTable { file: String },
    /// Named built-in window class: "none", "all", or "center_one".
    Builtin { name: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerDescription {
    pub radius: u8,
    pub recognized: RecognizedSource,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TopSource {
    /// Exactly one cell in state 1, located at an interior cell of the
    /// preceding layer's mask.
    ExactlyOneActive,
    /// The all-zero configuration.
    AllZero,
    /// Exactly one interior-anchored near-instance of the inline pattern
    /// (the 1-layer recognizer of the class).
    UniqueInstance { pattern: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonDescription {
    pub zone_side: u32,
    #[serde(default)]
    pub boundary_fill: u8,
    #[serde(default)]
    pub edge_cells: EdgeCells,
    #[serde(default, rename = "layer", skip_serializing_if = "Vec::is_empty")]
    pub layers: Vec<LayerDescription>,
    pub top: TopSource,
}

impl AutomatonDescription {
    /// The 2-layer recognizer of a pattern's unique-instance class.
    pub fn two_layer_pair_member(zone_side: u32, pattern: &AngularPattern) -> Self {
        AutomatonDescription {
            zone_side,
            boundary_fill: 0,
            edge_cells: EdgeCells::Suppress,
            layers: vec![LayerDescription {
                radius: pattern.radius(),
                recognized: RecognizedSource::HammingBall {
                    pattern: pattern_rows(pattern),
                    hamming_radius: 1,
                },
            }],
            top: TopSource::ExactlyOneActive,
        }
    }

    /// The matching 1-layer recognizer.
    pub fn one_layer_pair_member(zone_side: u32, pattern: &AngularPattern) -> Self {
        AutomatonDescription {
            zone_side,
            boundary_fill: 0,
            edge_cells: EdgeCells::Suppress,
            layers: Vec::new(),
            top: TopSource::UniqueInstance { pattern: pattern_rows(pattern) },
        }
    }
}

pub fn parse_description(text: &str) -> Result<AutomatonDescription> {
    toml::from_str(text).map_err(|e| CliError::config(format!("automaton description: {e}")))
}

pub fn description_text(desc: &AutomatonDescription) -> Result<String> {
    toml::to_string(desc).map_err(|e| CliError::config(format!("automaton description: {e}")))
}

/// A description compiled to a runnable automaton, together with the class
/// it is meant to recognize whenever the description pins one down.
pub struct BuiltAutomaton {
    pub automaton: LayeredAutomaton,
    /// Ball + mask of the unique-instance class, when derivable.
    pub class: Option<(HammingBallClass, SuppressionMask)>,
}

impl BuiltAutomaton {
    /// Closure form of the derived class, for recognition checks.
    pub fn class_predicate(
        &self,
    ) -> Option<impl Fn(&fdca_core::grid::Configuration) -> bool + Sync + '_> {
        self.class.as_ref().map(|(ball, mask)| {
            move |config: &fdca_core::grid::Configuration| {
                is_unique_instance(config, ball, mask).expect("geometry checked at build")
            }
        })
    }
}

fn build_layer_rule(layer: &LayerDescription, base_dir: &Path) -> Result<(LocalRule, Option<HammingBallClass>)> {
    match &layer.recognized {
        RecognizedSource::HammingBall { pattern, hamming_radius } => {
            if *hamming_radius != 1 {
                return Err(CliError::config(format!(
                    "hamming_radius {hamming_radius} unsupported (only 1)"
                )));
            }
            let pattern = parse_pattern_rows(pattern)?;
            if pattern.radius() != layer.radius {
                return Err(CliError::config(format!(
                    "pattern side {} implies radius {}, layer declares {}",
                    pattern.side(),
                    pattern.radius(),
                    layer.radius
                )));
            }
            let ball = hamming_ball(&pattern);
            Ok((ball.member_rule()?, Some(ball)))
        }
        RecognizedSource::TruthTable { file } => {
            let path = base_dir.join(file);
            let text = std::fs::read_to_string(&path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            let values = parse_truth_table(&text, layer.radius)?;
            Ok((LocalRule::from_table(layer.radius, values)?, None))
        }
        RecognizedSource::Builtin { name } => {
            let cells = window_cells(layer.radius);
            let rule = match name.as_str() {
                "none" => LocalRule::empty(layer.radius)?,
                "all" => LocalRule::from_predicate(layer.radius, |_| true, Some(1 << cells))?,
                "center_one" => {
                    LocalRule::from_predicate(layer.radius, |w| w.bit(0, 0), Some(1 << (cells - 1)))?
                }
                other => {
                    return Err(CliError::config(format!("unknown builtin window class `{other}`")))
                }
            };
            Ok((rule, None))
        }
    }
}

/// Compiles a description. `base_dir` anchors relative truth-table paths.
pub fn build_described(desc: &AutomatonDescription, base_dir: &Path) -> Result<BuiltAutomaton> {
    if desc.boundary_fill > 1 {
        return Err(CliError::config(format!(
            "boundary_fill must be 0 or 1, got {}",
            desc.boundary_fill
        )));
    }
    let boundary = BoundaryPolicy::new(desc.boundary_fill == 1);
    if desc.layers.len() > 1 {
        return Err(CliError::config(format!(
            "{} local layers declared; at most 1 is supported",
            desc.layers.len()
        )));
    }

    match desc.layers.first() {
        None => {
            let (top, class) = build_top(desc, None)?;
            let automaton = build_one_layer(desc.zone_side, top)?;
            Ok(BuiltAutomaton { automaton, class })
        }
        Some(layer) => {
            let (rule, ball) = build_layer_rule(layer, base_dir)?;
            let mask = SuppressionMask::new(desc.zone_side, layer.radius)?;
            let (top, mut class) = build_top(desc, Some(mask))?;
            if class.is_none() {
                class = ball.map(|b| (b, mask));
            }
            let automaton =
                build_two_layer_with(desc.zone_side, rule, top, boundary, desc.edge_cells.into())?;
            Ok(BuiltAutomaton { automaton, class })
        }
    }
}

fn build_top(
    desc: &AutomatonDescription,
    layer_mask: Option<SuppressionMask>,
) -> Result<(TopRule, Option<(HammingBallClass, SuppressionMask)>)> {
    match &desc.top {
        TopSource::ExactlyOneActive => {
            let mask = layer_mask.ok_or_else(|| {
                CliError::config("top rule exactly_one_active needs a local layer")
            })?;
            let top = TopRule::new(
                "exactly-one-active",
                move |config| {
                    config
                        .single_one()
                        .is_some_and(|(r, c)| mask.is_active(i64::from(r), i64::from(c)))
                },
                Some(u128::from(mask.active_count())),
            );
            Ok((top, None))
        }
        TopSource::AllZero => {
            let top = TopRule::new("all-zero", |config| config.count_ones() == 0, Some(1));
            Ok((top, None))
        }
        TopSource::UniqueInstance { pattern } => {
            let pattern = parse_pattern_rows(pattern)?;
            if desc.zone_side <= pattern.side() {
                return Err(CliError::from(fdca_core::Error::ZoneNotLargerThanPattern {
                    zone_side: desc.zone_side,
                    pattern_side: pattern.side(),
                }));
            }
            let ball = hamming_ball(&pattern);
            let mask = SuppressionMask::new(desc.zone_side, ball.radius())?;
            let class_ball = ball.clone();
            let top = TopRule::new(
                "unique-instance",
                move |config| {
                    is_unique_instance(config, &class_ball, &mask)
                        .expect("geometry checked at build")
                },
                None,
            );
            Ok((top, Some((ball, mask))))
        }
    }
}
