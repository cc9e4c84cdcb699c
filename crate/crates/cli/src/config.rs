//! Experiment configuration: defaults, flat key=value files, and flag
//! overrides, with precedence flag > file > default.

use std::path::{Path, PathBuf};

use fdca_core::complexity::ComplexityMeasure;
use fdca_core::grid::DEFAULT_ENUMERATION_CAP;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl ReportFormat {
    pub fn parse(value: &str) -> Result<Self> {
        match value {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(CliError::config(format!("unknown format `{other}` (csv or json)"))),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ReportFormat::Csv => "csv",
            ReportFormat::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    /// Ladder of zone sides, strictly increasing, each larger than the
    /// pattern side.
    pub zone_sides: Vec<u32>,
    pub pattern_side: u32,
    pub measure: String,
    pub enumeration_cap: u32,
    pub mc_samples: u64,
    pub mc_seed: u64,
    pub boundary_fill: bool,
    pub output_path: PathBuf,
    pub format: ReportFormat,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            zone_sides: vec![4, 5, 6],
            pattern_side: 3,
            measure: "dnf_terms".into(),
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            mc_samples: 100_000,
            mc_seed: 42,
            boundary_fill: false,
            output_path: PathBuf::from("fdca-report.csv"),
            format: ReportFormat::Csv,
        }
    }
}

/// Unresolved overrides collected from flags or a config file; `None`
/// leaves the lower-precedence value in place.
#[derive(Debug, Clone, Default)]
pub struct ConfigOverrides {
    pub zone_sides: Option<Vec<u32>>,
    pub pattern_side: Option<u32>,
    pub measure: Option<String>,
    pub enumeration_cap: Option<u32>,
    pub mc_samples: Option<u64>,
    pub mc_seed: Option<u64>,
    pub boundary_fill: Option<bool>,
    pub output_path: Option<PathBuf>,
    pub format: Option<ReportFormat>,
}

impl ExperimentConfig {
    pub fn apply(&mut self, overrides: &ConfigOverrides) {
        if let Some(v) = &overrides.zone_sides {
            self.zone_sides = v.clone();
        }
        if let Some(v) = overrides.pattern_side {
            self.pattern_side = v;
        }
        if let Some(v) = &overrides.measure {
            self.measure = v.clone();
        }
        if let Some(v) = overrides.enumeration_cap {
            self.enumeration_cap = v;
        }
        if let Some(v) = overrides.mc_samples {
            self.mc_samples = v;
        }
        if let Some(v) = overrides.mc_seed {
            self.mc_seed = v;
        }
        if let Some(v) = overrides.boundary_fill {
            self.boundary_fill = v;
        }
        if let Some(v) = &overrides.output_path {
            self.output_path = v.clone();
        }
        if let Some(v) = overrides.format {
            self.format = v;
        }
    }

    /// Checks the invariants every run depends on. Geometry violations get
    /// the geometry exit code; everything else is a config error.
    pub fn validate(&self) -> Result<()> {
        if self.zone_sides.is_empty() {
            return Err(CliError::config("zone_sides must name at least one zone"));
        }
        for pair in self.zone_sides.windows(2) {
            if pair[1] <= pair[0] {
                return Err(CliError::config(format!(
                    "zone_sides must be strictly increasing; {} then {}",
                    pair[0], pair[1]
                )));
            }
        }
        if self.pattern_side < 3 || self.pattern_side % 2 == 0 {
            return Err(CliError::geometry(format!(
                "pattern_side must be odd and at least 3, got {}",
                self.pattern_side
            )));
        }
        for &w in &self.zone_sides {
            if w <= self.pattern_side {
                return Err(CliError::geometry(format!(
                    "zone side {w} must exceed pattern side {}",
                    self.pattern_side
                )));
            }
        }
        ComplexityMeasure::by_name(&self.measure)?;
        Ok(())
    }
}

pub fn parse_zone_list(value: &str) -> Result<Vec<u32>> {
    value
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<u32>()
                .map_err(|_| CliError::config(format!("bad zone side `{}`", part.trim())))
        })
        .collect()
}

fn parse_binary_flag(value: &str, key: &str) -> Result<bool> {
    match value {
        "0" => Ok(false),
        "1" => Ok(true),
        other => Err(CliError::config(format!("{key} must be 0 or 1, got `{other}`"))),
    }
}

/// Flat `key = value` file, one pair per line, `#` comments. Keys mirror the
/// config field names.
pub fn parse_config_file(text: &str) -> Result<ConfigOverrides> {
    let mut overrides = ConfigOverrides::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::config(format!("line {}: expected key=value", lineno + 1)))?;
        let key = key.trim();
        let value = value.trim();
        let parse_u32 = |what: &str| -> Result<u32> {
            value.parse().map_err(|_| CliError::config(format!("{what}: bad value `{value}`")))
        };
        let parse_u64 = |what: &str| -> Result<u64> {
            value.parse().map_err(|_| CliError::config(format!("{what}: bad value `{value}`")))
        };
        match key {
            "zone_sides" => overrides.zone_sides = Some(parse_zone_list(value)?),
            "pattern_side" => overrides.pattern_side = Some(parse_u32("pattern_side")?),
            "measure" => overrides.measure = Some(value.to_string()),
            "enumeration_cap" => overrides.enumeration_cap = Some(parse_u32("enumeration_cap")?),
            "mc_samples" => overrides.mc_samples = Some(parse_u64("mc_samples")?),
            "mc_seed" => overrides.mc_seed = Some(parse_u64("mc_seed")?),
            "boundary_fill" => {
                overrides.boundary_fill = Some(parse_binary_flag(value, "boundary_fill")?)
            }
            "output_path" => overrides.output_path = Some(PathBuf::from(value)),
            "format" => overrides.format = Some(ReportFormat::parse(value)?),
            other => {
                return Err(CliError::config(format!("line {}: unknown key `{other}`", lineno + 1)))
            }
        }
    }
    Ok(overrides)
}

pub fn load_config_file(path: &Path) -> Result<ConfigOverrides> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_config_file(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_flag_over_file_over_default() {
        let mut config = ExperimentConfig::default();
        let from_file = parse_config_file("mc_seed = 7\npattern_side = 5\n").unwrap();
        config.apply(&from_file);
        let from_flags = ConfigOverrides { mc_seed: Some(9), ..Default::default() };
        config.apply(&from_flags);
        assert_eq!(config.mc_seed, 9); // flag wins
        assert_eq!(config.pattern_side, 5); // file wins over default
        assert_eq!(config.enumeration_cap, DEFAULT_ENUMERATION_CAP); // default survives
    }

    #[test]
    fn file_parsing_errors() {
        assert!(parse_config_file("nonsense").is_err());
        assert!(parse_config_file("unknown_key = 3").is_err());
        assert!(parse_config_file("boundary_fill = 2").is_err());
        assert!(parse_config_file("zone_sides = 4,x").is_err());
    }

    #[test]
    fn validation_rules() {
        let mut config = ExperimentConfig::default();
        assert!(config.validate().is_ok());

        config.zone_sides = vec![4, 4];
        assert!(matches!(config.validate(), Err(CliError::Config(_))));

        config.zone_sides = vec![3, 4];
        assert!(matches!(config.validate(), Err(CliError::Geometry(_))));

        config.zone_sides = vec![4, 5];
        config.measure = "nope".into();
        assert!(matches!(config.validate(), Err(CliError::Config(_))));
    }

    #[test]
    fn comments_and_spacing_tolerated() {
        let overrides =
            parse_config_file("# ladder\n zone_sides = 4, 5 ,6 \n\nformat = json\n").unwrap();
        assert_eq!(overrides.zone_sides, Some(vec![4, 5, 6]));
        assert_eq!(overrides.format, Some(ReportFormat::Json));
    }
}
