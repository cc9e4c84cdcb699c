//! Report assembly and emission. CSV carries the tabular rows with a pinned
//! column schema; JSON mirrors those field names and adds estimate
//! intervals, trend verdicts, bound audits, recognition checks, and
//! provenance. Emission is byte-deterministic for identical reports, and
//! files are written via a temporary sibling plus rename so interrupted
//! runs never leave truncated output.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::error::{CliError, Result};

pub const CSV_HEADER: &str =
    "measure,w,N,n,p,B,P1,P1_method,P2,lambda1,lambda2,mu1,mu2,c1,c2,ratio";

#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub measure: String,
    pub w: u32,
    #[serde(rename = "N")]
    pub zone_cells: u32,
    pub n: u32,
    pub p: u128,
    #[serde(rename = "B")]
    pub suppressed: u64,
    #[serde(rename = "P1")]
    pub p1: u128,
    #[serde(rename = "P1_method")]
    pub p1_method: &'static str,
    #[serde(rename = "P2")]
    pub p2: u128,
    pub lambda1: u128,
    pub lambda2: u128,
    pub mu1: u128,
    pub mu2: u128,
    pub c1: f64,
    pub c2: f64,
    pub ratio: f64,
    pub layer1_term: u128,
    pub top_term: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub measure: String,
    pub pattern_side: u32,
    pub boundary_fill: u8,
    pub enumeration_cap: u32,
    pub mc_samples: u64,
    pub mc_seed: u64,
    pub version: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct EstimateDetail {
    pub w: u32,
    pub point: u128,
    pub ci_lower: u128,
    pub ci_upper: u128,
    pub samples: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrendVerdicts {
    pub c1: &'static str,
    pub c2: &'static str,
    pub ratio: &'static str,
    pub p2_over_p1: &'static str,
    pub p_bound: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorollaryValues {
    pub w: u32,
    pub p2_over_p1: f64,
    pub p_bound: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundAudit {
    pub w: u32,
    /// (N - B)(n + 1)(N - n - 2)^3; None when the zone is too small for the
    /// bound to be defined.
    pub bound: Option<u128>,
    pub p1: u128,
    /// Whether P1 (point value) exceeds the bound.
    pub holds: Option<bool>,
    /// Same comparison at the interval's lower end, for estimated rows.
    pub holds_at_ci_lower: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RecognitionCheck {
    pub w: u32,
    pub two_layer_agrees: bool,
    pub one_layer_agrees: bool,
    pub checked: u128,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub provenance: Provenance,
    pub rows: Vec<ReportRow>,
    pub estimates: Vec<EstimateDetail>,
    pub corollary: Vec<CorollaryValues>,
    pub trends: TrendVerdicts,
    pub bound_audit: Vec<BoundAudit>,
    pub recognition_checks: Vec<RecognitionCheck>,
    pub warnings: Vec<String>,
}

/// Renders the report in the requested format. The 2-layer cost
/// decomposition is re-validated row by row before anything is written.
pub fn emit_report(report: &ExperimentReport, format: crate::config::ReportFormat) -> Result<String> {
    for row in &report.rows {
        if row.lambda2 != row.layer1_term + row.top_term {
            return Err(CliError::config(format!(
                "row w={}: lambda2 {} != {} + {}",
                row.w, row.lambda2, row.layer1_term, row.top_term
            )));
        }
    }
    match format {
        crate::config::ReportFormat::Csv => Ok(to_csv(report)),
        crate::config::ReportFormat::Json => {
            let mut text = serde_json::to_string_pretty(report)
                .map_err(|e| CliError::config(format!("report serialization: {e}")))?;
            text.push('\n');
            Ok(text)
        }
    }
}

fn to_csv(report: &ExperimentReport) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in &report.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.measure,
            r.w,
            r.zone_cells,
            r.n,
            r.p,
            r.suppressed,
            r.p1,
            r.p1_method,
            r.p2,
            r.lambda1,
            r.lambda2,
            r.mu1,
            r.mu2,
            r.c1,
            r.c2,
            r.ratio
        );
    }
    out
}

/// Writes through a sibling temporary file and renames over the target.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let mut tmp_name = path.file_name().unwrap_or_default().to_os_string();
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    std::fs::write(&tmp, contents).map_err(|e| CliError::Io(format!("{}: {e}", tmp.display())))?;
    std::fs::rename(&tmp, path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}
