//! Text formats for grid data.
//!
//! Configurations and patterns share one format: one line of `0`/`1`
//! characters per row, top row first, leftmost character is column 0.
//! Lines starting with `#` are comments; blank lines are ignored. Emission
//! never writes comments or blank lines, so parse/emit round-trips are
//! byte-exact on emitted text.
//!
//! Truth-table files list accepted windows, one window per line, as a
//! (2r+1)^2-character `0`/`1` string in row-major window order (first
//! character = top-left window cell).

use fdca_core::grid::{window_cells, Configuration};
use fdca_core::patterns::AngularPattern;

use crate::error::{CliError, Result};

fn data_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(|line| line.strip_suffix('\r').unwrap_or(line).trim_end())
        .filter(|line| !line.is_empty() && !line.starts_with('#'))
}

fn parse_bit_row(line: &str, row: usize) -> Result<Vec<bool>> {
    line.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(CliError::config(format!(
                "row {row}: unexpected character {other:?} (expected 0 or 1)"
            ))),
        })
        .collect()
}

pub fn parse_configuration(text: &str) -> Result<Configuration> {
    let rows: Vec<Vec<bool>> = data_lines(text)
        .enumerate()
        .map(|(i, line)| parse_bit_row(line, i))
        .collect::<Result<_>>()?;
    if rows.is_empty() {
        return Err(CliError::config("no grid rows found"));
    }
    let side = rows.len();
    if let Some(bad) = rows.iter().position(|r| r.len() != side) {
        return Err(CliError::config(format!(
            "row {bad} has {} cells, expected {side} (square grid)",
            rows[bad].len()
        )));
    }
    Configuration::from_rows(&rows).map_err(CliError::from)
}

pub fn configuration_text(config: &Configuration) -> String {
    let side = config.side();
    let mut out = String::with_capacity((side * (side + 1)) as usize);
    for row in 0..side {
        for col in 0..side {
            out.push(if config.get(row, col) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

pub fn parse_pattern(text: &str) -> Result<AngularPattern> {
    let rows: Vec<&str> = data_lines(text).collect();
    parse_pattern_rows(&rows)
}

/// Pattern from row strings (used both by pattern files and by inline
/// patterns in automaton description files).
pub fn parse_pattern_rows<S: AsRef<str>>(rows: &[S]) -> Result<AngularPattern> {
    if rows.is_empty() {
        return Err(CliError::config("no pattern rows found"));
    }
    let side = rows.len() as u32;
    let mut bits: u128 = 0;
    for (i, row) in rows.iter().enumerate() {
        let cells = parse_bit_row(row.as_ref(), i)?;
        if cells.len() != rows.len() {
            return Err(CliError::config(format!(
                "pattern row {i} has {} cells, expected {side} (square pattern)",
                cells.len()
            )));
        }
        for (j, &state) in cells.iter().enumerate() {
            if state {
                bits |= 1 << (i as u32 * side + j as u32);
            }
        }
    }
    AngularPattern::from_bits(side, bits).map_err(CliError::from)
}

pub fn pattern_rows(pattern: &AngularPattern) -> Vec<String> {
    (0..pattern.side())
        .map(|row| {
            (0..pattern.side())
                .map(|col| if pattern.cell(row, col) { '1' } else { '0' })
                .collect()
        })
        .collect()
}

pub fn pattern_text(pattern: &AngularPattern) -> String {
    let mut out = String::new();
    for row in pattern_rows(pattern) {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

/// Accepted packed window values from a truth-table file.
pub fn parse_truth_table(text: &str, radius: u8) -> Result<Vec<u128>> {
    let width = window_cells(radius) as usize;
    let mut values = Vec::new();
    for (i, line) in data_lines(text).enumerate() {
        if line.len() != width {
            return Err(CliError::config(format!(
                "truth-table line {i} has {} characters, expected {width} for radius {radius}",
                line.len()
            )));
        }
        let mut packed: u128 = 0;
        for (bit, state) in parse_bit_row(line, i)?.into_iter().enumerate() {
            if state {
                packed |= 1 << bit;
            }
        }
        values.push(packed);
    }
    Ok(values)
}

pub fn truth_table_text(values: &[u128], radius: u8) -> String {
    let width = window_cells(radius);
    let mut out = String::new();
    for &value in values {
        for bit in 0..width {
            out.push(if value >> bit & 1 == 1 { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn configuration_round_trip() {
        let text = "0101\n1010\n0011\n1100\n";
        let config = parse_configuration(text).unwrap();
        assert_eq!(configuration_text(&config), text);
    }

    #[test]
    fn comments_and_blanks_are_ignored() {
        let text = "# a comment\n01\n\n10\n";
        let config = parse_configuration(text).unwrap();
        assert_eq!(configuration_text(&config), "01\n10\n");
    }

    #[test]
    fn rejects_ragged_and_bad_chars() {
        assert!(parse_configuration("01\n1\n").is_err());
        assert!(parse_configuration("0x\n10\n").is_err());
        assert!(parse_configuration("").is_err());
    }

    #[test]
    fn pattern_round_trip() {
        let pattern = AngularPattern::corner(3).unwrap();
        let text = pattern_text(&pattern);
        assert_eq!(text, "100\n100\n111\n");
        assert_eq!(parse_pattern(&text).unwrap(), pattern);
    }

    #[test]
    fn pattern_must_be_square_odd_nonzero() {
        assert!(parse_pattern("10\n01\n").is_err());
        assert!(parse_pattern("000\n000\n000\n").is_err());
    }

    #[test]
    fn truth_table_round_trip() {
        let values = vec![0b000000001u128, 0b111001001];
        let text = truth_table_text(&values, 1);
        assert_eq!(text, "100000000\n100100111\n");
        assert_eq!(parse_truth_table(&text, 1).unwrap(), values);
        assert!(parse_truth_table("101\n", 1).is_err());
    }
}
