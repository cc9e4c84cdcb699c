//! Bit-valued configurations over a square working zone, local windows, and
//! exhaustive configuration-space enumeration.
//!
//! Cells are addressed by 0-based `(row, col)` with the origin at the top
//! left. Packing order is pinned: bit `row * side + col` of the packed
//! representation holds cell `(row, col)`, so packed values are portable
//! across runs and machines, and enumeration in increasing packed-integer
//! order is deterministic and restartable from any offset.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Largest supported zone side.
pub const MAX_SIDE: u32 = 64;

/// Largest zone side whose full configuration space is addressable as a
/// packed `u128` (side^2 <= 121 bits). Exhaustive scans, enumeration order,
/// and scaled Monte Carlo estimates all require this.
pub const MAX_PACKED_SIDE: u32 = 11;

/// Largest window radius a [`LocalConfiguration`] can pack ((2r+1)^2 <= 121).
pub const MAX_WINDOW_RADIUS: u8 = 5;

/// Default cap on `side^2` for exhaustive scans; 2^25 configurations scan in
/// minutes on one core. Overridable wherever a cap parameter is accepted.
pub const DEFAULT_ENUMERATION_CAP: u32 = 25;

/// Fixed boundary conditions: cells outside the working zone read as a
/// constant fill state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct BoundaryPolicy {
    pub fill: bool,
}

impl BoundaryPolicy {
    pub const ZERO: BoundaryPolicy = BoundaryPolicy { fill: false };
    pub const ONE: BoundaryPolicy = BoundaryPolicy { fill: true };

    pub fn new(fill: bool) -> Self {
        BoundaryPolicy { fill }
    }
}

/// A binary configuration of a `side * side` working zone.
///
/// Immutable after construction in all read paths, so configurations can be
/// shared freely across concurrent workers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    side: u32,
    words: Vec<u64>,
}

impl core::fmt::Debug for Configuration {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        writeln!(f, "Configuration(side={})", self.side)?;
        for row in 0..self.side {
            for col in 0..self.side {
                f.write_str(if self.get(row, col) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl Configuration {
    /// All-zero configuration.
    pub fn zero(side: u32) -> Result<Self> {
        if side == 0 || side > MAX_SIDE {
            return Err(Error::SideOutOfRange { side, max: MAX_SIDE });
        }
        let cells = (side * side) as usize;
        Ok(Configuration {
            side,
            words: vec![0; cells.div_ceil(64)],
        })
    }

    /// Configuration from its packed bit representation (side <= [`MAX_PACKED_SIDE`]).
    pub fn from_packed(side: u32, packed: u128) -> Result<Self> {
        if side == 0 || side > MAX_PACKED_SIDE {
            return Err(Error::ZoneTooLarge { side, max: MAX_PACKED_SIDE });
        }
        let cells = side * side;
        if cells < 128 && packed >> cells != 0 {
            return Err(Error::PackedOutOfRange { packed, cells });
        }
        let mut config = Configuration::zero(side)?;
        config.words[0] = packed as u64;
        if config.words.len() > 1 {
            config.words[1] = (packed >> 64) as u64;
        }
        Ok(config)
    }

    /// Configuration from row-major rows of cell states. All rows must have
    /// length equal to the row count (square zone).
    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self> {
        let side = rows.len() as u32;
        let mut config = Configuration::zero(side)?;
        for (r, row) in rows.iter().enumerate() {
            if row.len() != side as usize {
                return Err(Error::SideOutOfRange { side: row.len() as u32, max: side });
            }
            for (c, &state) in row.iter().enumerate() {
                config.set_cell(r as u32, c as u32, state);
            }
        }
        Ok(config)
    }

    /// Packed bit representation, when the zone fits in 128 bits.
    pub fn to_packed(&self) -> Option<u128> {
        if self.side > MAX_PACKED_SIDE {
            return None;
        }
        let mut packed = self.words[0] as u128;
        if let Some(&hi) = self.words.get(1) {
            packed |= (hi as u128) << 64;
        }
        Some(packed)
    }

    pub fn side(&self) -> u32 {
        self.side
    }

    /// Total cell count N = side^2.
    pub fn cell_count(&self) -> u32 {
        self.side * self.side
    }

    /// State of an in-zone cell. Panics when out of range; use
    /// [`Configuration::get_cell`] for coordinates that may leave the zone.
    pub fn get(&self, row: u32, col: u32) -> bool {
        assert!(row < self.side && col < self.side, "cell ({row},{col}) outside zone");
        let bit = (row * self.side + col) as usize;
        self.words[bit / 64] >> (bit % 64) & 1 == 1
    }

    /// State at arbitrary coordinates; out-of-zone cells read as the fill state.
    pub fn get_cell(&self, row: i64, col: i64, policy: BoundaryPolicy) -> bool {
        let side = i64::from(self.side);
        if row < 0 || col < 0 || row >= side || col >= side {
            policy.fill
        } else {
            self.get(row as u32, col as u32)
        }
    }

    /// Writes an in-zone cell. Panics when out of range.
    pub fn set_cell(&mut self, row: u32, col: u32, state: bool) {
        assert!(row < self.side && col < self.side, "cell ({row},{col}) outside zone");
        let bit = (row * self.side + col) as usize;
        let mask = 1u64 << (bit % 64);
        if state {
            self.words[bit / 64] |= mask;
        } else {
            self.words[bit / 64] &= !mask;
        }
    }

    /// Number of cells in state 1.
    pub fn count_ones(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    /// (row, col) of the unique 1-cell, if exactly one cell is set.
    pub fn single_one(&self) -> Option<(u32, u32)> {
        if self.count_ones() != 1 {
            return None;
        }
        let (idx, word) = self.words.iter().enumerate().find(|(_, w)| **w != 0)?;
        let bit = idx as u32 * 64 + word.trailing_zeros();
        Some((bit / self.side, bit % self.side))
    }
}

/// The window of a configuration seen through a square neighborhood of
/// radius `r`, packed row-major (offset `(dr, dc)` in `[-r, r]^2` maps to
/// bit `(dr + r) * (2r + 1) + (dc + r)`, top-left first). Equal windows
/// compare equal as packed values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocalConfiguration {
    radius: u8,
    packed: u128,
}

impl LocalConfiguration {
    pub fn new(radius: u8, packed: u128) -> Result<Self> {
        if radius > MAX_WINDOW_RADIUS {
            return Err(Error::WindowTooLarge { radius, max: MAX_WINDOW_RADIUS });
        }
        let cells = window_cells(radius);
        if packed >> cells != 0 {
            return Err(Error::PackedOutOfRange { packed, cells });
        }
        Ok(LocalConfiguration { radius, packed })
    }

    pub fn radius(&self) -> u8 {
        self.radius
    }

    pub fn window_side(&self) -> u32 {
        2 * u32::from(self.radius) + 1
    }

    /// Window size n = (2r + 1)^2.
    pub fn size(&self) -> u32 {
        window_cells(self.radius)
    }

    pub fn packed(&self) -> u128 {
        self.packed
    }

    /// Bit at window offset `(dr, dc)`, both in `[-r, r]`.
    pub fn bit(&self, dr: i64, dc: i64) -> bool {
        let r = i64::from(self.radius);
        assert!(dr.abs() <= r && dc.abs() <= r, "offset ({dr},{dc}) outside window");
        let idx = (dr + r) * i64::from(self.window_side()) + (dc + r);
        self.packed >> idx & 1 == 1
    }

    /// Copy with one window bit flipped (row-major bit index).
    pub fn with_bit_flipped(&self, index: u32) -> Self {
        assert!(index < self.size(), "bit {index} outside window");
        LocalConfiguration {
            radius: self.radius,
            packed: self.packed ^ (1 << index),
        }
    }
}

/// Window cell count (2r + 1)^2.
pub fn window_cells(radius: u8) -> u32 {
    let side = 2 * u32::from(radius) + 1;
    side * side
}

/// Extracts the window of `config` centered at `center` with the given
/// radius, filling out-of-zone cells per `policy`.
///
/// The center itself may lie anywhere, including outside the zone.
pub fn local_configuration(
    config: &Configuration,
    center: (i64, i64),
    radius: u8,
    policy: BoundaryPolicy,
) -> Result<LocalConfiguration> {
    if radius > MAX_WINDOW_RADIUS {
        return Err(Error::WindowTooLarge { radius, max: MAX_WINDOW_RADIUS });
    }
    let r = i64::from(radius);
    let side = i64::from(config.side);

    // interior windows on packed-size grids: row-sliced shifts instead of
    // per-cell reads (this is the scan hot path)
    if config.side <= MAX_PACKED_SIDE
        && center.0 >= r
        && center.1 >= r
        && center.0 + r < side
        && center.1 + r < side
    {
        let mut grid_bits = config.words[0] as u128;
        if let Some(&hi) = config.words.get(1) {
            grid_bits |= (hi as u128) << 64;
        }
        let window_side = 2 * u32::from(radius) + 1;
        let row_mask = (1u128 << window_side) - 1;
        let top = (center.0 - r) as u32;
        let left = (center.1 - r) as u32;
        let mut packed: u128 = 0;
        for i in 0..window_side {
            let start = (top + i) * config.side + left;
            packed |= ((grid_bits >> start) & row_mask) << (i * window_side);
        }
        return Ok(LocalConfiguration { radius, packed });
    }

    let mut packed: u128 = 0;
    let mut bit = 0;
    for dr in -r..=r {
        for dc in -r..=r {
            if config.get_cell(center.0 + dr, center.1 + dc, policy) {
                packed |= 1 << bit;
            }
            bit += 1;
        }
    }
    Ok(LocalConfiguration { radius, packed })
}

/// Number of positions where two equal-radius windows differ.
pub fn hamming_distance(a: &LocalConfiguration, b: &LocalConfiguration) -> Result<u32> {
    if a.radius != b.radius {
        return Err(Error::RadiusMismatch { a: a.radius, b: b.radius });
    }
    Ok((a.packed ^ b.packed).count_ones())
}

/// 2^(side^2), the size of the configuration space.
pub fn configuration_count(side: u32) -> Result<u128> {
    if side == 0 || side > MAX_PACKED_SIDE {
        return Err(Error::ZoneTooLarge { side, max: MAX_PACKED_SIDE });
    }
    Ok(1 << (side * side))
}

/// Ordered stream of every configuration of the zone, in increasing order of
/// the packed bit representation.
pub fn enumerate_configurations(side: u32, cap: u32) -> Result<ConfigurationRange> {
    let total = checked_space(side, cap)?;
    Ok(ConfigurationRange { side, next: 0, end: total })
}

/// Re-startable sub-range `start..end` of the enumeration order, for
/// partitioned scans. Disjoint ranges can be walked by independent workers;
/// results combine by summation or by first-hit-in-order.
pub fn enumerate_range(side: u32, start: u128, end: u128, cap: u32) -> Result<ConfigurationRange> {
    let total = checked_space(side, cap)?;
    if start > end || end > total {
        return Err(Error::RangeOutOfBounds { start, end, total });
    }
    Ok(ConfigurationRange { side, next: start, end })
}

fn checked_space(side: u32, cap: u32) -> Result<u128> {
    if side == 0 || side > MAX_PACKED_SIDE {
        return Err(Error::ZoneTooLarge { side, max: MAX_PACKED_SIDE });
    }
    let cells = side * side;
    if cells > cap {
        return Err(Error::EnumerationCapExceeded { cells, cap });
    }
    Ok(1 << cells)
}

/// Iterator over a contiguous slice of the configuration space.
#[derive(Debug, Clone)]
pub struct ConfigurationRange {
    side: u32,
    next: u128,
    end: u128,
}

impl ConfigurationRange {
    pub fn remaining(&self) -> u128 {
        self.end - self.next
    }

    /// Packed value the next call to `next()` will yield.
    pub fn offset(&self) -> u128 {
        self.next
    }
}

impl Iterator for ConfigurationRange {
    type Item = Configuration;

    fn next(&mut self) -> Option<Configuration> {
        if self.next >= self.end {
            return None;
        }
        let config = Configuration::from_packed(self.side, self.next)
            .expect("range-checked packed value");
        self.next += 1;
        Some(config)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rem = usize::try_from(self.remaining()).ok();
        (rem.unwrap_or(usize::MAX), rem)
    }
}
