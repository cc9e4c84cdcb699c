//! Integer helpers shared by the complexity and counting modules.
//!
//! All report arithmetic stays in exact integers so that rounding can never
//! manufacture or destroy a monotone trend.

use crate::error::{Error, Result};

/// floor(num * 2^shift / den) together with the remainder, for num < den.
///
/// Shift-and-subtract long division; never overflows as long as den < 2^127.
pub(crate) fn shl_div(num: u128, shift: u32, den: u128) -> (u128, u128) {
    debug_assert!(den > 0 && num < den && den < 1 << 127);
    let mut q: u128 = 0;
    let mut r = num;
    for _ in 0..shift {
        r <<= 1;
        q <<= 1;
        if r >= den {
            r -= den;
            q += 1;
        }
    }
    (q, r)
}

pub(crate) fn checked_pow(base: u128, exp: u32, what: &'static str) -> Result<u128> {
    base.checked_pow(exp).ok_or(Error::Overflow(what))
}

/// 95% Wilson score interval for `hits` successes out of `samples`, scaled to
/// counts over a space of 2^cells configurations.
///
/// Uses z = 49/25 (= 1.96) so the whole computation runs in exact integer
/// arithmetic; the lower bound rounds down and the upper bound rounds up, so
/// the returned interval is never narrower than the real one. Returns
/// (point, lower, upper) with point = round(hits / samples * 2^cells).
pub(crate) fn wilson_bounds_scaled(hits: u64, samples: u64, cells: u32) -> Result<(u128, u128, u128)> {
    if cells > 127 {
        return Err(Error::Overflow("scaled count 2^cells"));
    }
    // 625 m^3-scale intermediates must fit u128.
    const MAX_SAMPLES: u64 = 1 << 39;
    if samples == 0 || samples > MAX_SAMPLES {
        return Err(Error::TooManySamples { samples, max: MAX_SAMPLES });
    }
    debug_assert!(hits <= samples);
    let total: u128 = 1 << cells;
    let k = hits as u128;
    let m = samples as u128;

    let point = if k == m {
        total
    } else {
        let (q, r) = shl_div(k, cells, m);
        q + u128::from(2 * r >= m)
    };

    // With z^2 = 2401/625 the bounds are
    //   (m*(1250k + 2401) -+ 49*sqrt((2500k(m-k) + 2401m) * m)) / (m*(1250m + 4802)).
    let a = 2500 * k * (m - k) + 2401 * m;
    let am = a.checked_mul(m).ok_or(Error::Overflow("Wilson interval"))?;
    let root_dn = am.isqrt();
    let root_up = root_dn + u128::from(root_dn * root_dn != am);
    let base = m * (1250 * k + 2401);
    let den = m * (1250 * m + 4802);

    let num_lo = base.saturating_sub(49 * root_up);
    let lower = shl_div(num_lo, cells, den).0;

    let num_hi = base + 49 * root_dn;
    let upper = if num_hi >= den {
        total
    } else {
        let (q, r) = shl_div(num_hi, cells, den);
        (q + u128::from(r > 0)).min(total)
    };

    Ok((point, lower, upper))
}
