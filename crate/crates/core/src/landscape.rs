//! Single-parameter persistence landscapes evaluated pointwise.

use crate::error::{Error, Result};
use crate::persistence::{Bar, Barcode};

/// `max(0, min(t - birth, death - t))`.
#[inline]
pub fn tent(bar: &Bar, t: f64) -> f64 {
    let v = (t - bar.birth).min(bar.death - t);
    if v > 0.0 {
        v
    } else {
        0.0
    }
}

/// The `k`-th largest tent value at `t` (1-based), or 0 if fewer than `k`
/// bars are positive there.
pub fn landscape_eval(barcode: &Barcode, k: usize, t: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::input("landscape depth k must be at least 1"));
    }
    let mut tents: Vec<f64> = barcode
        .bars
        .iter()
        .map(|b| tent(b, t))
        .filter(|&v| v > 0.0)
        .collect();
    Ok(kth_largest(&mut tents, k))
}

/// k-th largest (1-based) of `values`, reordering them; 0 if too few.
pub(crate) fn kth_largest(values: &mut [f64], k: usize) -> f64 {
    if k > values.len() {
        return 0.0;
    }
    let (_, v, _) = values.select_nth_unstable_by(k - 1, |a, b| b.total_cmp(a));
    *v
}

/// Writes the first `out.len()` landscape values at `t` into `out`.
pub(crate) fn landscape_column(bars: &[Bar], t: f64, scratch: &mut Vec<f64>, out: &mut [f64]) {
    scratch.clear();
    scratch.extend(bars.iter().map(|b| tent(b, t)).filter(|&v| v > 0.0));
    let m = scratch.len();
    let kmax = out.len();
    if m > kmax {
        scratch.select_nth_unstable_by(kmax - 1, |a, b| b.total_cmp(a));
        scratch.truncate(kmax);
    }
    scratch.sort_unstable_by(|a, b| b.total_cmp(a));
    for (k, o) in out.iter_mut().enumerate() {
        *o = scratch.get(k).copied().unwrap_or(0.0);
    }
}

/// `k_max x |ts|` matrix of landscape values; row `k - 1` holds `lambda_k`.
pub fn landscape_profile(barcode: &Barcode, k_max: usize, ts: &[f64]) -> Vec<Vec<f64>> {
    let mut rows = vec![vec![0.0; ts.len()]; k_max];
    if k_max == 0 {
        return rows;
    }
    let mut scratch = Vec::new();
    let mut col = vec![0.0; k_max];
    for (j, &t) in ts.iter().enumerate() {
        landscape_column(&barcode.bars, t, &mut scratch, &mut col);
        for k in 0..k_max {
            rows[k][j] = col[k];
        }
    }
    rows
}
