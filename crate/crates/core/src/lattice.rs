//! Dyadic lattice used for slice arithmetic.
//!
//! Every quantity that enters a slice computation (rescaled grade coordinates,
//! grid node coordinates, base points) is rounded to the nearest multiple of
//! `2^-32`. For magnitudes below [`MAX_EXACT`] the difference, minimum and
//! maximum of two lattice values are computed exactly in `f64`, so landscape
//! values obtained along a diagonal and at individual nodes agree bit for bit
//! and the discrete Lipschitz bound holds without rounding slack.
//!
//! The rounding moves a coordinate by at most `2^-33`.

/// Number of fractional bits kept.
pub const FRACTION_BITS: i32 = 32;

/// Spacing of the lattice, `2^-32`.
pub const QUANTUM: f64 = 1.0 / 4_294_967_296.0;

/// Largest magnitude for which lattice arithmetic is exact.
pub const MAX_EXACT: f64 = 1_048_576.0;

const SCALE: f64 = 4_294_967_296.0;

/// Rounds `x` to the nearest lattice point. Non-finite values pass through.
#[inline]
pub fn snap(x: f64) -> f64 {
    if x.is_finite() {
        (x * SCALE).round() / SCALE
    } else {
        x
    }
}

/// Whether `x` is within the exactly representable range.
#[inline]
pub fn in_range(x: f64) -> bool {
    x.is_finite() && x.abs() < MAX_EXACT
}

/// Whether `x` already lies on the lattice.
#[inline]
pub fn is_lattice(x: f64) -> bool {
    snap(x) == x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snapping_is_idempotent_and_close() {
        for &x in &[0.1, -3.7, 1e5 + 0.123_456_789, 2.0 / 3.0] {
            let s = snap(x);
            assert_eq!(snap(s), s);
            assert!((s - x).abs() <= QUANTUM / 2.0);
        }
    }

    #[test]
    fn lattice_differences_are_exact() {
        let a = snap(12_345.678_9);
        let b = snap(-0.000_123);
        let d = a - b;
        assert!(is_lattice(d));
        assert_eq!(d + b, a);
    }

    #[test]
    fn infinities_pass_through() {
        assert_eq!(snap(f64::INFINITY), f64::INFINITY);
        assert!(!in_range(f64::NAN));
    }
}
