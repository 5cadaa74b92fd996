//! Closed-form root counts of the secular equation on each localization interval.

use super::{IntervalKind, RootInterval, SecularParams};
use crate::scalar::Scalar;
use crate::specfun::gamma;

/// Parameters closer than this to a table boundary are moved onto it.
pub const SNAP_TOL: f64 = 1e-12;

/// Parameters after snapping: `xi`, `eta` and `disc = ζ² - ξη` land exactly on
/// `0` or `-Γ(1-α)` when within [`SNAP_TOL`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Snapped<T> {
    pub xi: T,
    pub eta: T,
    pub disc: T,
    /// `Γ(1-α)`
    pub g: T,
}

pub fn snap<T: Scalar>(sp: &SecularParams<T>) -> Snapped<T> {
    let tol = T::lit(SNAP_TOL);
    let g = gamma(T::one() - sp.alpha()).expect("1-alpha lies in ]0,1[");
    let xi = if sp.rbc.xi.abs() <= tol { T::zero() } else { sp.rbc.xi };
    let mut eta = sp.rbc.eta;
    if eta.abs() <= tol {
        eta = T::zero();
    } else if (eta + g).abs() <= tol {
        eta = -g;
    }
    let zeta = sp.rbc.zeta;
    let disc = zeta * zeta - xi * eta;
    let disc = if disc.abs() <= tol { T::zero() } else { disc };
    Snapped { xi, eta, disc, g }
}

/// Number of roots in the open interval `kind`.
pub fn interval_root_count<T: Scalar>(kind: IntervalKind, sp: &SecularParams<T>) -> u32 {
    let s = snap(sp);
    let zero = T::zero();
    let (xi, eta, disc, g) = (s.xi, s.eta, s.disc, s.g);
    match kind {
        IntervalKind::TopInterval => {
            if xi >= zero {
                if eta >= zero {
                    u32::from(disc > zero)
                } else if eta > -g {
                    1
                } else {
                    0
                }
            } else if eta >= zero {
                1
            } else if eta > -g {
                if disc >= zero {
                    1
                } else {
                    2
                }
            } else {
                u32::from(disc < zero)
            }
        }
        IntervalKind::UpperGap(0) => u32::from(xi > zero) + u32::from(eta < -g),
        IntervalKind::UpperGap(m) => interval_root_count(IntervalKind::LowerGapB(m - 1), sp),
        IntervalKind::LowerGapA(_) => u32::from(xi < zero) + u32::from(eta > zero),
        IntervalKind::LowerGapB(_) => u32::from(xi > zero) + u32::from(eta < zero),
    }
}

/// Intervals `]1-α,∞[`, `]0,1-α[`, then `]-α-m,-m[` and `]-1-m,-α-m[` for
/// `m = 0, 1, ...` down to the first interval lying wholly below `z_min`.
pub fn localization_intervals<T: Scalar>(sp: &SecularParams<T>, z_min: T) -> Vec<RootInterval<T>> {
    let make = |kind: IntervalKind| {
        let (lo, hi) = kind.bounds(sp.alpha());
        RootInterval { kind, lo, hi, predicted_count: interval_root_count(kind, sp) }
    };
    let mut out = vec![make(IntervalKind::TopInterval), make(IntervalKind::UpperGap(0))];
    for m in 0u32.. {
        let a = make(IntervalKind::LowerGapA(m));
        if a.hi <= z_min {
            break;
        }
        out.push(a);
        let b = make(IntervalKind::LowerGapB(m));
        if b.hi <= z_min {
            break;
        }
        out.push(b);
    }
    out.retain(|i| i.hi > z_min);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use IntervalKind::*;

    fn sp(xi: f64, eta: f64, zeta: f64) -> SecularParams<f64> {
        SecularParams::from_parts(xi, eta, zeta, 0.3).unwrap()
    }

    #[test]
    fn top_rows() {
        let g = gamma(0.7).unwrap();
        let rows: [(f64, f64, f64, u32); 9] = [
            (1.0, 1.0, 1.2, 1),
            (1.0, 1.0, 0.8, 0),
            (1.0, -0.5 * g, 0.0, 1),
            (1.0, -2.0 * g, 3.0, 0),
            (-1.0, 0.5, 0.0, 1),
            (-1.0, -0.5 * g, 2.0, 1),
            (-1.0, -0.5 * g, 0.1, 2),
            (-1.0, -2.0 * g, 3.0, 0),
            (-1.0, -2.0 * g, 0.3, 1),
        ];
        for (xi, eta, zeta, n) in rows {
            assert_eq!(interval_root_count(TopInterval, &sp(xi, eta, zeta)), n, "({xi}, {eta}, {zeta})");
        }
    }

    #[test]
    fn gap_rows() {
        let g = gamma(0.7).unwrap();
        assert_eq!(interval_root_count(UpperGap(0), &sp(0.0, -g, 1.0)), 0);
        assert_eq!(interval_root_count(UpperGap(0), &sp(-1.0, -2.0 * g, 1.0)), 1);
        assert_eq!(interval_root_count(UpperGap(0), &sp(1.0, 0.0, 1.0)), 1);
        assert_eq!(interval_root_count(UpperGap(0), &sp(1.0, -2.0 * g, 1.0)), 2);
        assert_eq!(interval_root_count(LowerGapA(2), &sp(0.0, 0.0, 1.0)), 0);
        assert_eq!(interval_root_count(LowerGapA(2), &sp(0.0, 1.0, 1.0)), 1);
        assert_eq!(interval_root_count(LowerGapA(2), &sp(-1.0, 0.0, 1.0)), 1);
        assert_eq!(interval_root_count(LowerGapA(2), &sp(-1.0, 1.0, 1.0)), 2);
        assert_eq!(interval_root_count(LowerGapB(1), &sp(0.0, 0.0, 1.0)), 0);
        assert_eq!(interval_root_count(LowerGapB(1), &sp(0.0, -1.0, 1.0)), 1);
        assert_eq!(interval_root_count(LowerGapB(1), &sp(1.0, 0.0, 1.0)), 1);
        assert_eq!(interval_root_count(LowerGapB(1), &sp(1.0, -1.0, 1.0)), 2);
        assert_eq!(interval_root_count(UpperGap(2), &sp(1.0, -1.0, 1.0)), 2);
    }

    #[test]
    fn snapping_reaches_boundaries() {
        let g = gamma(0.7).unwrap();
        let s = snap(&sp(1e-13, -g + 5e-13, 0.0));
        assert_eq!(s.xi, 0.0);
        assert_eq!(s.eta, -g);
        assert_eq!(interval_root_count(TopInterval, &sp(1.0, 1.0, 1.0 + 1e-14)), 0);
    }

    #[test]
    fn intervals_cover_down_to_z_min() {
        let ivs = localization_intervals(&sp(0.0, 0.0, 0.0), -2.5);
        let kinds: Vec<_> = ivs.iter().map(|i| i.kind).collect();
        assert_eq!(
            kinds,
            vec![TopInterval, UpperGap(0), LowerGapA(0), LowerGapB(0), LowerGapA(1), LowerGapB(1), LowerGapA(2), LowerGapB(2)]
        );
        assert!(ivs.windows(2).all(|w| (w[0].lo - w[1].hi).abs() < 1e-15));
    }
}
