//! Table-validated root finding for the secular equation.

use rayon::prelude::*;

use super::tables::{localization_intervals, snap, Snapped};
use super::{factored_eval, secular_eval, IntervalKind, Root, RootInterval, RootOrigin, SecularParams};
use crate::abmodel::ModelParams;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Roots closer than this are reported once with `multiplicity_hint = 2`.
pub const MERGE_DISTANCE: f64 = 1e-7;

const BASE_DENSITY: f64 = 64.0;
const MIN_SAMPLES: usize = 16;
const REFINEMENTS: u32 = 3;
const ENDPOINT_NUDGE: f64 = 1e-6;
// Past this point the factored form replaces the entire one on the top interval.
const FACTORED_FROM: f64 = 2.0;
const TOP_UNIFORM_SPAN: f64 = 10.0;
const CAP_GROWTH: f64 = 16.0;

/// All roots `z >= z_min` sorted by `z` descending.
///
/// Each open interval lying wholly above `z_min` must produce exactly the
/// table-predicted number of sign changes, after up to three ×4 refinements
/// of the scan grid and a final search of the dips of `|EV|`; otherwise
/// [`Error::CountMismatch`] is raised.
pub fn find_roots<T: Scalar>(sp: &SecularParams<T>, p: &ModelParams<T>, z_min: T) -> Result<Vec<Root<T>>> {
    if (sp.alpha() - p.alpha()).abs() > T::lit(1e-15) {
        return Err(Error::InvalidArgument("secular and model parameters disagree on alpha".into()));
    }
    if !(z_min < T::one() - sp.alpha()) {
        return Err(Error::InvalidArgument(format!("z_min = {} must lie below 1-alpha", z_min.as_f64())));
    }
    let s = snap(sp);
    let intervals = localization_intervals(sp, z_min);
    let per_interval: Vec<Vec<T>> = intervals.par_iter().map(|iv| interval_roots(iv, sp, &s, z_min)).collect::<Result<_>>()?;

    let mut zs: Vec<(T, RootOrigin)> = per_interval.into_iter().flatten().map(|z| (z, RootOrigin::Interior)).collect();
    zs.extend(endpoint_roots(sp, &s, z_min).into_iter().map(|z| (z, RootOrigin::Endpoint)));
    zs.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("roots are finite"));

    let mut out: Vec<Root<T>> = Vec::with_capacity(zs.len());
    for (z, origin) in zs {
        match out.last_mut() {
            Some(last) if (last.z - z).abs() <= T::lit(MERGE_DISTANCE) => {
                last.multiplicity_hint += 1;
                if origin == RootOrigin::Endpoint {
                    *last = Root { multiplicity_hint: last.multiplicity_hint, ..Root::new(z, p, origin) };
                }
            }
            _ => out.push(Root::new(z, p, origin)),
        }
    }
    Ok(out)
}

/// Lattice points that are roots: `1-α` iff `η = -Γ(1-α)`, `-m` iff `ξ = 0`,
/// `-α-m` iff `η = 0`.
fn endpoint_roots<T: Scalar>(sp: &SecularParams<T>, s: &Snapped<T>, z_min: T) -> Vec<T> {
    let a = sp.alpha();
    let mut out = Vec::new();
    if s.eta == -s.g {
        out.push(T::one() - a);
    }
    let mut m = 0i64;
    while -T::from_int(m) >= z_min {
        let zm = -T::from_int(m);
        if s.xi == T::zero() {
            out.push(zm);
        }
        if s.eta == T::zero() && zm - a >= z_min {
            out.push(zm - a);
        }
        m += 1;
    }
    out
}

/// Whether the `(lo, hi)` endpoints of `kind` are roots by the endpoint rules.
fn endpoint_flags<T: Scalar>(kind: IntervalKind, s: &Snapped<T>) -> (bool, bool) {
    let xi0 = s.xi == T::zero();
    let eta0 = s.eta == T::zero();
    let eta_g = s.eta == -s.g;
    match kind {
        IntervalKind::TopInterval => (eta_g, false),
        IntervalKind::UpperGap(0) => (xi0, eta_g),
        IntervalKind::UpperGap(_) | IntervalKind::LowerGapB(_) => (xi0, eta0),
        IntervalKind::LowerGapA(_) => (eta0, xi0),
    }
}

fn interval_roots<T: Scalar>(iv: &RootInterval<T>, sp: &SecularParams<T>, s: &Snapped<T>, z_min: T) -> Result<Vec<T>> {
    let validated = iv.lo >= z_min;
    let mut found = Vec::new();
    for k in 0..=REFINEMENTS {
        let density = T::lit(BASE_DENSITY * 4f64.powi(k as i32));
        found = if iv.kind == IntervalKind::TopInterval {
            scan_top(iv, sp, s, density)?
        } else {
            scan_bounded(iv, sp, s, density, z_min, k == REFINEMENTS && validated)
        };
        if !validated || found.len() == iv.predicted_count as usize {
            return Ok(found);
        }
    }
    Err(Error::CountMismatch { interval: iv.kind.to_string(), predicted: iv.predicted_count, found: found.len() as u32 })
}

fn scan_bounded<T: Scalar>(
    iv: &RootInterval<T>,
    sp: &SecularParams<T>,
    s: &Snapped<T>,
    density: T,
    z_min: T,
    search_dips: bool,
) -> Vec<T> {
    let (lo_root, hi_root) = endpoint_flags(iv.kind, s);
    let len = iv.hi - iv.lo;
    let nudge = len * T::lit(ENDPOINT_NUDGE);
    let lo = if iv.lo < z_min {
        z_min
    } else if lo_root {
        iv.lo + nudge
    } else {
        iv.lo
    };
    let hi = if hi_root { iv.hi - nudge } else { iv.hi };
    let n = (density * (hi - lo)).ceil().as_f64().max(MIN_SAMPLES as f64) as usize;
    let f = |z: T| secular_eval(z, sp);
    let grid: Vec<T> =
        (0..=n).map(|i| if i == n { hi } else { lo + (hi - lo) * T::from_int(i as i64) / T::from_int(n as i64) }).collect();
    let mut roots = bracket_all(grid.iter().copied(), &f);
    if search_dips && roots.len() < iv.predicted_count as usize {
        roots.extend(dip_roots(&grid, &f));
        roots.sort_by(|a, b| a.partial_cmp(b).expect("roots are finite"));
    }
    roots
}

/// Root pairs hidden between two samples of equal sign: every local minimum
/// of `|f|` is minimized further, and a sign flip at the minimum splits it
/// into two brackets. A minimum that is zero, or vanishes relative to its
/// neighbours, is a double root and is reported twice.
fn dip_roots<T: Scalar>(grid: &[T], f: &impl Fn(T) -> T) -> Vec<T> {
    let vals: Vec<T> = grid.iter().map(|&z| f(z)).collect();
    let mut out = Vec::new();
    for i in 1..grid.len().saturating_sub(1) {
        let (l, m, r) = (vals[i - 1], vals[i], vals[i + 1]);
        let same_sign = (l > T::zero()) == (m > T::zero()) && (m > T::zero()) == (r > T::zero());
        if !(l.is_finite() && r.is_finite()) || m == T::zero() || !same_sign || m.abs() > l.abs() || m.abs() > r.abs() {
            continue;
        }
        let sign = m.signum();
        let g = |z: T| sign * f(z);
        let (c, gc) = golden_min(&g, grid[i - 1], grid[i + 1]);
        if gc < T::zero() {
            out.push(refine(f, grid[i - 1], l, c, sign * gc));
            out.push(refine(f, c, sign * gc, grid[i + 1], r));
        } else if gc <= T::lit(1e-12) * l.abs().min(r.abs()) {
            out.extend([c, c]);
        }
    }
    out
}

/// Golden-section minimum of `g` on `[a, b]`; stops early once `g` turns negative.
fn golden_min<T: Scalar>(g: &impl Fn(T) -> T, mut a: T, mut b: T) -> (T, T) {
    let r = T::lit(0.5 * (5f64.sqrt() - 1.0));
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut gc, mut gd) = (g(c), g(d));
    for _ in 0..120 {
        if gc < T::zero() {
            return (c, gc);
        }
        if gd < T::zero() {
            return (d, gd);
        }
        if gc <= gd {
            b = d;
            d = c;
            gd = gc;
            c = b - r * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + r * (b - a);
            gd = g(d);
        }
    }
    if gc <= gd {
        (c, gc)
    } else {
        (d, gd)
    }
}

fn scan_top<T: Scalar>(iv: &RootInterval<T>, sp: &SecularParams<T>, s: &Snapped<T>, density: T) -> Result<Vec<T>> {
    let lo = if endpoint_flags(iv.kind, s).0 { iv.lo + T::lit(ENDPOINT_NUDGE) } else { iv.lo };
    let switch = T::lit(FACTORED_FROM);
    // Both forms differ by Γ(z)Γ(z+α-1) > 0 on the top interval.
    let f = |z: T| if z <= switch { secular_eval(z, sp) } else { factored_eval(z, sp).unwrap_or(T::nan()) };
    let zeta2 = sp.rbc.zeta * sp.rbc.zeta;
    let reach = if zeta2 > T::zero() { T::lit(TOP_UNIFORM_SPAN).max(T::lit(2.0) / zeta2) } else { T::lit(TOP_UNIFORM_SPAN) };
    let hard_cap = T::max_value().sqrt().min(T::lit(1e300));
    let mut cap = (iv.lo + reach).min(hard_cap);
    let uniform_end = iv.lo + T::lit(TOP_UNIFORM_SPAN);
    let ratio = T::one() + T::one() / density;
    let n_uniform = (density * (uniform_end - lo)).ceil().as_f64() as usize;

    let uniform = (0..=n_uniform).map(|i| lo + (uniform_end - lo) * T::from_int(i as i64) / T::from_int(n_uniform as i64));
    let mut roots = bracket_all(uniform, &f);
    let mut start = uniform_end;
    loop {
        let end = cap;
        let geometric = std::iter::successors(Some(start), |&z| (z < end).then(|| (z * ratio).min(end)));
        roots.extend(bracket_all(geometric, &f));
        if roots.len() >= iv.predicted_count as usize || cap >= hard_cap {
            break;
        }
        start = cap;
        cap = (cap * T::lit(CAP_GROWTH)).min(hard_cap);
    }
    if roots.iter().any(|z| !z.is_finite()) {
        return Err(Error::InvalidArgument("non-finite secular value on the top interval".into()));
    }
    Ok(roots)
}

/// Roots bracketed by consecutive sign changes along `grid`.
fn bracket_all<T: Scalar>(grid: impl Iterator<Item = T>, f: &impl Fn(T) -> T) -> Vec<T> {
    let mut out = Vec::new();
    let mut prev: Option<(T, T)> = None;
    for z in grid {
        let fz = f(z);
        if let Some((zp, fp)) = prev {
            if fz == T::zero() {
                out.push(z);
                prev = None;
                continue;
            }
            if (fp < T::zero()) != (fz < T::zero()) {
                out.push(refine(f, zp, fp, z, fz));
            }
        }
        prev = (fz != T::zero() && fz.is_finite()).then_some((z, fz));
    }
    out
}

/// Illinois false position on a sign-change bracket, with a bisection step
/// whenever the bracket fails to halve over two iterations.
fn refine<T: Scalar>(f: &impl Fn(T) -> T, mut a: T, mut fa: T, mut b: T, mut fb: T) -> T {
    let half = T::lit(0.5);
    let mut retained = 0i8;
    let mut width_before = (b - a).abs();
    for it in 0..400 {
        let tol = T::lit(4.0) * T::epsilon() * a.abs().max(b.abs()).max(T::one());
        if (b - a).abs() <= tol {
            break;
        }
        let bisect = it % 2 == 1 && (b - a).abs() > half * width_before;
        if it % 2 == 1 {
            width_before = (b - a).abs();
        }
        let mut c = if bisect { half * (a + b) } else { (a * fb - b * fa) / (fb - fa) };
        if !(c > a.min(b) && c < a.max(b)) {
            c = half * (a + b);
        }
        let fc = f(c);
        if fc == T::zero() {
            return c;
        }
        if (fc < T::zero()) == (fa < T::zero()) {
            a = c;
            fa = fc;
            if retained == 1 {
                fb = fb * half;
            }
            retained = 1;
        } else {
            b = c;
            fb = fc;
            if retained == -1 {
                fa = fa * half;
            }
            retained = -1;
        }
    }
    half * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma;
    use proptest::prelude::*;

    fn setup(xi: f64, eta: f64, zeta: f64) -> (SecularParams<f64>, ModelParams<f64>) {
        (SecularParams::from_parts(xi, eta, zeta, 0.3).unwrap(), ModelParams::new(0.3, 1.0).unwrap())
    }

    #[test]
    fn zero_parameters_give_lattice() {
        let (sp, p) = setup(0.0, 0.0, 0.0);
        let zs: Vec<f64> = find_roots(&sp, &p, -2.5).unwrap().iter().map(|r| r.z).collect();
        let want = [0.0, -0.3, -1.0, -1.3, -2.0, -2.3];
        assert_eq!(zs.len(), want.len(), "{zs:?}");
        for (a, b) in zs.iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn close_pair_at_family_crossing() {
        // Decoupled families cross inside ]-2.3, -2[ with roots 1.2e-4 apart.
        let (sp, p) = setup(-1.14, 0.3, 0.0);
        let zs: Vec<f64> = find_roots(&sp, &p, -2.5).unwrap().iter().map(|r| r.z).filter(|z| *z < -2.0).collect();
        let want = [-2.218505748624507, -2.218623100911506];
        assert_eq!(zs.len(), 2, "{zs:?}");
        for (a, b) in zs.iter().zip(want) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn pure_zeta_top_root() {
        let (sp, p) = setup(0.0, 0.0, 0.5);
        let roots = find_roots(&sp, &p, -1.5).unwrap();
        assert!((roots[0].z - 4.7).abs() < 1e-13, "{:?}", roots[0]);
        assert_eq!(roots[0].origin, RootOrigin::Interior);
        assert!((roots[0].lambda - p.lambda_of_z(4.7)).abs() < 1e-12);
    }

    #[test]
    fn far_top_root_is_found() {
        // F_α(z) ≈ z^{α-1} = 0.01 puts the root near z ≈ 720.
        let (sp, p) = setup(-0.01, 0.5, 0.0);
        let roots = find_roots(&sp, &p, 0.0).unwrap();
        let top = roots[0].z;
        assert!(top > 500.0 && top < 1000.0, "{top}");
        assert!(factored_eval(top, &sp).unwrap().abs() < 1e-15);
    }

    #[test]
    fn endpoint_root_at_top_edge() {
        let g = gamma(0.7).unwrap();
        let (sp, p) = setup(0.5, -g, 0.2);
        let roots = find_roots(&sp, &p, -0.5).unwrap();
        assert!(roots.iter().any(|r| r.origin == RootOrigin::Endpoint && (r.z - 0.7).abs() < 1e-15));
    }

    #[test]
    fn rejects_bad_z_min() {
        let (sp, p) = setup(0.0, 0.0, 0.0);
        assert!(find_roots(&sp, &p, 0.8).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn roots_are_zeros_and_counts_match(xi in -3.0f64..3.0, eta in -3.0f64..3.0, zeta in 0.0f64..3.0) {
            let (sp, p) = setup(xi, eta, zeta);
            let z_min = -4.0;
            let roots = find_roots(&sp, &p, z_min).unwrap();
            prop_assert!(roots.windows(2).all(|w| w[0].z > w[1].z));
            for r in &roots {
                if r.origin == RootOrigin::Interior && r.z < 2.0 {
                    let scale = secular_eval(r.z + 1e-6, &sp).abs().max(secular_eval(r.z - 1e-6, &sp).abs());
                    prop_assert!(secular_eval(r.z, &sp).abs() <= 1e-6 * scale + 1e-300);
                }
            }
            let predicted: u32 = localization_intervals(&sp, z_min)
                .iter()
                .filter(|i| i.lo >= z_min)
                .map(|i| i.predicted_count)
                .sum();
            let interior = roots
                .iter()
                .filter(|r| r.origin == RootOrigin::Interior && r.z > -4.0 + 1e-12)
                .map(|r| r.multiplicity_hint)
                .sum::<u32>();
            prop_assert!(interior >= predicted);
        }
    }
}
