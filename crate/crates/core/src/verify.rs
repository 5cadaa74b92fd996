//! Self-check suites: each check reports a measured quantity and the range it
//! must fall in. The command-line tool exits non-zero when any check fails.

use std::str::FromStr;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::abmodel::{ab_eigenvalue, green_closed, green_series, ModelParams, SectorIndex};
use crate::error::{Error, Result};
use crate::extensions::{
    ab_unitary, deficiency_coeffs, j_identity_residual, lambda_from_unitary, norm_constants, norm_quadrature,
    unitary_from_lambda, BoundaryCondition, ExtensionUnitary, RescaledBC,
};
use crate::quad::integrate;
use crate::secular::{
    factored_eval, find_roots, hinf_roots, interval_root_count, localization_intervals, secular_eval, series_root, snap,
    IntervalKind, SecularParams, SeriesBranch, Snapped,
};
use crate::specfun::{digamma, gamma, kummer_f, ln_gamma, rgamma, sin_pi, tricomi_g};
use crate::spectrum::{full_spectrum, BoundarySpec};

/// Lowest `z` reached by the table checks.
pub const TABLE_Z_MIN: f64 = -10.5;
/// Terms in the Laguerre-sum side of the Green identity.
pub const GREEN_TERMS: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Suite {
    Tables,
    Series,
    Green,
    Unitary,
    Digamma,
    Gaps,
    Specfun,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] =
        [Suite::Tables, Suite::Series, Suite::Green, Suite::Unitary, Suite::Digamma, Suite::Gaps, Suite::Specfun];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Tables => "tables",
            Suite::Series => "series",
            Suite::Green => "green",
            Suite::Unitary => "unitary",
            Suite::Digamma => "digamma",
            Suite::Gaps => "gaps",
            Suite::Specfun => "specfun",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        std::iter::once(Suite::All)
            .chain(Suite::EACH)
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown verify suite '{s}'")))
    }
}

/// One measured quantity with its admissible range `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub measured: f64,
    pub lo: f64,
    pub hi: f64,
    pub passed: bool,
}

impl Check {
    fn within(suite: Suite, name: impl Into<String>, measured: f64, lo: f64, hi: f64) -> Self {
        let passed = measured >= lo && measured <= hi;
        Self { suite: suite.name(), name: name.into(), measured, lo, hi, passed }
    }

    fn at_most(suite: Suite, name: impl Into<String>, measured: f64, tol: f64) -> Self {
        Self::within(suite, name, measured, f64::NEG_INFINITY, tol)
    }

    fn failed(suite: Suite, name: impl Into<String>, err: &Error) -> Self {
        Self::at_most(suite, format!("{} ({err})", name.into()), f64::NAN, 0.0)
    }
}

/// Runs `suite` (or every suite) for the flux `p.alpha()` and field `p.b()`.
pub fn run(suite: Suite, p: &ModelParams<f64>) -> Vec<Check> {
    match suite {
        Suite::All => Suite::EACH.iter().flat_map(|&s| run(s, p)).collect(),
        Suite::Tables => tables(p),
        Suite::Series => series(p),
        Suite::Green => green(p),
        Suite::Unitary => unitary(p),
        Suite::Digamma => digamma_identity(),
        Suite::Gaps => gaps(p, 100, 15.0),
        Suite::Specfun => specfun(),
    }
}

/// Parameter grid whose points hit every row of every table at least three times.
pub fn table_grid(alpha: f64) -> Vec<(f64, f64, f64)> {
    let g = gamma(1.0 - alpha).expect("1-alpha in ]0,1[");
    let xis = [-2.5, -1.1, -0.3, 0.0, 0.4, 1.7];
    let etas = [-2.5 * g, -1.3 * g, -g, -0.9 * g, -0.5 * g, -0.2 * g, 0.0, 0.35, 1.4];
    let zetas = [0.0, 0.3, 0.8, 1.5, 2.6];
    let mut out = Vec::new();
    for &xi in &xis {
        for &eta in &etas {
            for &zeta in &zetas {
                out.push((xi, eta, zeta));
            }
        }
    }
    out
}

/// Row of the table for `kind` that the snapped parameters fall in, numbered
/// from 0 in the order the rows are listed.
pub fn table_row(kind: IntervalKind, s: &Snapped<f64>) -> usize {
    let (xi, eta, disc, g) = (s.xi, s.eta, s.disc, s.g);
    match kind {
        IntervalKind::TopInterval => match (xi >= 0.0, eta) {
            (true, e) if e >= 0.0 => usize::from(disc <= 0.0),
            (true, e) if e > -g => 2,
            (true, _) => 3,
            (false, e) if e >= 0.0 => 4,
            (false, e) if e > -g => 5 + usize::from(disc < 0.0),
            (false, _) => 7 + usize::from(disc < 0.0),
        },
        IntervalKind::UpperGap(0) => 2 * usize::from(xi > 0.0) + usize::from(eta < -g),
        IntervalKind::UpperGap(_) | IntervalKind::LowerGapB(_) => 2 * usize::from(xi > 0.0) + usize::from(eta < 0.0),
        IntervalKind::LowerGapA(_) => 2 * usize::from(xi < 0.0) + usize::from(eta > 0.0),
    }
}

fn table_index(kind: IntervalKind) -> usize {
    match kind {
        IntervalKind::TopInterval => 0,
        IntervalKind::UpperGap(0) => 1,
        IntervalKind::LowerGapA(_) => 2,
        IntervalKind::UpperGap(_) | IntervalKind::LowerGapB(_) => 3,
    }
}

const TABLE_NAMES: [&str; 4] = ["]1-a,inf[", "]0,1-a[", "]-a-m,-m[", "]-1-m,-a-m["];
const TABLE_ROWS: [usize; 4] = [9, 4, 4, 4];

/// Sign changes of the secular function strictly inside `(lo, hi)`, by a dense
/// scan independent of the root finder. The top interval is scanned on a
/// logarithmic grid out to `lo + 1e12` with the factored form.
pub fn brute_force_count(sp: &SecularParams<f64>, lo: f64, hi: f64) -> usize {
    let signs: Vec<bool> = if hi.is_infinite() {
        (0..=3000)
            .map(|i| lo + 10f64.powf(-9.0 + 21.0 * i as f64 / 3000.0))
            .map(|z| if z <= 2.0 { secular_eval(z, sp) } else { factored_eval(z, sp).unwrap_or(f64::NAN) })
            .filter(|v| *v != 0.0 && v.is_finite())
            .map(|v| v > 0.0)
            .collect()
    } else {
        let edge = (hi - lo) * 1e-9;
        (0..=1000)
            .map(|i| lo + edge + (hi - lo - 2.0 * edge) * i as f64 / 1000.0)
            .map(|z| secular_eval(z, sp))
            .filter(|v| *v != 0.0)
            .map(|v| v > 0.0)
            .collect()
    };
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Per-sample outcome of the table checks.
struct TableSample {
    rows: Vec<(usize, usize)>,
    mismatched: Vec<usize>,
    endpoint_errors: usize,
}

fn table_sample(a: f64, (xi, eta, zeta): (f64, f64, f64)) -> TableSample {
    let sp = SecularParams::from_parts(xi, eta, zeta, a).expect("grid parameters are admissible");
    let s = snap(&sp);
    let mut out = TableSample { rows: Vec::new(), mismatched: Vec::new(), endpoint_errors: 0 };
    for iv in localization_intervals(&sp, TABLE_Z_MIN).iter().filter(|iv| iv.lo >= TABLE_Z_MIN) {
        let t = table_index(iv.kind);
        out.rows.push((t, table_row(iv.kind, &s)));
        if brute_force_count(&sp, iv.lo, iv.hi) != interval_root_count(iv.kind, &sp) as usize {
            out.mismatched.push(t);
        }
    }
    let mut lattice = vec![(1.0 - a, s.eta == -s.g)];
    for m in 0..=10 {
        lattice.push((-(m as f64), s.xi == 0.0));
        lattice.push((-a - m as f64, s.eta == 0.0));
    }
    for (z, is_root) in lattice {
        let scale = rgamma(z).abs() + rgamma(z + a).abs() + rgamma(z + a - 1.0).abs();
        let vanishes = secular_eval(z, &sp).abs() <= 1e-12 * scale * scale * (1.0 + xi.abs() + eta.abs() + zeta * zeta);
        out.endpoint_errors += usize::from(vanishes != is_root);
    }
    out
}

fn tables(p: &ModelParams<f64>) -> Vec<Check> {
    let a = p.alpha();
    let samples: Vec<TableSample> = table_grid(a).into_par_iter().map(|x| table_sample(a, x)).collect();
    let mut mismatches = [0usize; 4];
    let mut rows: Vec<Vec<usize>> = TABLE_ROWS.iter().map(|&n| vec![0; n]).collect();
    let mut endpoint_errors = 0usize;
    for s in &samples {
        for &(t, r) in &s.rows {
            rows[t][r] += 1;
        }
        for &t in &s.mismatched {
            mismatches[t] += 1;
        }
        endpoint_errors += s.endpoint_errors;
    }
    let mut out: Vec<Check> = (0..4)
        .flat_map(|t| {
            let min_row = *rows[t].iter().min().expect("tables have rows");
            [
                Check::at_most(Suite::Tables, format!("table {} count mismatches", TABLE_NAMES[t]), mismatches[t] as f64, 0.0),
                Check::within(
                    Suite::Tables,
                    format!("table {} fewest samples in a row", TABLE_NAMES[t]),
                    min_row as f64,
                    3.0,
                    f64::INFINITY,
                ),
            ]
        })
        .collect();
    out.push(Check::at_most(Suite::Tables, "endpoint-root rule violations", endpoint_errors as f64, 0.0));
    out
}

/// Distance from the series value to the nearest root found by bracketing.
pub fn series_error(branch: SeriesBranch, m: u32, scale: f64, p: &ModelParams<f64>) -> Result<f64> {
    let sp = SecularParams::from_parts(scale, scale, scale, p.alpha())?;
    let z = series_root(branch, m, &sp)?;
    let roots = find_roots(&sp, p, -(m as f64) - 2.0)?;
    Ok(roots.iter().map(|r| (r.z - z).abs()).fold(f64::INFINITY, f64::min))
}

fn series(p: &ModelParams<f64>) -> Vec<Check> {
    let mut out = Vec::new();
    for branch in [SeriesBranch::FromMinusM, SeriesBranch::FromMinusAlphaM] {
        for m in 0..=2 {
            let name = format!("{branch:?} m={m} error ratio s=0.02/0.01");
            match (series_error(branch, m, 0.02, p), series_error(branch, m, 0.01, p)) {
                (Ok(e1), Ok(e2)) => out.push(Check::within(Suite::Series, name, e1 / e2, 16.0, 64.0)),
                (Err(e), _) | (_, Err(e)) => out.push(Check::failed(Suite::Series, name, &e)),
            }
        }
    }
    out
}

/// Radius pairs and offsets below the sector minimum used by the Green identity.
pub const GREEN_SAMPLES: [(f64, f64, f64); 5] =
    [(0.5, 1.5, 0.7), (1.0, 1.0, 0.3), (0.8, 2.0, 1.5), (1.2, 0.6, 2.5), (2.0, 2.5, 0.9)];

/// Relative difference between the `n_terms` Laguerre sum and the closed form.
pub fn green_error(m: SectorIndex, sample: (f64, f64, f64), n_terms: usize, p: &ModelParams<f64>) -> Result<f64> {
    let (r1, r2, below) = sample;
    let z = Complex::new(ab_eigenvalue(m, 0, p) - below, 0.0);
    let closed = green_closed(m, z, r1, r2, p)?;
    let sum = green_series(m, z, r1, r2, p, n_terms)?;
    Ok((sum - closed).norm() / closed.norm())
}

fn green(p: &ModelParams<f64>) -> Vec<Check> {
    let mut out = Vec::new();
    for m in [-1, 0, 1] {
        for (k, &sample) in GREEN_SAMPLES.iter().enumerate() {
            let name = format!("m={m} point {k} Laguerre sum ({GREEN_TERMS} terms) vs closed form");
            out.push(match green_error(SectorIndex(m), sample, GREEN_TERMS, p) {
                Ok(e) => Check::at_most(Suite::Green, name, e, 1e-6),
                Err(e) => Check::failed(Suite::Green, name, &e),
            });
        }
    }
    out
}

fn unitary(p: &ModelParams<f64>) -> Vec<Check> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    let mut failures = 0usize;
    for _ in 0..50 {
        let u = ExtensionUnitary::random(&mut rng);
        match lambda_from_unitary(&u, p).and_then(|bc| unitary_from_lambda(&bc, p)) {
            Ok(back) => worst = worst.max((*back.matrix() - *u.matrix()).frobenius()),
            Err(_) => failures += 1,
        }
    }
    out.push(Check::at_most(Suite::Unitary, "50 random unitaries: U -> Lambda -> U", worst, 1e-9));
    out.push(Check::at_most(Suite::Unitary, "random unitaries outside the Lambda chart", failures as f64, 0.0));
    out.push(match unitary_from_lambda(&BoundaryCondition::zero(), p) {
        Ok(u) => Check::at_most(
            Suite::Unitary,
            "Lambda = 0 gives the standard unitary",
            (*u.matrix() - *ab_unitary(p).matrix()).frobenius(),
            1e-10,
        ),
        Err(e) => Check::failed(Suite::Unitary, "Lambda = 0 gives the standard unitary", &e),
    });
    out.push(match j_identity_residual(p) {
        Ok(r) => Check::at_most(Suite::Unitary, "J* [[0,D],[-D,0]] J = i diag(I,-I)", r, 1e-10),
        Err(e) => Check::failed(Suite::Unitary, "J identity", &e),
    });
    match norm_constants(p) {
        Ok((n_m1, n_0)) => {
            let d = deficiency_coeffs(p);
            let a = p.alpha();
            let want_m1 = Complex::new(0.0, -1.0 / ((1.0 - a) * n_m1 * n_m1));
            let want_0 = Complex::new(0.0, -1.0 / (a * n_0 * n_0));
            out.push(Check::at_most(Suite::Unitary, "det M_-1 relation", (d.det_m1 - want_m1).norm() / want_m1.norm(), 1e-10));
            out.push(Check::at_most(Suite::Unitary, "det M_0 relation", (d.det_0 - want_0).norm() / want_0.norm(), 1e-10));
            for (m, n) in [(-1, n_m1), (0, n_0)] {
                let name = format!("N_{m} against quadrature");
                out.push(match norm_quadrature(SectorIndex(m), p) {
                    Ok(q) => Check::at_most(Suite::Unitary, name, (q * n * n - 1.0).abs(), 1e-6),
                    Err(e) => Check::failed(Suite::Unitary, name, &e),
                });
            }
        }
        Err(e) => out.push(Check::failed(Suite::Unitary, "normalization constants", &e)),
    }
    out
}

/// `ψ(z-1+α) - ψ(z) - π sin(πα)/(sin(πz) sin(π(z+α)))` minus the integral
/// `∫₀^∞ e^{-(1-z)t}(1-e^{-(1-α)t})/(1-e^{-t}) dt`, relative to `|ψ(z-1+α) - ψ(z)|`.
pub fn digamma_identity_error(alpha: f64, z: f64) -> Result<f64> {
    let lhs = digamma(z - 1.0 + alpha)? - digamma(z)?;
    let pole = std::f64::consts::PI * sin_pi(alpha) / (sin_pi(z) * sin_pi(z + alpha));
    let t_max = 14.0 * std::f64::consts::LN_10 / (1.0 - z);
    let integrand = |t: f64| {
        if t == 0.0 {
            return 1.0 - alpha;
        }
        (-(1.0 - z) * t).exp() * (-(-(1.0 - alpha) * t).exp_m1()) / (-(-t).exp_m1())
    };
    let q = integrate(integrand, 0.0, t_max, 1e-14, 1e-13, 500);
    Ok((lhs - pole - q.value).abs() / lhs.abs().max(1.0))
}

fn digamma_identity() -> Vec<Check> {
    let mut out = Vec::new();
    let mut worst = 0.0f64;
    let mut count = 0;
    for alpha in [0.1, 0.3, 0.5, 0.7, 0.9] {
        for z in [0.95, 0.62, 0.3, -0.45, -1.35, -2.8, -4.15] {
            let near_int = |x: f64| (x - x.round()).abs() < 1e-3;
            if near_int(z) || near_int(z + alpha) {
                continue;
            }
            match digamma_identity_error(alpha, z) {
                Ok(e) => {
                    worst = worst.max(e);
                    count += 1;
                }
                Err(e) => out.push(Check::failed(Suite::Digamma, format!("alpha={alpha} z={z}"), &e)),
            }
        }
    }
    out.push(Check::at_most(Suite::Digamma, format!("difference identity by quadrature ({count} points)"), worst, 1e-8));
    let recur = [-0.7, 0.3, 2.5, 13.1]
        .iter()
        .map(|&x| (digamma(x + 1.0).unwrap_or(f64::NAN) - digamma(x).unwrap_or(f64::NAN) - 1.0 / x).abs())
        .fold(0.0, f64::max);
    out.push(Check::at_most(Suite::Digamma, "psi(x+1) = psi(x) + 1/x", recur, 1e-12));
    out
}

/// Largest number of critical eigenvalues (with multiplicity) found in one open
/// gap of the `H^∞` spectrum, over `samples` seeded random `(ξ, η, ζ) ∈ [-5,5]³`
/// (`ζ` taken as `|ζ|`) and `λ <= lambda_max_b · B`.
pub fn gap_occupancy(p: &ModelParams<f64>, samples: usize, lambda_max_b: f64) -> Result<u32> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let lambda_max = lambda_max_b * p.b();
    let z_min = p.z_of_lambda(lambda_max);
    let hinf: Vec<f64> = hinf_roots(p, z_min).iter().map(|r| r.lambda).collect();
    let mut worst = 0;
    for _ in 0..samples {
        let (xi, eta, zeta): (f64, f64, f64) = (rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let sp = SecularParams::new(RescaledBC::new(xi, eta, zeta.abs())?, p.alpha())?;
        let roots = find_roots(&sp, p, z_min)?;
        // Below the lowest H^∞ level the gap is ]-∞, λ₀[.
        let edges: Vec<f64> = std::iter::once(f64::NEG_INFINITY).chain(hinf.iter().copied()).collect();
        for w in edges.windows(2) {
            let inside: u32 = roots.iter().filter(|r| r.lambda > w[0] && r.lambda < w[1]).map(|r| r.multiplicity_hint).sum();
            worst = worst.max(inside);
        }
    }
    Ok(worst)
}

fn gaps(p: &ModelParams<f64>, samples: usize, lambda_max_b: f64) -> Vec<Check> {
    let name = format!("most critical eigenvalues in one H^inf gap ({samples} samples, lambda <= {lambda_max_b}B)");
    let mut out = vec![match gap_occupancy(p, samples, lambda_max_b) {
        Ok(w) => Check::within(Suite::Gaps, name, w as f64, 0.0, 2.0),
        Err(e) => Check::failed(Suite::Gaps, name, &e),
    }];
    let name = "Lambda = 0 spectrum is finite with critical multiplicities <= 2";
    out.push(match full_spectrum(&BoundarySpec::Lambda(BoundaryCondition::zero()), p, 15.0 * p.b(), 1) {
        Ok(recs) => {
            let worst = recs.iter().filter(|r| r.z.is_some()).map(|r| r.multiplicity - r.sectors.len() as u32 + 1).max();
            Check::within(Suite::Gaps, name, worst.unwrap_or(0) as f64, 0.0, 2.0)
        }
        Err(e) => Check::failed(Suite::Gaps, name, &e),
    });
    out
}

fn specfun() -> Vec<Check> {
    let mut out = Vec::new();
    let worst_recurrence = (0..=590)
        .map(|i| 0.5 + 0.05 * i as f64)
        .map(|x| {
            let g = gamma(x).unwrap_or(f64::NAN);
            ((gamma(x + 1.0).unwrap_or(f64::NAN) - x * g) / (x * g)).abs()
        })
        .fold(0.0, f64::max);
    out.push(Check::at_most(Suite::Specfun, "Gamma(x+1) = x Gamma(x) on [0.5, 30]", worst_recurrence, 1e-13));
    let sign_consistency = (0..=590)
        .map(|i| 0.5 + 0.05 * i as f64)
        .map(|x| {
            let l = ln_gamma(x).map(|l| l.value()).unwrap_or(f64::NAN);
            ((l - gamma(x).unwrap_or(f64::NAN)) / l).abs()
        })
        .fold(0.0, f64::max);
    out.push(Check::at_most(Suite::Specfun, "sign exp(log|Gamma|) = Gamma on [0.5, 30]", sign_consistency, 1e-13));
    let worst_reflection = (0..2000)
        .map(|i| -10.0 + 0.01 * i as f64 + 0.005)
        .filter(|x| (x - x.round()).abs() > 1e-3)
        .map(|x| {
            let want = sin_pi(x) / std::f64::consts::PI;
            ((rgamma(x) * rgamma(1.0 - x) - want) / want).abs()
        })
        .fold(0.0, f64::max);
    out.push(Check::at_most(Suite::Specfun, "1/Gamma(x) 1/Gamma(1-x) = sin(pi x)/pi on (-10, 10)", worst_reflection, 1e-12));
    let worst_exp = (0..=40)
        .flat_map(|i| [0.3, 1.7, 4.0].map(|g| (g, 0.5 * i as f64)))
        .map(|(g, z)| kummer_f(g, g, z).map(|f| (f / z.exp() - 1.0).abs()).unwrap_or(f64::NAN))
        .fold(0.0, f64::max);
    out.push(Check::at_most(Suite::Specfun, "F(c, c, z) = e^z on [0, 20]", worst_exp, 1e-12));

    // Small-z behaviour: z^{c-1} G(b, c, z) = Γ(c-1)/Γ(b) + Γ(1-c)/Γ(b-c+1) z^{c-1} + O(z).
    let (b, c) = (0.8, 1.3);
    let lead = gamma(c - 1.0).unwrap_or(f64::NAN) / gamma(b).unwrap_or(f64::NAN);
    let second = gamma(1.0 - c).unwrap_or(f64::NAN) * rgamma(b - c + 1.0);
    let mut worst_two_term = 0.0f64;
    let mut leading_devs = Vec::new();
    for z in [1e-4f64, 1e-5, 1e-6] {
        let scaled = z.powf(c - 1.0) * tricomi_g(b, c, z).unwrap_or(f64::NAN);
        leading_devs.push(((scaled - lead) / lead).abs());
        worst_two_term = worst_two_term.max(((scaled - lead - second * z.powf(c - 1.0)) / lead).abs());
    }
    out.push(Check::at_most(
        Suite::Specfun,
        "z^(c-1) G(0.8, 1.3, z) two-term small-z form, z in [1e-6, 1e-4]",
        worst_two_term,
        1e-4,
    ));
    let decreasing = leading_devs.windows(2).all(|w| w[1] < w[0]);
    out.push(Check::within(
        Suite::Specfun,
        "z^(c-1) G(0.8, 1.3, z) approaches Gamma(c-1)/Gamma(b) as z decreases",
        f64::from(u8::from(decreasing)),
        1.0,
        1.0,
    ));
    let large = tricomi_g(0.6, 1.3, 100.0).map(|g| (g * 100f64.powf(0.6) - 1.0).abs()).unwrap_or(f64::NAN);
    out.push(Check::at_most(Suite::Specfun, "G(0.6, 1.3, 100) = 100^-0.6 (1 + O(1/z))", large, 0.02));
    let ratios: Vec<f64> = [0.4, 1.1, 3.7]
        .iter()
        .map(|&z| tricomi_g(-1.0, 1.3, z).unwrap_or(f64::NAN) / kummer_f(-1.0, 1.3, z).unwrap_or(f64::NAN))
        .collect();
    let spread = ratios.iter().map(|r| ((r - ratios[0]) / ratios[0]).abs()).fold(0.0, f64::max);
    out.push(Check::at_most(Suite::Specfun, "G(-1, 1.3, z) / F(-1, 1.3, z) constant in z", spread, 1e-12));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> ModelParams<f64> {
        ModelParams::new(0.3, 1.0).unwrap()
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.iter().chain([&Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), *s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn table_rows_cover_grid() {
        let mut seen = [[false; 9]; 4];
        let sp = |x: (f64, f64, f64)| SecularParams::from_parts(x.0, x.1, x.2, 0.3).unwrap();
        for x in table_grid(0.3) {
            let s = snap(&sp(x));
            for kind in
                [IntervalKind::TopInterval, IntervalKind::UpperGap(0), IntervalKind::LowerGapA(1), IntervalKind::LowerGapB(1)]
            {
                seen[table_index(kind)][table_row(kind, &s)] = true;
            }
        }
        for (t, &n) in TABLE_ROWS.iter().enumerate() {
            assert!(seen[t][..n].iter().all(|&b| b), "table {t}");
        }
    }

    #[test]
    fn brute_force_sees_pure_zeta_root() {
        let sp = SecularParams::from_parts(0.0, 0.0, 0.5, 0.3).unwrap();
        assert_eq!(brute_force_count(&sp, 0.7, f64::INFINITY), 1);
        assert_eq!(brute_force_count(&sp, -0.3, 0.0), 0);
    }

    #[test]
    fn fast_suites_pass() {
        for suite in [Suite::Digamma, Suite::Specfun] {
            for c in run(suite, &p()) {
                assert!(c.passed, "{c:?}");
            }
        }
    }

    #[test]
    fn gap_suite_passes_on_small_sample() {
        assert!(gap_occupancy(&p(), 10, 9.0).unwrap() <= 2);
    }
}
