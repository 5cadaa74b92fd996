//! Full spectra, critical-sector eigenvectors and eigenvalue sweeps.
//!
//! `σ(H^Λ)` is the union of the stable-sector spectrum (independent of `Λ`)
//! and the secular roots of the two critical sectors `m = -1, 0`.

use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::abmodel::{decaying_solution_complex, ModelParams, RadialPoint, SectorIndex};
use crate::error::{Error, Result};
use crate::extensions::{boundary_coeffs, rescale, unscale, BoundaryCondition, RescaledBC};
use crate::linalg::Mat2;
use crate::scalar::Scalar;
use crate::secular::{find_roots, hinf_roots, Root, RootOrigin, SecularParams};

/// Relative tolerance (in units of `B`) for merging coincident eigenvalues.
pub const MERGE_TOL: f64 = 1e-9;
/// Kernel residual bound relative to the size of the boundary matrix.
pub const KERNEL_TOL: f64 = 1e-9;

/// Boundary condition at the flux line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum BoundarySpec<T> {
    Lambda(BoundaryCondition<T>),
    Rescaled(RescaledBC<T>),
    /// `Φ₂(ψ) = 0`, outside the `Λ` chart.
    Infinity,
}

impl<T: Scalar> BoundarySpec<T> {
    pub fn rescaled(&self, p: &ModelParams<T>) -> Option<RescaledBC<T>> {
        match self {
            BoundarySpec::Lambda(bc) => Some(rescale(bc, p)),
            BoundarySpec::Rescaled(r) => Some(*r),
            BoundarySpec::Infinity => None,
        }
    }

    pub fn lambda(&self, p: &ModelParams<T>) -> Option<BoundaryCondition<T>> {
        match self {
            BoundarySpec::Lambda(bc) => Some(*bc),
            BoundarySpec::Rescaled(r) => Some(unscale(r, p)),
            BoundarySpec::Infinity => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SpectralSource {
    /// `B(2k+1)` from the sectors `m <= -2`.
    StableLandau,
    /// `B(2k+2α+1)`, `k >= 1`, from the sectors `m >= 1`.
    StableShifted,
    /// Secular root bracketed inside a localization interval.
    Critical,
    /// Secular root sitting on a lattice point.
    CriticalEndpoint,
}

impl std::fmt::Display for SpectralSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SpectralSource::StableLandau => "StableLandau",
            SpectralSource::StableShifted => "StableShifted",
            SpectralSource::Critical => "Critical",
            SpectralSource::CriticalEndpoint => "CriticalEndpoint",
        };
        f.write_str(s)
    }
}

/// One distinct eigenvalue. A stable level that coincides with a critical root
/// keeps the stable `source`, gains the root's `z`, and sums multiplicities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenvalueRecord<T> {
    pub lambda: T,
    pub z: Option<T>,
    pub sectors: Vec<SectorIndex>,
    pub multiplicity: u32,
    pub source: SpectralSource,
    /// The true multiplicity is infinite and only `m_cap` sectors were counted.
    pub truncated: bool,
}

/// Eigenvector `(μ, ν)` of the critical block, `|μ|² + |ν|² = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalEigenfunction<T> {
    pub mu: Complex<T>,
    pub nu: Complex<T>,
    pub lambda: T,
}

impl<T: Scalar> CriticalEigenfunction<T> {
    /// `ψ_λ(r, θ) = μ g_{-1}(λ; r) e^{-iθ} + ν g_0(λ; r)` with `g_m` the
    /// decaying radial solution.
    pub fn value(&self, p: &ModelParams<T>, x: RadialPoint<T>) -> Result<Complex<T>> {
        let lam = Complex::new(self.lambda, T::zero());
        let g_m1 = decaying_solution_complex(SectorIndex(-1), lam, p, x.r())?;
        let g_0 = decaying_solution_complex(SectorIndex(0), lam, p, x.r())?;
        let phase = Complex::new(x.theta().cos(), -x.theta().sin());
        Ok(self.mu * g_m1 * phase + self.nu * g_0)
    }

    /// Sectors carrying a non-negligible share of the eigenvector.
    pub fn sectors(&self) -> Vec<SectorIndex> {
        let tol = T::lit(KERNEL_TOL);
        match (self.mu.norm() > tol, self.nu.norm() > tol) {
            (true, false) => vec![SectorIndex(-1)],
            (false, true) => vec![SectorIndex(0)],
            _ => vec![SectorIndex(-1), SectorIndex(0)],
        }
    }
}

/// `A(λ) = diag(a₋₁, a₀) - Λ diag(b₋₁, b₀)` (or `diag(b₋₁, b₀)` for `H^∞`),
/// together with the scale `‖diag(a)‖ + ‖Λ‖‖diag(b)‖` residuals are measured against.
pub fn boundary_matrix<T: Scalar>(spec: &BoundarySpec<T>, lambda: T, p: &ModelParams<T>) -> (Mat2<T>, T) {
    let c = boundary_coeffs(lambda, p);
    let b = Mat2::diag_real(c.b_m1, c.b_0);
    match spec.lambda(p) {
        Some(bc) => {
            let a = Mat2::diag_real(c.a_m1, c.a_0);
            let l = bc.lambda_matrix(p.alpha());
            (a - l * b, a.frobenius() + l.frobenius() * b.frobenius())
        }
        None => (b, b.frobenius()),
    }
}

fn normalized<T: Scalar>(v: [Complex<T>; 2]) -> [Complex<T>; 2] {
    let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    [v[0] / n, v[1] / n]
}

/// Kernel of the boundary matrix at `root`: one vector from the larger
/// adjugate column, or the standard basis when `A` vanishes to tolerance and
/// the root is flagged double.
pub fn critical_eigenfunction<T: Scalar>(
    root: &Root<T>,
    spec: &BoundarySpec<T>,
    p: &ModelParams<T>,
) -> Result<Vec<CriticalEigenfunction<T>>> {
    let (a, scale) = boundary_matrix(spec, root.lambda, p);
    let tol = T::lit(KERNEL_TOL) * scale;
    let make = |v: [Complex<T>; 2]| CriticalEigenfunction { mu: v[0], nu: v[1], lambda: root.lambda };
    let one = Complex::new(T::one(), T::zero());
    let zero = Complex::new(T::zero(), T::zero());
    if root.multiplicity_hint >= 2 && a.frobenius() <= tol {
        return Ok(vec![make([one, zero]), make([zero, one])]);
    }
    let adj = a.adjugate();
    let col0 = [adj.get(0, 0), adj.get(1, 0)];
    let col1 = [adj.get(0, 1), adj.get(1, 1)];
    let norm = |v: &[Complex<T>; 2]| (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    let best = if norm(&col0) >= norm(&col1) { col0 } else { col1 };
    // A vanishing matrix has every vector in its kernel.
    let v = if norm(&best) == T::zero() { [one, zero] } else { normalized(best) };
    let av = a.mul_vec(v);
    let residual = (av[0].norm_sqr() + av[1].norm_sqr()).sqrt();
    if !(residual <= tol) {
        return Err(Error::NotARoot { lambda: root.lambda.as_f64(), residual: (residual / scale).as_f64() });
    }
    Ok(vec![make(v)])
}

/// `B(2k+1)` for `k >= 0` and `B(2k+2α+1)` for `k >= 1`, up to `lambda_max`.
pub fn stable_levels<T: Scalar>(p: &ModelParams<T>, lambda_max: T) -> Vec<(T, SpectralSource, u32)> {
    let b = p.b();
    let mut out = Vec::new();
    for k in 0u32.. {
        let landau = b * T::from_int(2 * k as i64 + 1);
        if landau > lambda_max {
            break;
        }
        out.push((landau, SpectralSource::StableLandau, k));
        let shifted = landau + T::lit(2.0) * b * p.alpha();
        if k >= 1 && shifted <= lambda_max {
            out.push((shifted, SpectralSource::StableShifted, k));
        }
    }
    out
}

fn sectors_of_root<T: Scalar>(root: &Root<T>, spec: &BoundarySpec<T>, p: &ModelParams<T>) -> Vec<SectorIndex> {
    match critical_eigenfunction(root, spec, p) {
        Ok(efs) if efs.len() == 1 => efs[0].sectors(),
        _ => vec![SectorIndex(-1), SectorIndex(0)],
    }
}

/// All eigenvalues `λ <= lambda_max`, ascending.
///
/// Landau levels count the stable sectors `m = -2, ..., -(m_cap+1)` and are
/// flagged `truncated`; the level `B(2k+2α+1)` has the `k` stable states
/// `(m, n)` with `m >= 1`, `m + n = k`.
pub fn full_spectrum<T: Scalar>(
    spec: &BoundarySpec<T>,
    p: &ModelParams<T>,
    lambda_max: T,
    m_cap: u32,
) -> Result<Vec<EigenvalueRecord<T>>> {
    if !(lambda_max > p.b()) || m_cap < 1 {
        return Err(Error::InvalidArgument("full_spectrum needs lambda_max > B and m_cap >= 1".into()));
    }
    let z_min = p.z_of_lambda(lambda_max);
    let roots = match spec.rescaled(p) {
        Some(rbc) => find_roots(&SecularParams::new(rbc, p.alpha())?, p, z_min)?,
        None => hinf_roots(p, z_min),
    };

    let mut records: Vec<EigenvalueRecord<T>> = stable_levels(p, lambda_max)
        .into_iter()
        .map(|(lambda, source, k)| match source {
            SpectralSource::StableLandau => EigenvalueRecord {
                lambda,
                z: None,
                sectors: (2..=m_cap as i64 + 1).map(|m| SectorIndex(-m)).collect(),
                multiplicity: m_cap,
                source,
                truncated: true,
            },
            _ => EigenvalueRecord {
                lambda,
                z: None,
                sectors: (1..=k as i64).map(SectorIndex).collect(),
                multiplicity: k,
                source,
                truncated: false,
            },
        })
        .collect();

    let tol = T::lit(MERGE_TOL) * p.b();
    for root in &roots {
        let sectors = sectors_of_root(root, spec, p);
        match records.iter_mut().find(|r| (r.lambda - root.lambda).abs() <= tol) {
            Some(rec) => {
                rec.z = Some(root.z);
                rec.multiplicity += root.multiplicity_hint;
                rec.sectors.extend(sectors);
                rec.sectors.sort();
                rec.sectors.dedup();
            }
            None => records.push(EigenvalueRecord {
                lambda: root.lambda,
                z: Some(root.z),
                sectors,
                multiplicity: root.multiplicity_hint,
                source: match root.origin {
                    RootOrigin::Interior => SpectralSource::Critical,
                    RootOrigin::Endpoint => SpectralSource::CriticalEndpoint,
                },
                truncated: false,
            }),
        }
    }
    records.sort_by(|a, b| a.lambda.partial_cmp(&b.lambda).expect("finite eigenvalues"));
    Ok(records)
}

/// One eigenvalue branch of a sweep; `lambda[i]` belongs to `t_values[i]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Branch<T> {
    pub id: usize,
    pub lambda: Vec<Option<T>>,
}

/// A parameter point where root finding failed, and why.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepFailure<T> {
    pub t: T,
    pub message: String,
}

/// Critical eigenvalues along the line `t ↦ (ξ̂t, η̂t, |ζ̂t|)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable<T> {
    pub t_values: Vec<T>,
    pub branches: Vec<Branch<T>>,
    pub direction: (T, T, T),
    pub lambda_window: (T, T),
    /// Stable levels inside the window, drawn as reference lines.
    pub stable_levels: Vec<T>,
    /// Per-t eigenvalues before linking, ascending.
    pub raw: Vec<Vec<T>>,
    pub failures: Vec<SweepFailure<T>>,
}

/// Sweeps the critical spectrum along a line through the origin of the
/// rescaled parameter space. `ζ` enters only squared, so `ζ = |ζ̂t|`.
pub fn sweep<T: Scalar>(
    direction: (T, T, T),
    t_range: (T, T, usize),
    p: &ModelParams<T>,
    lambda_window: (T, T),
) -> Result<SweepTable<T>> {
    let (t_lo, t_hi, n) = t_range;
    if n < 2 || !(t_hi > t_lo) || !(lambda_window.1 > lambda_window.0) {
        return Err(Error::InvalidArgument("sweep needs n_steps >= 2, t_lo < t_hi and a non-empty window".into()));
    }
    let last = T::from_int(n as i64 - 1);
    let t_values: Vec<T> = (0..n).map(|i| t_lo + (t_hi - t_lo) * T::from_int(i as i64) / last).collect();
    let z_min = p.z_of_lambda(lambda_window.1);
    let per_t: Vec<Result<Vec<T>>> = t_values
        .par_iter()
        .map(|&t| {
            let (dx, dy, dz) = direction;
            let sp = SecularParams::from_parts(dx * t, dy * t, (dz * t).abs(), p.alpha())?;
            let mut lams: Vec<T> = find_roots(&sp, p, z_min)?
                .into_iter()
                .flat_map(|r| std::iter::repeat_n(r.lambda, r.multiplicity_hint as usize))
                .filter(|&l| l >= lambda_window.0 && l <= lambda_window.1)
                .collect();
            lams.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
            Ok(lams)
        })
        .collect();

    let mut failures = Vec::new();
    let raw: Vec<Vec<T>> = per_t
        .into_iter()
        .zip(&t_values)
        .map(|(r, &t)| {
            r.unwrap_or_else(|e| {
                failures.push(SweepFailure { t, message: e.to_string() });
                Vec::new()
            })
        })
        .collect();
    let branches = link_branches(&t_values, &raw, p.b() * T::lit(2.0) * p.alpha().min(T::one() - p.alpha()));
    let stable_levels =
        stable_levels(p, lambda_window.1).into_iter().map(|(l, _, _)| l).filter(|&l| l >= lambda_window.0).collect();
    Ok(SweepTable { t_values, branches, direction, lambda_window, stable_levels, raw, failures })
}

/// Greedy nearest-neighbour linking against a linear extrapolation of each
/// open branch. A branch not continued at step `i` is closed; an unmatched
/// eigenvalue opens a new branch. `gate` is the largest jump accepted on top
/// of ten times the extrapolated change.
fn link_branches<T: Scalar>(t: &[T], raw: &[Vec<T>], gate: T) -> Vec<Branch<T>> {
    let n = t.len();
    let mut branches: Vec<Branch<T>> = Vec::new();
    let mut open: Vec<usize> = Vec::new();
    for (i, lams) in raw.iter().enumerate() {
        let predict = |b: &Branch<T>| -> (T, T) {
            let l1 = b.lambda[i - 1].expect("open branches are defined at the previous step");
            match (i >= 2).then(|| b.lambda[i - 2]).flatten() {
                Some(l0) => {
                    let slope = (l1 - l0) / (t[i - 1] - t[i - 2]);
                    let step = slope * (t[i] - t[i - 1]);
                    (l1 + step, step.abs())
                }
                None => (l1, T::zero()),
            }
        };
        let mut pairs: Vec<(T, usize, usize)> = Vec::new();
        for (bi, &b) in open.iter().enumerate() {
            let (pred, step) = predict(&branches[b]);
            let reach = gate + T::lit(10.0) * step;
            for (li, &l) in lams.iter().enumerate() {
                let d = (l - pred).abs();
                if d <= reach {
                    pairs.push((d, bi, li));
                }
            }
        }
        pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite distances").then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        let mut branch_taken = vec![false; open.len()];
        let mut lam_taken = vec![false; lams.len()];
        let mut next_open = Vec::new();
        for (_, bi, li) in pairs {
            if branch_taken[bi] || lam_taken[li] {
                continue;
            }
            branch_taken[bi] = true;
            lam_taken[li] = true;
            branches[open[bi]].lambda[i] = Some(lams[li]);
            next_open.push(open[bi]);
        }
        for (li, &l) in lams.iter().enumerate() {
            if !lam_taken[li] {
                let id = branches.len();
                let mut lambda = vec![None; n];
                lambda[i] = Some(l);
                branches.push(Branch { id, lambda });
                next_open.push(id);
            }
        }
        next_open.sort_unstable();
        open = next_open;
    }
    branches
}
