//! The secular equation of the two critical sectors.
//!
//! In the variable `z = 1/2 - lambda/(2B)` the eigenvalue condition reads
//!
//! ```text
//! 1/(Γ(z)Γ(z+α)) + ξ/(Γ(z+α-1)Γ(z+α)) + η/Γ(z)² + (ξη-ζ²)/(Γ(z)Γ(z+α-1)) = 0
//! ```
//!
//! which is entire in `z`. Away from the lattice `-ℤ₊ ∪ (1-α-ℤ₊)` it factors as
//! `(F_α(z)+ξ)(F_{1-α}(z+α)+η) = ζ²` with `F_α(z) = Γ(z-1+α)/Γ(z)`.

mod roots;
mod series;
mod tables;

use serde::Serialize;

use crate::abmodel::ModelParams;
use crate::error::{Error, Result};
use crate::extensions::RescaledBC;
use crate::scalar::Scalar;
use crate::specfun::{ln_gamma_ratio, rgamma};

pub use roots::{find_roots, MERGE_DISTANCE};
pub use series::{h0, h1, h2, series_root, SeriesBranch};
pub use tables::{interval_root_count, localization_intervals, snap, Snapped, SNAP_TOL};

/// Rescaled boundary parameters together with the flux fraction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SecularParams<T> {
    pub rbc: RescaledBC<T>,
    alpha: T,
}

impl<T: Scalar> SecularParams<T> {
    pub fn new(rbc: RescaledBC<T>, alpha: T) -> Result<Self> {
        if !(alpha > T::zero() && alpha < T::one()) {
            return Err(Error::InvalidArgument(format!("alpha = {} must lie in ]0,1[", alpha.as_f64())));
        }
        Ok(Self { rbc, alpha })
    }

    /// Shorthand for `SecularParams::new(RescaledBC::new(xi, eta, zeta)?, alpha)`.
    pub fn from_parts(xi: T, eta: T, zeta: T, alpha: T) -> Result<Self> {
        Self::new(RescaledBC::new(xi, eta, zeta)?, alpha)
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }
}

/// Localization interval of the table-driven root count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum IntervalKind {
    /// `]1-α, ∞[`
    TopInterval,
    /// `]-m, 1-α-m[`
    UpperGap(u32),
    /// `]-α-m, -m[`
    LowerGapA(u32),
    /// `]-1-m, -α-m[`
    LowerGapB(u32),
}

impl IntervalKind {
    /// `(lo, hi)`; `hi` is `+∞` for the top interval.
    pub fn bounds<T: Scalar>(self, alpha: T) -> (T, T) {
        let m = |k: u32| T::from_int(k as i64);
        match self {
            IntervalKind::TopInterval => (T::one() - alpha, T::infinity()),
            IntervalKind::UpperGap(k) => (-m(k), T::one() - alpha - m(k)),
            IntervalKind::LowerGapA(k) => (-alpha - m(k), -m(k)),
            IntervalKind::LowerGapB(k) => (-T::one() - m(k), -alpha - m(k)),
        }
    }
}

impl std::fmt::Display for IntervalKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IntervalKind::TopInterval => write!(f, "]1-a, inf["),
            IntervalKind::UpperGap(m) => write!(f, "]-{m}, 1-a-{m}["),
            IntervalKind::LowerGapA(m) => write!(f, "]-a-{m}, -{m}["),
            IntervalKind::LowerGapB(m) => write!(f, "]-1-{m}, -a-{m}["),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootInterval<T> {
    pub kind: IntervalKind,
    pub lo: T,
    pub hi: T,
    pub predicted_count: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RootOrigin {
    /// Bracketed inside an open localization interval.
    Interior,
    /// A lattice point that is a root by the closed-form endpoint rules.
    Endpoint,
}

/// A root `z` of the secular equation with its eigenvalue `lambda = B(1-2z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Root<T> {
    pub z: T,
    pub lambda: T,
    pub multiplicity_hint: u32,
    pub origin: RootOrigin,
}

impl<T: Scalar> Root<T> {
    pub fn new(z: T, p: &ModelParams<T>, origin: RootOrigin) -> Self {
        Self { z, lambda: p.lambda_of_z(z), multiplicity_hint: 1, origin }
    }
}

/// `F_α(z) = Γ(z-1+α)/Γ(z)`; exactly zero at `z ∈ -ℤ₊`, pole at `z ∈ 1-α-ℤ₊`.
pub fn f_ratio<T: Scalar>(alpha: T, z: T) -> Result<T> {
    let num = z - T::one() + alpha;
    if num.is_nonpositive_integer() {
        return Err(Error::Pole { function: "f_ratio", at: z.as_f64() });
    }
    if z.is_nonpositive_integer() {
        return Ok(T::zero());
    }
    Ok(ln_gamma_ratio(z, alpha - T::one(), T::zero())?.value())
}

/// Left-hand side of the secular equation, entire in `z`.
pub fn secular_eval<T: Scalar>(z: T, sp: &SecularParams<T>) -> T {
    let a = sp.alpha;
    let RescaledBC { xi, eta, .. } = sp.rbc;
    let g_z = rgamma(z);
    let g_za = rgamma(z + a);
    let g_za1 = rgamma(z + a - T::one());
    g_z * g_za + xi * g_za1 * g_za + eta * g_z * g_z + sp.rbc.det() * g_z * g_za1
}

/// `(F_α(z)+ξ)(F_{1-α}(z+α)+η) - ζ²`, defined off the lattice.
pub fn factored_eval<T: Scalar>(z: T, sp: &SecularParams<T>) -> Result<T> {
    let a = sp.alpha;
    let RescaledBC { xi, eta, zeta } = sp.rbc;
    let f1 = f_ratio(a, z)?;
    let f2 = f_ratio(T::one() - a, z + a)?;
    Ok((f1 + xi) * (f2 + eta) - zeta * zeta)
}

/// `(ξ, η, ζ) / (ξη - ζ²)`.
pub fn invert_params<T: Scalar>(rbc: &RescaledBC<T>) -> Result<RescaledBC<T>> {
    let det = rbc.det();
    if !(det.abs() > T::lit(1e-13)) {
        return Err(Error::DeterminantZero { det: det.as_f64() });
    }
    Ok(RescaledBC { xi: rbc.xi / det, eta: rbc.eta / det, zeta: rbc.zeta / det.abs() })
}

/// Secular function in the large-parameter form, written in the inverted
/// parameters `(ξ', η', ζ')`:
/// `(ξ'η'-ζ'²)/(Γ(z)Γ(z+α)) + ξ'/(Γ(z+α-1)Γ(z+α)) + η'/Γ(z)² + 1/(Γ(z)Γ(z+α-1))`.
pub fn secular_eval_inverted<T: Scalar>(z: T, inverted: &RescaledBC<T>, alpha: T) -> T {
    let g_z = rgamma(z);
    let g_za = rgamma(z + alpha);
    let g_za1 = rgamma(z + alpha - T::one());
    inverted.det() * g_z * g_za + inverted.xi * g_za1 * g_za + inverted.eta * g_z * g_z + g_z * g_za1
}

/// Spectrum of the extension with `Φ₂(ψ) = 0`: `z ∈ -ℤ₊ ∪ (1-α-ℤ₊)`, `z >= z_min`,
/// sorted by `z` descending.
pub fn hinf_roots<T: Scalar>(p: &ModelParams<T>, z_min: T) -> Vec<Root<T>> {
    let a = p.alpha();
    let mut out = Vec::new();
    let mut m = 0i64;
    loop {
        let upper = T::one() - a - T::from_int(m);
        let lower = -T::from_int(m);
        if upper < z_min {
            break;
        }
        out.push(Root::new(upper, p, RootOrigin::Endpoint));
        if lower >= z_min {
            out.push(Root::new(lower, p, RootOrigin::Endpoint));
        }
        m += 1;
    }
    out
}
