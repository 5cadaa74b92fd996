//! Small-parameter expansions of the roots emanating from the lattice points
//! `-m` and `-α-m`, complete through total order four in `(ξ, η, ζ)`.

use serde::Serialize;

use super::SecularParams;
use crate::error::Result;
use crate::scalar::Scalar;
use crate::specfun::{gamma, polygamma, EULER_GAMMA, ZETA3};

/// Which lattice point the expanded root starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SeriesBranch {
    /// `z → -m` as `(ξ, η, ζ) → 0`; driven by `ξ`.
    FromMinusM,
    /// `z → -α-m` as `(ξ, η, ζ) → 0`; driven by `η`.
    FromMinusAlphaM,
}

fn harmonic<T: Scalar>(m: u32, power: i32) -> T {
    (1..=m).fold(T::zero(), |s, k| s + T::from_int(k as i64).powi(power).recip())
}

/// `H_m - γ - ψ(x)`
pub fn h0<T: Scalar>(m: u32, x: T) -> Result<T> {
    Ok(harmonic::<T>(m, 1) - T::lit(EULER_GAMMA) - polygamma(0, x)?)
}

/// `π²/6 + H_m^{(2)} - ψ'(x)`
pub fn h1<T: Scalar>(m: u32, x: T) -> Result<T> {
    Ok(T::lit(std::f64::consts::PI * std::f64::consts::PI / 6.0) + harmonic::<T>(m, 2) - polygamma(1, x)?)
}

/// `-2ζ(3) + 2H_m^{(3)} - ψ''(x)`
pub fn h2<T: Scalar>(m: u32, x: T) -> Result<T> {
    Ok(T::lit(-2.0 * ZETA3) + T::lit(2.0) * harmonic::<T>(m, 3) - polygamma(2, x)?)
}

/// Truncated expansion of the root on `branch` for the Landau index `m`.
///
/// With `t = (-1)^{m+1} p / (m! Γ(x))`, `p = ξ` at `x = -1-m+α` or `p = η` at
/// `x = -m-α`, the root is
/// `z₀ + t + h₀t² + (3h₀²+h₁)t³/2 + (4h₀(4h₀²+3h₁)+h₂)t⁴/6 - c t ζ² + d t²ζ²`.
pub fn series_root<T: Scalar>(branch: SeriesBranch, m: u32, sp: &SecularParams<T>) -> Result<T> {
    let a = sp.alpha();
    let mt = T::from_int(m as i64);
    let fact = (1..=m).fold(T::one(), |f, k| f * T::from_int(k as i64));
    let sign = if m.is_multiple_of(2) { -T::one() } else { T::one() };
    let zeta2 = sp.rbc.zeta * sp.rbc.zeta;
    let (z0, x, p, c) = match branch {
        SeriesBranch::FromMinusM => (-mt, -T::one() - mt + a, sp.rbc.xi, T::one() + mt - a),
        SeriesBranch::FromMinusAlphaM => (-a - mt, -mt - a, sp.rbc.eta, mt + T::one()),
    };
    let t = sign * p / (fact * gamma(x)?);
    let hz = h0(m, x)?;
    let hz1 = h1(m, x)?;
    let hz2 = h2(m, x)?;
    let d = match branch {
        SeriesBranch::FromMinusM => T::lit(3.0) - T::lit(2.0) * c * h0(m, -mt + a)?,
        SeriesBranch::FromMinusAlphaM => T::one() - T::lit(2.0) * c * hz,
    };
    let t2 = t * t;
    let quad = hz * t2;
    let cubic = (T::lit(3.0) * hz * hz + hz1) * t2 * t / T::lit(2.0);
    let quartic = (T::lit(4.0) * hz * (T::lit(4.0) * hz * hz + T::lit(3.0) * hz1) + hz2) * t2 * t2 / T::lit(6.0);
    Ok(z0 + t + quad + cubic + quartic - c * t * zeta2 + d * t2 * zeta2)
}
