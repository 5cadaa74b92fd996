//! The standard Aharonov-Bohm Hamiltonian in a homogeneous field: radial
//! solutions, Landau-type eigenvalues, eigenfunctions and sector Green functions.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::specfun::{
    gamma_complex, kummer_f, kummer_f_complex, laguerre, laguerre_sequence, rgamma, tricomi_g, tricomi_g_complex,
};

/// Flux fraction `alpha` in ]0,1[ and field strength `B > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams<T> {
    alpha: T,
    b: T,
}

impl<T: Scalar> ModelParams<T> {
    pub fn new(alpha: T, b: T) -> Result<Self> {
        if !(alpha > T::zero() && alpha < T::one()) {
            return Err(Error::InvalidArgument(format!("alpha = {} must lie in ]0,1[", alpha.as_f64())));
        }
        if !(b > T::zero()) || !b.is_finite() {
            return Err(Error::InvalidArgument(format!("B = {} must be positive and finite", b.as_f64())));
        }
        Ok(Self { alpha, b })
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn b(&self) -> T {
        self.b
    }

    /// `B/2`, the natural scale of every power-law prefactor.
    pub fn half_b(&self) -> T {
        self.b * T::lit(0.5)
    }

    /// Spectral variable `z = 1/2 - lambda/(2B)` of the secular equation.
    pub fn z_of_lambda(&self, lambda: T) -> T {
        T::lit(0.5) - lambda / (T::lit(2.0) * self.b)
    }

    pub fn lambda_of_z(&self, z: T) -> T {
        self.b * (T::one() - T::lit(2.0) * z)
    }
}

/// Angular-momentum sector `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct SectorIndex(pub i64);

impl SectorIndex {
    /// `|m + alpha|`.
    pub fn sigma<T: Scalar>(self, alpha: T) -> T {
        (T::from_int(self.0) + alpha).abs()
    }

    /// The two sectors where boundary conditions at the origin matter.
    pub fn is_critical(self) -> bool {
        self.0 == -1 || self.0 == 0
    }
}

/// Polar point with `r > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialPoint<T> {
    r: T,
    theta: T,
}

impl<T: Scalar> RadialPoint<T> {
    pub fn new(r: T, theta: T) -> Result<Self> {
        if !(r > T::zero()) || !r.is_finite() {
            return Err(Error::InvalidArgument(format!("radius {} must be positive", r.as_f64())));
        }
        Ok(Self { r, theta })
    }

    pub fn r(&self) -> T {
        self.r
    }

    pub fn theta(&self) -> T {
        self.theta
    }
}

/// `gamma(m) = 1 + |m + alpha|`.
pub fn gamma_index<T: Scalar>(m: SectorIndex, p: &ModelParams<T>) -> T {
    T::one() + m.sigma(p.alpha)
}

/// `beta(m, lambda) = (1 + m + alpha + |m + alpha| - lambda/B) / 2`.
pub fn beta_index<T: Scalar>(m: SectorIndex, lambda: T, p: &ModelParams<T>) -> T {
    let ma = T::from_int(m.0) + p.alpha;
    T::lit(0.5) * (T::one() + ma + ma.abs() - lambda / p.b)
}

pub fn beta_index_complex<T: Scalar>(m: SectorIndex, lambda: Complex<T>, p: &ModelParams<T>) -> Complex<T> {
    let ma = T::from_int(m.0) + p.alpha;
    (Complex::new(T::one() + ma + ma.abs(), T::zero()) - lambda / p.b) * T::lit(0.5)
}

/// `(g1, g2)`: the regular (Kummer) and decaying (Tricomi) radial solutions.
pub fn radial_solutions<T: Scalar>(m: SectorIndex, lambda: T, p: &ModelParams<T>, r: T) -> Result<(T, T)> {
    let sigma = m.sigma(p.alpha);
    let u = p.half_b() * r * r;
    let beta = beta_index(m, lambda, p);
    let common = r.powf(sigma) * (-T::lit(0.5) * u).exp();
    let g1 = common * kummer_f(beta, T::one() + sigma, u)?;
    let g2 = common * tricomi_g(beta, T::one() + sigma, u)?;
    Ok((g1, g2))
}

/// Radial solutions at a complex spectral parameter.
pub fn radial_solutions_complex<T: Scalar>(
    m: SectorIndex,
    lambda: Complex<T>,
    p: &ModelParams<T>,
    r: T,
) -> Result<(Complex<T>, Complex<T>)> {
    let sigma = m.sigma(p.alpha);
    let u = p.half_b() * r * r;
    let beta = beta_index_complex(m, lambda, p);
    let common = r.powf(sigma) * (-T::lit(0.5) * u).exp();
    let g1 = kummer_f_complex(beta, T::one() + sigma, u)? * common;
    let g2 = tricomi_g_complex(beta, T::one() + sigma, u)? * common;
    Ok((g1, g2))
}

/// Only the decaying solution `g2` at complex `lambda`.
pub fn decaying_solution_complex<T: Scalar>(m: SectorIndex, lambda: Complex<T>, p: &ModelParams<T>, r: T) -> Result<Complex<T>> {
    let sigma = m.sigma(p.alpha);
    let u = p.half_b() * r * r;
    let common = r.powf(sigma) * (-T::lit(0.5) * u).exp();
    Ok(tricomi_g_complex(beta_index_complex(m, lambda, p), T::one() + sigma, u)? * common)
}

/// `lambda_{m,n} = B (m + alpha + |m + alpha| + 2n + 1)`.
pub fn ab_eigenvalue<T: Scalar>(m: SectorIndex, n: u64, p: &ModelParams<T>) -> T {
    let ma = T::from_int(m.0) + p.alpha;
    p.b * (ma + ma.abs() + T::from_int(2 * n as i64 + 1))
}

/// Normalization constant `C_{m,n}` of the eigenfunction.
pub fn ab_norm_constant<T: Scalar>(m: SectorIndex, n: u64, p: &ModelParams<T>) -> T {
    let sigma = m.sigma(p.alpha);
    // n!/Γ(n+σ+1) as a product keeps large n finite.
    let ratio = (1..=n).fold(rgamma(sigma + T::one()), |acc, k| {
        let kf = T::from_int(k as i64);
        acc * kf / (kf + sigma)
    });
    p.half_b().powf(T::lit(0.5) * (sigma + T::one())) * (ratio / T::PI()).sqrt()
}

/// Normalized eigenfunction `f_{m,n}(r, theta)`.
pub fn ab_eigenfunction<T: Scalar>(m: SectorIndex, n: u64, p: &ModelParams<T>, x: RadialPoint<T>) -> Complex<T> {
    let sigma = m.sigma(p.alpha);
    let u = p.half_b() * x.r * x.r;
    let radial = ab_norm_constant(m, n, p) * x.r.powf(sigma) * laguerre(n as usize, sigma, u) * (-T::lit(0.5) * u).exp();
    let phase = T::from_int(m.0) * x.theta;
    Complex::new(phase.cos(), phase.sin()) * radial
}

fn green_prefactor<T: Scalar>(sigma: T, r1: T, r2: T, p: &ModelParams<T>) -> T {
    p.half_b().powf(sigma + T::one()) * (r1 * r2).powf(sigma) * (-T::lit(0.25) * p.b * (r1 * r1 + r2 * r2)).exp()
}

/// `w(m, z) = z/(2B) - (m + alpha + |m + alpha| + 1)/2`.
pub fn green_w<T: Scalar>(m: SectorIndex, z: Complex<T>, p: &ModelParams<T>) -> Complex<T> {
    let ma = T::from_int(m.0) + p.alpha;
    z / (T::lit(2.0) * p.b) - T::lit(0.5) * (ma + ma.abs() + T::one())
}

fn check_resolvent<T: Scalar>(m: SectorIndex, z: Complex<T>, p: &ModelParams<T>) -> Result<()> {
    let base = ab_eigenvalue(m, 0, p);
    let k = ((z.re - base) / (T::lit(2.0) * p.b)).round().max(T::zero());
    let nearest = base + T::lit(2.0) * p.b * k;
    let distance = (z - nearest).norm();
    if distance <= T::lit(1e-8) {
        return Err(Error::NearEigenvalue { z: z.re.as_f64(), eigenvalue: nearest.as_f64(), distance: distance.as_f64() });
    }
    Ok(())
}

/// Partial sum over `n < n_terms` of the eigenfunction expansion of `G_m`.
pub fn green_series<T: Scalar>(
    m: SectorIndex,
    z: Complex<T>,
    r1: T,
    r2: T,
    p: &ModelParams<T>,
    n_terms: usize,
) -> Result<Complex<T>> {
    if n_terms == 0 {
        return Err(Error::InvalidArgument("green_series needs at least one term".into()));
    }
    check_resolvent(m, z, p)?;
    let sigma = m.sigma(p.alpha);
    let l1 = laguerre_sequence(n_terms, sigma, p.half_b() * r1 * r1);
    let l2 = laguerre_sequence(n_terms, sigma, p.half_b() * r2 * r2);
    let mut weight = rgamma(sigma + T::one());
    let mut sum = Complex::new(T::zero(), T::zero());
    for n in 0..n_terms {
        let lam = Complex::new(ab_eigenvalue(m, n as u64, p), T::zero());
        sum = sum + (lam - z).inv() * (weight * l1[n] * l2[n]);
        let next = T::from_int(n as i64 + 1);
        weight = weight * next / (next + sigma);
    }
    Ok(sum * (T::lit(2.0) * green_prefactor(sigma, r1, r2, p)))
}

/// Closed form `(B/2)^{s+1} (r1 r2)^s e^{-B(r1²+r2²)/4} Γ(-w)/Γ(s+1) F(-w,s+1,u<) G(-w,s+1,u>) / B`
/// with `u = B r²/2`.
pub fn green_closed<T: Scalar>(m: SectorIndex, z: Complex<T>, r1: T, r2: T, p: &ModelParams<T>) -> Result<Complex<T>> {
    check_resolvent(m, z, p)?;
    let sigma = m.sigma(p.alpha);
    let mw = -green_w(m, z, p);
    let g = gamma_complex(mw)?;
    let (rl, rg) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
    let f = kummer_f_complex(mw, sigma + T::one(), p.half_b() * rl * rl)?;
    let t = tricomi_g_complex(mw, sigma + T::one(), p.half_b() * rg * rg)?;
    Ok(g * f * t * (green_prefactor(sigma, r1, r2, p) * rgamma(sigma + T::one()) / p.b))
}

/// Distinct eigenvalue of the standard Hamiltonian with the `(m, n)` pairs attaining it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AbLevel<T> {
    pub lambda: T,
    pub states: Vec<(SectorIndex, u64)>,
}

/// All `lambda_{m,n} <= lambda_max` over sectors `m >= m_lo`, grouped by value
/// within `1e-9 B`, ascending. Sectors `m <= -1` are infinitely many, so the
/// caller bounds them with `m_lo`.
pub fn ab_levels<T: Scalar>(p: &ModelParams<T>, lambda_max: T, m_lo: i64) -> Vec<AbLevel<T>> {
    let tol = T::lit(1e-9) * p.b;
    let mut states: Vec<(T, SectorIndex, u64)> = Vec::new();
    let mut m = m_lo;
    loop {
        let sector = SectorIndex(m);
        let first = ab_eigenvalue(sector, 0, p);
        if first > lambda_max + tol {
            if m >= 0 {
                break;
            }
            m += 1;
            continue;
        }
        let mut n = 0u64;
        loop {
            let lam = ab_eigenvalue(sector, n, p);
            if lam > lambda_max + tol {
                break;
            }
            states.push((lam, sector, n));
            n += 1;
        }
        m += 1;
    }
    states.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite eigenvalues").then(a.1.cmp(&b.1)));
    let mut levels: Vec<AbLevel<T>> = Vec::new();
    for (lam, sector, n) in states {
        match levels.last_mut() {
            Some(level) if (lam - level.lambda).abs() <= tol => level.states.push((sector, n)),
            _ => levels.push(AbLevel { lambda: lam, states: vec![(sector, n)] }),
        }
    }
    levels
}
