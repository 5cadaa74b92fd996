//! Kummer's function F(β, γ, z) = ₁F₁(β; γ; z) and Tricomi's G(β, γ, z) = U(β, γ, z)
//! for real `z >= 0`, with real or complex `β`.

use num_complex::Complex;

use super::complex_gamma::rgamma_complex;
use super::gamma::{gamma, rgamma};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Hard cap on the number of series terms.
pub const MAX_TERMS: usize = 10_000;
/// Relative size of the bounded series tail at which summation stops.
const TAIL_TOL: f64 = 1e-16;
/// Above this argument `G` is evaluated from its asymptotic expansion.
pub const ASYMPTOTIC_SWITCH: f64 = 50.0;

fn check_args<T: Scalar>(gamma_: T, z: T) -> Result<()> {
    if gamma_.is_nonpositive_integer() {
        return Err(Error::InvalidArgument(format!("kummer_f: gamma = {} is a non-positive integer", gamma_.as_f64())));
    }
    if !(z >= T::zero()) || !z.is_finite() {
        return Err(Error::InvalidArgument(format!("kummer_f: z = {} must be finite and >= 0", z.as_f64())));
    }
    Ok(())
}

/// Sums Σ (β)_n zⁿ / ((γ)_n n!) given |β| and the per-term ratio. Shared by the
/// real and complex-β entry points.
macro_rules! kummer_series {
    ($beta:expr, $beta_abs:expr, $gamma:expr, $z:expr, $T:ty, $zero:expr, $one:expr) => {{
        let beta = $beta;
        let gamma_ = $gamma;
        let z = $z;
        let beta_abs: $T = $beta_abs;
        let mut sum = $one;
        let mut term = $one;
        let mut max_term = <$T>::one();
        let mut result = None;
        for n in 0..MAX_TERMS {
            let nf = <$T>::from_int(n as i64);
            let num = (beta + nf) * z;
            if num == $zero {
                result = Some(sum);
                break;
            }
            term = term * num / ((gamma_ + nf) * (nf + <$T>::one()));
            sum = sum + term;
            let term_abs = term.norm_like();
            max_term = max_term.max(term_abs);
            let n1 = nf + <$T>::one();
            if n1 >= beta_abs && gamma_ + n1 > <$T>::zero() {
                let lead = ((n1 + beta_abs) / (n1 + gamma_)).max(<$T>::one());
                let rb = lead * z / (n1 + <$T>::one());
                if rb < <$T>::one() {
                    let tail = term_abs * rb / (<$T>::one() - rb);
                    let scale = sum.norm_like().max(max_term * <$T>::lit(TAIL_TOL));
                    if tail <= <$T>::lit(TAIL_TOL) * scale {
                        result = Some(sum);
                        break;
                    }
                }
            }
        }
        match result {
            Some(s) => Ok(s),
            None => Err(Error::SeriesCap { terms: MAX_TERMS, tail: term.norm_like().as_f64() }),
        }
    }};
}

trait NormLike<T> {
    fn norm_like(&self) -> T;
}

impl<T: Scalar> NormLike<T> for T {
    fn norm_like(&self) -> T {
        self.abs()
    }
}

impl<T: Scalar> NormLike<T> for Complex<T> {
    fn norm_like(&self) -> T {
        self.norm()
    }
}

/// F(β, γ, z) by direct summation of the defining series.
///
/// Terminates exactly when β is a non-positive integer. Otherwise stops once a
/// geometric bound on the remaining tail falls below 1e-16 relative.
pub fn kummer_f<T: Scalar>(beta: T, gamma_: T, z: T) -> Result<T> {
    check_args(gamma_, z)?;
    if z == T::zero() {
        return Ok(T::one());
    }
    kummer_series!(beta, beta.abs(), gamma_, z, T, T::zero(), T::one())
}

/// F(β, γ, z) for complex β and real γ, z.
pub fn kummer_f_complex<T: Scalar>(beta: Complex<T>, gamma_: T, z: T) -> Result<Complex<T>> {
    check_args(gamma_, z)?;
    let one = Complex::new(T::one(), T::zero());
    if z == T::zero() {
        return Ok(one);
    }
    kummer_series!(beta, beta.norm(), gamma_, z, T, Complex::new(T::zero(), T::zero()), one)
}

fn check_tricomi<T: Scalar>(gamma_: T, z: T) -> Result<()> {
    if gamma_ == gamma_.floor() {
        return Err(Error::InvalidArgument(format!("tricomi_g: integer gamma = {} unsupported", gamma_.as_f64())));
    }
    if !(z > T::zero()) || !z.is_finite() {
        return Err(Error::InvalidArgument(format!("tricomi_g: z = {} must be finite and > 0", z.as_f64())));
    }
    Ok(())
}

/// G(β, γ, z) = Γ(1-γ)/Γ(β-γ+1) F(β,γ,z) + Γ(γ-1)/Γ(β) z^{1-γ} F(β-γ+1, 2-γ, z).
///
/// Both reciprocal gammas go through [`rgamma`], so β ∈ -ℤ₊ collapses to a
/// multiple of F. For `z > 50` the asymptotic expansion
/// `z^{-β} Σ (β)_k (β-γ+1)_k / k! (-z)^{-k}` is used instead, truncated at its
/// smallest term.
pub fn tricomi_g<T: Scalar>(beta: T, gamma_: T, z: T) -> Result<T> {
    check_tricomi(gamma_, z)?;
    if z > T::lit(ASYMPTOTIC_SWITCH) {
        let b2 = beta - gamma_ + T::one();
        let mut sum = T::one();
        let mut term = T::one();
        let mut prev = T::infinity();
        for k in 0..MAX_TERMS {
            let kf = T::from_int(k as i64);
            let next = term * (beta + kf) * (b2 + kf) / ((kf + T::one()) * (-z));
            if next == T::zero() || next.abs() >= prev {
                break;
            }
            sum = sum + next;
            prev = next.abs();
            term = next;
            if prev <= T::lit(TAIL_TOL) * sum.abs() {
                break;
            }
        }
        return Ok(z.powf(-beta) * sum);
    }
    let one = T::one();
    let c1 = rgamma(beta - gamma_ + one);
    let c2 = rgamma(beta);
    let mut value = T::zero();
    if c1 != T::zero() {
        value = value + gamma(one - gamma_)? * c1 * kummer_f(beta, gamma_, z)?;
    }
    if c2 != T::zero() {
        value =
            value + gamma(gamma_ - one)? * c2 * z.powf(one - gamma_) * kummer_f(beta - gamma_ + one, T::lit(2.0) - gamma_, z)?;
    }
    Ok(value)
}

/// G(β, γ, z) for complex β and real γ, z. Same branches as [`tricomi_g`].
pub fn tricomi_g_complex<T: Scalar>(beta: Complex<T>, gamma_: T, z: T) -> Result<Complex<T>> {
    check_tricomi(gamma_, z)?;
    let one = T::one();
    let zero_c = Complex::new(T::zero(), T::zero());
    if z > T::lit(ASYMPTOTIC_SWITCH) {
        let b2 = beta - gamma_ + one;
        let mut sum = Complex::new(one, T::zero());
        let mut term = sum;
        let mut prev = T::infinity();
        for k in 0..MAX_TERMS {
            let kf = T::from_int(k as i64);
            let next = term * (beta + kf) * (b2 + kf) / ((kf + one) * (-z));
            if next == zero_c || next.norm() >= prev {
                break;
            }
            sum = sum + next;
            prev = next.norm();
            term = next;
            if prev <= T::lit(TAIL_TOL) * sum.norm() {
                break;
            }
        }
        return Ok((-beta * z.ln()).exp() * sum);
    }
    let c1 = rgamma_complex(beta - gamma_ + one);
    let c2 = rgamma_complex(beta);
    let mut value = zero_c;
    if c1 != zero_c {
        value = value + c1 * gamma(one - gamma_)? * kummer_f_complex(beta, gamma_, z)?;
    }
    if c2 != zero_c {
        value = value
            + c2 * (gamma(gamma_ - one)? * z.powf(one - gamma_))
                * kummer_f_complex(beta - gamma_ + one, T::lit(2.0) - gamma_, z)?;
    }
    Ok(value)
}
