//! Real gamma function, its reciprocal and signed logarithm.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub(crate) const LANCZOS_G: f64 = 7.0;
pub(crate) const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Above this argument `ln Γ` switches from the Lanczos sum to the Stirling series.
const STIRLING_MIN: f64 = 15.0;

/// `ln|Γ(x)|` together with the sign of `Γ(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLogGamma<T> {
    pub log_abs: T,
    pub sign: i8,
}

impl<T: Scalar> SignedLogGamma<T> {
    pub fn value(&self) -> T {
        let v = self.log_abs.exp();
        if self.sign < 0 {
            -v
        } else {
            v
        }
    }
}

/// `sin(πx)` with exact argument reduction, so integers give exact zeros.
pub fn sin_pi<T: Scalar>(x: T) -> T {
    let two = T::lit(2.0);
    let mut r = x % two;
    if r > T::one() {
        r = r - two;
    } else if r < -T::one() {
        r = r + two;
    }
    let half = T::lit(0.5);
    if r > half {
        (T::PI() * (T::one() - r)).sin()
    } else if r < -half {
        -(T::PI() * (T::one() + r)).sin()
    } else {
        (T::PI() * r).sin()
    }
}

/// `cos(πx)` with exact argument reduction.
pub fn cos_pi<T: Scalar>(x: T) -> T {
    sin_pi(x + T::lit(0.5))
}

/// Lanczos approximation, valid for `x >= 0.5`.
fn lanczos<T: Scalar>(x: T) -> T {
    let xm = x - T::one();
    let mut acc = T::lit(LANCZOS_COEF[0]);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc = acc + T::lit(c) / (xm + T::from_int(i as i64));
    }
    let t = xm + T::lit(LANCZOS_G + 0.5);
    let half_pow = t.powf((xm + T::lit(0.5)) * T::lit(0.5));
    (T::lit(2.0) * T::PI()).sqrt() * half_pow * (-t).exp() * half_pow * acc
}

fn stirling_ln_gamma<T: Scalar>(x: T) -> T {
    // Bernoulli corrections B_{2k} / (2k (2k-1) x^{2k-1}).
    const C: [f64; 7] = [1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0, 1.0 / 1188.0, -691.0 / 360_360.0, 1.0 / 156.0];
    let inv = x.recip();
    let inv2 = inv * inv;
    let mut series = T::zero();
    for &c in C.iter().rev() {
        series = series * inv2 + T::lit(c);
    }
    (x - T::lit(0.5)) * x.ln() - x + T::lit(0.5) * (T::lit(2.0) * T::PI()).ln() + series * inv
}

/// Stirling correction `ln Γ(x) - [(x-1/2) ln x - x + ln(2π)/2]`.
fn stirling_tail<T: Scalar>(x: T) -> T {
    stirling_ln_gamma(x) - ((x - T::lit(0.5)) * x.ln() - x + T::lit(0.5) * (T::lit(2.0) * T::PI()).ln())
}

/// `(n-1)!` for integer `1 <= n <= 30`, exact in f64.
fn small_factorial<T: Scalar>(x: T) -> Option<T> {
    if x >= T::one() && x <= T::lit(30.0) && x == x.floor() {
        let n = x.to_u32().unwrap_or(1);
        return Some((1..n).fold(T::one(), |acc, k| acc * T::from_int(k as i64)));
    }
    None
}

/// Γ(x) for real `x`; error at the poles `x ∈ {0, -1, -2, …}`.
pub fn gamma<T: Scalar>(x: T) -> Result<T> {
    if x.is_nonpositive_integer() {
        return Err(Error::Pole { function: "gamma", at: x.as_f64() });
    }
    if let Some(f) = small_factorial(x) {
        return Ok(f);
    }
    if x < T::lit(0.5) {
        return Ok(T::PI() / (sin_pi(x) * gamma(T::one() - x)?));
    }
    if x > T::lit(171.7) {
        return Ok(T::infinity());
    }
    Ok(lanczos(x))
}

/// 1/Γ(x). Entire: exactly zero at non-positive integers, finite elsewhere.
pub fn rgamma<T: Scalar>(x: T) -> T {
    if x.is_nan() {
        return x;
    }
    if x.is_nonpositive_integer() {
        return T::zero();
    }
    if let Some(f) = small_factorial(x) {
        return f.recip();
    }
    if x < T::lit(0.5) {
        let s = sin_pi(x);
        let y = T::one() - x;
        if y < T::lit(170.0) {
            return s * lanczos(y) / T::PI();
        }
        let lg = stirling_ln_gamma(y);
        let mag = (lg + s.abs().ln() - T::PI().ln()).exp();
        return if s < T::zero() { -mag } else { mag };
    }
    if x < T::lit(170.0) {
        lanczos(x).recip()
    } else {
        (-stirling_ln_gamma(x)).exp()
    }
}

/// `ln|Γ(x)|` and `sign Γ(x)`; error at the poles.
pub fn ln_gamma<T: Scalar>(x: T) -> Result<SignedLogGamma<T>> {
    if x.is_nonpositive_integer() {
        return Err(Error::Pole { function: "ln_gamma", at: x.as_f64() });
    }
    if x < T::lit(0.5) {
        let s = sin_pi(x);
        let rest = ln_gamma(T::one() - x)?;
        return Ok(SignedLogGamma {
            log_abs: T::PI().ln() - s.abs().ln() - rest.log_abs,
            sign: if s < T::zero() { -1 } else { 1 },
        });
    }
    let log_abs = if x < T::lit(STIRLING_MIN) { lanczos(x).ln() } else { stirling_ln_gamma(x) };
    Ok(SignedLogGamma { log_abs, sign: 1 })
}

/// Γ(x+a)/Γ(x+b) as a signed logarithm.
///
/// For large arguments the leading `(a-b) ln x` is split off analytically, which
/// keeps full relative accuracy when `x` is many orders of magnitude above `|a-b|`.
pub fn ln_gamma_ratio<T: Scalar>(x: T, a: T, b: T) -> Result<SignedLogGamma<T>> {
    let xa = x + a;
    let xb = x + b;
    let min_large = T::lit(STIRLING_MIN);
    if xa >= min_large && xb >= min_large && x > T::zero() {
        let half = T::lit(0.5);
        let log_abs = (a - b) * x.ln() + (xa - half) * (a / x).ln_1p() - (xb - half) * (b / x).ln_1p() - (a - b)
            + stirling_tail(xa)
            - stirling_tail(xb);
        return Ok(SignedLogGamma { log_abs, sign: 1 });
    }
    let num = ln_gamma(xa)?;
    let den = ln_gamma(xb)?;
    Ok(SignedLogGamma { log_abs: num.log_abs - den.log_abs, sign: num.sign * den.sign })
}
