//! Digamma, trigamma and tetragamma.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
/// ζ(3).
pub const ZETA3: f64 = 1.202_056_903_159_594_3;

// B_{2k} for k = 1..9
const BERNOULLI: [f64; 9] =
    [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0];

const ASYMPTOTIC_MIN: f64 = 10.0;

/// ψ^{(k)}(x) for `k` in {0, 1, 2}.
///
/// Arguments below 10 are shifted up with the recurrence
/// `ψ^{(k)}(x+1) = ψ^{(k)}(x) + (-1)^k k! / x^{k+1}` before the asymptotic
/// expansion is applied.
pub fn polygamma<T: Scalar>(k: u32, x: T) -> Result<T> {
    if k > 2 {
        return Err(Error::InvalidArgument(format!("polygamma order {k} not supported")));
    }
    if x.is_nonpositive_integer() {
        return Err(Error::Pole { function: "polygamma", at: x.as_f64() });
    }
    let mut x = x;
    let mut shift = T::zero();
    let min = T::lit(ASYMPTOTIC_MIN);
    while x < min {
        let inv = x.recip();
        shift = match k {
            0 => shift - inv,
            1 => shift + inv * inv,
            _ => shift - T::lit(2.0) * inv * inv * inv,
        };
        x = x + T::one();
    }
    let inv = x.recip();
    let inv2 = inv * inv;
    let asym = match k {
        0 => {
            let mut s = T::zero();
            let mut p = inv2;
            for (j, &b) in BERNOULLI.iter().enumerate() {
                s = s + T::lit(b / (2.0 * (j as f64 + 1.0))) * p;
                p = p * inv2;
            }
            x.ln() - T::lit(0.5) * inv - s
        }
        1 => {
            let mut s = T::zero();
            let mut p = inv2 * inv;
            for &b in BERNOULLI.iter() {
                s = s + T::lit(b) * p;
                p = p * inv2;
            }
            inv + T::lit(0.5) * inv2 + s
        }
        _ => {
            let mut s = T::zero();
            let mut p = inv2 * inv2;
            for (j, &b) in BERNOULLI.iter().enumerate() {
                s = s + T::lit(b * (2.0 * (j as f64 + 1.0) + 1.0)) * p;
                p = p * inv2;
            }
            -inv2 - inv2 * inv - s
        }
    };
    Ok(asym + shift)
}

/// ψ(x).
pub fn digamma<T: Scalar>(x: T) -> Result<T> {
    polygamma(0, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_values() {
        assert!((digamma(1.0_f64).unwrap() + EULER_GAMMA).abs() < 1e-15);
        let pi2_6 = std::f64::consts::PI.powi(2) / 6.0;
        assert!((polygamma(1, 1.0_f64).unwrap() - pi2_6).abs() < 1e-14);
        assert!((polygamma(2, 1.0_f64).unwrap() + 2.0 * ZETA3).abs() < 1e-13);
    }

    #[test]
    fn frozen_reference_values() {
        // mpmath polygamma, 30 digits
        let cases: [(u32, f64, f64); 10] = [
            (0, -0.7, -2.073_952_793_628_704_4),
            (1, -0.7, 14.286_180_872_638_343),
            (2, -0.7, -69.441_632_798_638_567),
            (0, 3.3, 1.034_822_489_059_621_7),
            (1, 3.3, 0.353_501_541_841_061_8),
            (2, 3.3, -0.123_751_185_264_942_71),
            (0, -13.45, 3.133_272_822_080_736_6),
            (2, -13.45, 10.063_078_099_696_743),
            (1, 17.2, 0.059_862_369_481_601_16),
            (2, 0.25, -129.327_739_937_536_92),
        ];
        for (k, x, want) in cases {
            let got = polygamma(k, x).unwrap();
            assert!(((got - want) / want).abs() < 1e-11, "psi^({k})({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn recurrence_through_negative_arguments() {
        let lhs = digamma(-0.7_f64).unwrap();
        let rhs = digamma(0.3_f64).unwrap() + 1.0 / 0.7;
        assert!((lhs - rhs).abs() < 1e-13);
    }

    #[test]
    fn rejects_poles_and_orders() {
        assert!(polygamma(0, -3.0_f64).is_err());
        assert!(polygamma(3, 1.0_f64).is_err());
    }
}
