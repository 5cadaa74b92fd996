//! Complex gamma function (Lanczos, g = 7) and its reciprocal.

use num_complex::Complex;

use super::gamma::{cos_pi, sin_pi, LANCZOS_COEF, LANCZOS_G};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn is_pole<T: Scalar>(z: Complex<T>) -> bool {
    z.im == T::zero() && z.re.is_nonpositive_integer()
}

/// `sin(πz)` for complex `z`.
pub fn sin_pi_complex<T: Scalar>(z: Complex<T>) -> Complex<T> {
    let y = T::PI() * z.im;
    Complex::new(sin_pi(z.re) * y.cosh(), cos_pi(z.re) * y.sinh())
}

fn lanczos<T: Scalar>(z: Complex<T>) -> Complex<T> {
    let zm = z - T::one();
    let mut acc = Complex::new(T::lit(LANCZOS_COEF[0]), T::zero());
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc = acc + Complex::new(T::lit(c), T::zero()) / (zm + T::from_int(i as i64));
    }
    let t = zm + T::lit(LANCZOS_G + 0.5);
    let expo = (zm + T::lit(0.5)) * t.ln() - t;
    acc * expo.exp() * (T::lit(2.0) * T::PI()).sqrt()
}

/// Γ(z) for complex `z`; reflection is used for `Re z < 1/2`.
pub fn gamma_complex<T: Scalar>(z: Complex<T>) -> Result<Complex<T>> {
    if is_pole(z) {
        return Err(Error::Pole { function: "gamma_complex", at: z.re.as_f64() });
    }
    if z.re < T::lit(0.5) {
        let one = Complex::new(T::one(), T::zero());
        let refl = sin_pi_complex(z) * gamma_complex(one - z)?;
        return Ok(Complex::new(T::PI(), T::zero()) / refl);
    }
    Ok(lanczos(z))
}

/// 1/Γ(z), exactly zero at the poles of Γ.
pub fn rgamma_complex<T: Scalar>(z: Complex<T>) -> Complex<T> {
    if is_pole(z) {
        return Complex::new(T::zero(), T::zero());
    }
    if z.im == T::zero() {
        return Complex::new(super::rgamma(z.re), T::zero());
    }
    if z.re < T::lit(0.5) {
        let one = Complex::new(T::one(), T::zero());
        return sin_pi_complex(z) * lanczos(one - z) / T::PI();
    }
    lanczos(z).inv()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn rel(a: Complex<f64>, b: Complex<f64>) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn real_axis_values() {
        assert!(rel(gamma_complex(c(1.0, 0.0)).unwrap(), c(1.0, 0.0)) < 1e-15);
        let g = gamma_complex(c(0.5, 0.0)).unwrap();
        assert!((g.re - 1.772_453_850_905_516).abs() < 1e-14);
        assert!(gamma_complex(c(-2.0, 0.0)).is_err());
        assert_eq!(rgamma_complex(c(-2.0, 0.0)), c(0.0, 0.0));
    }

    #[test]
    fn off_axis_values() {
        // mpmath, 30 digits
        let cases = [
            (c(0.5, 0.5), c(0.818_163_999_541_747_4, -0.763_313_828_713_982_6)),
            (c(2.5, -3.0), c(-0.218_118_971_081_122_9, -0.072_034_763_407_175_03)),
            (c(-3.2, 1.5), c(-0.009_588_122_171_157_018, 0.001_879_788_829_495_915)),
            (c(12.3, 7.0), c(4_243_147.845_384_445, -10_851_149.577_230_84)),
        ];
        for (z, want) in cases {
            let got = gamma_complex(z).unwrap();
            assert!(rel(got, want) < 1e-12, "{z}: {got} vs {want}");
            assert!(rel(rgamma_complex(z) * got, c(1.0, 0.0)) < 1e-13);
        }
    }

    #[test]
    fn modulus_on_critical_line() {
        for &y in &[0.1, 0.5, 1.0, 2.5, 6.0] {
            let g = gamma_complex(c(0.5, y)).unwrap();
            let want = std::f64::consts::PI / (std::f64::consts::PI * y).cosh();
            assert!((g.norm_sqr() - want).abs() / want < 1e-13);
        }
    }
}
