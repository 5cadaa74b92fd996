//! Complex 2×2 matrices, the only dense linear algebra the extension theory needs.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Row-major complex 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2<T> {
    pub m: [[Complex<T>; 2]; 2],
}

impl<T: Scalar> Mat2<T> {
    pub fn new(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Self {
        Self { m: [[a, b], [c, d]] }
    }

    pub fn zero() -> Self {
        let z = Complex::new(T::zero(), T::zero());
        Self::new(z, z, z, z)
    }

    pub fn identity() -> Self {
        Self::diag(Complex::new(T::one(), T::zero()), Complex::new(T::one(), T::zero()))
    }

    pub fn diag(a: Complex<T>, d: Complex<T>) -> Self {
        let z = Complex::new(T::zero(), T::zero());
        Self::new(a, z, z, d)
    }

    pub fn diag_real(a: T, d: T) -> Self {
        Self::diag(Complex::new(a, T::zero()), Complex::new(d, T::zero()))
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.m[i][j]
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self { m: [[self.m[0][0] * s, self.m[0][1] * s], [self.m[1][0] * s, self.m[1][1] * s]] }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::new(self.m[0][0].conj(), self.m[1][0].conj(), self.m[0][1].conj(), self.m[1][1].conj())
    }

    pub fn det(&self) -> Complex<T> {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn adjugate(&self) -> Self {
        Self::new(self.m[1][1], -self.m[0][1], -self.m[1][0], self.m[0][0])
    }

    pub fn frobenius(&self) -> T {
        self.m.iter().flatten().fold(T::zero(), |s, z| s + z.norm_sqr()).sqrt()
    }

    /// Frobenius-norm condition number; infinite for a singular matrix.
    pub fn cond(&self) -> T {
        let det = self.det().norm();
        if det == T::zero() {
            return T::infinity();
        }
        // ‖A⁻¹‖_F = ‖adj A‖_F / |det A| and ‖adj A‖_F = ‖A‖_F for 2×2.
        let f = self.frobenius();
        f * f / det
    }

    /// Inverse, rejected when the condition number exceeds `max_cond`.
    pub fn inverse(&self, max_cond: T) -> Result<Self> {
        let cond = self.cond();
        if !(cond <= max_cond) {
            return Err(Error::Conditioning { condition: cond.as_f64() });
        }
        Ok(self.adjugate().scale(self.det().inv()))
    }

    pub fn mul_vec(&self, v: [Complex<T>; 2]) -> [Complex<T>; 2] {
        [self.m[0][0] * v[0] + self.m[0][1] * v[1], self.m[1][0] * v[0] + self.m[1][1] * v[1]]
    }

    pub fn is_diagonal(&self, tol: T) -> bool {
        self.m[0][1].norm() <= tol && self.m[1][0].norm() <= tol
    }
}

impl<T: Scalar> Add for Mat2<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.m[0][0] + o.m[0][0], self.m[0][1] + o.m[0][1], self.m[1][0] + o.m[1][0], self.m[1][1] + o.m[1][1])
    }
}

impl<T: Scalar> Sub for Mat2<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<T: Scalar> Neg for Mat2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.m[0][0], -self.m[0][1], -self.m[1][0], -self.m[1][1])
    }
}

impl<T: Scalar> Mul for Mat2<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let a = &self.m;
        let b = &o.m;
        Self::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}
