//! Self-adjoint extensions of the minimal operator: boundary matrices `Lambda`,
//! the unitary parametrization `U`, deficiency-space normalization and the
//! energy-dependent boundary coefficients of the two critical sectors.

use num_complex::Complex;
use rand::Rng;
use serde::Serialize;

use crate::abmodel::{decaying_solution_complex, ModelParams, SectorIndex};
use crate::error::{Error, Result};
use crate::linalg::Mat2;
use crate::quad::integrate;
use crate::scalar::Scalar;
use crate::specfun::{gamma, rgamma, rgamma_complex, sin_pi};

/// Largest condition number accepted when inverting chart matrices.
pub const MAX_CONDITION: f64 = 1e12;

/// Boundary matrix `Lambda = [[u, alpha conj(w)], [(1-alpha) w, v]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryCondition<T> {
    pub u: T,
    pub v: T,
    pub w: Complex<T>,
}

impl<T: Scalar> BoundaryCondition<T> {
    pub fn new(u: T, v: T, w: Complex<T>) -> Self {
        Self { u, v, w }
    }

    /// `Lambda = 0`, the standard Hamiltonian.
    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), Complex::new(T::zero(), T::zero()))
    }

    pub fn lambda_matrix(&self, alpha: T) -> Mat2<T> {
        Mat2::new(
            Complex::new(self.u, T::zero()),
            self.w.conj() * alpha,
            self.w * (T::one() - alpha),
            Complex::new(self.v, T::zero()),
        )
    }

    /// `‖D Lambda - Lambda* D‖_F` with `D = diag(1-alpha, alpha)`.
    pub fn symmetry_residual(&self, alpha: T) -> T {
        let d = d_matrix(alpha);
        let l = self.lambda_matrix(alpha);
        (d * l - l.adjoint() * d).frobenius()
    }

    /// Reads `(u, v, w)` off a matrix assumed to satisfy `D Lambda = Lambda* D`.
    pub fn from_matrix(l: &Mat2<T>, alpha: T) -> Self {
        Self::new(l.get(0, 0).re, l.get(1, 1).re, l.get(1, 0) / (T::one() - alpha))
    }
}

/// Rescaled boundary parameters `(xi, eta, zeta)` with `zeta >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RescaledBC<T> {
    pub xi: T,
    pub eta: T,
    pub zeta: T,
}

impl<T: Scalar> RescaledBC<T> {
    pub fn new(xi: T, eta: T, zeta: T) -> Result<Self> {
        if !(zeta >= T::zero()) || !xi.is_finite() || !eta.is_finite() || !zeta.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "rescaled parameters ({}, {}, {}) need finite values and zeta >= 0",
                xi.as_f64(),
                eta.as_f64(),
                zeta.as_f64()
            )));
        }
        Ok(Self { xi, eta, zeta })
    }

    pub fn zero() -> Self {
        Self { xi: T::zero(), eta: T::zero(), zeta: T::zero() }
    }

    /// `xi eta - zeta²`.
    pub fn det(&self) -> T {
        self.xi * self.eta - self.zeta * self.zeta
    }
}

/// A unitary map between the deficiency subspaces, in the fixed orthonormal bases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtensionUnitary<T> {
    matrix: Mat2<T>,
}

impl<T: Scalar> ExtensionUnitary<T> {
    /// Accepts `m` when `‖m* m - I‖_F <= 1e-10`.
    pub fn new(m: Mat2<T>) -> Result<Self> {
        let defect = (m.adjoint() * m - Mat2::identity()).frobenius();
        if !(defect <= T::lit(1e-10)) {
            return Err(Error::InvalidArgument(format!("matrix is not unitary (defect {:e})", defect.as_f64())));
        }
        Ok(Self { matrix: m })
    }

    pub fn matrix(&self) -> &Mat2<T> {
        &self.matrix
    }

    pub fn unitarity_defect(&self) -> T {
        (self.matrix.adjoint() * self.matrix - Mat2::identity()).frobenius()
    }

    /// `e^{i phi} [[a, -conj b], [b, conj a]]` with `(a, b)` uniform on the unit
    /// 3-sphere and `phi` uniform, which is Haar-distributed on U(2).
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut g = [0.0f64; 4];
        for pair in g.chunks_mut(2) {
            let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
            let u2: f64 = rng.gen();
            let rad = (-2.0 * u1.ln()).sqrt();
            pair[0] = rad * (std::f64::consts::TAU * u2).cos();
            pair[1] = rad * (std::f64::consts::TAU * u2).sin();
        }
        let n = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        let a = Complex::new(T::lit(g[0] / n), T::lit(g[1] / n));
        let b = Complex::new(T::lit(g[2] / n), T::lit(g[3] / n));
        let phi = T::lit(rng.gen_range(0.0..std::f64::consts::TAU));
        let ph = Complex::new(phi.cos(), phi.sin());
        Self { matrix: Mat2::new(a, -b.conj(), b, a.conj()).scale(ph) }
    }
}

pub(crate) fn d_matrix<T: Scalar>(alpha: T) -> Mat2<T> {
    Mat2::diag_real(T::one() - alpha, alpha)
}

fn xi_scale<T: Scalar>(p: &ModelParams<T>) -> T {
    let a = p.alpha();
    p.half_b().powf(T::one() - a) * gamma(a).expect("alpha in ]0,1[") * rgamma(T::lit(2.0) - a)
}

fn eta_scale<T: Scalar>(p: &ModelParams<T>) -> T {
    let a = p.alpha();
    p.half_b().powf(a) * gamma(T::one() - a).expect("alpha in ]0,1[") * rgamma(T::one() + a)
}

/// `(u, v, w) -> (xi, eta, zeta)`.
pub fn rescale<T: Scalar>(bc: &BoundaryCondition<T>, p: &ModelParams<T>) -> RescaledBC<T> {
    RescaledBC { xi: xi_scale(p) * bc.u, eta: eta_scale(p) * bc.v, zeta: p.half_b().sqrt() * bc.w.norm() }
}

/// Inverse of [`rescale`] choosing the representative with real `w >= 0`.
pub fn unscale<T: Scalar>(rbc: &RescaledBC<T>, p: &ModelParams<T>) -> BoundaryCondition<T> {
    BoundaryCondition::new(rbc.xi / xi_scale(p), rbc.eta / eta_scale(p), Complex::new(rbc.zeta / p.half_b().sqrt(), T::zero()))
}

/// Deficiency-basis normalization constants `(N_{-1}, N_0)`.
pub fn norm_constants<T: Scalar>(p: &ModelParams<T>) -> Result<(T, T)> {
    let a = p.alpha();
    let s = T::one() / (T::lit(2.0) * p.b());
    let half = T::lit(0.5);
    let common = (sin_pi(a) / (T::lit(2.0) * T::PI())).sqrt();
    let im_m1 = (rgamma_complex(Complex::new(a - half, s)) * rgamma_complex(Complex::new(half, -s))).im;
    let im_0 = (rgamma_complex(Complex::new(half, s)) * rgamma_complex(Complex::new(half + a, -s))).im;
    for v in [im_m1, im_0] {
        if !(v > T::zero()) {
            return Err(Error::NonPositiveNorm { value: v.as_f64() });
        }
    }
    let n_m1 = p.half_b().powf(half * (T::one() - a)) * common / im_m1.sqrt();
    let n_0 = p.half_b().powf(half * a) * common / im_0.sqrt();
    Ok((n_m1, n_0))
}

/// `N_m^{-2}` by quadrature of `|g²_m(i; r)|² r` on `[0, r_max]`, substituting
/// `r = s²` to tame the origin singularity. Cut off at `B r²/2 = 80`.
pub fn norm_quadrature<T: Scalar>(m: SectorIndex, p: &ModelParams<T>) -> Result<T> {
    if !m.is_critical() {
        return Err(Error::InvalidArgument(format!("sector {} has no square-integrable deficiency solution", m.0)));
    }
    let lam = Complex::new(T::zero(), T::one());
    let s_max = (T::lit(160.0) / p.b()).sqrt().sqrt();
    let failure = std::cell::Cell::new(None);
    let q = integrate(
        |s: T| {
            if s == T::zero() {
                return T::zero();
            }
            let r = s * s;
            match decaying_solution_complex(m, lam, p, r) {
                Ok(g2) => T::lit(2.0) * g2.norm_sqr() * r * s,
                Err(e) => {
                    failure.set(Some(e));
                    T::zero()
                }
            }
        },
        T::zero(),
        s_max,
        T::lit(1e-14),
        T::lit(1e-10),
        2000,
    );
    match failure.into_inner() {
        Some(e) => Err(e),
        None => Ok(q.value),
    }
}

/// Coefficients of `r^{-|m+alpha|}` (`a`) and `r^{|m+alpha|}` (`b`) in the
/// decaying solution of the two critical sectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryCoeffs<S> {
    pub a_m1: S,
    pub b_m1: S,
    pub a_0: S,
    pub b_0: S,
}

/// `(a_{-1}, b_{-1}, a_0, b_0)` at real `lambda`; every `1/Gamma` via `rgamma`.
pub fn boundary_coeffs<T: Scalar>(lambda: T, p: &ModelParams<T>) -> BoundaryCoeffs<T> {
    let a = p.alpha();
    let half = T::lit(0.5);
    let x = lambda / (T::lit(2.0) * p.b());
    let g = |v: T| gamma(v).expect("non-integer gamma argument");
    let r_half = rgamma(half - x);
    BoundaryCoeffs {
        a_m1: g(T::one() - a) * r_half * p.half_b().powf(a - T::one()),
        b_m1: g(a - T::one()) * rgamma(a - half - x),
        a_0: g(a) * rgamma(half + a - x) * p.half_b().powf(-a),
        b_0: g(-a) * r_half,
    }
}

/// Same coefficients at complex `lambda`.
pub fn boundary_coeffs_complex<T: Scalar>(lambda: Complex<T>, p: &ModelParams<T>) -> BoundaryCoeffs<Complex<T>> {
    let a = p.alpha();
    let half = T::lit(0.5);
    let x = lambda / (T::lit(2.0) * p.b());
    let g = |v: T| gamma(v).expect("non-integer gamma argument");
    let one = Complex::new(T::one(), T::zero());
    let r_half = rgamma_complex(one * half - x);
    BoundaryCoeffs {
        a_m1: r_half * (g(T::one() - a) * p.half_b().powf(a - T::one())),
        b_m1: rgamma_complex(one * (a - half) - x) * g(a - T::one()),
        a_0: rgamma_complex(one * (half + a) - x) * (g(a) * p.half_b().powf(-a)),
        b_0: r_half * g(-a),
    }
}

/// Deficiency coefficients `a_{m,±}`, `b_{m,±}` and `det M_m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeficiencyCoeffs<T> {
    pub plus: BoundaryCoeffs<Complex<T>>,
    pub minus: BoundaryCoeffs<Complex<T>>,
    pub det_m1: Complex<T>,
    pub det_0: Complex<T>,
}

pub fn deficiency_coeffs<T: Scalar>(p: &ModelParams<T>) -> DeficiencyCoeffs<T> {
    let plus = boundary_coeffs_complex(Complex::new(T::zero(), T::one()), p);
    let minus = boundary_coeffs_complex(Complex::new(T::zero(), -T::one()), p);
    DeficiencyCoeffs {
        plus,
        minus,
        det_m1: plus.a_m1 * minus.b_m1 - plus.b_m1 * minus.a_m1,
        det_0: plus.a_0 * minus.b_0 - plus.b_0 * minus.a_0,
    }
}

/// The diagonal blocks `Phi_{1,±} = diag(N a)` and `Phi_{2,±} = diag(N b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiBlocks<T> {
    pub p1_plus: Mat2<T>,
    pub p1_minus: Mat2<T>,
    pub p2_plus: Mat2<T>,
    pub p2_minus: Mat2<T>,
}

pub fn phi_blocks<T: Scalar>(p: &ModelParams<T>) -> Result<PhiBlocks<T>> {
    let (n_m1, n_0) = norm_constants(p)?;
    let d = deficiency_coeffs(p);
    Ok(PhiBlocks {
        p1_plus: Mat2::diag(d.plus.a_m1 * n_m1, d.plus.a_0 * n_0),
        p1_minus: Mat2::diag(d.minus.a_m1 * n_m1, d.minus.a_0 * n_0),
        p2_plus: Mat2::diag(d.plus.b_m1 * n_m1, d.plus.b_0 * n_0),
        p2_minus: Mat2::diag(d.minus.b_m1 * n_m1, d.minus.b_0 * n_0),
    })
}

/// Largest block residual of `J* [[0, D], [-D, 0]] J = i diag(I, -I)`.
pub fn j_identity_residual<T: Scalar>(p: &ModelParams<T>) -> Result<T> {
    let b = phi_blocks(p)?;
    let d = d_matrix(p.alpha());
    let block = |x1: &Mat2<T>, x2: &Mat2<T>, y1: &Mat2<T>, y2: &Mat2<T>| x1.adjoint() * d * *y2 - x2.adjoint() * d * *y1;
    let i = Complex::new(T::zero(), T::one());
    let eye = Mat2::identity();
    let r11 = block(&b.p1_plus, &b.p2_plus, &b.p1_plus, &b.p2_plus) - eye.scale(i);
    let r12 = block(&b.p1_plus, &b.p2_plus, &b.p1_minus, &b.p2_minus);
    let r21 = block(&b.p1_minus, &b.p2_minus, &b.p1_plus, &b.p2_plus);
    let r22 = block(&b.p1_minus, &b.p2_minus, &b.p1_minus, &b.p2_minus) + eye.scale(i);
    Ok([r11, r12, r21, r22].iter().map(Mat2::frobenius).fold(T::zero(), T::max))
}

/// `Lambda = (Phi_{1,+} + Phi_{1,-} U)(Phi_{2,+} + Phi_{2,-} U)^{-1}`.
pub fn lambda_from_unitary<T: Scalar>(u: &ExtensionUnitary<T>, p: &ModelParams<T>) -> Result<BoundaryCondition<T>> {
    let b = phi_blocks(p)?;
    let x1 = b.p1_plus + b.p1_minus * u.matrix;
    let x2 = b.p2_plus + b.p2_minus * u.matrix;
    let inv = x2.inverse(T::lit(MAX_CONDITION)).map_err(|_| Error::OutsideChart { condition: x2.cond().as_f64() })?;
    Ok(BoundaryCondition::from_matrix(&(x1 * inv), p.alpha()))
}

/// `V_± = ∓ i D (Phi_{2,±} Lambda - Phi_{1,±})`.
pub fn v_matrices<T: Scalar>(bc: &BoundaryCondition<T>, p: &ModelParams<T>) -> Result<(Mat2<T>, Mat2<T>)> {
    let b = phi_blocks(p)?;
    let d = d_matrix(p.alpha());
    let l = bc.lambda_matrix(p.alpha());
    let i = Complex::new(T::zero(), T::one());
    let v_plus = (d * (b.p2_plus * l - b.p1_plus)).scale(-i);
    let v_minus = (d * (b.p2_minus * l - b.p1_minus)).scale(i);
    Ok((v_plus, v_minus))
}

/// `U = V_+ V_-^{-1}`.
pub fn unitary_from_lambda<T: Scalar>(bc: &BoundaryCondition<T>, p: &ModelParams<T>) -> Result<ExtensionUnitary<T>> {
    let (v_plus, v_minus) = v_matrices(bc, p)?;
    let u = v_plus * v_minus.inverse(T::lit(MAX_CONDITION))?;
    Ok(ExtensionUnitary { matrix: u })
}

/// The unitary of the standard Hamiltonian (`Lambda = 0`).
pub fn ab_unitary<T: Scalar>(p: &ModelParams<T>) -> ExtensionUnitary<T> {
    let s = T::one() / (T::lit(2.0) * p.b());
    let half = T::lit(0.5);
    let ratio = |re: T| -rgamma_complex(Complex::new(re, -s)) / rgamma_complex(Complex::new(re, s));
    ExtensionUnitary { matrix: Mat2::diag(ratio(half), ratio(half + p.alpha())) }
}
