//! Point spectrum, eigenfunctions and Green functions of the Aharonov-Bohm
//! Hamiltonian in a homogeneous magnetic field, for the full four-parameter
//! family of self-adjoint boundary conditions at the flux line.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`] - gamma, polygamma, Kummer/Tricomi confluent hypergeometric
//!   and generalized Laguerre functions.
//! * [`abmodel`] - the standard Hamiltonian: Landau-type eigenvalues,
//!   eigenfunctions, radial solutions and the sector Green function.
//! * [`extensions`] - boundary matrices `Lambda`, the unitary parametrization,
//!   deficiency normalization and the energy-dependent boundary coefficients.
//! * [`secular`] - the transcendental eigenvalue equation of the two critical
//!   sectors, its root localization tables and perturbative root series.
//! * [`spectrum`] - assembled spectra, critical eigenvectors and parameter sweeps.
//! * [`verify`] - self-check suites used by the command-line tool.
//!
//! All numerical code is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases at the crate root fix the scalar to `f64`.

// `!(x > y)` guards reject NaN along with the failing range; frozen oracle
// constants keep every digit they were computed with.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod abmodel;
pub mod error;
pub mod extensions;
pub mod linalg;
pub mod quad;
pub mod scalar;
pub mod secular;
pub mod specfun;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex;
pub use scalar::Scalar;

pub use abmodel::{ModelParams, RadialPoint, SectorIndex};
pub use extensions::{BoundaryCondition, ExtensionUnitary, RescaledBC};
pub use secular::{IntervalKind, Root, RootInterval, RootOrigin, SecularParams};
pub use spectrum::{BoundarySpec, CriticalEigenfunction, EigenvalueRecord, SpectralSource, SweepTable};

pub type C64 = Complex<f64>;
pub type ModelParams64 = ModelParams<f64>;
pub type BoundaryCondition64 = BoundaryCondition<f64>;
pub type RescaledBC64 = RescaledBC<f64>;
pub type SecularParams64 = SecularParams<f64>;
pub type Root64 = Root<f64>;
pub type RootInterval64 = RootInterval<f64>;
pub type EigenvalueRecord64 = EigenvalueRecord<f64>;
pub type SweepTable64 = SweepTable<f64>;
pub type BoundarySpec64 = BoundarySpec<f64>;
pub type ExtensionUnitary64 = ExtensionUnitary<f64>;
pub type CriticalEigenfunction64 = CriticalEigenfunction<f64>;
