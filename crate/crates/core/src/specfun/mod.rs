//! Special functions consumed by the rest of the crate.
//!
//! Every reciprocal gamma factor elsewhere in the crate is routed through
//! [`rgamma`] / [`rgamma_complex`], which return exact zeros at the poles of Γ
//! instead of infinities.

mod complex_gamma;
mod confluent;
mod gamma;
mod laguerre;
mod polygamma;

pub use complex_gamma::{gamma_complex, rgamma_complex, sin_pi_complex};
pub use confluent::{kummer_f, kummer_f_complex, tricomi_g, tricomi_g_complex, ASYMPTOTIC_SWITCH, MAX_TERMS};
pub use gamma::{cos_pi, gamma, ln_gamma, ln_gamma_ratio, rgamma, sin_pi, SignedLogGamma};
pub use laguerre::{laguerre, laguerre_sequence};
pub use polygamma::{digamma, polygamma, EULER_GAMMA, ZETA3};
