//! Numerical library for soft-graviton bremsstrahlung decoherence quantities:
//! relativistic two-body kinematics, the eikonal angular densities radiated in
//! an elastic collision, the logarithmic emission and interference-suppression
//! coefficients for superposed final states, the Bloch–Nordsieck angular
//! coefficient X and its decay exponents, and a finite-time evaluation of the
//! radiated-factor growth.
//!
//! Closed forms and numerical quadrature are kept as independent routes
//! throughout: every coefficient operation is analytic, while the underlying
//! angular densities can be integrated with [`quadrature`] and compared.
//!
//! Conventions: metric signature (+,−,−,−), natural units c = ħ = 1, angles in
//! radians, gravitational coupling κ² = 8πG. All functions are pure and
//! reentrant; all types are plain immutable values.

pub mod bloch_nordsieck;
pub mod decoherence;
pub mod kinematics;
pub mod quadrature;
pub mod soft_radiation;
pub mod special_functions;

/// Error type shared by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Adaptive integration exhausted its subdivision budget. The best
    /// estimate obtained so far is carried along with its error estimate.
    #[error("quadrature did not converge: best estimate {value:e} ± {error_estimate:e}")]
    NonConvergence { value: f64, error_estimate: f64 },
    /// An emission direction is collinear with a massless leg, so an eikonal
    /// denominator underflowed its guard.
    #[error("collinear emission direction: denominator {denominator:e} for leg energy {energy:e}")]
    Collinear { denominator: f64, energy: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
