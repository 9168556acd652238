//! Logarithmic emission and interference-suppression coefficients of an
//! elastic event and of a superposed pair of final states, in four regimes:
//! exact massive, small-angle massive, exact massless, small-angle massless.
//!
//! All four operations share one normalization convention, recorded in
//! `convention_tag`: the massive prefactor is κ²m²/(2π²) (times the hard
//! amplitude factor and, for interference, an overall minus sign), and the
//! massless prefactor is κ²/(2π²) with the bracket carrying the Q² scale.

use crate::kinematics::{minkowski_dot, ElasticKinematics, SuperpositionPair};
use crate::soft_radiation::EmissionSpec;
use crate::special_functions::{d_clamped, d_deriv_clamped};
use crate::{Error, Result};

pub const MASSIVE_CONVENTION: &str = "kappa2-m2-over-2pi2";
pub const MASSLESS_CONVENTION: &str = "kappa2-over-2pi2";

/// A coefficient factored into its exact multiplicative parts:
/// `total = bracket_value * log_factor * prefactor`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientResult {
    /// Kinematic combination (D-function bracket or its expansion).
    pub bracket_value: f64,
    /// Frequency-window logarithm ln(Λ/λ).
    pub log_factor: f64,
    /// Coupling combination, including hard-amplitude factors and sign.
    pub prefactor: f64,
    pub total: f64,
    pub convention_tag: &'static str,
}

impl CoefficientResult {
    fn assemble(
        bracket_value: f64,
        log_factor: f64,
        prefactor: f64,
        convention_tag: &'static str,
    ) -> Self {
        CoefficientResult {
            bracket_value,
            log_factor,
            prefactor,
            total: bracket_value * log_factor * prefactor,
            convention_tag,
        }
    }
}

fn require_massive(kin: &ElasticKinematics) -> Result<()> {
    if kin.mass <= 0.0 {
        return Err(Error::Domain(
            "massive coefficient requires m > 0; use the massless operations".into(),
        ));
    }
    Ok(())
}

// κ²m²/(2π²) = 4Gm²/π.
fn massive_prefactor(spec: &EmissionSpec, m: f64) -> f64 {
    let kappa2 = 8.0 * std::f64::consts::PI * spec.newton_g;
    kappa2 * m * m / (2.0 * std::f64::consts::PI * std::f64::consts::PI)
}

/// Coefficient of ln(Λ/λ) in the single-event soft-emission probability:
/// prefactor |M₀|² κ²m²/(2π²), bracket 1 + D(p·p′/m²) − D(p·q/m²) − D(p·q′/m²).
///
/// The bracket is grouped as (1 − D(p·q/m²)) + (D(p·p′/m²) − D(p·q′/m²)) with
/// the arguments formed from the Mandelstam identities p·q = m² − t/2 and
/// p·q′ = p·p′ + t/2, so the forward limit θ=0 gives exactly zero.
pub fn emission_log_coefficient(
    kin: &ElasticKinematics,
    spec: &EmissionSpec,
) -> Result<CoefficientResult> {
    require_massive(kin)?;
    spec.validate()?;
    let m2 = kin.mass * kin.mass;
    let x_opposite = minkowski_dot(&kin.incoming.0, &kin.incoming.1) / m2;
    let shift = -kin.t / (2.0 * m2);
    let x_near = 1.0 + shift;
    let x_far = x_opposite - shift;
    let bracket = (1.0 - d_clamped(x_near)) + (d_clamped(x_opposite) - d_clamped(x_far));
    Ok(CoefficientResult::assemble(
        bracket,
        spec.log_factor(),
        spec.m0_squared * massive_prefactor(spec, kin.mass),
        MASSIVE_CONVENTION,
    ))
}

/// Interference-suppression coefficient of a massive superposed pair:
/// total = −prefactor·Re(M₁M₂*)·[1 + D(q₁·q₁′/m²) − D(q₁·q₂/m²) −
/// D(q₁·q₂′/m²)]·ln(Λ/λ).
///
/// The near-diagonal arguments are formed from the recorded separation
/// invariant, q₁·q₂ = m² + δq·q₁ and q₁·q₂′ = q₁·q₁′ − δq·q₁ (exact by
/// energy-momentum conservation), so coinciding branches give exactly zero.
pub fn interference_coefficient(
    pair: &SuperpositionPair,
    spec: &EmissionSpec,
    m1m2_re: f64,
) -> Result<CoefficientResult> {
    require_massive(&pair.base)?;
    spec.validate()?;
    if !m1m2_re.is_finite() {
        return Err(Error::Domain(format!("Re(M1 M2*) must be finite, got {m1m2_re}")));
    }
    let m2 = pair.base.mass * pair.base.mass;
    let x_branch = minkowski_dot(&pair.base.outgoing.0, &pair.base.outgoing.1) / m2;
    let shift = pair.delta_q_dot_q1 / m2;
    let x_near = 1.0 + shift;
    let x_far = x_branch - shift;
    let bracket = (1.0 - d_clamped(x_near)) + (d_clamped(x_branch) - d_clamped(x_far));
    Ok(CoefficientResult::assemble(
        bracket,
        spec.log_factor(),
        -m1m2_re * massive_prefactor(spec, pair.base.mass),
        MASSIVE_CONVENTION,
    ))
}

/// Small-angle expansion of [`interference_coefficient`]: the bracket is
/// replaced by (2Q² sin²(φ/2)/m²)·[D′(p·p′/m²) − D′(1)], every other factor
/// unchanged. Accuracy degrades as O(φ²); no hard cutoff is imposed.
pub fn interference_coefficient_small_angle(
    kin: &ElasticKinematics,
    phi: f64,
    spec: &EmissionSpec,
    m1m2_re: f64,
) -> Result<CoefficientResult> {
    require_massive(kin)?;
    spec.validate()?;
    if !phi.is_finite() || !(0.0..std::f64::consts::PI).contains(&phi) {
        return Err(Error::Domain(format!(
            "superposition angle must lie in [0, pi), got {phi}"
        )));
    }
    if !m1m2_re.is_finite() {
        return Err(Error::Domain(format!("Re(M1 M2*) must be finite, got {m1m2_re}")));
    }
    let m2 = kin.mass * kin.mass;
    let x_opposite = minkowski_dot(&kin.incoming.0, &kin.incoming.1) / m2;
    let q = kin.cm_momentum;
    let half = (0.5 * phi).sin();
    let separation = 2.0 * q * q * half * half / m2;
    let bracket = separation * (d_deriv_clamped(x_opposite) - d_deriv_clamped(1.0));
    Ok(CoefficientResult::assemble(
        bracket,
        spec.log_factor(),
        -m1m2_re * massive_prefactor(spec, kin.mass),
        MASSIVE_CONVENTION,
    ))
}

/// Interference-suppression coefficient for massless emitters:
/// total = −prefactor·Re(M₁M₂*)·[a ln(2a/s) − b ln(2b/s) − c ln(2c/s)]·ln(Λ/λ)
/// with a = q₁·q₁′, b = q₁·q₂, c = q₁·q₂′ and prefactor κ²/(2π²).
///
/// The companion bracket proportional to q₁·(q₁′ − q₂ − q₂′) = −m² vanishes
/// identically at m = 0 and is dropped analytically rather than evaluated as
/// 0 · ln(s/m²).
pub fn interference_coefficient_massless(
    pair: &SuperpositionPair,
    s: f64,
    spec: &EmissionSpec,
    m1m2_re: f64,
) -> Result<CoefficientResult> {
    if pair.base.mass != 0.0 {
        return Err(Error::Domain(format!(
            "massless coefficient requires m = 0, got m = {}",
            pair.base.mass
        )));
    }
    spec.validate()?;
    if !s.is_finite() || s <= 0.0 {
        return Err(Error::Domain(format!("invariant s must be positive, got {s}")));
    }
    if !m1m2_re.is_finite() {
        return Err(Error::Domain(format!("Re(M1 M2*) must be finite, got {m1m2_re}")));
    }
    let a = minkowski_dot(&pair.base.outgoing.0, &pair.base.outgoing.1);
    let b = pair.delta_q_dot_q1;
    let c = a - b;
    for (name, value) in [("q1·q1'", a), ("q1·q2", b), ("q1·q2'", c)] {
        if !(value > 0.0) {
            return Err(Error::Domain(format!(
                "degenerate massless superposition: {name} = {value} is not positive"
            )));
        }
    }
    let bracket = a * (2.0 * a / s).ln() - b * (2.0 * b / s).ln() - c * (2.0 * c / s).ln();
    let kappa2 = 8.0 * std::f64::consts::PI * spec.newton_g;
    let prefactor = kappa2 / (2.0 * std::f64::consts::PI * std::f64::consts::PI);
    Ok(CoefficientResult::assemble(
        bracket,
        spec.log_factor(),
        -m1m2_re * prefactor,
        MASSLESS_CONVENTION,
    ))
}

/// Small-angle massless coefficient: bracket 2Q² sin²(φ/2)·[2 ln sin(φ/2) − 1]
/// with a positive prefactor κ²/(2π²). The bracket itself is negative for all
/// φ < 2 arcsin(√e⁻¹), so the small-angle total carries the same sign as the
/// exact massless coefficient.
pub fn interference_coefficient_massless_small_angle(
    q_momentum: f64,
    phi: f64,
    spec: &EmissionSpec,
    m1m2_re: f64,
) -> Result<CoefficientResult> {
    spec.validate()?;
    if !q_momentum.is_finite() || q_momentum <= 0.0 {
        return Err(Error::Domain(format!(
            "CM momentum must be finite and > 0, got {q_momentum}"
        )));
    }
    if !phi.is_finite() || phi <= 0.0 || phi >= std::f64::consts::FRAC_PI_2 {
        return Err(Error::Domain(format!(
            "small-angle massless form requires 0 < phi < pi/2, got {phi}"
        )));
    }
    if !m1m2_re.is_finite() {
        return Err(Error::Domain(format!("Re(M1 M2*) must be finite, got {m1m2_re}")));
    }
    let half = (0.5 * phi).sin();
    let bracket = 2.0 * q_momentum * q_momentum * half * half * (2.0 * half.ln() - 1.0);
    let kappa2 = 8.0 * std::f64::consts::PI * spec.newton_g;
    let prefactor = kappa2 / (2.0 * std::f64::consts::PI * std::f64::consts::PI);
    Ok(CoefficientResult::assemble(
        bracket,
        spec.log_factor(),
        m1m2_re * prefactor,
        MASSLESS_CONVENTION,
    ))
}
