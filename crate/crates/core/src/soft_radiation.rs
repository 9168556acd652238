//! Angular densities of soft graviton emission: the transverse-traceless
//! polarization contraction, the eikonal emission density of an elastic
//! event, and the squared soft-factor difference between two superposed
//! final states.
//!
//! All densities are evaluated with the graviton frequency scaled out (the
//! eikonal factors are homogeneous in ω), so the frequency integral of every
//! consumer reduces to the exact logarithm ln(Λ/λ).

use crate::kinematics::{minkowski_dot, ElasticKinematics, FourVector, SuperpositionPair};
use crate::{Error, Result};

// Denominators E - P·k̂ below this fraction of E are treated as collinear
// singularities; for m > 0 they are bounded below by m²/2E and never trip.
const COLLINEAR_GUARD: f64 = 1e-14;

/// Emission direction on the unit sphere, parametrized by polar cosine and
/// azimuth. Fields are public for use as integration variables; `new`
/// validates the ranges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitDirection {
    pub z: f64,
    pub azimuth: f64,
}

impl UnitDirection {
    pub fn new(z: f64, azimuth: f64) -> Result<Self> {
        if !z.is_finite() || z.abs() > 1.0 || !azimuth.is_finite() {
            return Err(Error::Domain(format!(
                "direction requires |z| <= 1 and finite azimuth, got z={z}, azimuth={azimuth}"
            )));
        }
        Ok(UnitDirection { z, azimuth })
    }

    /// Cartesian unit vector; the polar axis is z.
    pub fn unit_vector(&self) -> [f64; 3] {
        let s = ((1.0 - self.z) * (1.0 + self.z)).sqrt();
        let (sin_a, cos_a) = self.azimuth.sin_cos();
        [s * cos_a, s * sin_a, self.z]
    }
}

/// Frequency window and couplings of a soft-emission calculation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmissionSpec {
    /// Infrared frequency cutoff λ.
    pub lambda_ir: f64,
    /// Ultraviolet frequency cutoff Λ.
    pub lambda_uv: f64,
    /// Newton constant G.
    pub newton_g: f64,
    /// Squared hard-amplitude magnitude |M₀|²; pure scale factor.
    pub m0_squared: f64,
}

impl EmissionSpec {
    pub fn new(lambda_ir: f64, lambda_uv: f64, newton_g: f64, m0_squared: f64) -> Result<Self> {
        let spec = EmissionSpec { lambda_ir, lambda_uv, newton_g, m0_squared };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.lambda_ir.is_finite()
            || !self.lambda_uv.is_finite()
            || !(self.lambda_ir > 0.0)
            || !(self.lambda_uv > self.lambda_ir)
        {
            return Err(Error::Domain(format!(
                "frequency window requires 0 < lambda_ir < lambda_uv, got [{}, {}]",
                self.lambda_ir, self.lambda_uv
            )));
        }
        if !self.newton_g.is_finite() || !(self.newton_g > 0.0) {
            return Err(Error::Domain(format!(
                "coupling must satisfy G > 0, got {}",
                self.newton_g
            )));
        }
        if !self.m0_squared.is_finite() || self.m0_squared < 0.0 {
            return Err(Error::Domain(format!(
                "|M0|^2 must be finite and >= 0, got {}",
                self.m0_squared
            )));
        }
        Ok(())
    }

    /// Gravitational coupling κ = √(8πG).
    pub fn kappa(&self) -> f64 {
        (8.0 * std::f64::consts::PI * self.newton_g).sqrt()
    }

    /// The exact frequency integral ∫ dω/ω = ln(Λ/λ).
    pub fn log_factor(&self) -> f64 {
        (self.lambda_uv / self.lambda_ir).ln()
    }
}

fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross3(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Helicity-summed contraction Σ_ν (a·f_ν·a)(b·f_ν·b) of two spatial vectors
/// with the transverse-traceless polarization tensors for direction k̂:
/// ½[2(a·u·b)² − (a·u·a)(b·u·b)] with u_ij = δ_ij − k̂_i k̂_j.
pub fn polarization_contraction(a: &[f64; 3], b: &[f64; 3], khat: UnitDirection) -> f64 {
    let k = khat.unit_vector();
    let ak = dot3(a, &k);
    let bk = dot3(b, &k);
    let aub = dot3(a, b) - ak * bk;
    let aua = dot3(a, a) - ak * ak;
    let bub = dot3(b, b) - bk * bk;
    0.5 * (2.0 * aub * aub - aua * bub)
}

fn leg_denominator(v: &FourVector, k: &[f64; 3]) -> Result<f64> {
    let den = v.t - v.x * k[0] - v.y * k[1] - v.z * k[2];
    if den < COLLINEAR_GUARD * v.t {
        return Err(Error::Collinear { denominator: den, energy: v.t });
    }
    Ok(den)
}

/// ω²-scaled eikonal emission density of an elastic event in direction k̂:
/// the half-weighted diagonal terms m⁴/(V·k)² over the four legs plus the
/// six signed cross terms (2(V·W)² − m⁴)/((V·k)(W·k)), outgoing legs
/// entering with sign +, incoming with −.
///
/// Its solid-angle integral equals 8πm² times the D-function combination
/// 1 + D(p·p′/m²) − D(p·q/m²) − D(p·q′/m²).
pub fn eikonal_bracket_density(kin: &ElasticKinematics, khat: UnitDirection) -> Result<f64> {
    let k = khat.unit_vector();
    let legs = [
        &kin.outgoing.0,
        &kin.outgoing.1,
        &kin.incoming.0,
        &kin.incoming.1,
    ];
    let signs = [1.0f64, 1.0, -1.0, -1.0];
    let mut den = [0.0f64; 4];
    for (i, v) in legs.iter().enumerate() {
        den[i] = leg_denominator(v, &k)?;
    }
    let m2 = kin.mass * kin.mass;
    let m4 = m2 * m2;
    let mut acc = 0.0;
    for i in 0..4 {
        acc += 0.5 * m4 / (den[i] * den[i]);
    }
    for i in 0..4 {
        for j in (i + 1)..4 {
            let vw = minkowski_dot(legs[i], legs[j]);
            acc += signs[i] * signs[j] * (2.0 * vw * vw - m4) / (den[i] * den[j]);
        }
    }
    Ok(acc)
}

// Transverse amplitudes (P·f₊·P, P·f×·P)/(V·k) of one leg in an explicit
// polarization basis e₁, e₂ ⊥ k̂.
fn transverse_amplitudes(
    v: &FourVector,
    k: &[f64; 3],
    e1: &[f64; 3],
    e2: &[f64; 3],
) -> Result<[f64; 2]> {
    let den = leg_denominator(v, k)?;
    let p = [v.x, v.y, v.z];
    let p1 = dot3(&p, e1);
    let p2 = dot3(&p, e2);
    Ok([
        (p1 * p1 - p2 * p2) / (std::f64::consts::SQRT_2 * den),
        std::f64::consts::SQRT_2 * p1 * p2 / den,
    ])
}

/// ω²-scaled, helicity-summed squared difference of the two branches' soft
/// factors in direction k̂, with the hard amplitude stripped and one factor
/// (2π)^{-3/2} per soft factor retained.
///
/// Manifestly non-negative (a sum of two squares); exactly zero when the
/// branches coincide, since the per-leg amplitudes cancel pairwise.
pub fn branch_difference_density(pair: &SuperpositionPair, khat: UnitDirection) -> Result<f64> {
    let k = khat.unit_vector();
    // Deterministic transverse basis; the reference axis switch keeps the
    // cross product well-conditioned for every k̂.
    let reference = if k[2].abs() < 0.9 { [0.0, 0.0, 1.0] } else { [1.0, 0.0, 0.0] };
    let mut e1 = cross3(&reference, &k);
    let n = dot3(&e1, &e1).sqrt();
    e1 = [e1[0] / n, e1[1] / n, e1[2] / n];
    let e2 = cross3(&k, &e1);

    let pairs = [
        (&pair.base.outgoing.0, &pair.branch2.0),
        (&pair.base.outgoing.1, &pair.branch2.1),
    ];
    let mut diff = [0.0f64; 2];
    for (leg1, leg2) in pairs {
        let a1 = transverse_amplitudes(leg1, &k, &e1, &e2)?;
        let a2 = transverse_amplitudes(leg2, &k, &e1, &e2)?;
        diff[0] += a1[0] - a2[0];
        diff[1] += a1[1] - a2[1];
    }
    let norm = (2.0 * std::f64::consts::PI).powi(3);
    Ok((diff[0] * diff[0] + diff[1] * diff[1]) / norm)
}
