//! Two-branch soft-emission decoherence machinery: the angular density ξ of
//! the radiated-factor growth rate, its solid-angle integral X with closed
//! form at zero opening angle, the power-law decay exponents ν, and the
//! finite-time radiated factor with the frequency integral done analytically
//! through cosine integrals.

use crate::quadrature::{integrate_sphere, integrate_sphere_axisym, Quadrature, QuadratureSpec};
use crate::soft_radiation::UnitDirection;
use crate::special_functions::cin;
use crate::{Error, Result};

use std::f64::consts::PI;

/// Two recoil branches of equal speed separated by an opening angle.
///
/// The canonical frame puts v⃗₊ along +z and v⃗₋ in the x–z plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchVelocities {
    /// Common speed v, 0 ≤ v < 1.
    pub speed: f64,
    /// Lorentz factor 1/√(1−v²), formed as 1/√((1−v)(1+v)).
    pub gamma: f64,
    /// Angle δ between the two branch velocities, in [0, π].
    pub opening_angle: f64,
}

impl BranchVelocities {
    pub fn new(speed: f64, opening_angle: f64) -> Result<Self> {
        if !speed.is_finite() || !(0.0..1.0).contains(&speed) {
            return Err(Error::Domain(format!(
                "branch speed must satisfy 0 <= v < 1, got {speed}"
            )));
        }
        if !opening_angle.is_finite() || !(0.0..=PI).contains(&opening_angle) {
            return Err(Error::Domain(format!(
                "opening angle must lie in [0, pi], got {opening_angle}"
            )));
        }
        let gamma = 1.0 / ((1.0 - speed) * (1.0 + speed)).sqrt();
        Ok(BranchVelocities { speed, gamma, opening_angle })
    }
}

/// Observation time and frequency window of a finite-time evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiniteTimeSpec {
    pub time: f64,
    /// IR frequency cutoff λ.
    pub ir_cutoff: f64,
    /// UV frequency cutoff Λ.
    pub uv_cutoff: f64,
    /// Reference frequency ω_R used when reporting ln(ω_R t).
    pub reference_frequency: f64,
}

impl FiniteTimeSpec {
    pub fn new(time: f64, ir_cutoff: f64, uv_cutoff: f64, reference_frequency: f64) -> Result<Self> {
        let spec = FiniteTimeSpec { time, ir_cutoff, uv_cutoff, reference_frequency };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.time.is_finite() || !(self.time > 0.0) {
            return Err(Error::Domain(format!("time must be positive, got {}", self.time)));
        }
        if !self.ir_cutoff.is_finite()
            || !self.uv_cutoff.is_finite()
            || !(self.ir_cutoff > 0.0)
            || !(self.uv_cutoff > self.ir_cutoff)
        {
            return Err(Error::Domain(format!(
                "frequency window requires 0 < ir < uv, got [{}, {}]",
                self.ir_cutoff, self.uv_cutoff
            )));
        }
        if !self.reference_frequency.is_finite() || !(self.reference_frequency > 0.0) {
            return Err(Error::Domain(format!(
                "reference frequency must be positive, got {}",
                self.reference_frequency
            )));
        }
        Ok(())
    }
}

// Polar cosines of k̂ against the two branch velocities: z₊ = k̂·ẑ and
// z₋ = z cos δ + √(1−z²) sin δ cos(azimuth).
fn polar_cosines(branches: &BranchVelocities, khat: UnitDirection) -> (f64, f64) {
    let z = khat.z;
    let (sin_d, cos_d) = branches.opening_angle.sin_cos();
    let sin_theta = ((1.0 - z) * (1.0 + z)).sqrt();
    (z, z * cos_d + sin_theta * sin_d * khat.azimuth.cos())
}

/// Angular density ξ(k̂) of the decoherence growth rate:
/// (Gm²γ²/π²) v⁴ [(cos δ − z₊z₋)² − ½(1−z₊²)(1−z₋²)] / [(1−v z₊)(1−v z₋)].
///
/// The numerator is the transverse-traceless contraction of the two branch
/// velocities; the density is signed and may be negative away from δ = 0.
pub fn xi_density(
    branches: &BranchVelocities,
    newton_g: f64,
    mass: f64,
    khat: UnitDirection,
) -> f64 {
    let v = branches.speed;
    let (z_plus, z_minus) = polar_cosines(branches, khat);
    let cos_d = branches.opening_angle.cos();
    let projected = cos_d - z_plus * z_minus;
    let numerator = projected * projected
        - 0.5 * (1.0 - z_plus * z_plus) * (1.0 - z_minus * z_minus);
    let denom = (1.0 - v * z_plus) * (1.0 - v * z_minus);
    let coupling = newton_g * mass * mass * branches.gamma * branches.gamma / (PI * PI);
    coupling * v.powi(4) * numerator / denom
}

/// Solid-angle integral X = ∫dΩ ξ with full error reporting.
///
/// At δ = 0 the density is azimuth-independent and the azimuthal factor 2π
/// is taken exactly.
pub fn x_coefficient_quadrature(
    branches: &BranchVelocities,
    newton_g: f64,
    mass: f64,
    quad: &QuadratureSpec,
) -> Result<Quadrature> {
    if branches.opening_angle == 0.0 {
        integrate_sphere_axisym(
            |z| xi_density(branches, newton_g, mass, UnitDirection { z, azimuth: 0.0 }),
            quad,
        )
    } else {
        integrate_sphere(|khat| xi_density(branches, newton_g, mass, khat), quad)
    }
}

/// Solid-angle integral X = ∫dΩ ξ.
pub fn x_coefficient(
    branches: &BranchVelocities,
    newton_g: f64,
    mass: f64,
    quad: &QuadratureSpec,
) -> Result<f64> {
    x_coefficient_quadrature(branches, newton_g, mass, quad).map(|q| q.value)
}

// Below this speed the closed form for X at δ = 0 loses digits to
// cancellation (the bracket is O(v⁵) against O(v) terms); the series in v²
// is exact to 1e-18 relative there.
const X0_SERIES_SWITCH: f64 = 0.25;

/// Closed form of X at zero opening angle:
/// X₀ = (4Gm²γ²/(πv)) [2v − (4/3)v³ − (1−v²) ln((1+v)/(1−v))],
/// equal to (16Gm²γ²/π) Σ_{j≥2} v^{2j}/(4j²−1), which is used below v = 0.25.
///
/// Limits: X₀ → 8Gm²γ²/(3π) as v → 1 and X₀ → (16/15)(Gm²/π)v⁴(1 + (3/7)v²)
/// as v → 0.
pub fn x0_closed_form(v: f64, gamma: f64, newton_g: f64, mass: f64) -> Result<f64> {
    if !v.is_finite() || v <= 0.0 || v >= 1.0 {
        return Err(Error::Domain(format!("speed must satisfy 0 < v < 1, got {v}")));
    }
    if !gamma.is_finite() || gamma < 1.0 {
        return Err(Error::Domain(format!("Lorentz factor must be >= 1, got {gamma}")));
    }
    if !newton_g.is_finite() || newton_g <= 0.0 || !mass.is_finite() || mass < 0.0 {
        return Err(Error::Domain(format!(
            "coupling requires G > 0 and m >= 0, got G = {newton_g}, m = {mass}"
        )));
    }
    let coupling = newton_g * mass * mass * gamma * gamma;
    if v < X0_SERIES_SWITCH {
        let v2 = v * v;
        let mut power = v2 * v2;
        let mut sum = 0.0;
        for j in 2u32..40 {
            let term = power / (4 * j * j - 1) as f64;
            sum += term;
            if term < 1e-18 * sum {
                break;
            }
            power *= v2;
        }
        return Ok(16.0 * coupling / PI * sum);
    }
    let bracket = 2.0 * v - 4.0 / 3.0 * v * v * v - (1.0 - v) * (1.0 + v) * 2.0 * v.atanh();
    Ok(4.0 * coupling / (PI * v) * bracket)
}

/// Relativistic decay exponent ν = (Gm²γ²/π) δ² [7/3 − ln(¼(δ² + 1/γ²))].
///
/// Valid where the bracket is positive (small δ, δγ not small); other
/// parameter regions are rejected rather than returning a negative rate.
pub fn nu_relativistic(gm2gamma2: f64, delta: f64, gamma: f64) -> Result<f64> {
    if !gm2gamma2.is_finite() || gm2gamma2 <= 0.0 {
        return Err(Error::Domain(format!(
            "coupling Gm²γ² must be positive, got {gm2gamma2}"
        )));
    }
    if !delta.is_finite() || delta <= 0.0 {
        return Err(Error::Domain(format!("opening angle must be positive, got {delta}")));
    }
    if !gamma.is_finite() || gamma <= 1.0 {
        return Err(Error::Domain(format!("Lorentz factor must exceed 1, got {gamma}")));
    }
    let bracket = 7.0 / 3.0 - (0.25 * (delta * delta + 1.0 / (gamma * gamma))).ln();
    if bracket <= 0.0 {
        return Err(Error::Domain(format!(
            "outside validity region: 7/3 - ln(¼(δ²+1/γ²)) = {bracket} is not positive"
        )));
    }
    Ok(gm2gamma2 / PI * delta * delta * bracket)
}

/// Non-relativistic decay exponent ν = (Gm²/π) v⁴ (14/15) sin²δ.
pub fn nu_nonrelativistic(gm2: f64, v: f64, delta: f64) -> Result<f64> {
    if !gm2.is_finite() || gm2 <= 0.0 {
        return Err(Error::Domain(format!("coupling Gm² must be positive, got {gm2}")));
    }
    if !v.is_finite() || v <= 0.0 || v >= 1.0 {
        return Err(Error::Domain(format!("speed must satisfy 0 < v < 1, got {v}")));
    }
    if !delta.is_finite() {
        return Err(Error::Domain(format!("opening angle must be finite, got {delta}")));
    }
    let s = delta.sin();
    Ok(gm2 / PI * v.powi(4) * (14.0 / 15.0) * s * s)
}

/// Power-law interference decay ratio (t₁/t₂)^(−ν).
pub fn interference_ratio(t1: f64, t2: f64, nu: f64) -> Result<f64> {
    if !t1.is_finite() || !t2.is_finite() || t1 <= 0.0 || t2 <= 0.0 {
        return Err(Error::Domain(format!("times must be positive, got {t1}, {t2}")));
    }
    if !nu.is_finite() {
        return Err(Error::Domain(format!("exponent must be finite, got {nu}")));
    }
    Ok((t1 / t2).powf(-nu))
}

// Frequency window of one angular direction, integrated analytically:
// ∫_λ^Λ dω/ω [1 − cos(a₊ωt)][1 − cos(a₋ωt)]-type cross structure reduces to
// Cin differences per denominator scale, with the relative scale a₀ entering
// through the product-to-sum identity. Cin(0) = 0 makes the coincident-branch
// case exact with no special casing.
fn brace(a_plus: f64, a_minus: f64, uv_t: f64, ir_t: f64) -> f64 {
    let a0 = (a_plus - a_minus).abs();
    let window = |a: f64| {
        cin(a * uv_t).expect("non-negative argument") - cin(a * ir_t).expect("non-negative argument")
    };
    window(a_plus) + window(a_minus) - window(a0)
}

/// Finite-time growth factor of the radiated-boson exponent: the solid-angle
/// integral of ξ(k̂) times the analytically integrated frequency window
/// {ln(Λ/λ) − ΔCi(a₊) − ΔCi(a₋) + ΔCi(a₀)}, a± = 1 − v z±, a₀ = |a₊ − a₋|,
/// ΔCi(a) = Ci(aΛt) − Ci(aλt).
///
/// Vanishes as t → 0 and grows as X·ln t once λt ≪ 1 ≪ Λt. Full error
/// reporting; [`finite_time_real_factor`] returns the value alone.
pub fn finite_time_real_factor_quadrature(
    branches: &BranchVelocities,
    newton_g: f64,
    mass: f64,
    spec: &FiniteTimeSpec,
    quad: &QuadratureSpec,
) -> Result<Quadrature> {
    spec.validate()?;
    let uv_t = spec.uv_cutoff * spec.time;
    let ir_t = spec.ir_cutoff * spec.time;
    let v = branches.speed;
    let integrand = |khat: UnitDirection| {
        let (z_plus, z_minus) = polar_cosines(branches, khat);
        xi_density(branches, newton_g, mass, khat)
            * brace(1.0 - v * z_plus, 1.0 - v * z_minus, uv_t, ir_t)
    };
    if branches.opening_angle == 0.0 {
        integrate_sphere_axisym(|z| integrand(UnitDirection { z, azimuth: 0.0 }), quad)
    } else {
        integrate_sphere(integrand, quad)
    }
}

/// Value-only form of [`finite_time_real_factor_quadrature`].
pub fn finite_time_real_factor(
    branches: &BranchVelocities,
    newton_g: f64,
    mass: f64,
    spec: &FiniteTimeSpec,
    quad: &QuadratureSpec,
) -> Result<f64> {
    finite_time_real_factor_quadrature(branches, newton_g, mass, spec, quad).map(|q| q.value)
}
