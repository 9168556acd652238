//! Four-vector algebra and equal-mass elastic two-body kinematics in the
//! centre-of-momentum frame. Natural units, metric signature (+,-,-,-).

use crate::{Error, Result};

/// Minkowski four-vector; `t` is the energy component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourVector {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl FourVector {
    pub fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        FourVector { t, x, y, z }
    }

    /// Euclidean norm of the spatial part.
    pub fn spatial_norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

impl std::ops::Add for FourVector {
    type Output = FourVector;
    fn add(self, o: FourVector) -> FourVector {
        FourVector::new(self.t + o.t, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl std::ops::Sub for FourVector {
    type Output = FourVector;
    fn sub(self, o: FourVector) -> FourVector {
        FourVector::new(self.t - o.t, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

/// a·b = a_t b_t − a_x b_x − a_y b_y − a_z b_z.
pub fn minkowski_dot(a: &FourVector, b: &FourVector) -> f64 {
    a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z
}

/// Equal-mass 2→2 elastic event in the CM frame.
///
/// Incoming momenta lie along ±z; outgoing momenta lie in the x–z plane at
/// the scattering angle. All four legs share the energy √(Q²+m²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElasticKinematics {
    pub mass: f64,
    pub cm_momentum: f64,
    pub scatter_angle: f64,
    pub incoming: (FourVector, FourVector),
    pub outgoing: (FourVector, FourVector),
    pub s: f64,
    pub t: f64,
    pub u: f64,
}

impl ElasticKinematics {
    /// Common single-particle energy √(Q²+m²).
    pub fn energy(&self) -> f64 {
        self.incoming.0.t
    }
}

/// Builds the CM-frame elastic event for mass `m` (zero permitted), common
/// momentum `q_momentum` > 0, and scattering angle in [0, π].
///
/// The Mandelstam invariants satisfy s = 4(Q²+m²), t = −2Q²(1−cos θ) (formed
/// as −4Q² sin²(θ/2) to avoid cancellation), and u = 4m² − s − t exactly.
/// At θ = 0 the outgoing vectors are bitwise equal to the incoming ones.
pub fn build_elastic_cm(m: f64, q_momentum: f64, theta_sc: f64) -> Result<ElasticKinematics> {
    if !m.is_finite() || m < 0.0 {
        return Err(Error::Domain(format!("mass must be finite and >= 0, got {m}")));
    }
    if !q_momentum.is_finite() || q_momentum <= 0.0 {
        return Err(Error::Domain(format!(
            "CM momentum must be finite and > 0, got {q_momentum}"
        )));
    }
    if !theta_sc.is_finite() || !(0.0..=std::f64::consts::PI).contains(&theta_sc) {
        return Err(Error::Domain(format!(
            "scattering angle must lie in [0, pi], got {theta_sc}"
        )));
    }
    let e = q_momentum.hypot(m);
    let (sin_th, cos_th) = theta_sc.sin_cos();
    let p1 = FourVector::new(e, 0.0, 0.0, q_momentum);
    let p2 = FourVector::new(e, 0.0, 0.0, -q_momentum);
    let q1 = FourVector::new(e, q_momentum * sin_th, 0.0, q_momentum * cos_th);
    let q2 = FourVector::new(e, -q_momentum * sin_th, 0.0, -q_momentum * cos_th);
    let s = 4.0 * e * e;
    let half = (0.5 * theta_sc).sin();
    let t = -4.0 * q_momentum * q_momentum * half * half;
    let u = 4.0 * m * m - s - t;
    Ok(ElasticKinematics {
        mass: m,
        cm_momentum: q_momentum,
        scatter_angle: theta_sc,
        incoming: (p1, p2),
        outgoing: (q1, q2),
        s,
        t,
        u,
    })
}

/// Two candidate outgoing pairs sharing the total four-momentum: branch 1 is
/// `base.outgoing`, branch 2 is that pair rigidly rotated by `split_angle`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperpositionPair {
    pub base: ElasticKinematics,
    pub branch2: (FourVector, FourVector),
    pub split_angle: f64,
    /// Q-space separation invariant δq·q₁ = 2Q² sin²(φ/2).
    pub delta_q_dot_q1: f64,
}

/// Rotates the outgoing pair of `kin` by `phi` ∈ [0, π) about the normal of
/// the scattering plane, producing the second superposition branch.
///
/// A rigid rotation keeps both legs on shell and preserves the pair sum
/// exactly; at `phi = 0` branch 2 is bitwise identical to branch 1.
pub fn superpose(kin: &ElasticKinematics, phi: f64) -> Result<SuperpositionPair> {
    if !phi.is_finite() || !(0.0..std::f64::consts::PI).contains(&phi) {
        return Err(Error::Domain(format!(
            "superposition angle must lie in [0, pi), got {phi}"
        )));
    }
    let (sin_phi, cos_phi) = phi.sin_cos();
    // Rotation about the y axis (the scattering plane is x–z).
    let rotate = |v: &FourVector| {
        FourVector::new(
            v.t,
            v.x * cos_phi + v.z * sin_phi,
            v.y,
            -v.x * sin_phi + v.z * cos_phi,
        )
    };
    let q = kin.cm_momentum;
    let half = (0.5 * phi).sin();
    Ok(SuperpositionPair {
        base: *kin,
        branch2: (rotate(&kin.outgoing.0), rotate(&kin.outgoing.1)),
        split_angle: phi,
        delta_q_dot_q1: 2.0 * q * q * half * half,
    })
}
