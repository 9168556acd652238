use gravidec::kinematics::{build_elastic_cm, minkowski_dot, superpose};
use gravidec::quadrature::{integrate_sphere, QuadratureSpec};
use gravidec::soft_radiation::{
    branch_difference_density, eikonal_bracket_density, polarization_contraction, EmissionSpec,
    UnitDirection,
};
use gravidec::special_functions::d_weinberg;
use gravidec::Error;

use approx::{assert_abs_diff_eq, assert_relative_eq};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::f64::consts::{PI, TAU};

fn random_khat(rng: &mut StdRng) -> UnitDirection {
    UnitDirection::new(rng.random_range(-1.0..1.0), rng.random_range(0.0..TAU)).unwrap()
}

fn random_vec(rng: &mut StdRng) -> [f64; 3] {
    [
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
    ]
}

#[test]
fn unit_direction_validates_and_normalizes() {
    assert!(UnitDirection::new(1.5, 0.0).is_err());
    assert!(UnitDirection::new(-1.5, 0.0).is_err());
    assert!(UnitDirection::new(f64::NAN, 0.0).is_err());
    assert!(UnitDirection::new(0.5, f64::NAN).is_err());
    let mut rng = StdRng::seed_from_u64(0x736f6601);
    for _ in 0..200 {
        let d = random_khat(&mut rng);
        let k = d.unit_vector();
        let norm = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
        assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-14);
        assert_eq!(k[2].to_bits(), d.z.to_bits());
    }
}

#[test]
fn emission_spec_validates_and_derives_factors() {
    assert!(EmissionSpec::new(0.0, 1.0, 1.0, 1.0).is_err());
    assert!(EmissionSpec::new(1.0, 0.5, 1.0, 1.0).is_err());
    assert!(EmissionSpec::new(1e-4, 1.0, 0.0, 1.0).is_err());
    assert!(EmissionSpec::new(1e-4, 1.0, 1.0, -1.0).is_err());
    let spec = EmissionSpec::new(1e-4, 1e4, 1.0, 1.0).unwrap();
    assert_relative_eq!(spec.kappa() * spec.kappa(), 8.0 * PI, max_relative = 1e-15);
    assert_relative_eq!(
        spec.log_factor(),
        18.420680743952365,
        max_relative = 1e-15
    );
}

#[test]
fn contraction_of_transverse_vectors_is_half_fourth_power() {
    let khat = UnitDirection::new(1.0, 0.0).unwrap();
    let a = [0.3, 0.4, 0.0];
    // |a|² = 0.25 ⊥ k̂ = ẑ, so the helicity sum is |a|⁴/2.
    assert_abs_diff_eq!(
        polarization_contraction(&a, &a, khat),
        0.03125,
        epsilon = 1e-16
    );
    // Longitudinal vectors drop entirely.
    let l = [0.0, 0.0, 0.7];
    assert_eq!(polarization_contraction(&l, &l, khat), 0.0);
}

#[test]
fn contraction_matches_the_opening_angle_form() {
    // For a, b at polar angles θ₊, θ₋ to k̂ with opening angle δ:
    // Σ_ν (a·f·a)(b·f·b) = |a|²|b|²[(cos δ − cos θ₊ cos θ₋)² − ½ sin²θ₊ sin²θ₋].
    let mut rng = StdRng::seed_from_u64(0x736f6602);
    for _ in 0..1000 {
        let khat = random_khat(&mut rng);
        let k = khat.unit_vector();
        let a = random_vec(&mut rng);
        let b = random_vec(&mut rng);
        let na = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
        let nb = (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]).sqrt();
        let ca = (a[0] * k[0] + a[1] * k[1] + a[2] * k[2]) / na;
        let cb = (b[0] * k[0] + b[1] * k[1] + b[2] * k[2]) / nb;
        let cd = (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]) / (na * nb);
        let proj = cd - ca * cb;
        let angle_form = na * na * nb * nb
            * (proj * proj - 0.5 * (1.0 - ca * ca) * (1.0 - cb * cb));
        let got = polarization_contraction(&a, &b, khat);
        assert_abs_diff_eq!(got, angle_form, epsilon = 1e-12);
    }
}

#[test]
fn contraction_is_symmetric_bitwise() {
    let mut rng = StdRng::seed_from_u64(0x736f6603);
    for _ in 0..100 {
        let khat = random_khat(&mut rng);
        let a = random_vec(&mut rng);
        let b = random_vec(&mut rng);
        assert_eq!(
            polarization_contraction(&a, &b, khat).to_bits(),
            polarization_contraction(&b, &a, khat).to_bits()
        );
    }
}

#[test]
fn eikonal_density_vanishes_at_forward_scattering() {
    // With q = p and q′ = p′ bitwise, the signed kernel cancels term against
    // term; what remains is round-off of the O(γ⁴m⁴) pieces because E² − Q²
    // reproduces m² only to machine precision.
    let kin = build_elastic_cm(1.0, 2.0, 0.0).unwrap();
    let mut rng = StdRng::seed_from_u64(0x736f6604);
    for _ in 0..50 {
        let khat = random_khat(&mut rng);
        assert!(eikonal_bracket_density(&kin, khat).unwrap().abs() < 1e-11);
    }
    let spec = QuadratureSpec {
        abs_tol: 1e-9,
        ..QuadratureSpec::default()
    };
    let total = integrate_sphere(
        |khat| eikonal_bracket_density(&kin, khat).unwrap(),
        &spec,
    )
    .unwrap();
    assert!(total.value.abs() < 1e-9);
}

#[test]
fn nearly_static_sources_radiate_next_to_nothing() {
    let kin = build_elastic_cm(1.0, 1e-6, 1.3).unwrap();
    let khat = UnitDirection::new(0.42, 1.9).unwrap();
    // Quadrupole suppression: the density is O(v⁴) ≈ 1e-24, far below
    // round-off of the cancelling O(1) terms.
    assert!(eikonal_bracket_density(&kin, khat).unwrap().abs() < 1e-10);
}

#[test]
fn eikonal_integral_reproduces_frozen_brackets() {
    let spec = QuadratureSpec::default();
    for (m, q, th, bracket) in [
        (1.0, 1.0, PI / 2.0, 0.9499851341706699),
        (1.0, 2.0, 1.0, 5.2210286506070877),
    ] {
        let kin = build_elastic_cm(m, q, th).unwrap();
        let total = integrate_sphere(
            |khat| eikonal_bracket_density(&kin, khat).unwrap(),
            &spec,
        )
        .unwrap();
        assert_relative_eq!(
            total.value / (8.0 * PI * m * m),
            bracket,
            max_relative = 1e-6
        );
    }
}

#[test]
fn eikonal_integral_matches_d_bracket_for_random_boosts() {
    let spec = QuadratureSpec::default();
    let mut rng = StdRng::seed_from_u64(0x736f6605);
    for _ in 0..10 {
        let v: f64 = rng.random_range(0.1..0.95);
        let th: f64 = rng.random_range(0.1..PI - 0.1);
        let gamma = 1.0 / ((1.0 - v) * (1.0 + v)).sqrt();
        let q = gamma * v; // m = 1
        let kin = build_elastic_cm(1.0, q, th).unwrap();
        let x_opp = gamma * gamma * (1.0 + v * v);
        let shift = -kin.t / 2.0;
        let bracket = (1.0 - d_weinberg(1.0 + shift).unwrap())
            + (d_weinberg(x_opp).unwrap() - d_weinberg(x_opp - shift).unwrap());
        let total = integrate_sphere(
            |khat| eikonal_bracket_density(&kin, khat).unwrap(),
            &spec,
        )
        .unwrap();
        assert_relative_eq!(total.value / (8.0 * PI), bracket, max_relative = 1e-6);
    }
}

#[test]
fn massless_legs_reject_collinear_directions() {
    let kin = build_elastic_cm(0.0, 1.0, 1.0).unwrap();
    // Along an outgoing leg.
    let along_q = UnitDirection::new(1.0f64.cos(), 0.0).unwrap();
    assert!(matches!(
        eikonal_bracket_density(&kin, along_q),
        Err(Error::Collinear { .. })
    ));
    // Along the beam axis (incoming leg).
    let along_p = UnitDirection::new(1.0, 0.0).unwrap();
    assert!(matches!(
        eikonal_bracket_density(&kin, along_p),
        Err(Error::Collinear { .. })
    ));
    // A generic direction is fine.
    let generic = UnitDirection::new(0.3, 2.0).unwrap();
    assert!(eikonal_bracket_density(&kin, generic).is_ok());
}

#[test]
fn coincident_branches_produce_exactly_zero_difference() {
    let kin = build_elastic_cm(1.0, 1.5, 0.8).unwrap();
    let pair = superpose(&kin, 0.0).unwrap();
    let mut rng = StdRng::seed_from_u64(0x736f6606);
    for _ in 0..20 {
        let khat = random_khat(&mut rng);
        let d = branch_difference_density(&pair, khat).unwrap();
        assert_eq!(d.to_bits(), 0.0f64.to_bits());
    }
}

#[test]
fn branch_difference_matches_covariant_kernel_pointwise() {
    // Independent route: with the signed leg sum conserved, the helicity sum
    // over explicit transverse polarizations equals the covariant kernel
    // Σ_ij s_i s_j [(L_i·L_j)² − ½m⁴] / ((k·L_i)(k·L_j)).
    let mut rng = StdRng::seed_from_u64(0x736f6607);
    for _ in 0..200 {
        let m: f64 = rng.random_range(0.2..2.0);
        let q: f64 = rng.random_range(0.2..2.0);
        let th: f64 = rng.random_range(0.1..PI - 0.1);
        let phi: f64 = rng.random_range(0.01..2.0);
        let kin = build_elastic_cm(m, q, th).unwrap();
        let pair = superpose(&kin, phi).unwrap();
        let khat = random_khat(&mut rng);
        let k = khat.unit_vector();

        let legs = [
            pair.base.outgoing.0,
            pair.base.outgoing.1,
            pair.branch2.0,
            pair.branch2.1,
        ];
        let signs = [1.0f64, 1.0, -1.0, -1.0];
        let den: Vec<f64> = legs
            .iter()
            .map(|l| l.t - l.x * k[0] - l.y * k[1] - l.z * k[2])
            .collect();
        let m4 = (m * m) * (m * m);
        let mut covariant = 0.0;
        let mut scale = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                let ll = minkowski_dot(&legs[i], &legs[j]);
                let term = signs[i] * signs[j] * (ll * ll - 0.5 * m4) / (den[i] * den[j]);
                covariant += term;
                scale += term.abs();
            }
        }
        covariant /= TAU.powi(3);
        scale /= TAU.powi(3);
        let got = branch_difference_density(&pair, khat).unwrap();
        assert_abs_diff_eq!(got, covariant, epsilon = 1e-12 * scale.max(1e-300));
    }
}

#[test]
fn eikonal_kernel_matches_explicit_polarization_sum() {
    // The mirror-image consistency check: the covariant emission kernel
    // equals the explicit helicity sum Σ_ij s_i s_j Σ_ν(l_i f_ν l_i)(l_j f_ν l_j)
    // divided by the leg denominators, for massive and massless events alike.
    let mut rng = StdRng::seed_from_u64(0x736f6608);
    for m in [1.0, 0.7, 0.0] {
        for _ in 0..100 {
            let q: f64 = rng.random_range(0.3..2.0);
            let th: f64 = rng.random_range(0.2..PI - 0.2);
            let kin = build_elastic_cm(m, q, th).unwrap();
            let khat = UnitDirection::new(
                rng.random_range(-0.85..0.85),
                rng.random_range(0.5..TAU - 0.5),
            )
            .unwrap();
            let k = khat.unit_vector();
            let legs = [kin.outgoing.0, kin.outgoing.1, kin.incoming.0, kin.incoming.1];
            let signs = [1.0f64, 1.0, -1.0, -1.0];
            let mut tt = 0.0;
            let mut scale = 0.0;
            for i in 0..4 {
                let li = [legs[i].x, legs[i].y, legs[i].z];
                let di = legs[i].t - li[0] * k[0] - li[1] * k[1] - li[2] * k[2];
                for j in 0..4 {
                    let lj = [legs[j].x, legs[j].y, legs[j].z];
                    let dj = legs[j].t - lj[0] * k[0] - lj[1] * k[1] - lj[2] * k[2];
                    let term =
                        signs[i] * signs[j] * polarization_contraction(&li, &lj, khat) / (di * dj);
                    tt += term;
                    scale += term.abs();
                }
            }
            let got = eikonal_bracket_density(&kin, khat).unwrap();
            assert_abs_diff_eq!(got, tt, epsilon = 1e-12 * scale.max(1e-300));
        }
    }
}

#[test]
fn branch_difference_integral_reproduces_frozen_bracket() {
    let kin = build_elastic_cm(1.0, 1.0, PI / 2.0).unwrap();
    let pair = superpose(&kin, 0.1).unwrap();
    let total = integrate_sphere(
        |khat| branch_difference_density(&pair, khat).unwrap(),
        &QuadratureSpec::default(),
    )
    .unwrap();
    let expected = 8.0 * PI * 9.7837798924095353e-3 / TAU.powi(3);
    assert_relative_eq!(total.value, expected, max_relative = 1e-6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn densities_are_pointwise_nonnegative(
        q in 0.2f64..3.0,
        th in 0.05f64..3.0,
        phi in 0.0f64..2.5,
        z in -0.99f64..0.99,
        az in 0.0f64..TAU,
    ) {
        let kin = build_elastic_cm(1.0, q, th).unwrap();
        let khat = UnitDirection::new(z, az).unwrap();
        prop_assert!(eikonal_bracket_density(&kin, khat).unwrap() >= 0.0);
        let pair = superpose(&kin, phi).unwrap();
        prop_assert!(branch_difference_density(&pair, khat).unwrap() >= 0.0);
    }

    #[test]
    fn contraction_ignores_longitudinal_shifts(
        z in -1.0f64..1.0,
        az in 0.0f64..TAU,
        ax in -1.0f64..1.0, ay in -1.0f64..1.0, azz in -1.0f64..1.0,
        bx in -1.0f64..1.0, by in -1.0f64..1.0, bz in -1.0f64..1.0,
        c in -3.0f64..3.0,
    ) {
        let khat = UnitDirection::new(z, az).unwrap();
        let k = khat.unit_vector();
        let a = [ax, ay, azz];
        let b = [bx, by, bz];
        let shifted = [a[0] + c * k[0], a[1] + c * k[1], a[2] + c * k[2]];
        let base = polarization_contraction(&a, &b, khat);
        let moved = polarization_contraction(&shifted, &b, khat);
        prop_assert!((base - moved).abs() <= 1e-12 * (1.0 + base.abs() + c * c));
    }
}
