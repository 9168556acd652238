//! Special functions for relativistic angular integrals: the kinematic
//! logarithm function D, its derivative, and the cosine integral.

use crate::{Error, Result};

// Switch to the Taylor expansion below this offset from the branch point
// x = 1; the direct formula loses half the significant digits to
// cancellation as x -> 1 while the truncated series is exact to well below
// 1e-25 on this range.
const SERIES_SWITCH: f64 = 0.015625; // 2^-6

// Taylor coefficients of D(1 + e) about e = 0 (exact rationals rounded to
// nearest f64): 1, 11/3, 4/5, -4/21, 4/63, -4/165, 64/6435, ...
const D_SERIES: [f64; 17] = [
    1.0,
    3.66666666666666666666666666667,
    0.8,
    -0.190476190476190476190476190476,
    0.0634920634920634920634920634921,
    -0.0242424242424242424242424242424,
    0.00994560994560994560994560994561,
    -0.00426240426240426240426240426240,
    0.00188047246870776282540988423341,
    -0.000846762456669577412611468339023,
    0.000387091408763235388622385526410,
    -0.000179010651483393440588217812609,
    0.0000835383040255836056078349792174,
    -0.0000392701429180093872515463577518,
    0.0000185711020696004984046721691831,
    -0.00000882626571479937666114526750423,
    0.00000421253590933606613372842312702,
];

// Termwise derivative of the series above: coefficient k of D' is
// (k+1) * D_SERIES[k+1].
const D_DERIV_SERIES: [f64; 16] = [
    3.66666666666666666666666666667,
    1.6,
    -0.571428571428571428571428571429,
    0.253968253968253968253968253968,
    -0.121212121212121212121212121212,
    0.0596736596736596736596736596737,
    -0.0298368298368298368298368298368,
    0.0150437797496621026032790738673,
    -0.00762086211002619671350321505120,
    0.00387091408763235388622385526410,
    -0.00196911716631732784647039593870,
    0.00100245964830700326729401975061,
    -0.000510511857934122034270102650773,
    0.000259995428974406977665410368563,
    -0.000132393985721990649917179012563,
    0.0000674005745493770581396547700323,
];

// Above this the direct formula would overflow in x^2; the asymptotic forms
// are accurate to O(x^-2) relative long before that.
const ASYMPTOTIC_SWITCH: f64 = 1e150;

fn horner(coeffs: &[f64], e: f64) -> f64 {
    let mut acc = 0.0f64;
    for &c in coeffs.iter().rev() {
        acc = acc.mul_add(e, c);
    }
    acc
}

fn check_d_domain(x: f64) -> Result<()> {
    if !x.is_finite() || x < 1.0 {
        return Err(Error::Domain(format!(
            "kinematic function requires x >= 1, got {x}"
        )));
    }
    Ok(())
}

/// D(x) = (2x^2 - 1)/sqrt(x^2 - 1) * arccosh(x), continued to D(1) = 1.
///
/// This is the closed form of the solid-angle average of the product of two
/// eikonal denominators for massive legs with Lorentz factor product x.
pub fn d_weinberg(x: f64) -> Result<f64> {
    check_d_domain(x)?;
    let e = x - 1.0;
    if e < SERIES_SWITCH {
        return Ok(horner(&D_SERIES, e));
    }
    if x > ASYMPTOTIC_SWITCH {
        return Ok(2.0 * x * (x.ln() + std::f64::consts::LN_2));
    }
    // s = x^2 - 1 formed without cancellation; (2x^2 - 1)/sqrt(s) = 2r + 1/r
    // and arccosh(x) = ln(1 + (e + r)).
    let s = e * (x + 1.0);
    let r = s.sqrt();
    Ok((2.0 * r + 1.0 / r) * (e + r).ln_1p())
}

/// Derivative of [`d_weinberg`], continued to its limit 11/3 at x = 1.
pub fn d_weinberg_deriv(x: f64) -> Result<f64> {
    check_d_domain(x)?;
    let e = x - 1.0;
    if e < SERIES_SWITCH {
        return Ok(horner(&D_DERIV_SERIES, e));
    }
    if x > ASYMPTOTIC_SWITCH {
        return Ok(2.0 * (1.0 + x.ln() + std::f64::consts::LN_2));
    }
    let s = e * (x + 1.0);
    let r = s.sqrt();
    Ok(x / r * (2.0 - 1.0 / s) * (e + r).ln_1p() + 2.0 + 1.0 / s)
}

/// D at `x.max(1.0)`: absorbs the sub-ulp excursions below 1 that exact
/// kinematic configurations produce through floating-point dot products.
pub(crate) fn d_clamped(x: f64) -> f64 {
    d_weinberg(x.max(1.0)).expect("clamped argument is in domain")
}

/// Derivative counterpart of [`d_clamped`].
pub(crate) fn d_deriv_clamped(x: f64) -> f64 {
    d_weinberg_deriv(x.max(1.0)).expect("clamped argument is in domain")
}

// --- double-double helpers -------------------------------------------------
//
// The power series of the cosine integral reaches term magnitudes near 1e9
// around x = 25 while the sum stays O(1); plain f64 term generation would
// leave ~1e-7 of cancellation noise. Carrying hi/lo pairs through the term
// recurrence keeps the absolute error far below the 1e-10 contract.

#[derive(Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

const EULER_GAMMA: Dd = Dd { hi: 0.5772156649015329, lo: -4.942915152430645e-18 };

fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    Dd { hi: s, lo: (a - (s - bb)) + (b - bb) }
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd { hi: s, lo: b - (s - a) }
}

fn two_prod(a: f64, b: f64) -> Dd {
    let p = a * b;
    Dd { hi: p, lo: a.mul_add(b, -p) }
}

impl Dd {
    fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    fn add(self, other: Dd) -> Dd {
        let s = two_sum(self.hi, other.hi);
        quick_two_sum(s.hi, s.lo + self.lo + other.lo)
    }

    fn mul(self, other: Dd) -> Dd {
        let p = two_prod(self.hi, other.hi);
        quick_two_sum(p.hi, p.lo + self.hi * other.lo + self.lo * other.hi)
    }

    fn div_f64(self, d: f64) -> Dd {
        let q1 = self.hi / d;
        let p = two_prod(q1, d);
        let s = two_sum(self.hi, -p.hi);
        let q2 = (s.hi + (s.lo + (self.lo - p.lo))) / d;
        quick_two_sum(q1, q2)
    }
}

// Sum over k >= 1 of (-1)^k x^(2k) / (2k (2k)!), in double-double. This is
// gamma + ln x - Ci(x), negated; it is entire, so valid for all x >= 0.
fn ci_series_sum(x: f64) -> Dd {
    let x2 = two_prod(x, x);
    let neg_x2 = Dd { hi: -x2.hi, lo: -x2.lo };
    let mut p = Dd::from(1.0); // (-1)^k x^(2k) / (2k)!
    let mut sum = Dd::from(0.0);
    for k in 1..200u32 {
        let two_k = 2.0 * k as f64;
        p = p.mul(neg_x2).div_f64(two_k * (two_k - 1.0));
        let term = p.div_f64(two_k);
        sum = sum.add(term);
        if two_k * (two_k + 1.0) > x * x && term.hi.abs() < 1e-24 * (1.0 + sum.hi.abs()) {
            break;
        }
    }
    sum
}

// Crossover between the power series and the sin/cos asymptotic expansion.
// At 25 the optimally truncated asymptotic tail is below ~4e-12; at 20 it
// would already exceed 1e-9.
const CI_ASYMPTOTIC_SWITCH: f64 = 25.0;

// Ci(x) = f(x) sin x - g(x) cos x with f, g summed to optimal truncation.
fn ci_asymptotic(x: f64) -> f64 {
    let inv_x2 = 1.0 / (x * x);
    let mut f = 0.0;
    let mut t = 1.0 / x;
    let mut k = 0u32;
    loop {
        f += t;
        k += 1;
        let next = -t * (2.0 * k as f64) * (2.0 * k as f64 - 1.0) * inv_x2;
        if next.abs() >= t.abs() {
            break;
        }
        t = next;
    }
    let mut g = 0.0;
    let mut u = inv_x2;
    let mut j = 0u32;
    loop {
        g += u;
        j += 1;
        let next = -u * (2.0 * j as f64 + 1.0) * (2.0 * j as f64) * inv_x2;
        if next.abs() >= u.abs() {
            break;
        }
        u = next;
    }
    f * x.sin() - g * x.cos()
}

/// The cosine integral Ci(x) for x > 0, absolute accuracy better than 1e-10
/// for x up to 1e6.
pub fn cosine_integral(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!(
            "cosine integral requires x > 0, got {x}"
        )));
    }
    if x > CI_ASYMPTOTIC_SWITCH {
        return Ok(ci_asymptotic(x));
    }
    let s = ci_series_sum(x);
    Ok(EULER_GAMMA.add(s).hi + x.ln())
}

/// The entire cosine integral Cin(x) = gamma + ln x - Ci(x), with
/// Cin(0) = 0. Defined for x >= 0; even in x, so the absolute value of a
/// signed argument may be passed.
pub fn cin(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!(
            "entire cosine integral requires x >= 0, got {x}"
        )));
    }
    if x > CI_ASYMPTOTIC_SWITCH {
        return Ok(EULER_GAMMA.hi + x.ln() - ci_asymptotic(x));
    }
    let s = ci_series_sum(x);
    Ok(-s.hi - s.lo)
}
