//! Deterministic adaptive numerical integration over intervals and the unit
//! sphere, with explicit error control.
//!
//! The engine is an adaptive Gauss–Kronrod 7/15 rule with strictly
//! left-to-right (depth-first) bisection and compensated summation, so that
//! identical inputs produce bit-identical results. Solid-angle integrals are
//! nested one-dimensional rules: outer over the polar cosine z, inner over
//! the azimuth, with the inner tolerances tightened by a factor of 4.
//!
//! Integrands are expected to be finite; isolated non-finite directions
//! (collinear singularities of massless legs) are handled by the singularity
//! guard, which drops offending panels once they are narrower than the guard
//! scale and adds the excluded measure to the error estimate.

use crate::soft_radiation::UnitDirection;
use crate::{Error, Result};

/// Tolerances and limits controlling adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Relative tolerance on the integral value.
    pub rel_tol: f64,
    /// Absolute tolerance on the integral value.
    pub abs_tol: f64,
    /// Maximum number of panel bisections before giving up.
    pub max_subdivisions: u32,
    /// Measure scale below which a non-finite panel is excluded instead of
    /// refined further (per angular coordinate for sphere integrals).
    pub singularity_guard: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-8,
            abs_tol: 0.0,
            max_subdivisions: 2000,
            singularity_guard: 1e-10,
        }
    }
}

impl QuadratureSpec {
    fn validate(&self) -> Result<()> {
        if !(self.rel_tol >= 0.0) || !(self.abs_tol >= 0.0) {
            return Err(Error::Domain("quadrature tolerances must be non-negative".into()));
        }
        if self.rel_tol == 0.0 && self.abs_tol == 0.0 {
            return Err(Error::Domain(
                "at least one of rel_tol, abs_tol must be positive".into(),
            ));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::Domain("max_subdivisions must be at least 1".into()));
        }
        Ok(())
    }

    fn inner(&self) -> QuadratureSpec {
        QuadratureSpec {
            rel_tol: self.rel_tol / 4.0,
            abs_tol: self.abs_tol / 4.0,
            ..*self
        }
    }
}

/// An integral value together with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error_estimate: f64,
}

// 15-point Kronrod abscissae (positive half, descending; last entry is the
// centre) with the embedded 7-point Gauss rule sitting on the odd indices.
// Verified against high-precision recomputation: the 15-point rule integrates
// monomials through degree 22 exactly, the embedded rule through degree 12.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

const EPS: f64 = f64::EPSILON;

/// Neumaier-compensated accumulator; summation order is fixed by the caller.
#[derive(Debug, Clone, Copy, Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        self.comp += if self.sum.abs() >= x.abs() {
            (self.sum - t) + x
        } else {
            (x - t) + self.sum
        };
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// One Gauss–Kronrod evaluation of a panel. `aux` carries two side channels
/// integrated with the same (all-positive) Kronrod weights; the error
/// machinery applies to the main component only.
#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    resabs: f64,
    aux: [f64; 2],
    finite: bool,
}

fn eval_panel<F: FnMut(f64) -> [f64; 3]>(f: &mut F, a: f64, b: f64) -> Panel {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut finite = true;
    let mut sample = |x: f64| -> [f64; 3] {
        let y = f(x);
        if !y[0].is_finite() {
            finite = false;
        }
        y
    };

    let fc = sample(c);
    let mut fv1 = [[0.0f64; 3]; 7];
    let mut fv2 = [[0.0f64; 3]; 7];
    for j in 0..7 {
        fv1[j] = sample(c - h * XGK[j]);
        fv2[j] = sample(c + h * XGK[j]);
    }

    let mut resg = WG[3] * fc[0];
    let mut resk = WGK[7] * fc[0];
    let mut resabs = WGK[7] * fc[0].abs();
    let mut aux = [WGK[7] * fc[1], WGK[7] * fc[2]];
    for j in 0..3 {
        let s = fv1[2 * j + 1][0] + fv2[2 * j + 1][0];
        resg += WG[j] * s;
    }
    for j in 0..7 {
        let s = fv1[j][0] + fv2[j][0];
        resk += WGK[j] * s;
        resabs += WGK[j] * (fv1[j][0].abs() + fv2[j][0].abs());
        aux[0] += WGK[j] * (fv1[j][1] + fv2[j][1]);
        aux[1] += WGK[j] * (fv1[j][2] + fv2[j][2]);
    }

    // Scaled deviation from the mean value sharpens the error estimate for
    // smooth integrands while staying conservative for rough ones.
    let reskh = 0.5 * resk;
    let mut resasc = WGK[7] * (fc[0] - reskh).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j][0] - reskh).abs() + (fv2[j][0] - reskh).abs());
    }
    let ha = h.abs();
    let value = resk * h;
    resabs *= ha;
    resasc *= ha;
    let mut error = ((resk - resg) * h).abs();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * EPS) {
        error = error.max(50.0 * EPS * resabs);
    }

    Panel { a, b, value, error, resabs, aux, finite }
}

struct Adaptive<'a, F> {
    f: &'a mut F,
    accepted: Vec<Panel>,
    subdivisions: u32,
    max_subdivisions: u32,
    /// Non-finite panels narrower than this are dropped; their width
    /// accumulates in `excluded`. `None` means non-finite values are a hard
    /// domain error once refinement bottoms out.
    guard_width: Option<f64>,
    excluded: f64,
    min_width: f64,
}

impl<'a, F: FnMut(f64) -> [f64; 3]> Adaptive<'a, F> {
    /// Depth-first, strictly left-to-right refinement. Each bisection halves
    /// the tolerance allocated to the children, so the accepted total honours
    /// the root tolerance.
    fn refine(&mut self, panel: Panel, tol: f64) -> Result<()> {
        let width = panel.b - panel.a;
        if !panel.finite {
            if let Some(guard) = self.guard_width {
                if width <= guard {
                    self.excluded += width;
                    return Ok(());
                }
            }
            if width <= self.min_width || self.subdivisions >= self.max_subdivisions {
                return Err(Error::Domain(format!(
                    "integrand is not finite near {:.17e}",
                    0.5 * (panel.a + panel.b)
                )));
            }
        } else {
            let converged = panel.error <= tol || panel.error <= 50.0 * EPS * panel.resabs;
            if converged || width <= self.min_width || self.subdivisions >= self.max_subdivisions
            {
                self.accepted.push(panel);
                return Ok(());
            }
        }
        self.subdivisions += 1;
        let mid = 0.5 * (panel.a + panel.b);
        let left = eval_panel(self.f, panel.a, mid);
        let right = eval_panel(self.f, mid, panel.b);
        self.refine(left, 0.5 * tol)?;
        self.refine(right, 0.5 * tol)
    }
}

struct RunOutcome {
    value: f64,
    error: f64,
    resabs: f64,
    excluded: f64,
    aux: [f64; 2],
}

fn run_adaptive<F: FnMut(f64) -> [f64; 3]>(
    f: &mut F,
    a: f64,
    b: f64,
    tol: f64,
    max_subdivisions: u32,
    guard_width: Option<f64>,
) -> Result<RunOutcome> {
    let min_width = 8.0 * EPS * a.abs().max(b.abs()).max(1.0);
    let root = eval_panel(f, a, b);
    let mut state = Adaptive {
        f,
        accepted: Vec::new(),
        subdivisions: 0,
        max_subdivisions,
        guard_width,
        excluded: 0.0,
        min_width,
    };
    state.refine(root, tol)?;

    // Panels are accepted in ascending interval order; sum left to right.
    let mut value = Neumaier::default();
    let mut error = Neumaier::default();
    let mut resabs = Neumaier::default();
    let mut aux0 = Neumaier::default();
    let mut aux1 = Neumaier::default();
    for p in &state.accepted {
        value.add(p.value);
        error.add(p.error);
        resabs.add(p.resabs);
        aux0.add(p.aux[0]);
        aux1.add(p.aux[1]);
    }
    Ok(RunOutcome {
        value: value.total(),
        error: error.total(),
        resabs: resabs.total(),
        excluded: state.excluded,
        aux: [aux0.total(), aux1.total()],
    })
}

/// Shared driver: runs the adaptive refinement, checks the global tolerance
/// against the actual value, and retries with a tightened allocation when the
/// initial scale guess from the root panel was too loose. `extra_error` folds
/// in everything beyond the panel sum (nested inner errors, excluded measure,
/// with whatever scaling the geometry requires).
fn drive<F: FnMut(f64) -> [f64; 3]>(
    f: &mut F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
    guard_width: Option<f64>,
    extra_error: impl Fn(&RunOutcome) -> f64,
) -> Result<Quadrature> {
    let scale = {
        let root = eval_panel(f, a, b);
        root.value.abs()
    };
    let mut tol = spec.abs_tol.max(spec.rel_tol * scale);
    let mut attempts = 0;
    loop {
        attempts += 1;
        let out = run_adaptive(f, a, b, tol, spec.max_subdivisions, guard_width)?;
        let total_error = out.error + extra_error(&out);
        let floor = 50.0 * EPS * out.resabs;
        let allowed = spec.abs_tol.max(spec.rel_tol * out.value.abs()).max(floor);
        if total_error <= allowed {
            return Ok(Quadrature { value: out.value, error_estimate: total_error });
        }
        let tightened = spec.abs_tol.max(spec.rel_tol * out.value.abs());
        if attempts >= 3 || tightened >= tol {
            return Err(Error::NonConvergence { value: out.value, error_estimate: total_error });
        }
        tol = tightened;
    }
}

/// Integrates `f` over `[a, b]` to the requested tolerance.
///
/// The integrand must be finite on the whole interval. Fails with
/// [`Error::NonConvergence`] (carrying the best estimate) when the
/// subdivision budget is exhausted first.
pub fn integrate_interval<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<Quadrature> {
    spec.validate()?;
    if !a.is_finite() || !b.is_finite() || !(a < b) {
        return Err(Error::Domain(format!("invalid interval [{a}, {b}]")));
    }
    let mut g = |x: f64| [f(x), 0.0, 0.0];
    drive(&mut g, a, b, spec, None, |_| 0.0)
}

/// Integrates `f` over the unit sphere via nested adaptive rules: outer over
/// the polar cosine, inner over the azimuth with tolerances tightened by 4.
///
/// Isolated non-finite directions are excluded by the singularity guard once
/// the surrounding panel is narrower than `spec.singularity_guard` in each
/// angular coordinate; the excluded solid angle is added to the error
/// estimate. Inner error estimates are integrated alongside the value and
/// included in the reported error.
pub fn integrate_sphere<F: FnMut(UnitDirection) -> f64>(
    mut f: F,
    spec: &QuadratureSpec,
) -> Result<Quadrature> {
    spec.validate()?;
    let inner_spec = spec.inner();
    let inner_failure: std::cell::Cell<Option<Error>> = std::cell::Cell::new(None);

    let mut outer = |z: f64| -> [f64; 3] {
        let mut inner = |azimuth: f64| [f(UnitDirection { z, azimuth }), 0.0, 0.0];
        let scale = eval_panel(&mut inner, 0.0, std::f64::consts::TAU).value.abs();
        let tol = inner_spec.abs_tol.max(inner_spec.rel_tol * scale);
        match run_adaptive(
            &mut inner,
            0.0,
            std::f64::consts::TAU,
            tol,
            inner_spec.max_subdivisions,
            Some(inner_spec.singularity_guard),
        ) {
            Ok(out) => [out.value, out.error, out.excluded],
            Err(e) => {
                if inner_failure.take().is_none() {
                    inner_failure.set(Some(e));
                }
                [f64::NAN, 0.0, 0.0]
            }
        }
    };

    // An excluded slab of polar width dz removes a ring of solid angle 2π·dz;
    // inner exclusions (aux[1]) are already in solid-angle units.
    let result = drive(&mut outer, -1.0, 1.0, spec, Some(spec.singularity_guard), |out| {
        out.aux[0] + out.aux[1] + std::f64::consts::TAU * out.excluded
    });
    match result {
        // A failing polar slice that the guard excluded is accounted for in
        // the error estimate like any other guarded singularity.
        Ok(q) => {
            inner_failure.take();
            Ok(q)
        }
        Err(outer_err) => Err(inner_failure.take().unwrap_or(outer_err)),
    }
}

/// Sphere integral of an azimuth-independent integrand `f(z)`: the azimuthal
/// factor 2π is exact, only the polar integral is adaptive.
pub fn integrate_sphere_axisym<F: FnMut(f64) -> f64>(
    mut f: F,
    spec: &QuadratureSpec,
) -> Result<Quadrature> {
    spec.validate()?;
    let mut g = |z: f64| [f(z), 0.0, 0.0];
    let q = drive(&mut g, -1.0, 1.0, spec, Some(spec.singularity_guard), |out| out.excluded)?;
    Ok(Quadrature {
        value: std::f64::consts::TAU * q.value,
        error_estimate: std::f64::consts::TAU * q.error_estimate,
    })
}
