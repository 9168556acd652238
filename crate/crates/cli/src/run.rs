//! Resolution (flags over file over defaults), per-command validation,
//! evaluation, and output. Exit codes: 0 all evaluations converged, 1 an
//! evaluation failed (machine-readable error record emitted), 2 usage error.

use crate::config::ConfigMap;
use crate::record::{csv_output_cells, fmt_f64, to_json_line, Record, CSV_OUTPUT_COLUMNS};
use crate::{Cli, Command, OutputFormat, Params, SweepArgs};

use gravidec::bloch_nordsieck::{
    finite_time_real_factor_quadrature, interference_ratio, nu_nonrelativistic,
    nu_relativistic, x_coefficient_quadrature, xi_density, BranchVelocities, FiniteTimeSpec,
};
use gravidec::decoherence::{
    emission_log_coefficient, interference_coefficient,
    interference_coefficient_massless, interference_coefficient_massless_small_angle,
    interference_coefficient_small_angle, CoefficientResult,
};
use gravidec::kinematics::{build_elastic_cm, superpose};
use gravidec::quadrature::QuadratureSpec;
use gravidec::soft_radiation::{EmissionSpec, UnitDirection};
use gravidec::special_functions::{d_weinberg, d_weinberg_deriv};

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

/// A configuration mistake: reported on stderr, exit status 2.
struct Usage(String);

type UResult<T> = Result<T, Usage>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Dfunc,
    Emission,
    Interference,
    Xi,
    Xcoeff,
    Nu,
    Ratio,
    FiniteTime,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Dfunc => "dfunc",
            Kind::Emission => "emission",
            Kind::Interference => "interference",
            Kind::Xi => "xi",
            Kind::Xcoeff => "xcoeff",
            Kind::Nu => "nu",
            Kind::Ratio => "ratio",
            Kind::FiniteTime => "finite-time",
        }
    }

    fn from_name(name: &str) -> Option<Kind> {
        match name {
            "dfunc" => Some(Kind::Dfunc),
            "emission" => Some(Kind::Emission),
            "interference" => Some(Kind::Interference),
            "xi" => Some(Kind::Xi),
            "xcoeff" => Some(Kind::Xcoeff),
            "nu" => Some(Kind::Nu),
            "ratio" => Some(Kind::Ratio),
            "finite-time" | "finite_time" => Some(Kind::FiniteTime),
            _ => None,
        }
    }

    /// Numeric parameters the command reads; exactly these are sweepable.
    fn numeric_keys(self) -> &'static [&'static str] {
        match self {
            Kind::Dfunc => &["x"],
            Kind::Emission => &["m", "q", "theta", "g", "m0sq", "lambda_ir", "lambda_uv"],
            Kind::Interference => {
                &["m", "q", "theta", "phi", "g", "m1m2_re", "lambda_ir", "lambda_uv"]
            }
            Kind::Xi => &["v", "delta", "gm2", "z", "azimuth"],
            Kind::Xcoeff => &["v", "delta", "gm2"],
            Kind::Nu => &["gm2", "v", "gamma", "delta"],
            Kind::Ratio => &["t1", "t2", "nu"],
            Kind::FiniteTime => {
                &["v", "delta", "gm2", "t", "lambda_ir", "lambda_uv", "omega_r"]
            }
        }
    }
}

fn set_param(params: &mut Params, key: &str, value: f64) -> UResult<()> {
    let slot = match key {
        "x" => &mut params.x,
        "m" => &mut params.m,
        "q" => &mut params.q,
        "theta" => &mut params.theta,
        "phi" => &mut params.phi,
        "v" => &mut params.v,
        "gamma" => &mut params.gamma,
        "delta" => &mut params.delta,
        "gm2" => &mut params.gm2,
        "g" => &mut params.g,
        "m0sq" => &mut params.m0sq,
        "m1m2_re" => &mut params.m1m2_re,
        "lambda_ir" => &mut params.lambda_ir,
        "lambda_uv" => &mut params.lambda_uv,
        "t" => &mut params.t,
        "t1" => &mut params.t1,
        "t2" => &mut params.t2,
        "nu" => &mut params.nu,
        "z" => &mut params.z,
        "azimuth" => &mut params.azimuth,
        "omega_r" => &mut params.omega_r,
        _ => return Err(Usage(format!("unknown parameter {key:?}"))),
    };
    *slot = Some(value);
    Ok(())
}

/// Quadrature tolerances with their documented defaults, echoed on records
/// of quadrature-backed commands.
#[derive(Debug, Clone, Copy)]
struct Tolerances {
    rel_tol: f64,
    abs_tol: f64,
}

impl Tolerances {
    fn quadrature_spec(&self) -> UResult<QuadratureSpec> {
        if !(self.rel_tol >= 0.0) || !(self.abs_tol >= 0.0) {
            return Err(Usage(format!(
                "quadrature tolerances must be non-negative, got --rel-tol {} --abs-tol {}",
                self.rel_tol, self.abs_tol
            )));
        }
        if self.rel_tol == 0.0 && self.abs_tol == 0.0 {
            return Err(Usage(
                "at least one of --rel-tol, --abs-tol must be positive".into(),
            ));
        }
        Ok(QuadratureSpec {
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            ..QuadratureSpec::default()
        })
    }
}

fn require(value: Option<f64>, key: &str, kind: Kind) -> UResult<f64> {
    let flag = key.replace('_', "-");
    match value {
        Some(v) if v.is_finite() => Ok(v),
        Some(v) => Err(Usage(format!("parameter --{flag} must be finite, got {v}"))),
        None => Err(Usage(format!(
            "missing required parameter --{flag} for command {}",
            kind.name()
        ))),
    }
}

/// Fill documented defaults (G = 1, m = 1, |M₀|² = 1, Re(M₁M₂*) = 1,
/// Gm² = 1, ω_R = 1) and enforce the cross-parameter invariant λ < Λ.
fn apply_defaults(kind: Kind, params: &mut Params) -> UResult<()> {
    match kind {
        Kind::Emission => {
            params.m.get_or_insert(1.0);
            params.g.get_or_insert(1.0);
            params.m0sq.get_or_insert(1.0);
        }
        Kind::Interference => {
            params.m.get_or_insert(1.0);
            params.g.get_or_insert(1.0);
            params.m1m2_re.get_or_insert(1.0);
        }
        Kind::Xi | Kind::Xcoeff | Kind::Nu => {
            params.gm2.get_or_insert(1.0);
        }
        Kind::FiniteTime => {
            params.gm2.get_or_insert(1.0);
            params.omega_r.get_or_insert(1.0);
        }
        Kind::Dfunc | Kind::Ratio => {}
    }
    if let (Some(ir), Some(uv)) = (params.lambda_ir, params.lambda_uv) {
        if !(ir < uv) {
            return Err(Usage(format!(
                "frequency window requires --lambda-ir < --lambda-uv, got {ir} and {uv}"
            )));
        }
    }
    Ok(())
}

fn fill_coefficient(record: &mut Record, c: &CoefficientResult) {
    record.value = Some(c.total);
    record.bracket_value = Some(c.bracket_value);
    record.log_factor = Some(c.log_factor);
    record.prefactor = Some(c.prefactor);
    record.convention_tag = Some(c.convention_tag.to_string());
}

fn fail_with(record: Record, err: gravidec::Error) -> Record {
    let mut record = record.fail(err.to_string());
    if let gravidec::Error::NonConvergence { value, error_estimate } = err {
        record.value = Some(value);
        record.error_estimate = Some(error_estimate);
    }
    record
}

/// Validate presence, echo the effective inputs, run the command. Domain and
/// convergence failures come back as status = "error" records; only
/// configuration mistakes are usage errors.
fn evaluate(kind: Kind, params: &Params, tols: Tolerances) -> UResult<Record> {
    let mut record = Record::new(kind.name());
    match kind {
        Kind::Dfunc => {
            let x = require(params.x, "x", kind)?;
            record.x = Some(x);
            record.deriv = Some(params.deriv);
            let result = if params.deriv { d_weinberg_deriv(x) } else { d_weinberg(x) };
            match result {
                Ok(value) => record.value = Some(value),
                Err(e) => return Ok(fail_with(record, e)),
            }
        }
        Kind::Emission => {
            let m = require(params.m, "m", kind)?;
            let q = require(params.q, "q", kind)?;
            let theta = require(params.theta, "theta", kind)?;
            let g = require(params.g, "g", kind)?;
            let m0sq = require(params.m0sq, "m0sq", kind)?;
            let ir = require(params.lambda_ir, "lambda_ir", kind)?;
            let uv = require(params.lambda_uv, "lambda_uv", kind)?;
            record.m = Some(m);
            record.q = Some(q);
            record.theta = Some(theta);
            record.g = Some(g);
            record.m0sq = Some(m0sq);
            record.lambda_ir = Some(ir);
            record.lambda_uv = Some(uv);
            let outcome = (|| {
                let kin = build_elastic_cm(m, q, theta)?;
                let spec = EmissionSpec::new(ir, uv, g, m0sq)?;
                emission_log_coefficient(&kin, &spec)
            })();
            match outcome {
                Ok(c) => fill_coefficient(&mut record, &c),
                Err(e) => return Ok(fail_with(record, e)),
            }
        }
        Kind::Interference => {
            let m = require(params.m, "m", kind)?;
            let q = require(params.q, "q", kind)?;
            let phi = require(params.phi, "phi", kind)?;
            let g = require(params.g, "g", kind)?;
            let m1m2 = require(params.m1m2_re, "m1m2_re", kind)?;
            let ir = require(params.lambda_ir, "lambda_ir", kind)?;
            let uv = require(params.lambda_uv, "lambda_uv", kind)?;
            let massless_small = m == 0.0 && params.small_angle;
            // θ_sc rotates both branches rigidly; the massless small-angle
            // form is the one regime it cannot influence.
            let theta = if massless_small {
                params.theta.unwrap_or(0.0)
            } else {
                require(params.theta, "theta", kind)?
            };
            record.m = Some(m);
            record.q = Some(q);
            if !massless_small {
                record.theta = Some(theta);
            }
            record.phi = Some(phi);
            record.small_angle = Some(params.small_angle);
            record.g = Some(g);
            record.m1m2_re = Some(m1m2);
            record.lambda_ir = Some(ir);
            record.lambda_uv = Some(uv);
            let outcome = (|| {
                let spec = EmissionSpec::new(ir, uv, g, 1.0)?;
                if massless_small {
                    return interference_coefficient_massless_small_angle(
                        q, phi, &spec, m1m2,
                    );
                }
                let kin = build_elastic_cm(m, q, theta)?;
                if m == 0.0 {
                    let pair = superpose(&kin, phi)?;
                    interference_coefficient_massless(&pair, kin.s, &spec, m1m2)
                } else if params.small_angle {
                    interference_coefficient_small_angle(&kin, phi, &spec, m1m2)
                } else {
                    let pair = superpose(&kin, phi)?;
                    interference_coefficient(&pair, &spec, m1m2)
                }
            })();
            match outcome {
                Ok(c) => fill_coefficient(&mut record, &c),
                Err(e) => return Ok(fail_with(record, e)),
            }
        }
        Kind::Xi => {
            let v = require(params.v, "v", kind)?;
            let delta = require(params.delta, "delta", kind)?;
            let gm2 = require(params.gm2, "gm2", kind)?;
            let z = require(params.z, "z", kind)?;
            let azimuth = require(params.azimuth, "azimuth", kind)?;
            record.v = Some(v);
            record.delta = Some(delta);
            record.gm2 = Some(gm2);
            record.z = Some(z);
            record.azimuth = Some(azimuth);
            let outcome = (|| {
                let b = BranchVelocities::new(v, delta)?;
                let khat = UnitDirection::new(z, azimuth)?;
                Ok(xi_density(&b, gm2, 1.0, khat))
            })();
            match outcome {
                Ok(value) => record.value = Some(value),
                Err(e) => return Ok(fail_with(record, e)),
            }
        }
        Kind::Xcoeff => {
            let v = require(params.v, "v", kind)?;
            let delta = require(params.delta, "delta", kind)?;
            let gm2 = require(params.gm2, "gm2", kind)?;
            record.v = Some(v);
            record.delta = Some(delta);
            record.gm2 = Some(gm2);
            record.rel_tol = Some(tols.rel_tol);
            record.abs_tol = Some(tols.abs_tol);
            let quad = tols.quadrature_spec()?;
            let outcome = BranchVelocities::new(v, delta)
                .and_then(|b| x_coefficient_quadrature(&b, gm2, 1.0, &quad));
            match outcome {
                Ok(qr) => {
                    record.value = Some(qr.value);
                    record.error_estimate = Some(qr.error_estimate);
                }
                Err(e) => return Ok(fail_with(record, e)),
            }
        }
        Kind::Nu => {
            let regime = params.regime.as_deref().ok_or_else(|| {
                Usage("missing required parameter --regime (rel | nonrel) for command nu".into())
            })?;
            let gm2 = require(params.gm2, "gm2", kind)?;
            record.regime = Some(regime.to_string());
            record.gm2 = Some(gm2);
            let outcome = match regime {
                "nonrel" => {
                    let v = require(params.v, "v", kind)?;
                    let delta = require(params.delta, "delta", kind)?;
                    record.v = Some(v);
                    record.delta = Some(delta);
                    nu_nonrelativistic(gm2, v, delta)
                }
                "rel" => {
                    let gamma = require(params.gamma, "gamma", kind)?;
                    let delta = require(params.delta, "delta", kind)?;
                    record.gamma = Some(gamma);
                    record.delta = Some(delta);
                    nu_relativistic(gm2 * gamma * gamma, delta, gamma)
                }
                other => {
                    return Err(Usage(format!(
                        "parameter --regime must be rel or nonrel, got {other:?}"
                    )))
                }
            };
            match outcome {
                Ok(value) => record.value = Some(value),
                Err(e) => return Ok(fail_with(record, e)),
            }
        }
        Kind::Ratio => {
            let t1 = require(params.t1, "t1", kind)?;
            let t2 = require(params.t2, "t2", kind)?;
            let nu = require(params.nu, "nu", kind)?;
            record.t1 = Some(t1);
            record.t2 = Some(t2);
            record.nu = Some(nu);
            match interference_ratio(t1, t2, nu) {
                Ok(value) => record.value = Some(value),
                Err(e) => return Ok(fail_with(record, e)),
            }
        }
        Kind::FiniteTime => {
            let v = require(params.v, "v", kind)?;
            let delta = require(params.delta, "delta", kind)?;
            let gm2 = require(params.gm2, "gm2", kind)?;
            let t = require(params.t, "t", kind)?;
            let ir = require(params.lambda_ir, "lambda_ir", kind)?;
            let uv = require(params.lambda_uv, "lambda_uv", kind)?;
            let omega_r = require(params.omega_r, "omega_r", kind)?;
            record.v = Some(v);
            record.delta = Some(delta);
            record.gm2 = Some(gm2);
            record.t = Some(t);
            record.lambda_ir = Some(ir);
            record.lambda_uv = Some(uv);
            record.omega_r = Some(omega_r);
            record.rel_tol = Some(tols.rel_tol);
            record.abs_tol = Some(tols.abs_tol);
            let quad = tols.quadrature_spec()?;
            let outcome = (|| {
                let b = BranchVelocities::new(v, delta)?;
                let spec = FiniteTimeSpec::new(t, ir, uv, omega_r)?;
                finite_time_real_factor_quadrature(&b, gm2, 1.0, &spec, &quad)
            })();
            match outcome {
                Ok(qr) => {
                    record.value = Some(qr.value);
                    record.error_estimate = Some(qr.error_estimate);
                    record.log_omega_r_t = Some((omega_r * t).ln());
                }
                Err(e) => return Ok(fail_with(record, e)),
            }
        }
    }
    Ok(record)
}

struct SweepPlan {
    kind: Kind,
    base: Params,
    axes: Vec<(String, Vec<f64>)>,
}

fn grid(start: f64, stop: f64, steps: u64, which: &str) -> UResult<Vec<f64>> {
    if steps == 0 {
        return Err(Usage(format!("--{which} must be at least 1")));
    }
    if !start.is_finite() || !stop.is_finite() {
        return Err(Usage(format!("sweep endpoints must be finite, got {start}..{stop}")));
    }
    if steps == 1 {
        return Ok(vec![start]);
    }
    let n = steps as usize;
    Ok((0..n)
        .map(|i| start + (stop - start) * i as f64 / (n - 1) as f64)
        .collect())
}

fn plan_sweep(mut sweep: SweepArgs, file: &ConfigMap) -> UResult<SweepPlan> {
    file.merge_sweep(&mut sweep).map_err(Usage)?;
    let command = sweep
        .command
        .as_deref()
        .ok_or_else(|| Usage("missing required parameter --command for sweep".into()))?;
    let kind = Kind::from_name(command)
        .filter(|_| command != "sweep")
        .ok_or_else(|| Usage(format!("unknown sweep command {command:?}")))?;

    let param = sweep
        .param
        .as_deref()
        .ok_or_else(|| Usage("missing required parameter --param for sweep".into()))?
        .replace('-', "_");
    if !kind.numeric_keys().contains(&param.as_str()) {
        return Err(Usage(format!(
            "parameter {param:?} is not sweepable for command {}; choose one of {:?}",
            kind.name(),
            kind.numeric_keys()
        )));
    }
    let start = require(sweep.start, "start", kind)?;
    let stop = require(sweep.stop, "stop", kind)?;
    let steps = sweep
        .steps
        .ok_or_else(|| Usage("missing required parameter --steps for sweep".into()))?;
    let mut axes = vec![(param.clone(), grid(start, stop, steps, "steps")?)];

    let second_given = sweep.param2.is_some()
        || sweep.start2.is_some()
        || sweep.stop2.is_some()
        || sweep.steps2.is_some();
    if second_given {
        let param2 = sweep
            .param2
            .as_deref()
            .ok_or_else(|| Usage("second sweep axis given without --param2".into()))?
            .replace('-', "_");
        if param2 == param {
            return Err(Usage(format!("sweep parameters must differ, both are {param:?}")));
        }
        if !kind.numeric_keys().contains(&param2.as_str()) {
            return Err(Usage(format!(
                "parameter {param2:?} is not sweepable for command {}; choose one of {:?}",
                kind.name(),
                kind.numeric_keys()
            )));
        }
        let start2 = require(sweep.start2, "start2", kind)?;
        let stop2 = require(sweep.stop2, "stop2", kind)?;
        let steps2 = sweep
            .steps2
            .ok_or_else(|| Usage("missing required parameter --steps2 for sweep".into()))?;
        axes.push((param2, grid(start2, stop2, steps2, "steps2")?));
    }

    let mut base = sweep.params;
    apply_defaults(kind, &mut base)?;
    Ok(SweepPlan { kind, base, axes })
}

enum Output {
    /// Single evaluation (1-row CSV, one JSON line).
    Single(Record),
    /// Sweep: axis names plus (axis values, record) per grid point in order.
    Sweep {
        axis_names: Vec<String>,
        rows: Vec<(Vec<f64>, Record)>,
    },
}

fn write_json(w: &mut dyn Write, records: &[&Record]) -> std::io::Result<()> {
    for r in records {
        writeln!(w, "{}", to_json_line(r))?;
    }
    Ok(())
}

fn write_output(output: &Output, format: OutputFormat, out: &Option<PathBuf>) -> Result<(), String> {
    let mut sink: Box<dyn Write> = match out {
        Some(path) => Box::new(std::io::BufWriter::new(
            std::fs::File::create(path)
                .map_err(|e| format!("cannot create {}: {e}", path.display()))?,
        )),
        None => Box::new(std::io::stdout().lock()),
    };
    let io_err = |e: std::io::Error| format!("write failed: {e}");
    match (output, format) {
        (Output::Single(record), OutputFormat::Json) => {
            write_json(&mut sink, &[record]).map_err(io_err)?;
        }
        (Output::Single(record), OutputFormat::Csv) => {
            let mut w = csv::Writer::from_writer(sink);
            w.write_record(CSV_OUTPUT_COLUMNS).map_err(|e| e.to_string())?;
            if record.status == "ok" {
                w.write_record(&csv_output_cells(record)).map_err(|e| e.to_string())?;
            }
            w.flush().map_err(io_err)?;
            return Ok(());
        }
        (Output::Sweep { rows, .. }, OutputFormat::Json) => {
            let records: Vec<&Record> = rows.iter().map(|(_, r)| r).collect();
            write_json(&mut sink, &records).map_err(io_err)?;
        }
        (Output::Sweep { axis_names, rows }, OutputFormat::Csv) => {
            let mut w = csv::Writer::from_writer(sink);
            let header: Vec<&str> = axis_names
                .iter()
                .map(String::as_str)
                .chain(CSV_OUTPUT_COLUMNS)
                .collect();
            w.write_record(&header).map_err(|e| e.to_string())?;
            for (coords, record) in rows {
                if record.status != "ok" {
                    // The machine-readable error record went to stderr; a
                    // plot-ready CSV keeps only evaluated points.
                    continue;
                }
                let cells: Vec<String> = coords
                    .iter()
                    .map(|v| fmt_f64(*v))
                    .chain(csv_output_cells(record))
                    .collect();
                w.write_record(&cells).map_err(|e| e.to_string())?;
            }
            w.flush().map_err(io_err)?;
            return Ok(());
        }
    }
    sink.flush().map_err(io_err)
}

fn run_resolved(cli: Cli, file: &ConfigMap) -> UResult<(Output, bool)> {
    let mut rel_tol = cli.global.rel_tol;
    let mut abs_tol = cli.global.abs_tol;
    let mut format = cli.global.format;
    let mut out = cli.global.out.clone();
    file.merge_globals(&mut out, &mut format, &mut rel_tol, &mut abs_tol)
        .map_err(Usage)?;
    let tols = Tolerances {
        rel_tol: rel_tol.unwrap_or(1e-8),
        abs_tol: abs_tol.unwrap_or(0.0),
    };
    let format = format.unwrap_or(OutputFormat::Json);

    let (output, failed) = match cli.command {
        Command::Sweep(sweep) => {
            let plan = plan_sweep(sweep, file)?;
            let axis_names: Vec<String> = plan.axes.iter().map(|(n, _)| n.clone()).collect();
            // Validate once on a probe so a missing base parameter is a
            // usage error before any output, not a failed first row.
            {
                let mut probe = plan.base.clone();
                for (name, values) in &plan.axes {
                    set_param(&mut probe, name, values[0])?;
                }
                evaluate(plan.kind, &probe, tols)?;
            }
            let mut rows = Vec::new();
            let mut failed = false;
            let outer = &plan.axes[0];
            let inner = plan.axes.get(1);
            for &a in &outer.1 {
                let inner_values: &[f64] = match inner {
                    Some((_, values)) => values,
                    None => &[f64::NAN],
                };
                for (j, &b) in inner_values.iter().enumerate() {
                    let mut point = plan.base.clone();
                    set_param(&mut point, &outer.0, a)?;
                    let mut coords = vec![a];
                    if let Some((name2, _)) = inner {
                        set_param(&mut point, name2, b)?;
                        coords.push(b);
                    } else if j > 0 {
                        unreachable!("single-axis sweep has one inner iteration");
                    }
                    let record = evaluate(plan.kind, &point, tols)?;
                    if record.status != "ok" {
                        failed = true;
                        eprintln!("{}", to_json_line(&record));
                    }
                    rows.push((coords, record));
                }
            }
            (Output::Sweep { axis_names, rows }, failed)
        }
        single => {
            let (kind, mut params) = match single {
                Command::Dfunc(p) => (Kind::Dfunc, p),
                Command::Emission(p) => (Kind::Emission, p),
                Command::Interference(p) => (Kind::Interference, p),
                Command::Xi(p) => (Kind::Xi, p),
                Command::Xcoeff(p) => (Kind::Xcoeff, p),
                Command::Nu(p) => (Kind::Nu, p),
                Command::Ratio(p) => (Kind::Ratio, p),
                Command::FiniteTime(p) => (Kind::FiniteTime, p),
                Command::Sweep(_) => unreachable!("handled above"),
            };
            file.merge_params(&mut params).map_err(Usage)?;
            apply_defaults(kind, &mut params)?;
            let record = evaluate(kind, &params, tols)?;
            let failed = record.status != "ok";
            if failed {
                eprintln!("{}", to_json_line(&record));
            }
            (Output::Single(record), failed)
        }
    };

    write_output(&output, format, &out).map_err(Usage)?;
    Ok((output, failed))
}

pub fn execute(cli: Cli) -> ExitCode {
    let file = match &cli.global.config {
        Some(path) => match ConfigMap::load(path) {
            Ok(map) => map,
            Err(message) => {
                eprintln!("usage error: {message}");
                return ExitCode::from(2);
            }
        },
        None => ConfigMap::empty(),
    };
    match run_resolved(cli, &file) {
        Ok((_, false)) => ExitCode::SUCCESS,
        Ok((_, true)) => ExitCode::from(1),
        Err(Usage(message)) => {
            eprintln!("usage error: {message}");
            ExitCode::from(2)
        }
    }
}
