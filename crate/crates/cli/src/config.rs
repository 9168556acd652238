//! Plain-text key=value configuration: one assignment per line, `#` starts a
//! comment, `-` and `_` in keys are interchangeable. File values fill
//! parameters the command line left unset; flags always override the file.

use crate::{OutputFormat, Params, SweepArgs};
use std::collections::HashMap;
use std::path::PathBuf;

/// Keys the config file may set. Anything else is rejected by name, so a
/// typo never silently becomes a default.
const KNOWN_KEYS: &[&str] = &[
    // globals
    "out",
    "format",
    "rel_tol",
    "abs_tol",
    // physics parameters
    "x",
    "deriv",
    "m",
    "q",
    "theta",
    "phi",
    "small_angle",
    "v",
    "gamma",
    "delta",
    "gm2",
    "g",
    "m0sq",
    "m1m2_re",
    "lambda_ir",
    "lambda_uv",
    "t",
    "t1",
    "t2",
    "nu",
    "z",
    "azimuth",
    "omega_r",
    "regime",
    // sweep grid
    "command",
    "param",
    "start",
    "stop",
    "steps",
    "param2",
    "start2",
    "stop2",
    "steps2",
];

#[derive(Debug)]
pub struct ConfigMap {
    values: HashMap<String, String>,
}

impl ConfigMap {
    pub fn empty() -> Self {
        ConfigMap { values: HashMap::new() }
    }

    /// Parse config text; later assignments to the same key win.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut values = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                format!("config line {}: expected key=value, got {raw:?}", lineno + 1)
            })?;
            let key = key.trim().replace('-', "_");
            let value = value.trim().to_string();
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(format!("config line {}: unknown key {key:?}", lineno + 1));
            }
            values.insert(key, value);
        }
        Ok(ConfigMap { values })
    }

    pub fn load(path: &PathBuf) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        Self::parse(&text)
    }

    fn get_f64(&self, key: &str) -> Result<Option<f64>, String> {
        match self.values.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<f64>()
                .map(Some)
                .map_err(|_| format!("config key {key}: malformed number {raw:?}")),
        }
    }

    fn get_u64(&self, key: &str) -> Result<Option<u64>, String> {
        match self.values.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<u64>()
                .map(Some)
                .map_err(|_| format!("config key {key}: malformed integer {raw:?}")),
        }
    }

    fn get_bool(&self, key: &str) -> Result<bool, String> {
        match self.values.get(key).map(String::as_str) {
            None => Ok(false),
            Some("true") | Some("1") => Ok(true),
            Some("false") | Some("0") => Ok(false),
            Some(raw) => Err(format!("config key {key}: expected true/false, got {raw:?}")),
        }
    }

    fn get_string(&self, key: &str) -> Option<String> {
        self.values.get(key).cloned()
    }

    /// Fill unset fields of `params` from the file.
    pub fn merge_params(&self, params: &mut Params) -> Result<(), String> {
        macro_rules! fill {
            ($field:ident) => {
                if params.$field.is_none() {
                    params.$field = self.get_f64(stringify!($field))?;
                }
            };
        }
        fill!(x);
        fill!(m);
        fill!(q);
        fill!(theta);
        fill!(phi);
        fill!(v);
        fill!(gamma);
        fill!(delta);
        fill!(gm2);
        fill!(g);
        fill!(m0sq);
        fill!(m1m2_re);
        fill!(lambda_ir);
        fill!(lambda_uv);
        fill!(t);
        fill!(t1);
        fill!(t2);
        fill!(nu);
        fill!(z);
        fill!(azimuth);
        fill!(omega_r);
        if !params.deriv {
            params.deriv = self.get_bool("deriv")?;
        }
        if !params.small_angle {
            params.small_angle = self.get_bool("small_angle")?;
        }
        if params.regime.is_none() {
            params.regime = self.get_string("regime");
        }
        Ok(())
    }

    pub fn merge_sweep(&self, sweep: &mut SweepArgs) -> Result<(), String> {
        self.merge_params(&mut sweep.params)?;
        if sweep.command.is_none() {
            sweep.command = self.get_string("command");
        }
        if sweep.param.is_none() {
            sweep.param = self.get_string("param");
        }
        if sweep.param2.is_none() {
            sweep.param2 = self.get_string("param2");
        }
        if sweep.start.is_none() {
            sweep.start = self.get_f64("start")?;
        }
        if sweep.stop.is_none() {
            sweep.stop = self.get_f64("stop")?;
        }
        if sweep.steps.is_none() {
            sweep.steps = self.get_u64("steps")?;
        }
        if sweep.start2.is_none() {
            sweep.start2 = self.get_f64("start2")?;
        }
        if sweep.stop2.is_none() {
            sweep.stop2 = self.get_f64("stop2")?;
        }
        if sweep.steps2.is_none() {
            sweep.steps2 = self.get_u64("steps2")?;
        }
        Ok(())
    }

    pub fn merge_globals(
        &self,
        out: &mut Option<PathBuf>,
        format: &mut Option<OutputFormat>,
        rel_tol: &mut Option<f64>,
        abs_tol: &mut Option<f64>,
    ) -> Result<(), String> {
        if out.is_none() {
            *out = self.get_string("out").map(PathBuf::from);
        }
        if format.is_none() {
            *format = match self.get_string("format").as_deref() {
                None => None,
                Some("json") => Some(OutputFormat::Json),
                Some("csv") => Some(OutputFormat::Csv),
                Some(raw) => {
                    return Err(format!("config key format: expected json or csv, got {raw:?}"))
                }
            };
        }
        if rel_tol.is_none() {
            *rel_tol = self.get_f64("rel_tol")?;
        }
        if abs_tol.is_none() {
            *abs_tol = self.get_f64("abs_tol")?;
        }
        Ok(())
    }
}
