//! Output records. One evaluation produces one [`Record`]; JSON emission is
//! one object per line, CSV emission uses a fixed, documented column set.

use serde::{Deserialize, Serialize};

/// Everything one evaluation knows about itself: the command, the echoed
/// physics inputs (only those that affect the result), the outputs, and the
/// library version. Unset fields are omitted from JSON entirely.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub command: String,
    /// "ok" or "error".
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regime: Option<String>,

    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deriv: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub small_angle: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gm2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m0sq: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m1m2_re: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_ir: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_uv: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub azimuth: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega_r: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rel_tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abs_tol: Option<f64>,

    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error_estimate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bracket_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub log_factor: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prefactor: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convention_tag: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub log_omega_r_t: Option<f64>,

    pub version: String,
}

impl Record {
    pub fn new(command: &str) -> Self {
        Record {
            command: command.to_string(),
            status: "ok".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            ..Record::default()
        }
    }

    pub fn fail(mut self, message: String) -> Self {
        self.status = "error".to_string();
        self.message = Some(message);
        self
    }
}

/// Shortest representation that re-parses to the same f64 (Rust's Debug
/// formatting guarantees round-trip).
pub fn fmt_f64(v: f64) -> String {
    format!("{v:?}")
}

pub fn to_json_line(record: &Record) -> String {
    serde_json::to_string(record).expect("record serialization cannot fail")
}

/// Fixed CSV column tail shared by single evaluations and sweeps.
pub const CSV_OUTPUT_COLUMNS: [&str; 3] = ["value", "error_estimate", "convention_tag"];

pub fn csv_output_cells(record: &Record) -> [String; 3] {
    [
        record.value.map(fmt_f64).unwrap_or_default(),
        record.error_estimate.map(fmt_f64).unwrap_or_default(),
        record.convention_tag.clone().unwrap_or_default(),
    ]
}
