use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use spin_tqft::Scalar;

/// Everything a command computed. Serialized with sorted keys so equal inputs give equal bytes.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs_sha256: String,
    pub seed: u64,
    pub tol: f64,
    pub passed: bool,
    pub results: Value,
    pub residuals: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Twelve decimals with trailing zeros dropped; the JSON report keeps full precision.
fn fmt_real(x: f64) -> String {
    let s = format!("{x:.12}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".to_string() } else { s.to_string() }
}

pub fn fmt_scalar(z: Scalar) -> String {
    let im = fmt_real(z.im);
    if im == "0" {
        fmt_real(z.re)
    } else if im.starts_with('-') {
        format!("{}{im}i", fmt_real(z.re))
    } else {
        format!("{}+{im}i", fmt_real(z.re))
    }
}
