use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "KNOWN-ERRATUM")]
    KnownErratum,
}

impl Status {
    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::KnownErratum => "KNOWN-ERRATUM",
        })
    }
}

/// One computed value or identity check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub n: u32,
    pub l: Option<u32>,
    pub value_exact: Option<String>,
    pub value_float: Option<f64>,
    pub method: String,
    pub err_estimate: f64,
    pub identity: Option<String>,
    pub status: Option<Status>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptRecord {
    pub regime: String,
    pub n: Option<u32>,
    pub l: Option<u32>,
    pub lambda: Option<String>,
    pub estimate: f64,
    pub exact: Option<f64>,
    pub rel_error: Option<f64>,
    pub uncertainty: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShiftRecord {
    pub n: u32,
    pub l: u32,
    pub inv_p: f64,
    pub delta_e: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WavefnRecord {
    pub grid_value: f64,
    pub amplitude: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub fn write_records<T: Serialize, W: Write>(records: &[T], format: Format, out: W) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
            for r in records {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Format::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, records)?;
            out.write_all(b"\n")?;
        }
    }
    Ok(())
}
