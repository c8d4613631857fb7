//! Structured output: a versioned [`OutputRecord`] rendered as JSON or CSV.
//!
//! Floating-point values are written with 17 significant digits in both
//! formats, which round-trips every `f64` exactly.

use std::collections::BTreeMap;
use std::io;

use hardy_core::verify::Check;
use hardy_core::VerificationReport;
use serde::ser::Serialize;
use serde::{Deserialize, Serialize as SerializeDerive};
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::Value;

/// Version tag carried in every record.
pub const SCHEMA: &str = "hardy-output/1";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, SerializeDerive, Deserialize)]
pub struct OutputRecord {
    pub schema: String,
    /// Canonical form of the invocation, excluding the output path.
    pub command: String,
    pub tolerances: BTreeMap<String, f64>,
    pub seed: Option<u64>,
    pub payload: Payload,
}

#[derive(Clone, Debug, PartialEq, SerializeDerive, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "snake_case")]
pub enum Payload {
    Weights(Vec<WeightRow>),
    Coeffs(Vec<CoeffRow>),
    Verify(Box<VerificationReport>),
    Eigen(EigenPayload),
    Residual(ResidualPayload),
}

#[derive(Clone, Debug, PartialEq, SerializeDerive, Deserialize)]
pub struct WeightRow {
    pub n: u64,
    pub w_closed: f64,
    /// Absent at `n = 1`, outside the series domain.
    pub w_series: Option<f64>,
    pub w_classical: f64,
    pub ratio: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w_extended: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extended_rel_err: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, SerializeDerive, Deserialize)]
pub struct CoeffRow {
    pub k: u64,
    pub numerator: String,
    pub denominator: String,
    pub rational: String,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, SerializeDerive, Deserialize)]
pub struct EigenRow {
    pub size: u64,
    pub lambda_min: f64,
    /// `lambda_min` exceeds the value at the previous size by more than `tol`.
    pub monotonicity_violation: bool,
    pub below_one: bool,
}

#[derive(Clone, Debug, PartialEq, SerializeDerive, Deserialize)]
pub struct EigenPayload {
    pub weight: String,
    pub rows: Vec<EigenRow>,
    /// Whether the flags are hard failures (improved weight only).
    pub flags_are_hard: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, SerializeDerive, Deserialize)]
pub struct ResidualPayload {
    pub weight: String,
    pub n_max: u64,
    pub max_residual: f64,
    pub extended_residual: Option<f64>,
    /// Only the improved weight solves the ground-state equation.
    pub passed: Option<bool>,
}

impl OutputRecord {
    pub fn to_json(&self) -> String {
        let mut out = Vec::new();
        let mut ser = serde_json::Serializer::with_formatter(&mut out, Sig17(PrettyFormatter::new()));
        self.serialize(&mut ser).expect("records always serialize");
        out.push(b'\n');
        String::from_utf8(out).expect("serde_json writes UTF-8")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_csv(&self) -> String {
        let table = match &self.payload {
            Payload::Weights(rows) => weights_table(rows),
            Payload::Coeffs(rows) => coeffs_table(rows),
            Payload::Eigen(payload) => eigen_table(payload),
            Payload::Verify(report) => verify_table(report),
            Payload::Residual(payload) => flattened_table(payload),
        };
        let mut writer = csv::Writer::from_writer(Vec::new());
        for row in table {
            writer.write_record(&row).expect("in-memory CSV");
        }
        String::from_utf8(writer.into_inner().expect("in-memory CSV")).expect("UTF-8 fields")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

/// `f64` with 17 significant digits.
pub fn sig17(value: f64) -> String {
    if value.is_finite() {
        format!("{value:.16e}")
    } else {
        String::new()
    }
}

fn opt(value: Option<f64>) -> String {
    value.map(sig17).unwrap_or_default()
}

fn weights_table(rows: &[WeightRow]) -> Vec<Vec<String>> {
    let extended = rows.iter().any(|r| r.w_extended.is_some());
    let mut header = vec!["n", "w_closed", "w_series", "w_classical", "ratio"];
    if extended {
        header.extend(["w_extended", "extended_rel_err"]);
    }
    let mut table = vec![header.into_iter().map(String::from).collect()];
    for r in rows {
        let mut row = vec![
            r.n.to_string(),
            sig17(r.w_closed),
            opt(r.w_series),
            sig17(r.w_classical),
            sig17(r.ratio),
        ];
        if extended {
            row.push(r.w_extended.clone().unwrap_or_default());
            row.push(opt(r.extended_rel_err));
        }
        table.push(row);
    }
    table
}

fn coeffs_table(rows: &[CoeffRow]) -> Vec<Vec<String>> {
    let mut table = vec![["k", "numerator", "denominator", "rational", "value"]
        .map(String::from)
        .to_vec()];
    table.extend(rows.iter().map(|r| {
        vec![
            r.k.to_string(),
            r.numerator.clone(),
            r.denominator.clone(),
            r.rational.clone(),
            sig17(r.value),
        ]
    }));
    table
}

fn eigen_table(payload: &EigenPayload) -> Vec<Vec<String>> {
    let mut table = vec![["weight", "size", "lambda_min", "monotonicity_violation", "below_one"]
        .map(String::from)
        .to_vec()];
    table.extend(payload.rows.iter().map(|r| {
        vec![
            payload.weight.clone(),
            r.size.to_string(),
            sig17(r.lambda_min),
            r.monotonicity_violation.to_string(),
            r.below_one.to_string(),
        ]
    }));
    table
}

fn verify_table(report: &VerificationReport) -> Vec<Vec<String>> {
    // checks first, then every scalar of the report as field/value pairs
    let mut table = vec![["section", "name", "value", "comparison", "threshold", "passed", "hard"]
        .map(String::from)
        .to_vec()];
    for Check {
        name,
        value,
        comparison,
        threshold,
        passed,
        hard,
    } in &report.checks
    {
        let comparison = match comparison {
            hardy_core::verify::Comparison::AtMost => "at_most",
            hardy_core::verify::Comparison::AtLeast => "at_least",
        };
        table.push(vec![
            "check".into(),
            name.clone(),
            sig17(*value),
            comparison.into(),
            sig17(*threshold),
            passed.to_string(),
            hard.to_string(),
        ]);
    }
    let mut fields = Vec::new();
    flatten("", &serde_json::to_value(report).expect("report serializes"), &mut fields);
    for (key, value) in fields.into_iter().filter(|(k, _)| !k.starts_with("checks.")) {
        table.push(vec![
            "field".into(),
            key,
            value,
            String::new(),
            String::new(),
            String::new(),
            String::new(),
        ]);
    }
    table
}

fn flattened_table<T: Serialize>(payload: &T) -> Vec<Vec<String>> {
    let mut fields = Vec::new();
    flatten("", &serde_json::to_value(payload).expect("payload serializes"), &mut fields);
    let mut table = vec![vec!["field".to_string(), "value".to_string()]];
    table.extend(fields.into_iter().map(|(k, v)| vec![k, v]));
    table
}

fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    let key = |child: &str| {
        if prefix.is_empty() {
            child.to_string()
        } else {
            format!("{prefix}.{child}")
        }
    };
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), v, out);
            }
        }
        Value::Number(n) => {
            let text = if n.is_f64() {
                sig17(n.as_f64().unwrap_or(f64::NAN))
            } else {
                n.to_string()
            };
            out.push((prefix.to_string(), text));
        }
        Value::Null => out.push((prefix.to_string(), String::new())),
        Value::Bool(b) => out.push((prefix.to_string(), b.to_string())),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
    }
}

/// Pretty JSON whose floats carry 17 significant digits.
struct Sig17<'a>(PrettyFormatter<'a>);

impl Formatter for Sig17<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_array(writer)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_array(writer)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(writer, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_array_value(writer)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_object(writer)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_object(writer)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(writer, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_object_value(writer)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_object_value(writer)
    }
}
