//! CSV and JSON output of sweep records.

use std::path::Path;
use std::str::FromStr;

use decodex_offload::{BackendKind, ClockType};
use serde_json::{Map, Number, Value};

use crate::error::{config_err, BenchError, Result};
use crate::sweep::SweepRecord;

pub const CSV_HEADER: &str =
    "backend,mcs,snr_db,prb,n_tb,bler,mean_iterations,p50_us,p99_us,mean_us,utilization,clock_type";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(config_err(format!("unknown format {s:?} (csv or json)"))),
        }
    }
}

/// `printf("%g")` with 6 significant digits.
pub fn format_g(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..6).contains(&exp) {
        let fixed = format!("{x:.*}", (5 - exp) as usize);
        trim_zeros(&fixed).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn csv_row(r: &SweepRecord) -> String {
    [
        r.backend.to_string(),
        r.mcs.to_string(),
        format_g(r.snr_db),
        r.prb.to_string(),
        r.n_tb.to_string(),
        format_g(r.bler),
        format_g(r.mean_iterations),
        format_g(r.p50_us),
        format_g(r.p99_us),
        format_g(r.mean_us),
        r.utilization.map(format_g).unwrap_or_default(),
        r.clock_type.to_string(),
    ]
    .join(",")
}

pub fn to_csv(records: &[SweepRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&csv_row(r));
        out.push('\n');
    }
    out
}

fn num(x: f64) -> Value {
    let rounded: f64 = format_g(x).parse().unwrap_or(x);
    Number::from_f64(rounded).map_or(Value::Null, Value::Number)
}

pub fn to_json(records: &[SweepRecord]) -> String {
    let rows: Vec<Value> = records
        .iter()
        .map(|r| {
            let mut m = Map::new();
            m.insert("backend".into(), Value::String(r.backend.to_string()));
            m.insert("mcs".into(), r.mcs.into());
            m.insert("snr_db".into(), num(r.snr_db));
            m.insert("prb".into(), r.prb.into());
            m.insert("n_tb".into(), r.n_tb.into());
            m.insert("bler".into(), num(r.bler));
            m.insert("mean_iterations".into(), num(r.mean_iterations));
            m.insert("p50_us".into(), num(r.p50_us));
            m.insert("p99_us".into(), num(r.p99_us));
            m.insert("mean_us".into(), num(r.mean_us));
            m.insert("utilization".into(), r.utilization.map_or(Value::Null, num));
            m.insert("clock_type".into(), Value::String(r.clock_type.to_string()));
            Value::Object(m)
        })
        .collect();
    serde_json::to_string_pretty(&rows).expect("records serialize")
}

/// Writes `records` to `path`.
pub fn emit(records: &[SweepRecord], format: Format, path: &Path) -> Result<()> {
    if records.is_empty() {
        return Err(config_err("nothing to emit"));
    }
    let text = match format {
        Format::Csv => to_csv(records),
        Format::Json => to_json(records) + "\n",
    };
    std::fs::write(path, text)?;
    Ok(())
}

fn parse_err(msg: impl Into<String>) -> BenchError {
    BenchError::Parse(msg.into())
}

fn field<T: FromStr>(s: &str, name: &str) -> Result<T> {
    s.parse().map_err(|_| parse_err(format!("{name} = {s:?}")))
}

fn clock(s: &str) -> Result<ClockType> {
    match s {
        "wall" => Ok(ClockType::Wall),
        "virtual" => Ok(ClockType::Virtual),
        _ => Err(parse_err(format!("clock_type = {s:?}"))),
    }
}

pub fn parse_csv(text: &str) -> Result<Vec<SweepRecord>> {
    let mut lines = text.lines();
    if lines.next() != Some(CSV_HEADER) {
        return Err(parse_err("missing or unexpected CSV header"));
    }
    lines
        .filter(|l| !l.is_empty())
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 12 {
                return Err(parse_err(format!("expected 12 fields: {line}")));
            }
            Ok(SweepRecord {
                backend: f[0].parse::<BackendKind>().map_err(|_| parse_err(format!("backend {:?}", f[0])))?,
                mcs: field(f[1], "mcs")?,
                snr_db: field(f[2], "snr_db")?,
                prb: field(f[3], "prb")?,
                n_tb: field(f[4], "n_tb")?,
                bler: field(f[5], "bler")?,
                mean_iterations: field(f[6], "mean_iterations")?,
                p50_us: field(f[7], "p50_us")?,
                p99_us: field(f[8], "p99_us")?,
                mean_us: field(f[9], "mean_us")?,
                utilization: if f[10].is_empty() { None } else { Some(field(f[10], "utilization")?) },
                clock_type: clock(f[11])?,
                failure: None,
            })
        })
        .collect()
}

pub fn parse_json(text: &str) -> Result<Vec<SweepRecord>> {
    Ok(serde_json::from_str(text)?)
}
