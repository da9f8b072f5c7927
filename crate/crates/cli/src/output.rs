use std::io::{self, Write};
use std::path::PathBuf;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

use crepant_core::crc2d::SkipEntry;
use crepant_core::series::MultiSeries;

#[derive(Clone, Copy, Debug, Default, ValueEnum, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

pub struct Output {
    format: Format,
    path: Option<PathBuf>,
}

#[derive(Serialize)]
struct Envelope<'a, C: Serialize, R: Serialize> {
    config: &'a C,
    ok: bool,
    #[serde(flatten)]
    report: &'a R,
}

fn text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

impl Output {
    pub fn new(format: Format, path: Option<PathBuf>) -> Self {
        Output { format, path }
    }

    fn emit(&self, bytes: Vec<u8>) -> io::Result<()> {
        match &self.path {
            Some(p) => std::fs::write(p, bytes),
            None => {
                let mut stdout = io::stdout().lock();
                stdout.write_all(&bytes)?;
                stdout.flush()
            }
        }
    }

    fn json(&self, v: &impl Serialize) -> io::Result<()> {
        let mut bytes = serde_json::to_vec_pretty(v).map_err(io::Error::other)?;
        bytes.push(b'\n');
        self.emit(bytes)
    }

    fn csv(&self, rows: Vec<Vec<String>>) -> io::Result<()> {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(vec![]);
        for r in rows {
            w.write_record(&r).map_err(io::Error::other)?;
        }
        self.emit(
            w.into_inner()
                .map_err(|e| io::Error::other(e.to_string()))?,
        )
    }

    /// A single value object such as `{"value": "1/24"}`.
    pub fn value(&self, v: &Value) -> io::Result<()> {
        match self.format {
            Format::Json => self.json(v),
            Format::Csv => {
                let obj = v.as_object().expect("value object");
                let header: Vec<String> = obj.keys().cloned().collect();
                let row: Vec<String> = obj.values().map(text).collect();
                self.csv(vec![header, row])
            }
        }
    }

    pub fn potential(
        &self,
        config: &impl Serialize,
        series: &MultiSeries,
        skipped: &[SkipEntry],
    ) -> io::Result<()> {
        let table = series.to_json();
        match self.format {
            Format::Json => self.json(&json!({
                "config": config,
                "vars": table.vars,
                "terms": table.terms,
                "skipped": skipped,
            })),
            Format::Csv => {
                let mut rows = vec![vec!["monomial".into(), "order".into(), "coeffs".into()]];
                for t in &table.terms {
                    let name = t
                        .exp
                        .iter()
                        .map(|(v, e)| {
                            if *e == 1 {
                                v.clone()
                            } else {
                                format!("{v}^{e}")
                            }
                        })
                        .collect::<Vec<_>>()
                        .join("*");
                    let c = serde_json::to_value(&t.coeff).expect("coefficient");
                    let coeffs: Vec<String> = c["coeffs"]
                        .as_array()
                        .into_iter()
                        .flatten()
                        .map(text)
                        .collect();
                    rows.push(vec![name, text(&c["order"]), coeffs.join(";")]);
                }
                self.csv(rows)
            }
        }
    }

    /// A verification report: the config, the overall verdict and the report fields.
    pub fn report(
        &self,
        config: &impl Serialize,
        ok: bool,
        report: &impl Serialize,
    ) -> io::Result<()> {
        let env = Envelope { config, ok, report };
        match self.format {
            Format::Json => self.json(&env),
            Format::Csv => {
                let v = serde_json::to_value(&env).map_err(io::Error::other)?;
                let mut rows = vec![
                    vec![
                        "ok".into(),
                        "checked".into(),
                        "passed".into(),
                        "failed".into(),
                    ],
                    vec![
                        text(&v["ok"]),
                        text(&v["checked"]),
                        text(&v["passed"]),
                        v["failed"].as_array().map_or(0, Vec::len).to_string(),
                    ],
                ];
                let failed = v["failed"].as_array().cloned().unwrap_or_default();
                if let Some(first) = failed.first().and_then(Value::as_object) {
                    rows.push(first.keys().cloned().collect());
                    for f in &failed {
                        let obj = f.as_object().expect("failure object");
                        rows.push(obj.values().map(text).collect());
                    }
                }
                self.csv(rows)
            }
        }
    }
}
