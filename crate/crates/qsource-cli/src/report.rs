//! Report serialization: JSON, CSV and plain text.

use clap::ValueEnum;
use serde::Serialize;

use qsource::engine::{CaseReport, SamplingConfig};

use crate::{RegimeArg, Selection};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub points: Option<usize>,
    pub tol_match: Option<f64>,
    pub tol_singular: f64,
    pub field: Option<&'static str>,
    pub nmax: Option<usize>,
    pub regime: &'static str,
    pub cases: Vec<String>,
    pub truncation_epsilon: f64,
}

#[derive(Clone, Debug)]
pub struct RunInfo {
    pub seed: u64,
    pub config: RunConfig,
    pub timings: bool,
}

impl RunInfo {
    pub fn new(config: &SamplingConfig, sel: &Selection, timings: bool) -> Self {
        let regime = match sel.regime {
            RegimeArg::Elliptic => "elliptic",
            RegimeArg::Trig => "trig",
            RegimeArg::Rational => "rational",
            RegimeArg::All => "all",
        };
        RunInfo {
            seed: config.master_seed,
            config: RunConfig {
                points: config.points,
                tol_match: config.tol_match,
                tol_singular: config.tol_singular,
                field: config.field.map(|f| f.name()),
                nmax: config.nmax,
                regime,
                cases: sel.cases.clone(),
                truncation_epsilon: config.truncation.epsilon,
            },
            timings,
        }
    }
}

#[derive(Serialize)]
struct JsonRun<'a> {
    seed: u64,
    config: &'a RunConfig,
}

#[derive(Serialize)]
struct JsonPoint<'a> {
    index: usize,
    seed: u64,
    residual: f64,
    pass: bool,
    checks: usize,
    lhs: &'a str,
    rhs: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<&'a str>,
}

#[derive(Serialize)]
struct JsonCase<'a> {
    id: &'a str,
    paper_anchor: &'a str,
    criterion: Option<u8>,
    field: &'static str,
    tol: f64,
    points: Vec<JsonPoint<'a>>,
    max_rel_err: f64,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    millis: Option<u128>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    run: JsonRun<'a>,
    cases: Vec<JsonCase<'a>>,
}

pub fn render(info: &RunInfo, reports: &[(CaseReport, u128)], format: Format) -> String {
    match format {
        Format::Json => render_json(info, reports),
        Format::Csv => render_csv(reports),
        Format::Text => render_text(info, reports),
    }
}

fn render_json(info: &RunInfo, reports: &[(CaseReport, u128)]) -> String {
    let cases = reports
        .iter()
        .map(|(r, ms)| JsonCase {
            id: &r.id,
            paper_anchor: &r.anchor,
            criterion: r.criterion,
            field: r.field.name(),
            tol: r.tol,
            points: r
                .points
                .iter()
                .map(|p| JsonPoint {
                    index: p.index,
                    seed: p.seed,
                    residual: p.residual,
                    pass: p.pass,
                    checks: p.checks,
                    lhs: &p.lhs,
                    rhs: &p.rhs,
                    error: p.error.as_deref(),
                })
                .collect(),
            max_rel_err: r.max_rel_err,
            pass: r.pass,
            millis: info.timings.then_some(*ms),
        })
        .collect();
    let rep = JsonReport {
        run: JsonRun {
            seed: info.seed,
            config: &info.config,
        },
        cases,
    };
    let mut s = serde_json::to_string_pretty(&rep).expect("report serializes");
    s.push('\n');
    s
}

fn render_csv(reports: &[(CaseReport, u128)]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "case", "anchor", "field", "index", "seed", "residual", "pass", "lhs", "rhs", "error",
    ])
    .expect("in-memory write");
    for (r, _) in reports {
        for p in &r.points {
            w.write_record([
                r.id.as_str(),
                r.anchor.as_str(),
                r.field.name(),
                &p.index.to_string(),
                &p.seed.to_string(),
                &format!("{:e}", p.residual),
                if p.pass { "true" } else { "false" },
                &p.lhs,
                &p.rhs,
                p.error.as_deref().unwrap_or(""),
            ])
            .expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn render_text(info: &RunInfo, reports: &[(CaseReport, u128)]) -> String {
    let mut s = format!("seed {}\n", info.seed);
    let mut failed = 0;
    for (r, ms) in reports {
        if !r.pass {
            failed += 1;
        }
        let verdict = if r.pass { "PASS" } else { "FAIL" };
        s.push_str(&format!(
            "{verdict} {:<40} {:<7} points={:<3} max_rel_err={:.3e} tol={:.0e}",
            r.id,
            r.field.name(),
            r.points.len(),
            r.max_rel_err,
            r.tol
        ));
        if info.timings {
            s.push_str(&format!(" {ms}ms"));
        }
        if let Some(e) = r.points.iter().find_map(|p| p.error.as_deref()) {
            s.push_str(&format!(" error: {e}"));
        }
        s.push('\n');
    }
    s.push_str(&format!("{} cases, {} failed\n", reports.len(), failed));
    s
}
