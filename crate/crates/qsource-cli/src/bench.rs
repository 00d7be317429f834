//! Timing of the trigonometric subset sum against each determinant family.

use std::time::{Duration, Instant};

use qsource::detrep::{available, det_rep, Family};
use qsource::engine::{draw_aux, draw_trig, point_seed, Sampler};
use qsource::{FieldKind, Params, Regime, Side, Truncation, C64};

use crate::report::Format;

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub family: &'static str,
    pub subset_ns: f64,
    pub det_ns: f64,
    pub ratio: f64,
}

/// Mean nanoseconds per call, repeating until `min` has elapsed; best of three.
fn time_it(min: Duration, mut f: impl FnMut()) -> f64 {
    let mut best = f64::INFINITY;
    for _ in 0..3 {
        let start = Instant::now();
        let mut calls = 0u64;
        while start.elapsed() < min || calls == 0 {
            f();
            calls += 1;
        }
        best = best.min(start.elapsed().as_nanos() as f64 / calls as f64);
    }
    best
}

pub fn run_bench(sizes: &[usize], seed: u64, min_ms: u64) -> Vec<BenchRow> {
    let tr = Truncation::default();
    let min = Duration::from_millis(min_ms);
    let mut rows = Vec::new();
    for &n in sizes {
        let mut s = Sampler::new(point_seed(seed, "bench", n), FieldKind::Complex, 1e-3);
        let t = s
            .attempt(|s| draw_trig::<C64>(s, n, n, false))
            .expect("bench sampling");
        let aux = draw_aux::<C64>(&mut s, n, n);
        let p = Params::Trig(t);
        let subset_ns = time_it(min, || {
            std::hint::black_box(
                qsource::source::source_subset_sum(Regime::Trig, Side::F, &p, &tr).ok(),
            );
        });
        for fam in Family::ALL {
            if !available(Regime::Trig, fam) {
                continue;
            }
            let det_ns = time_it(min, || {
                std::hint::black_box(det_rep(Regime::Trig, fam, Side::F, &p, &aux, &tr).ok());
            });
            rows.push(BenchRow {
                n,
                family: fam.name(),
                subset_ns,
                det_ns,
                ratio: subset_ns / det_ns,
            });
        }
    }
    rows
}

/// Whether subset/determinant ratios increase strictly with n for every family.
pub fn ratios_increasing(rows: &[BenchRow]) -> bool {
    let mut fams: Vec<&str> = rows.iter().map(|r| r.family).collect();
    fams.sort();
    fams.dedup();
    fams.iter().all(|f| {
        let mut rs: Vec<&BenchRow> = rows.iter().filter(|r| r.family == *f).collect();
        rs.sort_by_key(|r| r.n);
        rs.windows(2).all(|w| w[1].ratio > w[0].ratio)
    })
}

pub fn render(rows: &[BenchRow], format: Format) -> String {
    match format {
        Format::Json => {
            let v: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "n": r.n, "family": r.family, "subset_ns": r.subset_ns,
                        "det_ns": r.det_ns, "ratio": r.ratio,
                    })
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&v).expect("bench serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("n,family,subset_ns,det_ns,ratio\n");
            for r in rows {
                s.push_str(&format!(
                    "{},{},{:.0},{:.0},{:.3}\n",
                    r.n, r.family, r.subset_ns, r.det_ns, r.ratio
                ));
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "{:>3} {:<15} {:>14} {:>14} {:>10}\n",
                "n", "family", "subset ns", "det ns", "ratio"
            );
            for r in rows {
                s.push_str(&format!(
                    "{:>3} {:<15} {:>14.0} {:>14.0} {:>10.2}\n",
                    r.n, r.family, r.subset_ns, r.det_ns, r.ratio
                ));
            }
            s.push_str(if ratios_increasing(rows) {
                "subset/determinant ratio increases with n for every family\n"
            } else {
                "subset/determinant ratio is not increasing for some family\n"
            });
            s
        }
    }
}
