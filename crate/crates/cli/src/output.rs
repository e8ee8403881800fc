//! Report files. Everything but `metadata.json` depends only on the inputs.

use crate::Failure;
use chabauty_core::catalog::{conjugate_descriptor, sample};
use chabauty_core::config::ExperimentConfig;
use chabauty_core::experiment::LimitReport;
use chabauty_core::metric::sig9;
use chabauty_core::verify::{Status, TheoremReport};
use chabauty_core::GroupElement;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

pub fn status_str(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Inconclusive => "INCONCLUSIVE",
    }
}

/// `witness:compact_vertical` → `witness_compact_vertical`.
fn file_stem(id: &str) -> String {
    id.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '.' { c } else { '_' }).collect()
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent).map_err(|e| Failure::Io(parent.to_path_buf(), e))?;
    }
    std::fs::write(path, contents).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn write_json(path: &Path, v: &Value) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    text.push('\n');
    write(path, &text)
}

fn write_metadata(dir: &Path, jobs: usize) -> Result<(), Failure> {
    let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    write_json(
        &dir.join("metadata.json"),
        &json!({
            "generated_unix": secs,
            "jobs": jobs,
            "threads": rayon::current_num_threads(),
            "version": env!("CARGO_PKG_VERSION"),
        }),
    )
}

pub fn samples_csv(points: &[GroupElement]) -> String {
    let mut out = String::from("a,b,c,d,x,y\n");
    for p in points {
        let m = p.matrix;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            sig9(m.a11),
            sig9(m.a12),
            sig9(m.a21),
            sig9(m.a22),
            sig9(p.translation.x),
            sig9(p.translation.y)
        );
    }
    out
}

pub fn write_verify(dir: &Path, r: &TheoremReport, jobs: usize) -> Result<(), Failure> {
    write_json(&dir.join("report.json"), &r.to_json())?;
    for s in &r.witnesses {
        write(&dir.join(format!("{}.csv", file_stem(&s.id))), &s.to_csv())?;
    }
    for c in &r.cases {
        if let Some(csv) = &c.trace_csv {
            write(&dir.join("traces").join(format!("{}.csv", file_stem(&c.id))), csv)?;
        }
    }
    write_metadata(dir, jobs)
}

fn limit_json(cfg: &ExperimentConfig, r: &LimitReport) -> Value {
    json!({ "config": cfg.to_json(), "limit": r.to_json(&cfg.base) })
}

pub fn write_limit(dir: &Path, cfg: &ExperimentConfig, r: &LimitReport, jobs: usize) -> Result<(), Failure> {
    write_json(&dir.join("limit.json"), &limit_json(cfg, r))?;
    write(&dir.join("trace.csv"), &r.trace.to_csv())?;
    write_metadata(dir, jobs)
}

pub fn write_plot(dir: &Path, cfg: &ExperimentConfig, r: &LimitReport) -> Result<(), Failure> {
    write_json(&dir.join("config.json"), &cfg.to_json())?;
    write(&dir.join("trace.csv"), &r.trace.to_csv())?;
    let limit = &r.classification.descriptor;
    write(&dir.join("samples_limit.csv"), &samples_csv(&sample(limit, &cfg.window)))?;
    for &n in &cfg.indices {
        let h = cfg.schema.at(n)?;
        let hn = conjugate_descriptor(&h, &cfg.base);
        write(&dir.join(format!("samples_n{n}.csv")), &samples_csv(&sample(&hn, &cfg.window)))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stems_are_file_safe() {
        assert_eq!(file_stem("witness:compact_vertical"), "witness_compact_vertical");
        assert_eq!(file_stem("named:case 1/2"), "named_case_1_2");
    }

    #[test]
    fn samples_csv_has_a_header_and_one_row_per_point() {
        let csv = samples_csv(&[GroupElement::IDENTITY, GroupElement::IDENTITY]);
        assert_eq!(csv.lines().count(), 3);
        assert_eq!(csv.lines().nth(1), Some("1,0,0,1,0,0"));
    }
}
