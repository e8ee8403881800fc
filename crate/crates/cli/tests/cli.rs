use std::path::Path;
use std::process::{Command, Output};

fn chabauty(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chabauty")).args(args).output().expect("binary runs")
}

fn example(name: &str) -> String {
    format!("{}/../../docs/examples/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn value_line(o: &Output) -> f64 {
    let out = stdout(o);
    let line = out.lines().find(|l| l.starts_with("value ")).expect("value line");
    line[6..].parse().unwrap()
}

fn limit_json(dir: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("limit.json")).unwrap()).unwrap()
}

#[test]
fn unknown_theorem_is_a_usage_error() {
    let o = chabauty(&["verify", "2.7"]);
    assert_eq!(o.status.code(), Some(64), "{}", stderr(&o));
    assert!(stderr(&o).contains("2.7"));
}

#[test]
fn unknown_verb_and_bad_flags_are_usage_errors() {
    assert_eq!(chabauty(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(chabauty(&["distance", "Borel", "Borel", "--mesh", "10"]).status.code(), Some(64));
    assert_eq!(chabauty(&["verify", "1.5", "--profile", "slow"]).status.code(), Some(64));
}

#[test]
fn help_exits_cleanly() {
    assert_eq!(chabauty(&["--help"]).status.code(), Some(0));
}

#[test]
fn distance_examples() {
    let same = chabauty(&["distance", "Borel", "Borel"]);
    assert_eq!(same.status.code(), Some(0));
    assert!(value_line(&same) <= 0.05);

    let lines = chabauty(&[
        "distance",
        r#"{"family":"LineV","params":[0]}"#,
        r#"{"family":"LineV","params":["inf"]}"#,
        "--radius",
        "2",
    ]);
    assert!((value_line(&lines) - 2.0).abs() <= 0.05, "{}", stdout(&lines));

    let ident = chabauty(&[
        "distance",
        r#"{"family":"UnipotentC","params":[0]}"#,
        r#"{"family":"HeisenbergLine","params":[1,0,0]}"#,
    ]);
    assert!(value_line(&ident) <= 0.05, "{}", stdout(&ident));
}

#[test]
fn limit_of_sloped_translation_of_diagonal() {
    let dir = tempfile::tempdir().unwrap();
    let o = chabauty(&["limit", &example("diagonal-sloped.json"), "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let j = limit_json(dir.path());
    assert_eq!(j["limit"]["family"], "LineV");
    let slope = j["limit"]["params"][0].as_f64().unwrap();
    assert!((slope + 2.0).abs() < 0.05, "slope {slope}");
    let csv = std::fs::read_to_string(dir.path().join("trace.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("n,forward,backward,value"));
    assert_eq!(csv.lines().count(), 6);
}

#[test]
fn limit_of_identity_schema_is_the_base() {
    let dir = tempfile::tempdir().unwrap();
    let o = chabauty(&["limit", &example("borel-identity.json"), "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let j = limit_json(dir.path());
    assert_eq!(j["limit"]["family"], "Borel");
    assert!(j["limit"]["residual"].as_f64().unwrap() <= 0.05);
}

#[test]
fn limit_of_vertical_translation_of_compact() {
    let dir = tempfile::tempdir().unwrap();
    let o = chabauty(&["limit", &example("compact-vertical.json"), "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let j = limit_json(dir.path());
    assert_eq!(j["limit"]["family"], "LineV");
    assert!(j["limit"]["params"][0].as_f64().unwrap().abs() < 0.05);
}

#[test]
fn malformed_config_reports_position_and_field() {
    let dir = tempfile::tempdir().unwrap();
    let syntax = dir.path().join("syntax.json");
    std::fs::write(&syntax, "{\n  \"version\": \"v1\",\n  \"base\": }\n").unwrap();
    let o = chabauty(&["limit", syntax.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(64));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let field = dir.path().join("field.json");
    std::fs::write(&field, r#"{"version":"v1","base":{"family":"Borel"},"schema":{"kind":"iwasawa","description":"id"},"tol":-1}"#)
        .unwrap();
    let o = chabauty(&["limit", field.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(64));
    assert!(stderr(&o).contains("`tol`"), "{}", stderr(&o));
}

#[test]
fn sample_and_emit_plot_write_csv() {
    let o = chabauty(&["sample", "LineV", "--mesh", "0.5"]);
    assert_eq!(o.status.code(), Some(64), "LineV needs a slope");
    let o = chabauty(&["sample", r#"{"family":"LineV","params":[1]}"#, "--mesh", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("a,b,c,d,x,y"));
    assert!(out.lines().count() > 2);

    let dir = tempfile::tempdir().unwrap();
    let o = chabauty(&[
        "emit-plot",
        &example("diagonal-sloped.json"),
        "--indices",
        "10,100",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for f in ["config.json", "trace.csv", "samples_limit.csv", "samples_n10.csv", "samples_n100.csv"] {
        assert!(dir.path().join(f).is_file(), "{f}");
    }
}

fn read_tree(root: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in std::fs::read_dir(&d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else if p.file_name().unwrap() != "metadata.json" {
                out.push((p.strip_prefix(root).unwrap().display().to_string(), std::fs::read(&p).unwrap()));
            }
        }
    }
    out.sort();
    out
}

#[test]
fn verify_unipotent_passes_and_is_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let first = chabauty(&["--jobs", "1", "verify", "1.5", "--out-dir", a.path().to_str().unwrap()]);
    assert_eq!(first.status.code(), Some(0), "{}\n{}", stdout(&first), stderr(&first));
    assert!(stdout(&first).contains("LineV with slope"));
    let second = chabauty(&["--jobs", "2", "verify", "1.5", "--out-dir", b.path().to_str().unwrap()]);
    assert_eq!(second.status.code(), Some(0));

    let (ta, tb) = (read_tree(a.path()), read_tree(b.path()));
    assert!(ta.iter().any(|(name, _)| name.ends_with("report.json")));
    assert!(ta.iter().any(|(name, _)| name.ends_with(".csv")));
    assert_eq!(ta, tb);
}
