use chabauty_core::config::ExperimentConfig;
use std::path::PathBuf;

fn docs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs")
}

#[test]
fn shipped_schema_lists_the_parsed_fields() {
    let text = std::fs::read_to_string(docs().join("experiment-config.v1.schema.json")).unwrap();
    let schema: serde_json::Value = serde_json::from_str(&text).unwrap();
    let mut props: Vec<&str> = schema["properties"].as_object().unwrap().keys().map(String::as_str).collect();
    props.sort_unstable();
    assert_eq!(props, ["base", "indices", "schema", "seed", "tol", "version", "window"]);
    assert_eq!(schema["properties"]["version"]["const"], "v1");
}

#[test]
fn example_configs_parse_and_round_trip() {
    let mut seen = 0;
    for entry in std::fs::read_dir(docs().join("examples")).unwrap() {
        let path = entry.unwrap().path();
        let cfg = ExperimentConfig::from_json(&std::fs::read_to_string(&path).unwrap())
            .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(ExperimentConfig::from_value(&cfg.to_json()).unwrap(), cfg);
        seen += 1;
    }
    assert!(seen >= 4);
}
