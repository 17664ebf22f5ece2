#![allow(dead_code)]

use std::path::PathBuf;

use serde_json::Value;

pub fn repo_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn schema(name: &str) -> jsonschema::Validator {
    let path = repo_root().join("docs/schemas").join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let schema: Value = serde_json::from_str(&text).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

pub fn assert_valid(validator: &jsonschema::Validator, instance: &Value) {
    let errors: Vec<String> = validator
        .iter_errors(instance)
        .map(|e| format!("{} at {}", e, e.instance_path))
        .collect();
    assert!(errors.is_empty(), "schema violations: {errors:#?}");
}

pub const FIXTURE_QUERIES: &[&str] = &[
    "list the teaching staff in anna university",
    "Provide the Faculties in Computer Science Department Anna University",
    "colleges for doing M.B.A",
    "How far is tagore university located from anna nagar",
    "deadline for payment of fees in sastra university for M.B.A",
    "the of in",
    "quantum chromodynamics",
];
