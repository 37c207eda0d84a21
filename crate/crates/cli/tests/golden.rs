//! Byte-level regression fixtures for every subcommand. Regenerate with
//! `GTLAX_BLESS=1 cargo test -p gtlax --test golden`.

mod common;

use std::path::PathBuf;

use common::{run_case, CASES};

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

#[test]
fn outputs_match_golden_files() {
    let bless = std::env::var("GTLAX_BLESS").is_ok_and(|v| v == "1");
    let mut mismatched = Vec::new();
    for case in CASES {
        let dir = tempfile::tempdir().unwrap();
        for (name, bytes) in run_case(case, dir.path()) {
            let path = golden_dir().join(&name);
            if bless {
                std::fs::write(&path, &bytes).unwrap();
                continue;
            }
            match std::fs::read(&path) {
                Ok(expected) if expected == bytes => {}
                Ok(_) => mismatched.push(format!("{}: {name} differs", case.name)),
                Err(_) => mismatched.push(format!("{}: missing golden file {name}", case.name)),
            }
        }
    }
    assert!(mismatched.is_empty(), "{mismatched:#?}");
}

#[test]
fn every_case_produces_its_primary_artifact() {
    let dir = tempfile::tempdir().unwrap();
    for case in CASES {
        let sub = dir.path().join(case.name);
        std::fs::create_dir(&sub).unwrap();
        let files = run_case(case, &sub);
        assert!(files.iter().any(|(n, _)| n == case.out), "{}: {files:?}", case.name);
    }
}
