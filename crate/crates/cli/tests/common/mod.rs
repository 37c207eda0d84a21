#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_gtlax")
}

/// Runs `gtlax` inside `dir` with `GTLAX_SEED` cleared.
pub fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .current_dir(dir)
        .env_remove("GTLAX_SEED")
        .output()
        .expect("spawn gtlax")
}

/// One invocation per subcommand; `out` is the primary artifact name.
pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub out: &'static str,
}

pub const CASES: &[Case] = &[
    Case {
        name: "orbit_sample",
        args: &["orbit", "sample", "--lambda", "2,0,-2", "--samples", "3", "--seed", "7"],
        out: "orbit_sample.json",
    },
    Case {
        name: "orbit_sample_gr24",
        args: &["orbit", "sample", "--lambda", "1,1,-1,-1", "--samples", "2", "--seed", "7"],
        out: "orbit_sample_gr24.json",
    },
    Case {
        name: "polytope_vertices",
        args: &["polytope", "vertices", "--lambda", "2,0,-2"],
        out: "polytope_vertices.json",
    },
    Case {
        name: "polytope_sample",
        args: &["polytope", "sample", "--lambda", "3,1,-0.5,-2", "--samples", "3", "--seed", "11"],
        out: "polytope_sample.json",
    },
    Case {
        name: "flow_run",
        args: &[
            "flow", "run", "--lambda", "2,0.5,-1.5", "--level", "2", "--dt", "0.01", "--t-final", "1",
            "--every", "10", "--seed", "5", "--track-noninvariant",
        ],
        out: "flow_run.csv",
    },
    Case {
        name: "flow_run_json",
        args: &[
            "flow", "run", "--lambda", "3,1,-0.5,-2", "--hamiltonian", "eig:1", "--level", "3", "--dt", "0.01",
            "--t-final", "0.2", "--every", "5", "--seed", "5", "--format", "json",
        ],
        out: "flow_run_json.json",
    },
    Case {
        name: "curve_analyze",
        args: &["curve", "analyze", "--lambda", "2,0.5,-1.5", "--seed", "3", "--plot"],
        out: "curve_analyze.json",
    },
    Case {
        name: "curve_vertex",
        args: &["curve", "analyze", "--lambda", "2,0,-2", "--pattern", "2,0,2"],
        out: "curve_vertex.json",
    },
    Case {
        name: "curve_witness",
        args: &["curve", "analyze", "--lambda", "1,1,-1,-1", "--pattern", "0.3,1,-0.5,0.2"],
        out: "curve_witness.json",
    },
    Case {
        name: "ho_run",
        args: &["ho", "run", "--dt", "0.01", "--t-final", "1", "--every", "10"],
        out: "ho_run.csv",
    },
];

/// Runs a case in `dir` and returns every file it produced, sorted by name.
pub fn run_case(case: &Case, dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut args: Vec<&str> = case.args.to_vec();
    args.extend(["--out", case.out]);
    let out = run_in(dir, &args);
    assert!(
        out.status.success(),
        "{}: exit {:?}\n{}",
        case.name,
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .map(|p: PathBuf| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap()))
        .collect();
    files.sort();
    files
}
