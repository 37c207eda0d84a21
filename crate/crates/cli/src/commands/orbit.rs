use gtlax_core::gtsystem::{check_interlacing, gt_pattern};
use gtlax_core::numerics::{child_seed, rng_from_seed};
use gtlax_core::orbit::{sample_point, OrbitSpec};
use rayon::prelude::*;
use serde::Serialize;

use super::{orbit_spec, require_json};
use crate::error::CliResult;
use crate::output::{hermitian_rows, write_json, SpecJson, SCHEMA_VERSION};
use crate::SampleArgs;

#[derive(Serialize)]
struct OrbitSampleReport {
    schema_version: u32,
    command: &'static str,
    seed: u64,
    tol: f64,
    spec: SpecJson,
    samples: Vec<OrbitRecord>,
}

#[derive(Serialize)]
struct OrbitRecord {
    index: usize,
    seed: u64,
    z: Vec<Vec<[f64; 2]>>,
    pattern: Vec<Vec<f64>>,
    action_vector: Vec<f64>,
    regular: bool,
    interlacing_ok: bool,
    min_slack: Option<f64>,
}

fn record(spec: &OrbitSpec, seed: u64, index: usize, tol: f64) -> CliResult<OrbitRecord> {
    let s = child_seed(seed, index as u64);
    let z = sample_point(spec, &mut rng_from_seed(s));
    let pattern = gt_pattern(&z)?;
    let report = check_interlacing(&pattern, tol);
    let min_slack = report.slacks.iter().map(|&(_, v)| v).reduce(f64::min);
    Ok(OrbitRecord {
        index,
        seed: s,
        z: hermitian_rows(&z.z),
        pattern: pattern.rows().to_vec(),
        action_vector: pattern.action().0,
        regular: min_slack.is_none_or(|m| m > tol),
        interlacing_ok: report.ok,
        min_slack,
    })
}

pub fn sample(args: &SampleArgs) -> CliResult<()> {
    require_json(args.format, "orbit sample")?;
    let spec = orbit_spec(&args.spec.lambda)?;
    let tol = args.tol * spec.scale();
    let seed = args.seed.seed;
    let samples = (0..args.samples)
        .into_par_iter()
        .map(|i| record(&spec, seed, i, tol))
        .collect::<CliResult<Vec<_>>>()?;
    let report = OrbitSampleReport {
        schema_version: SCHEMA_VERSION,
        command: "orbit sample",
        seed,
        tol: args.tol,
        spec: SpecJson::from(&spec),
        samples,
    };
    write_json(args.out.as_deref(), &report)
}
