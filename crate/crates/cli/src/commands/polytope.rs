use gtlax_core::gtsystem::ActionVector;
use gtlax_core::numerics::{child_seed, rng_from_seed};
use gtlax_core::polytope::{membership, sample_interior, vertices as enumerate, Membership, PolytopeSpec};
use rayon::prelude::*;
use serde::Serialize;

use super::{orbit_spec, require_json};
use crate::error::CliResult;
use crate::output::{entry_name, write_json, SpecJson, SCHEMA_VERSION};
use crate::{SampleArgs, VertexArgs};

#[derive(Serialize)]
struct VertexReport {
    schema_version: u32,
    command: &'static str,
    tol: f64,
    spec: SpecJson,
    dim: usize,
    coords: Vec<String>,
    constraints: Vec<String>,
    count: usize,
    vertices: Vec<VertexRecord>,
}

#[derive(Serialize)]
struct VertexRecord {
    action: Vec<f64>,
    membership: &'static str,
    saturated: Vec<usize>,
}

#[derive(Serialize)]
struct PolytopeSampleReport {
    schema_version: u32,
    command: &'static str,
    seed: u64,
    tol: f64,
    spec: SpecJson,
    dim: usize,
    coords: Vec<String>,
    samples: Vec<SampleRecord>,
}

#[derive(Serialize)]
struct SampleRecord {
    index: usize,
    seed: u64,
    action: Vec<f64>,
    membership: &'static str,
    min_slack: Option<f64>,
}

pub fn membership_label(m: &Membership) -> &'static str {
    match m {
        Membership::Interior => "interior",
        Membership::Boundary(_) => "boundary",
        Membership::Outside(_) => "outside",
    }
}

fn coord_names(ps: &PolytopeSpec) -> Vec<String> {
    ps.coords.iter().map(|&(j, k)| entry_name(j, k)).collect()
}

pub fn vertices(args: &VertexArgs) -> CliResult<()> {
    require_json(args.format, "polytope vertices")?;
    let spec = orbit_spec(&args.spec.lambda)?;
    let ps = PolytopeSpec::new(&spec);
    let tol = args.tol * spec.scale();
    let verts = enumerate(&ps)?
        .into_iter()
        .map(|v| {
            let m = membership(&ps, &v, tol)?;
            let saturated = match &m {
                Membership::Boundary(s) | Membership::Outside(s) => s.clone(),
                Membership::Interior => Vec::new(),
            };
            Ok(VertexRecord {
                membership: membership_label(&m),
                saturated,
                action: v.0,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let report = VertexReport {
        schema_version: SCHEMA_VERSION,
        command: "polytope vertices",
        tol: args.tol,
        dim: ps.dim,
        coords: coord_names(&ps),
        constraints: ps.constraints.iter().map(|c| c.source.to_string()).collect(),
        count: verts.len(),
        vertices: verts,
        spec: SpecJson::from(&spec),
    };
    write_json(args.out.as_deref(), &report)
}

fn sample_record(ps: &PolytopeSpec, seed: u64, index: usize, tol: f64) -> CliResult<SampleRecord> {
    let s = child_seed(seed, index as u64);
    let a: ActionVector = sample_interior(ps, &mut rng_from_seed(s));
    let m = membership(ps, &a, tol)?;
    Ok(SampleRecord {
        index,
        seed: s,
        membership: membership_label(&m),
        min_slack: ps.slacks(a.values()).into_iter().reduce(f64::min),
        action: a.0,
    })
}

pub fn sample(args: &SampleArgs) -> CliResult<()> {
    require_json(args.format, "polytope sample")?;
    let spec = orbit_spec(&args.spec.lambda)?;
    let ps = PolytopeSpec::new(&spec);
    let tol = args.tol * spec.scale();
    let seed = args.seed.seed;
    let samples = (0..args.samples)
        .into_par_iter()
        .map(|i| sample_record(&ps, seed, i, tol))
        .collect::<CliResult<Vec<_>>>()?;
    let report = PolytopeSampleReport {
        schema_version: SCHEMA_VERSION,
        command: "polytope sample",
        seed,
        tol: args.tol,
        dim: ps.dim,
        coords: coord_names(&ps),
        samples,
        spec: SpecJson::from(&spec),
    };
    write_json(args.out.as_deref(), &report)
}
