use std::io::Write;
use std::path::PathBuf;

use gtlax_core::flow::{integrate_streaming, IntegrateOptions, Method};
use gtlax_core::gtsystem::{free_coordinates, gt_pattern, ActionVector, GTPattern};
use gtlax_core::numerics::{eig_hermitian, rng_from_seed};
use gtlax_core::orbit::{sample_point, OrbitFunction, OrbitPoint};
use gtlax_core::polytope::{reconstruct, PolytopeSpec};
use gtlax_core::Error as CoreError;
use serde::Serialize;

use super::{orbit_spec, parse_hamiltonian, positive};
use crate::error::{CliError, CliResult};
use crate::output::{entry_name, fmt_f64, open_sink, sibling, to_json_bytes, write_json, SpecJson, SCHEMA_VERSION};
use crate::{FlowArgs, Format, MethodArg};

#[derive(Serialize)]
struct HamiltonianJson {
    name: String,
    level: usize,
}

#[derive(Serialize)]
struct NamedDrift {
    name: String,
    max_drift: f64,
}

#[derive(Serialize)]
struct FlowSummary {
    schema_version: u32,
    command: &'static str,
    seed: u64,
    source: &'static str,
    spec: SpecJson,
    hamiltonian: HamiltonianJson,
    method: &'static str,
    dt: f64,
    t_final: f64,
    steps: usize,
    status: &'static str,
    error: Option<String>,
    initial_action: Vec<f64>,
    final_action: Vec<f64>,
    max_gt_drift: f64,
    gt_drifts: Vec<NamedDrift>,
    row_drifts: Vec<f64>,
    spectral_drift: f64,
    hamiltonian_drift: f64,
    noninvariant_drift: Option<f64>,
}

#[derive(Serialize)]
struct FlowJson {
    summary: FlowSummary,
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
}

/// Running maxima of everything the summary reports.
struct Tracker {
    base_rows: Vec<Vec<f64>>,
    base_action: Vec<f64>,
    base_h: f64,
    base_nonin: f64,
    action: Vec<f64>,
    action_drift: Vec<f64>,
    row_drift: Vec<f64>,
    h_drift: f64,
    nonin_drift: f64,
    steps: usize,
}

impl Tracker {
    fn new(p: &GTPattern, h: f64, nonin: f64) -> Self {
        let action = p.action().0;
        Self {
            base_rows: p.rows().to_vec(),
            action_drift: vec![0.0; action.len()],
            row_drift: vec![0.0; p.rows().len()],
            base_action: action.clone(),
            action,
            base_h: h,
            base_nonin: nonin,
            h_drift: 0.0,
            nonin_drift: 0.0,
            steps: 0,
        }
    }

    /// Updates the maxima and returns the per-row drifts at this instant.
    fn observe(&mut self, p: &GTPattern, full: &[f64], h: f64, nonin: f64) -> Vec<f64> {
        self.action = p.action().0;
        for (d, (a, b)) in self.action_drift.iter_mut().zip(self.action.iter().zip(&self.base_action)) {
            *d = d.max((a - b).abs());
        }
        // the top pattern row is lambda by construction; measure Z itself
        let n = self.base_rows.len();
        let rows = p.rows()[..n - 1].iter().map(|r| r.as_slice()).chain([full]);
        let now: Vec<f64> = rows
            .zip(&self.base_rows)
            .map(|(r, r0)| r.iter().zip(r0).fold(0.0f64, |m, (a, b)| m.max((a - b).abs())))
            .collect();
        for (d, v) in self.row_drift.iter_mut().zip(&now) {
            *d = d.max(*v);
        }
        self.h_drift = self.h_drift.max((h - self.base_h).abs());
        self.nonin_drift = self.nonin_drift.max((nonin - self.base_nonin).abs());
        now
    }
}

fn start_point(args: &FlowArgs) -> CliResult<(OrbitPoint, &'static str)> {
    let spec = orbit_spec(&args.spec.lambda)?;
    Ok(match &args.pattern {
        Some(v) => {
            let ps = PolytopeSpec::new(&spec);
            (reconstruct(&ps, &ActionVector(v.clone()))?, "pattern")
        }
        None => (sample_point(&spec, &mut rng_from_seed(args.seed.seed)), "sampled"),
    })
}

pub fn run(args: &FlowArgs) -> CliResult<()> {
    let (z0, source) = start_point(args)?;
    let spec = z0.spec.clone();
    let n = spec.n;
    let level = args.level.unwrap_or(n - 1);
    if level == 0 || level > n {
        return Err(CliError::BadInput(format!("--level must be in 1..={n}")));
    }
    let ham = parse_hamiltonian(&args.hamiltonian, level)?;
    let dt = positive("--dt", args.dt)?;
    let t_final = positive("--t-final", args.t_final)?;
    if t_final < dt {
        return Err(CliError::BadInput("--t-final must be at least --dt".into()));
    }
    if args.every == 0 {
        return Err(CliError::BadInput("--every must be positive".into()));
    }
    let method = match args.method {
        MethodArg::Lie => Method::LieMidpoint,
        MethodArg::Rk4 => Method::Rk4Direct,
    };

    let mut columns = vec!["t".to_string()];
    columns.extend(free_coordinates(&spec).iter().map(|&(j, k)| entry_name(j, k)));
    columns.push("H".into());
    columns.extend((1..=n).map(|k| format!("drift_row{k}")));
    if args.track_noninvariant {
        columns.push(format!("re_z1{n}"));
    }

    let summary_path: Option<PathBuf> = args
        .summary
        .clone()
        .or_else(|| args.out.as_deref().map(|p| sibling(p, "summary.json")));
    let mut csv = match args.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(open_sink(args.out.as_deref())?);
            w.write_record(&columns)?;
            Some(w)
        }
        Format::Json => None,
    };
    let mut json_rows: Vec<Vec<f64>> = Vec::new();

    let nonin_of = |z: &OrbitPoint| z.z[(0, n - 1)].re;
    let p0 = gt_pattern(&z0)?;
    let mut tracker = Tracker::new(&p0, ham.value(&z0)?, nonin_of(&z0));
    let mut sink_error: Option<CliError> = None;
    let mut index = 0usize;

    let result = integrate_streaming(&z0, &ham, dt, t_final, method, IntegrateOptions::default(), |t, z| {
        let p = gt_pattern(z)?;
        let h = ham.value(z)?;
        let nonin = nonin_of(z);
        let full = eig_hermitian(&z.z)?.values;
        let now = tracker.observe(&p, &full, h, nonin);
        if index.is_multiple_of(args.every) || t == t_final {
            let mut row = vec![t];
            row.extend_from_slice(&tracker.action);
            row.push(h);
            row.extend_from_slice(&now);
            if args.track_noninvariant {
                row.push(nonin);
            }
            match csv.as_mut() {
                Some(w) => {
                    if let Err(e) = w.write_record(row.iter().map(|&v| fmt_f64(v))) {
                        sink_error = Some(e.into());
                        return Err(CoreError::InvalidArgument("output failed".into()));
                    }
                }
                None => json_rows.push(row),
            }
        }
        index += 1;
        Ok(())
    });
    if let Some(e) = sink_error {
        return Err(e);
    }
    tracker.steps = index.saturating_sub(1);
    if let Some(mut w) = csv {
        w.flush()?;
    }

    let summary = FlowSummary {
        schema_version: SCHEMA_VERSION,
        command: "flow run",
        seed: args.seed.seed,
        source,
        spec: SpecJson::from(&spec),
        hamiltonian: HamiltonianJson { name: args.hamiltonian.clone(), level },
        method: method.tag(),
        dt,
        t_final,
        steps: tracker.steps,
        status: if result.is_ok() { "ok" } else { "failed" },
        error: result.as_ref().err().map(|e| e.to_string()),
        max_gt_drift: tracker.action_drift.iter().copied().fold(0.0, f64::max),
        gt_drifts: columns[1..=tracker.action_drift.len()]
            .iter()
            .zip(&tracker.action_drift)
            .map(|(name, &max_drift)| NamedDrift { name: name.clone(), max_drift })
            .collect(),
        spectral_drift: tracker.row_drift[n - 1],
        row_drifts: tracker.row_drift.clone(),
        hamiltonian_drift: tracker.h_drift,
        noninvariant_drift: args.track_noninvariant.then_some(tracker.nonin_drift),
        initial_action: tracker.base_action.clone(),
        final_action: tracker.action.clone(),
    };
    match args.format {
        Format::Csv => match summary_path {
            Some(p) => write_json(Some(&p), &summary)?,
            None => std::io::stderr().write_all(&to_json_bytes(&summary)?)?,
        },
        Format::Json => write_json(
            args.out.as_deref(),
            &FlowJson { summary, columns, rows: json_rows },
        )?,
    }
    result.map(|_| ()).map_err(CliError::from)
}
