use std::io::Write;

use gtlax_core::flow::harmonic_oscillator;
use serde::Serialize;

use super::positive;
use crate::error::{CliError, CliResult};
use crate::output::{fmt_f64, open_sink, sibling, to_json_bytes, write_json, SCHEMA_VERSION};
use crate::{Format, HoArgs};

const COLUMNS: [&str; 8] = ["t", "q_exact", "p_exact", "q_lax", "p_lax", "eig1", "eig2", "energy"];

#[derive(Serialize)]
struct HoSummary {
    schema_version: u32,
    command: &'static str,
    q0: f64,
    p0: f64,
    c: f64,
    dt: f64,
    t_final: f64,
    steps: usize,
    max_q_error: f64,
    max_p_error: f64,
    /// `max |Tr(L^2)/4 - (p^2 + C^2 q^2)/2|` along the run.
    energy_identity_residual: f64,
    energy_drift: f64,
    eigenvalue_drift: f64,
}

#[derive(Serialize)]
struct HoJson {
    summary: HoSummary,
    columns: Vec<&'static str>,
    rows: Vec<Vec<f64>>,
}

pub fn run(args: &HoArgs) -> CliResult<()> {
    let dt = positive("--dt", args.dt)?;
    let t_final = positive("--t-final", args.t_final)?;
    if args.every == 0 {
        return Err(CliError::BadInput("--every must be positive".into()));
    }
    let (q0, p0, c) = (args.q0, args.p0, args.c);
    let run = harmonic_oscillator(q0, p0, c, dt, t_final)?;

    let n = run.times.len();
    let mut rows = Vec::new();
    let (mut eq, mut ep, mut ident, mut de, mut dl) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for i in 0..n {
        let (qe, pe) = run.exact[i];
        let (ql, pl) = run.lax[i];
        let (l1, l2) = run.eigenvalues[i];
        let e = run.energy[i];
        eq = eq.max((ql - qe).abs());
        ep = ep.max((pl - pe).abs());
        ident = ident.max((e - 0.5 * (pl * pl + c * c * ql * ql)).abs());
        de = de.max((e - run.energy[0]).abs());
        dl = dl.max((l1 - run.eigenvalues[0].0).abs()).max((l2 - run.eigenvalues[0].1).abs());
        if i.is_multiple_of(args.every) || i + 1 == n {
            rows.push(vec![run.times[i], qe, pe, ql, pl, l1, l2, e]);
        }
    }
    let summary = HoSummary {
        schema_version: SCHEMA_VERSION,
        command: "ho run",
        q0,
        p0,
        c,
        dt,
        t_final,
        steps: n - 1,
        max_q_error: eq,
        max_p_error: ep,
        energy_identity_residual: ident,
        energy_drift: de,
        eigenvalue_drift: dl,
    };
    match args.format {
        Format::Json => write_json(
            args.out.as_deref(),
            &HoJson { summary, columns: COLUMNS.to_vec(), rows },
        ),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(open_sink(args.out.as_deref())?);
            w.write_record(COLUMNS)?;
            for r in &rows {
                w.write_record(r.iter().map(|&v| fmt_f64(v)))?;
            }
            w.flush()?;
            let summary_path = args
                .summary
                .clone()
                .or_else(|| args.out.as_deref().map(|p| sibling(p, "summary.json")));
            match summary_path {
                Some(p) => write_json(Some(&p), &summary),
                None => Ok(std::io::stderr().write_all(&to_json_bytes(&summary)?)?),
            }
        }
    }
}
