use gtlax_core::curves::{
    classify, degeneration_type, genus, jacobian_lattice, period_matrix, spectral_poly, DegenerationReport,
};
use gtlax_core::gtsystem::{ActionVector, GTPattern};
use gtlax_core::numerics::{default_cluster_tol, rng_from_seed};
use gtlax_core::polytope::{sample_interior, Membership, PolytopeSpec};
use serde::Serialize;

use super::polytope::membership_label;
use super::{orbit_spec, require_json};
use crate::error::{CliError, CliResult};
use crate::output::{sibling, write_json, SpecJson, SCHEMA_VERSION};
use crate::plot::write_svg;
use crate::CurveArgs;

/// Relative target for the gap-cycle quadratures.
pub const PERIOD_TOL: f64 = 1e-12;

#[derive(Serialize)]
struct ClassificationJson {
    critical: bool,
    membership: &'static str,
    saturated: Vec<String>,
    disc: f64,
    disc_zero: bool,
}

#[derive(Serialize)]
struct DegenerationJson {
    multiplicities: Vec<usize>,
    singular_points: usize,
    square_free_degree: usize,
    normalization_genus: usize,
}

impl From<DegenerationReport> for DegenerationJson {
    fn from(r: DegenerationReport) -> Self {
        Self {
            multiplicities: r.multiplicities,
            singular_points: r.singular_points,
            square_free_degree: r.square_free_degree,
            normalization_genus: r.normalization_genus,
        }
    }
}

#[derive(Serialize)]
struct PeriodsJson {
    branch_points: Vec<f64>,
    intervals: Vec<[f64; 2]>,
    real_column: Vec<bool>,
    /// `g` rows of `2g` `[re, im]` pairs.
    matrix: Vec<Vec<[f64; 2]>>,
    lattice_rank: usize,
    lattice_condition: f64,
}

#[derive(Serialize)]
struct CurveReport {
    schema_version: u32,
    command: &'static str,
    seed: u64,
    source: &'static str,
    tol: f64,
    spec: SpecJson,
    action: Vec<f64>,
    pattern: Vec<Vec<f64>>,
    /// Coefficients of `F`, constant term first.
    f_coefficients: Vec<f64>,
    roots: Vec<f64>,
    frozen_divisors: Vec<[f64; 2]>,
    degree: usize,
    disc: f64,
    smooth: bool,
    cross_check_residual: f64,
    classification: ClassificationJson,
    genus: Option<usize>,
    degeneration: Option<DegenerationJson>,
    periods: Option<PeriodsJson>,
    plot: Option<String>,
}

pub fn analyze(args: &CurveArgs) -> CliResult<()> {
    require_json(args.format, "curve analyze")?;
    let spec = orbit_spec(&args.spec.lambda)?;
    let ps = PolytopeSpec::new(&spec);
    let (action, source) = match &args.pattern {
        Some(v) => (ActionVector(v.clone()), "pattern"),
        None => (sample_interior(&ps, &mut rng_from_seed(args.seed.seed)), "sampled"),
    };
    let pattern = GTPattern::from_action(&spec, &action)?;
    let class = classify(&pattern, args.tol)?;
    if let Membership::Outside(v) = &class.membership {
        return Err(CliError::BadInput(format!(
            "pattern violates {} interlacing constraints",
            v.len()
        )));
    }
    let curve = spectral_poly(&pattern)?;

    let (genus_val, degeneration, periods) = if curve.smooth {
        let g = genus(&curve)?;
        let periods = if g >= 1 {
            let pd = period_matrix(&curve, PERIOD_TOL)?;
            let lat = jacobian_lattice(&pd)?;
            Some(PeriodsJson {
                branch_points: pd.branch_points.clone(),
                intervals: pd.intervals.iter().map(|&(a, b)| [a, b]).collect(),
                real_column: pd.real_column.clone(),
                matrix: pd.matrix.iter().map(|r| r.iter().map(|c| [c.re, c.im]).collect()).collect(),
                lattice_rank: lat.rank,
                lattice_condition: lat.condition,
            })
        } else {
            None
        };
        (Some(g), None, periods)
    } else {
        let tol = default_cluster_tol(&curve.roots);
        (None, Some(DegenerationJson::from(degeneration_type(&curve, tol))), None)
    };

    let plot_path = if args.plot {
        let out = args
            .out
            .as_deref()
            .ok_or_else(|| CliError::BadInput("--plot needs --out".into()))?;
        let p = sibling(out, "svg");
        write_svg(&p, &curve, &ps, &action)?;
        Some(p.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default())
    } else {
        None
    };

    let report = CurveReport {
        schema_version: SCHEMA_VERSION,
        command: "curve analyze",
        seed: args.seed.seed,
        source,
        tol: args.tol,
        spec: SpecJson::from(&spec),
        pattern: pattern.rows().to_vec(),
        action: action.0,
        f_coefficients: curve.poly.coeffs().to_vec(),
        roots: curve.roots.clone(),
        frozen_divisors: curve.frozen_divisors.iter().map(|&(v, m)| [v, m as f64]).collect(),
        degree: curve.degree,
        disc: curve.disc,
        smooth: curve.smooth,
        cross_check_residual: curve.cross_check_residual,
        classification: ClassificationJson {
            critical: class.critical,
            membership: membership_label(&class.membership),
            saturated: class.saturated,
            disc: class.disc,
            disc_zero: class.disc_zero,
        },
        genus: genus_val,
        degeneration,
        periods,
        plot: plot_path,
    };
    write_json(args.out.as_deref(), &report)
}
