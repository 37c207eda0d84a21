pub mod curve;
pub mod flow;
pub mod ho;
pub mod orbit;
pub mod polytope;

use gtlax_core::flow::CollectiveHamiltonian;
use gtlax_core::numerics::HermitianMatrix;
use gtlax_core::orbit::OrbitSpec;

use crate::error::{CliError, CliResult};
use crate::Format;

pub fn orbit_spec(lambda: &[f64]) -> CliResult<OrbitSpec> {
    if lambda.len() < 2 {
        return Err(CliError::BadInput("--lambda needs at least two entries".into()));
    }
    Ok(OrbitSpec::new(lambda)?)
}

pub fn require_json(format: Format, what: &str) -> CliResult<()> {
    match format {
        Format::Json => Ok(()),
        Format::Csv => Err(CliError::BadInput(format!(
            "{what} has no time series; CSV output is only available for `flow run` and `ho run`"
        ))),
    }
}

pub fn positive(name: &str, v: f64) -> CliResult<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(CliError::BadInput(format!("{name} must be positive and finite, got {v}")))
    }
}

/// Real symmetric `C` with diagonal `(k, k-1, ..., 1) / k` and `1/2` on the
/// first off-diagonals.
pub fn linear_coefficient(k: usize) -> HermitianMatrix {
    let rows: Vec<Vec<f64>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| match i.abs_diff(j) {
                    0 => (k - i) as f64 / k as f64,
                    1 => 0.5,
                    _ => 0.0,
                })
                .collect()
        })
        .collect();
    let refs: Vec<&[f64]> = rows.iter().map(|r| r.as_slice()).collect();
    HermitianMatrix::from_real_rows(&refs)
}

/// Parses `trace2`, `trace:m`, `linear` or `eig:j` at `level`.
pub fn parse_hamiltonian(s: &str, level: usize) -> CliResult<CollectiveHamiltonian> {
    let bad = || CliError::BadInput(format!("unknown hamiltonian `{s}`; use trace2, trace:m, linear or eig:j"));
    let h = match s {
        "trace2" => CollectiveHamiltonian::trace_power(level, 2),
        "linear" => CollectiveHamiltonian::linear(linear_coefficient(level)),
        _ => match s.split_once(':') {
            Some(("trace", m)) => {
                let m: u32 = m.parse().map_err(|_| bad())?;
                if m == 0 {
                    return Err(bad());
                }
                CollectiveHamiltonian::trace_power(level, m)
            }
            Some(("eig", j)) => {
                let j: usize = j.parse().map_err(|_| bad())?;
                if j == 0 || j > level {
                    return Err(CliError::BadInput(format!("eig:{j} needs 1 <= j <= level = {level}")));
                }
                CollectiveHamiltonian::eigenvalue(level, j)
            }
            _ => return Err(bad()),
        },
    };
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use gtlax_core::flow::HamiltonianKind;

    #[test]
    fn hamiltonian_grammar() {
        assert_eq!(parse_hamiltonian("trace2", 2).unwrap().kind, HamiltonianKind::TracePower(2));
        assert_eq!(parse_hamiltonian("trace:3", 2).unwrap().kind, HamiltonianKind::TracePower(3));
        assert_eq!(parse_hamiltonian("eig:2", 2).unwrap().kind, HamiltonianKind::Eigenvalue(2));
        assert!(matches!(parse_hamiltonian("linear", 3).unwrap().kind, HamiltonianKind::Linear(_)));
        for bad in ["eig:0", "eig:3", "trace:0", "cube", "eig:x"] {
            assert!(matches!(parse_hamiltonian(bad, 2), Err(CliError::BadInput(_))), "{bad}");
        }
    }

    #[test]
    fn linear_coefficient_shape() {
        let c = linear_coefficient(3);
        assert_eq!(c[(0, 0)].re, 1.0);
        assert_eq!(c[(2, 2)].re, 1.0 / 3.0);
        assert_eq!(c[(0, 1)].re, 0.5);
        assert_eq!(c[(0, 2)].re, 0.0);
    }

    #[test]
    fn short_lambda_rejected() {
        assert!(matches!(orbit_spec(&[1.0]), Err(CliError::BadInput(_))));
    }
}
