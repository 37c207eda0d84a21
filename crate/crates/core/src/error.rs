use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal residual {residual:e})")]
    NonConvergence { sweeps: usize, residual: f64 },

    #[error("eigenvalue {index} of the level-{level} block is not simple (gap {gap:e} <= {tol:e})")]
    NearDegenerateEigenvalue {
        level: usize,
        index: usize,
        gap: f64,
        tol: f64,
    },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("polynomial of degree {0} is too small for this operation")]
    DegenerateDegree(i64),

    #[error("periodic quadrature did not converge with {nodes} nodes (error estimate {estimate:e})")]
    QuadratureNotConverged { nodes: usize, estimate: f64 },

    #[error("tangent vectors are based at different orbit points")]
    MismatchedBasePoint,

    #[error("vertex enumeration refused for polytope dimension {0} (> 6)")]
    DimensionTooLarge(usize),

    #[error("pattern is outside the Gelfand-Tsetlin polytope ({violated} violated constraints)")]
    InfeasiblePattern { violated: usize },

    #[error("spectral curve is singular; use the degeneration report instead")]
    SingularCurve,

    #[error("branch points too close for stable quadrature (min gap {min_gap:e})")]
    NearSingular { min_gap: f64 },

    #[error("period lattice is rank deficient (rank {rank} < {expected})")]
    RankDeficient { rank: usize, expected: usize },

    #[error("integration step rejected at t = {t}: local error estimate {estimate:e}")]
    StepRejected { t: f64, estimate: f64 },

    #[error("spectral polynomial paths disagree (coefficient residual {residual:e})")]
    SpectralCrossCheck { residual: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
