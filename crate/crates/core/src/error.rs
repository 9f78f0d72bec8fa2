use thiserror::Error;

/// Errors produced by the spectral, geometric and solver layers.
#[derive(Debug, Clone, Error)]
pub enum WaveError {
    #[error("grid size {n} is not a power of two (or is too small)")]
    GridSize { n: usize },

    #[error("field sizes differ: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("field contains a non-finite sample")]
    NonFinite,

    #[error("field violates declared {expected:?} parity (defect {defect:.3e})")]
    ParityViolation { expected: crate::spectral::Parity, defect: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("curve tangent vanishes (min |dz| = {min_speed:.3e})")]
    DegenerateTangent { min_speed: f64 },

    #[error("curve points nearly coincide off the diagonal: |z({i}) - z({j})| = {dist:.3e}")]
    CurveTooClose { i: usize, j: usize, dist: f64 },

    #[error("curve self-intersects near (alpha, beta) = ({alpha:.6}, {beta:.6})")]
    SelfCrossing { alpha: f64, beta: f64 },

    #[error("linear solve failed: {0}")]
    LinearSolve(String),

    #[error("eigenvalue computation failed")]
    EigenFailure,

    #[error("vorticity system is near-singular (residual {residual:.3e}, spectral radius estimate {rho:.6})")]
    NearSingular { residual: f64, rho: f64 },

    #[error("Newton solver did not converge: {0}")]
    SolverDiverged(String),

    #[error("line search failed after {rejections} step rejections (residual {residual:.3e})")]
    LineSearchFailed { rejections: usize, residual: f64 },

    #[error("continuation step failed at entry {index}: {source}")]
    ContinuationFailed { index: usize, #[source] source: Box<WaveError> },

    #[error("bisection bracket does not straddle the predicate: {0}")]
    BracketingFailed(String),

    #[error("opening map crosses its branch cut near sample {index} (a = {a:.6})")]
    BranchCut { index: usize, a: f64 },

    #[error("point ({x:.4}, {y:.4}) is too close to the interface (dist {dist:.3e} < {min_dist:.3e})")]
    PointTooClose { x: f64, y: f64, dist: f64, min_dist: f64 },

    #[error("crossing refinement did not converge for seed pair ({alpha:.6}, {beta:.6})")]
    RefinementFailed { alpha: f64, beta: f64 },
}

pub type Result<T> = std::result::Result<T, WaveError>;
