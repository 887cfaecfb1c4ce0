use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("quadrature did not converge after {evaluations} evaluations (estimate {estimate}, error {error_estimate})")]
    NoConvergence {
        estimate: f64,
        error_estimate: f64,
        evaluations: usize,
    },
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("ill-conditioned lattice: |q| = {0}")]
    IllConditionedLattice(f64),
    #[error("singular curve model (discriminant is zero)")]
    SingularModel,
    #[error("point is not on the curve (residual {0})")]
    NotOnCurve(f64),
    #[error("degenerate family parameter: {0}")]
    DegenerateFamily(String),
    #[error("point {0} has no numeric embedding")]
    UnresolvedPoint(String),
    #[error("divisors live over different point groups")]
    MixedGroups,
    #[error("inconclusive vanishing order at {point}: slope {slope}")]
    InconclusiveOrder { point: String, slope: f64 },
    #[error("parameter {param} is outside every supported regime for {what}")]
    UnsupportedRegime { what: String, param: f64 },
    #[error("singular path: {0}")]
    SingularPath(String),
    #[error("prime {0} needs an a_p override (model not minimal or reduction type ambiguous)")]
    NeedsOverride(u64),
    #[error("missing a_p for prime {0}")]
    MissingPrime(u64),
    #[error("truncation bound not met; increase the number of coefficients (tail {0:e})")]
    IncreaseTerms(f64),
    #[error("inconsistent L-series data: sign residuals {plus:e} (+1) and {minus:e} (-1)")]
    InconsistentSign { plus: f64, minus: f64 },
}
