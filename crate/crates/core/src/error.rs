use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(pub String);

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("split quaternion parameter must have unit norm, got norm {0}")]
    NonUnitParameter(String),

    #[error("matrix is not in Sp(n,B)")]
    NotInGroup,

    #[error("parameter ({0}, {1}) does not lie on the {2}")]
    OffCircle(String, String, &'static str),

    #[error("the columns u_k do not span R^{n} (rank {rank})")]
    NotSpanning { n: usize, rank: usize },

    #[error("point does not lie in the moment image K (cone {0} violated)")]
    NotInCone(usize),

    #[error("point is not on the zero level set of the moment map")]
    NotOnLevelSet,

    #[error("orbit tangent space is degenerate at this point: g restricted to it has rank {rank} < {dim}")]
    DegenerateAtPoint { rank: usize, dim: usize },

    #[error("metric is degenerate on the given subspace")]
    DegenerateMetric,

    #[error("no sign/permutation assignment of the pseudo-sphere fields satisfies the bracket relations (closest consistent scale {scale})")]
    NoConsistentAssignment { scale: String },

    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    JacobiFailure(usize, usize, usize),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Rational(#[from] ParseRationalError),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
