use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("line {line}: loop edge at vertex {vertex}")]
    LoopEdge { line: usize, vertex: usize },

    #[error("line {line}: vertex {vertex} outside 1..={n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("{what}: n = {n} exceeds the limit {max}")]
    TooLarge { what: &'static str, n: usize, max: usize },

    #[error("group order exceeds the cap {cap}")]
    GroupTooLarge { cap: usize },

    #[error("graph is disconnected; {0} needs a connected graph")]
    Disconnected(&'static str),

    #[error("graph has parallel edges; {0} needs a simple graph")]
    NotSimple(&'static str),

    #[error("{what} needs at least {min} vertices, got {n}")]
    TooSmall { what: &'static str, n: usize, min: usize },

    #[error("vertices must be distinct (got {0} twice)")]
    SameVertex(usize),

    #[error("graph is reducible: vertices {x} and {y} are twins")]
    Reducible { x: usize, y: usize },

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("the all-ones vector is not in the kernel (residual {residual:e})")]
    OnesNotInKernel { residual: f64 },

    #[error("eigenvalues cannot be grouped unambiguously near {value}")]
    AmbiguousGrouping { value: f64 },

    #[error("reduced bilinear form has negative eigenvalue {0:e}")]
    NotPositiveSemidefinite(f64),

    #[error("embedding dimension {rank} disagrees with zeta {zeta}")]
    ZetaMismatch { rank: usize, zeta: usize },

    #[error("coefficient given for diagonal class {0}")]
    DiagonalCoefficient(usize),

    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),

    #[error("{0}")]
    Io(String),
}

impl Error {
    /// Size-cap violations get their own exit code in the CLI.
    pub fn is_size_limit(&self) -> bool {
        matches!(self, Error::TooLarge { .. } | Error::GroupTooLarge { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
