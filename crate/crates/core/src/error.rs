use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    DimensionMismatch { expected: usize, found: usize },
    UnknownCatalog(String),
    InvalidParameters(String),
    InvalidGraph(String),
    Asymmetric { defect: f64 },
    NoConvergence { sweeps: usize },
    NotRegular,
    Disconnected,
    IndexOutOfRange { index: usize, len: usize },
    RankDeficient { rank: usize, expected: usize },
    GroupTooLarge { cap: u64 },
    SearchCapExceeded { nodes: u64 },
    DistanceOutOfRange { distance: usize, diameter: usize },
    MissingWeight { orbital: usize },
    GraphMismatch,
    NotTransitive(&'static str),
    NotBalanced,
    NotSymmetric { generator: usize, residual: f64 },
    InfeasibleSeed { residual: f64 },
    NotDistanceRegular { distance: usize, pair: (usize, usize) },
    ZeroIntersection { distance: usize },
    InconsistentFixedValue { index: usize },
    InvalidArgument(String),
    CrossCheckFailed(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::UnknownCatalog(name) => write!(f, "unknown catalog graph `{name}`"),
            Error::InvalidParameters(msg) => write!(f, "invalid parameters: {msg}"),
            Error::InvalidGraph(msg) => write!(f, "invalid graph: {msg}"),
            Error::Asymmetric { defect } => write!(f, "matrix is not symmetric (defect {defect:e})"),
            Error::NoConvergence { sweeps } => {
                write!(f, "eigensolver did not converge within {sweeps} sweeps")
            }
            Error::NotRegular => f.write_str("graph is not regular"),
            Error::Disconnected => f.write_str("graph is not connected"),
            Error::IndexOutOfRange { index, len } => {
                write!(f, "index {index} out of range (1..={len})")
            }
            Error::RankDeficient { rank, expected } => {
                write!(f, "rank deficient: rank {rank}, expected {expected}")
            }
            Error::GroupTooLarge { cap } => write!(f, "group order exceeds enumeration cap {cap}"),
            Error::SearchCapExceeded { nodes } => {
                write!(f, "automorphism search exceeded {nodes} nodes")
            }
            Error::DistanceOutOfRange { distance, diameter } => {
                write!(f, "distance {distance} exceeds diameter {diameter}")
            }
            Error::MissingWeight { orbital } => write!(f, "no weight given for orbital {orbital}"),
            Error::GraphMismatch => f.write_str("realizations belong to different graphs"),
            Error::NotTransitive(what) => write!(f, "group is not {what}-transitive"),
            Error::NotBalanced => f.write_str("realization is not balanced"),
            Error::NotSymmetric { generator, residual } => write!(
                f,
                "generator {generator} is not induced by an orthogonal map (residual {residual:e})"
            ),
            Error::InfeasibleSeed { residual } => write!(
                f,
                "seed point is not fixed by the stabilizer (inconsistency {residual:e})"
            ),
            Error::NotDistanceRegular { distance, pair } => write!(
                f,
                "not distance-regular: intersection numbers differ at distance {distance} (pair {}, {})",
                pair.0, pair.1
            ),
            Error::ZeroIntersection { distance } => {
                write!(f, "intersection number b_{distance} is zero")
            }
            Error::InconsistentFixedValue { index } => {
                write!(f, "fixed cosine entry {index} exceeds the squared radius")
            }
            Error::InvalidArgument(msg) => f.write_str(msg),
            Error::CrossCheckFailed(msg) => write!(f, "cross-check failed: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
