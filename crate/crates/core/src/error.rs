use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A link length violates one of the fabrication bounds.
    #[error("link-length constraint violated: {0}")]
    Constraint(String),

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("joint state has {got} values but the chain has {expected} joints")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("joint {joint} value {value} outside limits [{min}, {max}]")]
    JointLimit {
        joint: usize,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("det(J J^T) = {0:e} is negative beyond roundoff; the Jacobian is broken")]
    NegativeDeterminant(f64),

    #[error("degenerate extent along the slicing axis ({min} .. {max})")]
    DegenerateExtent { min: f64, max: f64 },

    #[error("fit needs at least {needed} columns, got {got}")]
    Underdetermined { needed: usize, got: usize },

    #[error("dexterous set is empty (scores in [{score_min:e}, {score_max:e}], threshold {threshold:e})")]
    EmptyDexterousSet {
        score_min: f64,
        score_max: f64,
        threshold: f64,
    },

    #[error("empty point cloud")]
    EmptyCloud,

    #[error("exploration grid has no feasible candidate")]
    EmptyGrid,

    #[error("no candidate reaches the radius floor {floor} m (best achieved {best} m)")]
    RadiusFloorUnmet { floor: f64, best: f64 },

    #[error("no candidate has a non-empty dexterous workspace")]
    NoSelectableCandidate,

    #[error("failed to parse {context}: {source}")]
    Parse {
        context: String,
        #[source]
        source: serde_json::Error,
    },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Short stable identifier used in machine-readable error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Constraint(_) => "constraint",
            Error::InvalidChain(_) => "invalid_chain",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::JointLimit { .. } => "joint_limit",
            Error::InvalidConfig(_) => "invalid_config",
            Error::NegativeDeterminant(_) => "negative_determinant",
            Error::DegenerateExtent { .. } => "degenerate_extent",
            Error::Underdetermined { .. } => "underdetermined",
            Error::EmptyDexterousSet { .. } => "empty_dexterous_set",
            Error::EmptyCloud => "empty_cloud",
            Error::EmptyGrid => "empty_grid",
            Error::RadiusFloorUnmet { .. } => "radius_floor_unmet",
            Error::NoSelectableCandidate => "no_selectable_candidate",
            Error::Parse { .. } => "parse",
            Error::Io { .. } => "io",
        }
    }

    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
