use thiserror::Error;

/// Errors surfaced by the library's constructors and operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid root system: family {family} does not admit rank {rank} ({reason})")]
    InvalidRank {
        family: char,
        rank: usize,
        reason: &'static str,
    },

    #[error("ambient dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid real form {name}: {reason}")]
    InvalidForm { name: String, reason: String },

    #[error("form {form} does not match root system {family}{rank}")]
    FormSystemMismatch {
        form: String,
        family: char,
        rank: usize,
    },

    #[error("element is not admissible: noncompact root {root} vanishes on z")]
    NotAdmissible { root: String },

    #[error("invalid signed permutation: {reason}")]
    InvalidPerm { reason: String },

    #[error("vector is not a root of the ambient system")]
    NotARoot,

    #[error("root lies in the isotropy subsystem (vanishes on z)")]
    RootVanishes,

    #[error(
        "rank {rank} exceeds the configured cap {cap}: the Weyl group has {weyl_order} \
         elements; raise the cap explicitly to sweep it"
    )]
    RankCapExceeded {
        rank: usize,
        cap: usize,
        weyl_order: u64,
    },

    #[error("cannot parse {what}: {input:?} ({reason})")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
