use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("Alexander polynomial is not of L-space form: {0}")]
    NotLSpaceForm(String),
    #[error("invalid torsion sequence: {0}")]
    InvalidTorsion(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed complex: {0}")]
    MalformedComplex(String),
    #[error("complex fails validation: {0}")]
    InvalidComplex(String),
    #[error("operation needs a {expected} complex, got {found}")]
    WrongProvenance { expected: &'static str, found: String },
    #[error("composite produces a negative U-power: {0}")]
    NegativeUPower(String),
    #[error("homology of B+ is not a single tower: {0}")]
    NotSingleTower(String),
    #[error("no {mode} tower found in trusted gradings up to {limit}")]
    NoTower { mode: &'static str, limit: i64 },
    #[error("truncation not stable: depth {depth} and depth {depth2} disagree ({detail})")]
    Unstable { depth: i64, depth2: i64, detail: String },
    #[error("surgery coefficient {p} is smaller than the genus {genus}")]
    SurgeryTooSmall { p: i64, genus: i64 },
    #[error("map is not a valid involution: {0}")]
    InvalidInvolution(String),
}

pub type Result<T> = std::result::Result<T, Error>;
