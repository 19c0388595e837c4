use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed symbol description: {0}")]
    Parse(String),
    #[error("duplicate node {0:?}")]
    DuplicateNode(String),
    #[error("edge label {0} is invalid (labels must be at least 2)")]
    BadLabel(i64),
    #[error("unknown node {0}")]
    UnknownNode(String),
    #[error("invalid Weyl type {0}")]
    InvalidType(String),
    #[error("symbol is not of finite type")]
    NotFinite,
    #[error("{what} has {size} nodes, the cap is {cap}")]
    TooLarge { what: &'static str, size: usize, cap: usize },
    #[error("inf_value must be <= -1, got {0}")]
    InfValue(f64),
    #[error("parity character at node {0} needs even labels on every incident edge")]
    OddLabel(String),
    #[error("element order exceeds bound {0}")]
    OrderBound(u64),
    #[error("matrix is not an involution mod 2")]
    NotInvolution,
    #[error("node set is not connected")]
    Disconnected,
    #[error("node {0} is not admissible")]
    NotAdmissible(usize),
    #[error("node {0} is attached twice")]
    DuplicateAttachment(usize),
    #[error("no vector of L/2 hits ker minus im")]
    NoTarget,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
}
