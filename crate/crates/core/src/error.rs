use thiserror::Error;

use crate::graph::{Side, Vertex};
use crate::BigCount;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{side} index {index} out of range for a part of size {size}")]
    IndexOutOfRange { side: Side, index: usize, size: usize },

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("joining a {0} subset to a {0} subset would put an edge inside one part")]
    SideMismatch(Side),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("graph has an isolated vertex ({0})")]
    IsolatedVertex(Vertex),

    #[error("construction needs a certified count of at least {required}, got {actual}")]
    CountTooSmall { required: u32, actual: BigCount },

    #[error("too large for oracle: {0}")]
    OracleTooLarge(String),

    #[error("enumeration cap of {0} sets exceeded")]
    EnumerationCap(usize),

    #[error("gadget {name}: declared (h', h'') = ({declared_prime}, {declared_dprime}), oracle gives ({actual_prime}, {actual_dprime})")]
    GadgetMismatch {
        name: String,
        declared_prime: BigCount,
        declared_dprime: BigCount,
        actual_prime: BigCount,
        actual_dprime: BigCount,
    },

    #[error("gadget family does not cover all large integers: {0}")]
    Coverage(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("ledger replay failed at step {step}: {reason}")]
    Replay { step: usize, reason: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
