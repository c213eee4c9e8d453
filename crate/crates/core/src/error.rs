use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("graph order {n} exceeds the supported maximum of {max}")]
    TooManyVertices { n: usize, max: usize },

    #[error("negative edge weight on ({u}, {v})")]
    InvalidWeight { u: usize, v: usize },

    #[error("brute-force oracle refused: {m} edges exceeds the limit of {max}")]
    OracleTooLarge { m: usize, max: usize },

    #[error("graph is not connected")]
    NotConnected,

    #[error("beta is undefined for a graph with cyclomatic number 0")]
    BetaUndefined,

    #[error("no edge cut exists in a graph with {0} vertices")]
    NoCut(usize),

    #[error("parse error at line {line}, byte {byte}: {msg}")]
    Parse {
        line: usize,
        byte: usize,
        msg: String,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no partition of {c} with parts at most {cap} and at least {min_parts} parts")]
    NoPartition {
        c: usize,
        cap: usize,
        min_parts: usize,
    },

    #[error("factor table has no entry for c = {c}, d = {d}")]
    TableCoverage { c: usize, d: usize },

    #[error("clique of size {k} cannot absorb {needed} attachment edges")]
    CliqueTooSmall { k: usize, needed: usize },

    #[error("malformed linear program: {0}")]
    MalformedLp(String),

    #[error("invalid shard descriptor: {0}")]
    Shard(String),
}

impl Error {
    pub(crate) fn parse(line: usize, byte: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            byte,
            msg: msg.into(),
        }
    }
}
