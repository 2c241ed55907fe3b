use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet size {0} is outside the supported range 2..=36")]
    Alphabet(u32),

    #[error("symbol {symbol} at position {position} is not below q = {q}")]
    Symbol { position: usize, symbol: u32, q: u8 },

    #[error("cannot parse word: {0}")]
    Parse(String),

    #[error("words must be non-empty")]
    EmptyWord,

    #[error("dimension mismatch: (n={left_len}, q={left_q}) vs (n={right_len}, q={right_q})")]
    Dimension {
        left_len: usize,
        left_q: u8,
        right_len: usize,
        right_q: u8,
    },

    #[error("position {pos} is outside 1..={len}")]
    Index { pos: usize, len: usize },

    #[error("words are identical; their support is empty")]
    EmptySupport,

    #[error("words at distance {d} have disjoint 2-substitution balls")]
    Disjoint { d: usize },

    #[error("ball parameters t={t}, s={s} need t + s < n (n = {n})")]
    BallSpec { t: usize, s: usize, n: usize },

    #[error("refusing to enumerate words of length {n} over q={q}; pass force to override")]
    Guardrail { n: usize, q: u8 },

    #[error("{0}")]
    Domain(String),

    #[error("integer overflow while evaluating {0}")]
    Overflow(&'static str),

    #[error("requested {requested} distinct reads but the error ball holds only {available}")]
    Capacity { requested: usize, available: usize },

    #[error("code file: {0}")]
    Load(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
