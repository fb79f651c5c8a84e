use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("zero exponent at position {pos}")]
    ZeroExponent { pos: usize },

    #[error("generator index 0 at position {pos} (variables are 1-based)")]
    GeneratorIndexZero { pos: usize },

    #[error("constant index 0 at position {pos} (constants are 1-based)")]
    ConstantIndexZero { pos: usize },

    #[error("empty interior word between constant slots {0} and {1}")]
    EmptyInteriorWord(usize, usize),

    #[error("expected a word without constants")]
    UnexpectedConstants,

    #[error("expected {expected} constants, got {got}")]
    ConstantCount { expected: usize, got: usize },

    #[error("constant {0} is central")]
    CentralConstant(usize),

    #[error("word not in derived subgroup")]
    NotInDerivedSubgroup,

    #[error("word lies in F_n^2, S_w undefined")]
    WordInSecondDerived,

    #[error("word length {len} exceeds bound {bound}")]
    WordTooLong { len: usize, bound: usize },

    #[error("constant matrix {index} has determinant {det}, expected 1")]
    Determinant { index: usize, det: String },

    #[error("expected {expected} constant matrices, got {got}")]
    TraceConstantCount { expected: usize, got: usize },

    #[error("{0}")]
    Field(String),

    #[error("exhaustive budget exceeded: {required} tuples > budget {budget}; use sampled_image")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("unsupported group kind {0} for this operation")]
    UnsupportedKind(String),

    #[error("invalid root system {0}")]
    InvalidRootSystem(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        Error::Syntax { pos, msg: msg.into() }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}
