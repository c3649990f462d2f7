use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("symbol `{0}` is not part of the alphabet")]
    SymbolNotInAlphabet(String),

    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,

    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(String),

    #[error("period of an omega-word must be non-empty")]
    EmptyPeriod,

    #[error("word `{0}` occurs both as a positive and a negative example")]
    DisjointnessViolation(String),

    #[error("sample contains no words")]
    EmptySample,

    #[error("transition set is not strongly connected")]
    NotStronglyConnected,

    #[error("component is not reachable by the given access word")]
    Unreachable,

    #[error("state {0} is not reachable from the initial state")]
    UnreachableState(u32),

    #[error("partial condition classifies a set both positively and negatively")]
    InconsistentPartialCondition,

    #[error("infinity sets are never empty")]
    EmptyInfinitySet,

    #[error("search space too large: {0}")]
    UniverseTooLarge(String),

    #[error("automata are defined over different alphabets")]
    AlphabetMismatch,

    #[error("automaton does not have an informative right congruence: states {0} and {1} have equal residuals")]
    NotIrc(u32, u32),

    #[error("unsupported acceptance type: {0}")]
    UnsupportedType(String),

    #[error("unsupported feature: {0}")]
    UnsupportedFeature(String),

    #[error("invalid condition: {0}")]
    InvalidCondition(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    /// Stable machine-readable identifier, used in JSON output and by the C API.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse_error",
            Error::SymbolNotInAlphabet(_) => "symbol_not_in_alphabet",
            Error::EmptyAlphabet => "empty_alphabet",
            Error::DuplicateSymbol(_) => "duplicate_symbol",
            Error::EmptyPeriod => "empty_period",
            Error::DisjointnessViolation(_) => "disjointness_violation",
            Error::EmptySample => "empty_sample",
            Error::NotStronglyConnected => "not_strongly_connected",
            Error::Unreachable => "unreachable",
            Error::UnreachableState(_) => "unreachable_state",
            Error::InconsistentPartialCondition => "inconsistent_partial_condition",
            Error::EmptyInfinitySet => "empty_infinity_set",
            Error::UniverseTooLarge(_) => "universe_too_large",
            Error::AlphabetMismatch => "alphabet_mismatch",
            Error::NotIrc(..) => "not_irc",
            Error::UnsupportedType(_) => "unsupported_type",
            Error::UnsupportedFeature(_) => "unsupported_feature",
            Error::InvalidCondition(_) => "invalid_condition",
            Error::PreconditionViolated(_) => "precondition_violated",
            Error::InternalInconsistency(_) => "internal_inconsistency",
            Error::InvalidGraph(_) => "invalid_graph",
        }
    }
}
