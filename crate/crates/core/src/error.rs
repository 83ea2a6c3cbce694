use thiserror::Error;

/// Errors raised by the tournament algorithms.
///
/// A `false` verdict or an empty search result is never an error; errors are
/// reserved for malformed input, violated preconditions and exhausted budgets.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("size limit exceeded: {what} is {got}, limit is {limit}")]
    SizeLimit {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    #[error("format error at line {line}: {kind}")]
    Format { line: usize, kind: FormatErrorKind },

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("stage `{stage}` failed: {reason}")]
    StageFailure { stage: Stage, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatErrorKind {
    #[error("missing or malformed header")]
    Header,
    #[error("self-loop")]
    SelfLoop,
    #[error("not a tournament")]
    NotATournament,
    #[error("ragged row (expected {expected} columns, found {found})")]
    Ragged { expected: usize, found: usize },
    #[error("unexpected character {0:?}")]
    BadChar(char),
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
}

/// Stages of the embedding pipeline, used to name the point of failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Ordering,
    Dichotomy,
    TriangleRich,
    Partition,
    DependentRandomChoice,
    FirstTransitive,
    SecondTransitive,
    Matching,
    Bipartite,
    ThirdTransitive,
    Assembly,
    Budget,
}

impl Stage {
    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Ordering => "ordering",
            Stage::Dichotomy => "dichotomy",
            Stage::TriangleRich => "triangle-rich",
            Stage::Partition => "partition",
            Stage::DependentRandomChoice => "dependent-random-choice",
            Stage::FirstTransitive => "first-transitive",
            Stage::SecondTransitive => "second-transitive",
            Stage::Matching => "matching",
            Stage::Bipartite => "bipartite",
            Stage::ThirdTransitive => "third-transitive",
            Stage::Assembly => "assembly",
            Stage::Budget => "budget",
        }
    }
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
