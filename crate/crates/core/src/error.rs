use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong while building or analysing an instance.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("UnknownAtom {0}")]
    UnknownAtom(String),
    #[error("UnknownLabel {0}")]
    UnknownLabel(String),
    #[error("MalformedSyntax at offset {0}")]
    MalformedSyntax(usize),
    #[error("InvalidIdentifier {0:?}")]
    InvalidIdentifier(String),
    #[error("DuplicateAtom {0}")]
    DuplicateAtom(String),
    #[error("DuplicateLabel {0}")]
    DuplicateLabel(String),
    #[error("TooManyAtoms {count} (limit {limit})")]
    TooManyAtoms { count: usize, limit: usize },
    /// The per-atom image table does not describe a Boolean homomorphism.
    #[error("NotDisjoint: atom {atom} lies in the images of both {first} and {second}")]
    NotDisjoint {
        atom: String,
        first: String,
        second: String,
    },
    #[error("IdealTooSmall {0}: declared ideal does not contain the range of the action")]
    IdealTooSmall(String),
    #[error("JNotRegular: J = {0} is not contained in the regular sets")]
    JNotRegular(String),
    #[error("NotHereditary: ideal with top {0} is not hereditary")]
    NotHereditary(String),
    #[error("InvalidTail: complement {0} is not a maximal tail")]
    InvalidTail(String),
    #[error("TailAxiomFailure: orbit construction from {start} produced complement {complement}")]
    TailAxiomFailure { start: String, complement: String },
    #[error("RelativeJNotSupported: simplicity needs J = B_reg, got J = {j} with B_reg = {regular}")]
    RelativeJNotSupported { j: String, regular: String },
    #[error("CrossCheckMismatch in {check}: {detail}")]
    CrossCheckMismatch { check: String, detail: String },
    #[error("TooLarge: {atoms} atoms exceeds the limit {limit} for this procedure")]
    TooLarge { atoms: usize, limit: usize },
}

impl Error {
    pub(crate) fn mismatch(check: &str, detail: impl Into<String>) -> Self {
        Error::CrossCheckMismatch {
            check: check.to_string(),
            detail: detail.into(),
        }
    }
}

/// An [`Error`] located in an instance file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: Error,
}
