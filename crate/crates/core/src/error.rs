use thiserror::Error;

use crate::term::Position;

/// Errors raised while building terms and triples.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("malformed IRI {text:?}: {reason}")]
    MalformedIri { text: String, reason: &'static str },
    #[error("unknown prefix {0:?}")]
    UnknownPrefix(String),
    #[error("invalid lexical form {lexical:?} for datatype <{datatype}>")]
    InvalidLexical {
        lexical: String,
        datatype: &'static str,
    },
    #[error("unsupported datatype <{0}>")]
    UnsupportedDatatype(String),
    #[error("malformed blank node label {0:?}")]
    MalformedBlank(String),
    #[error("malformed variable name {0:?}")]
    MalformedVariable(String),
    #[error("{term} is not allowed in {position} position")]
    Eq1Violation { position: Position, term: String },
}

/// What went wrong on one line of a data or prefix file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxErrorKind {
    #[error("duplicate prefix {0:?}")]
    DuplicatePrefix(String),
    #[error("malformed prefix line: {0}")]
    MalformedPrefixLine(String),
    #[error("malformed line: {0}")]
    MalformedLine(String),
    #[error(transparent)]
    Term(#[from] TermError),
}

/// A parse failure tied to a 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: SyntaxErrorKind,
}

impl ParseError {
    pub fn new(line: usize, kind: impl Into<SyntaxErrorKind>) -> Self {
        ParseError {
            line,
            kind: kind.into(),
        }
    }

    pub fn malformed(line: usize, message: impl Into<String>) -> Self {
        ParseError::new(line, SyntaxErrorKind::MalformedLine(message.into()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("at {line}:{column}: {source}")]
    Term {
        line: usize,
        column: usize,
        source: TermError,
    },
    #[error("selected variable {0} does not occur in the WHERE clause")]
    UnboundSelectVariable(String),
    #[error("oracle instance too large: {size} candidate assignments exceeds budget {budget}")]
    InstanceTooLarge { size: u128, budget: u128 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReasonError {
    #[error("malformed restriction on {property}: {value} is not a non-negative integer literal")]
    MalformedRestriction { property: String, value: String },
    #[error("saturation did not reach a fixpoint within {0} rounds")]
    IterationLimitExceeded(usize),
}
