use thiserror::Error;

use crate::label::Loset;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which iposet axiom a candidate failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EventOutOfRange { event: usize, len: usize },
    CyclicPrecedence { event: usize },
    CyclicEventOrder { event: usize },
    Unrelated { x: usize, y: usize },
    SourceNotMinimal { event: usize },
    TargetNotMaximal { event: usize },
    /// `a < b`, `c < d`, and neither `a < d` nor `c < b`.
    NotInterval { a: usize, b: usize, c: usize, d: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::EventOutOfRange { event, len } => {
                write!(f, "event {event} out of range (have {len} events)")
            }
            Violation::CyclicPrecedence { event } => {
                write!(f, "precedence is cyclic through event {event}")
            }
            Violation::CyclicEventOrder { event } => {
                write!(f, "event order is cyclic through event {event}")
            }
            Violation::Unrelated { x, y } => write!(
                f,
                "events {x} and {y} are related neither by precedence nor by event order"
            ),
            Violation::SourceNotMinimal { event } => {
                write!(f, "source event {event} is not precedence-minimal")
            }
            Violation::TargetNotMaximal { event } => {
                write!(f, "target event {event} is not precedence-maximal")
            }
            Violation::NotInterval { a, b, c, d } => write!(
                f,
                "events {a}<{b} and {c}<{d} form a 2+2 (not an interval order)"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("axiom violation: {0}")]
    AxiomViolation(Violation),

    #[error("interface mismatch: target interface {left_target} does not match source interface {right_source}")]
    InterfaceMismatch { left_target: Loset, right_source: Loset },

    #[error("position {pos} out of range for a loset of size {len}")]
    OutOfRange { pos: usize, len: usize },

    #[error("cannot remove target position {pos}: it is also a source event")]
    NotRemovable { pos: usize },

    #[error("malformed interval for event {event}: {reason}")]
    MalformedInterval { event: usize, reason: String },

    #[error("too many events or positions: {0} (limit is 64)")]
    TooLarge(usize),

    #[error("language is not down-closed: {missing} refines member {member} but is missing")]
    NotDownClosed { member: String, missing: String },

    #[error("face typing error at cell {cell}: {reason}")]
    FaceTyping { cell: String, reason: String },

    /// Positions `i < j` are reported 1-based, as in the `.hda` format.
    #[error("precubical identity violated at cell {cell}: d{nu}({i}) d{mu}({j}) gives {left} but d{mu}({j_shifted}) d{nu}({i}) gives {right}")]
    IdentityViolation {
        cell: String,
        i: usize,
        j: usize,
        j_shifted: usize,
        nu: u8,
        mu: u8,
        left: String,
        right: String,
    },

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("duplicate cell `{0}`")]
    DuplicateCell(String),

    #[error("unknown cell `{0}`")]
    UnknownCell(String),

    #[error("label `{0}` is not in the alphabet")]
    UnknownLabel(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::AxiomViolation(v)
    }
}
