use std::fmt;

use thiserror::Error;

/// A single structural problem found while validating a complex description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DanglingReference { context: String, id: String },
    WalkNotClosed { face: String },
    WalkDiscontinuous { face: String, position: usize },
    DuplicateId { id: String },
    EmptyWalk { face: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DanglingReference { context, id } => {
                write!(
                    f,
                    "DANGLING_REFERENCE: {context} refers to unknown id `{id}`"
                )
            }
            Violation::WalkNotClosed { face } => {
                write!(
                    f,
                    "WALK_NOT_CLOSED: walk of face `{face}` does not return to its start"
                )
            }
            Violation::WalkDiscontinuous { face, position } => write!(
                f,
                "WALK_DISCONTINUOUS: walk of face `{face}` breaks after step {position}"
            ),
            Violation::DuplicateId { id } => write!(f, "DUPLICATE_ID: `{id}` declared twice"),
            Violation::EmptyWalk { face } => write!(f, "EMPTY_WALK: face `{face}` has no edges"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid complex:\n{}", join_violations(.0))]
    Validation(Vec<Violation>),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("UNKNOWN_CELL: `{0}`")]
    UnknownCell(String),
    #[error("UNKNOWN_EDGE: `{0}`")]
    UnknownEdge(String),
    #[error("NOT_A_CYCLE: the chain has nonzero boundary")]
    NotACycle,
    #[error("NOT_A_CIRCUIT: the chain is not induced by a circuit")]
    NotACircuit,
    #[error("HAS_FACES: the operation requires a graph without 2-cells")]
    HasFaces,
    #[error("FV_INFINITE: FV_Z({0}) is infinite, the special-chain method does not apply")]
    FvInfinite(usize),
    #[error("FILLING_INFINITE: the circuit has no integral filling")]
    FillingInfinite,
    #[error("DISCONNECTED: the graph is not connected")]
    Disconnected,
    #[error("RELATOR_FAILS: relator `{0}` is not the identity permutation")]
    RelatorFails(String),
    #[error("CAP_EXCEEDED: {what} exceeds the cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("INCOMPLETE: search budget of {budget} states exhausted")]
    BudgetExceeded { budget: usize },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn join_violations(vs: &[Violation]) -> String {
    vs.iter()
        .map(|v| format!("  {v}"))
        .collect::<Vec<_>>()
        .join("\n")
}

impl Error {
    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded { .. } | Error::CapExceeded { .. } => 2,
            Error::Invariant(_) => 3,
            _ => 1,
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
