use thiserror::Error;

/// Errors produced while building societies, propagating decisions,
/// enumerating scores or checking axioms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("actor {actor} is out of range 1..={n}")]
    InvalidActor { actor: usize, n: usize },
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("self-loop on actor {0}")]
    SelfLoop(usize),
    #[error("not a layered digraph: {0}")]
    NotLayered(String),
    #[error("societies hold at most {max} actors, got {n}")]
    TooManyActors { n: usize, max: usize },
    #[error("decision vector has {got} bits, society has {expected} actors")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid decision rule: {0}")]
    InvalidRule(String),
    #[error("majority tie on decision vector {0}")]
    TieEncountered(String),
    #[error("enumeration over 2^{n} vectors exceeds the cap of 2^{cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
