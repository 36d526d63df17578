use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("malformed quiver: {0}")]
    MalformedQuiver(String),
    #[error("malformed relation: {0}")]
    MalformedRelation(String),
    #[error("ideal is not admissible: {0}")]
    NotAdmissible(String),
    #[error("quiver is disconnected")]
    Disconnected,
    #[error("no such vertex: {0}")]
    NoSuchVertex(String),
    #[error("no such arrow: {0}")]
    NoSuchArrow(String),
    #[error("relation {0} is violated")]
    RelationViolated(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("representations live over different algebras")]
    AlgebraMismatch,
    #[error("representations live over different fields")]
    FieldMismatch,
    #[error("undecidable within guard: {0}")]
    Undecidable(String),
    #[error("quiver is not of Dynkin type: {0}")]
    NotDynkin(String),
    #[error("not a positive root: {0:?}")]
    NotARoot(Vec<i64>),
    #[error("zero module")]
    ZeroModule,
    #[error("vertex {0} is not a node")]
    NotANode(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("enumeration budget exceeded: {needed} candidates > budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("exhaustive scan guard tripped: {0}")]
    GuardTripped(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
