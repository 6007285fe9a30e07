use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("model has no point events")]
    EmptyModel,
    #[error("point label must be nonempty")]
    EmptyLabel,
    #[error("point `{0}` declared more than once")]
    DuplicatePoint(String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("causal order has a cycle through `{0}` and `{1}`")]
    CycleDetected(String, String),
    #[error("histories are identical")]
    SameHistory,
    #[error("event `{0}` has no members")]
    EmptyEvent(String),
    #[error("spread `{0}` has no outcomes")]
    EmptySpread(String),
    #[error("n-spread `{0}` has no spreads")]
    EmptyNSpread(String),
    #[error("event `{event}` is not {role}")]
    MisclassifiedEvent { event: String, role: &'static str },
    #[error("spread `{name}` is invalid: {reason}")]
    InvalidSpread { name: String, reason: String },
    #[error("outcome vector ({0}) is consistent; there is no correlation to explain")]
    NotInconsistencyType(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("state is not an eigenstate of {0}")]
    NotEigenstate(String),
    #[error("unknown reference `{0}`")]
    UnknownReference(String),
    #[error("unsupported document version {0}")]
    UnsupportedVersion(u32),
    #[error("cannot parse `{0}`")]
    Parse(String),
}

impl Error {
    /// Variant name, for machine-readable error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyModel => "EmptyModel",
            Error::EmptyLabel => "EmptyLabel",
            Error::DuplicatePoint(_) => "DuplicatePoint",
            Error::UnknownPoint(_) => "UnknownPoint",
            Error::CycleDetected(..) => "CycleDetected",
            Error::SameHistory => "SameHistory",
            Error::EmptyEvent(_) => "EmptyEvent",
            Error::EmptySpread(_) => "EmptySpread",
            Error::EmptyNSpread(_) => "EmptyNSpread",
            Error::MisclassifiedEvent { .. } => "MisclassifiedEvent",
            Error::InvalidSpread { .. } => "InvalidSpread",
            Error::NotInconsistencyType(_) => "NotInconsistencyType",
            Error::PreconditionFailed(_) => "PreconditionFailed",
            Error::NotEigenstate(_) => "NotEigenstate",
            Error::UnknownReference(_) => "UnknownReference",
            Error::UnsupportedVersion(_) => "UnsupportedVersion",
            Error::Parse(_) => "Parse",
        }
    }
}
