use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("unknown {kind} `{id}` referenced in {context}")]
    DanglingId { kind: &'static str, id: String, context: String },
    #[error("bad request distribution for user `{user}`: {reason}")]
    BadDistribution { user: String, reason: String },
    #[error("{kind} of `{id}` must be positive")]
    NonPositive { kind: &'static str, id: String },
    #[error("duplicate {kind} id `{id}`")]
    DuplicateId { kind: &'static str, id: String },
    #[error("unknown user `{0}`")]
    UnknownUser(String),
    #[error("unknown cache `{0}`")]
    UnknownCache(String),
    #[error("unknown content `{0}`")]
    UnknownContent(String),
}
