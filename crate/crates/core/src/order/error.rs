use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("malformed order description: {0}")]
    Parse(String),
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("order relation has a cycle: `{a}` <= `{b}` and `{b}` <= `{a}`")]
    Cycle { a: String, b: String },
    #[error("elements `{a}` and `{b}` have no meet")]
    NoMeet { a: String, b: String },
    #[error("elements `{a}` and `{b}` have no join")]
    NoJoin { a: String, b: String },
    #[error("the order is empty")]
    Empty,
}
