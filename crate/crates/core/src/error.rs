use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("weight {weight:?} is singular for p = {p}")]
    Singular { weight: Vec<i64>, p: u64 },

    #[error("the field does not split the algebra ({0}); retry over an extension or a different prime")]
    NonSplit(String),

    #[error("not quasi-hereditary along this poset/order: {0}")]
    NotQuasiHereditary(String),

    #[error("algebra check failed: {0}")]
    Structure(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
