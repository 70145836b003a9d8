use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] ffmoments_core::Error),
    #[error(transparent)]
    Asymptotics(#[from] ffmoments_asymptotics::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cache: {0}")]
    Io(#[from] std::io::Error),
    #[error("cache record: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("malformed record {path}: {why}")]
    BadRecord { path: String, why: String },
    #[error("no cached records for {}; rerun with --compute", .0.join(", "))]
    MissingRecords(Vec<String>),
}

impl Error {
    /// 2 for anything the user can fix by changing flags, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::MissingRecords(_) => 2,
            Error::Core(
                ffmoments_core::Error::BudgetExceeded { .. }
                | ffmoments_core::Error::InvalidModulus(_)
                | ffmoments_core::Error::ModulusNotOneModFour(_)
                | ffmoments_core::Error::ModulusTooLarge(_)
                | ffmoments_core::Error::UnsupportedMomentOrder(_)
                | ffmoments_core::Error::GenusTooSmall,
            ) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
