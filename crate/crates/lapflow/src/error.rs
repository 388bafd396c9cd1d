use lapflow_core::flow::FlowFailure;
use lapflow_core::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}:{line}: {message}")]
    Parse { path: String, line: usize, message: String },
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Flow(#[from] FlowFailure),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 2 for bad input, 3 for numerical failure, 1 for anything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } => 2,
            CliError::Core(e) => core_exit_code(e),
            CliError::Flow(f) => core_exit_code(&f.error),
            CliError::Io(_) | CliError::Csv(_) => 1,
        }
    }
}

fn core_exit_code(e: &CoreError) -> u8 {
    match e {
        CoreError::InvalidGraph(_)
        | CoreError::Disconnected
        | CoreError::InvalidParameter(_)
        | CoreError::Dimension { .. }
        | CoreError::NotInOnesComplement(_)
        | CoreError::KappaBelowOne(_)
        | CoreError::RadiusNotPowerOfTwo(_)
        | CoreError::EpsOutOfRange { .. }
        | CoreError::EpsTooLarge { .. } => 2,
        _ => 3,
    }
}

pub type CliResult<T> = Result<T, CliError>;
