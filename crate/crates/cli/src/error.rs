use std::fmt;
use std::process::ExitCode;

/// A failure carrying the process exit status it maps to.
#[derive(Debug)]
pub enum CliError {
    /// Some demo check did not reproduce its expected value.
    DemoFailed(usize),
    /// A state or subspace name does not resolve in the scenario.
    Name(String),
    /// Unreadable or ill-formed input, including bad flags.
    Malformed(String),
    /// An evolution matrix (or Gram matrix) is singular.
    Singular(String),
    /// The ambient dimension exceeds the match-count search cap.
    DimensionCap(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::DemoFailed(_) => 1,
            CliError::Name(_) => 2,
            CliError::Malformed(_) => 3,
            CliError::Singular(_) => 4,
            CliError::DimensionCap(_) => 5,
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::DemoFailed(n) => write!(f, "{n} check(s) failed"),
            CliError::Name(m) | CliError::Malformed(m) | CliError::Singular(m) | CliError::DimensionCap(m) => {
                f.write_str(m)
            }
        }
    }
}

impl std::error::Error for CliError {}

impl From<qvalent::Error> for CliError {
    fn from(e: qvalent::Error) -> Self {
        use qvalent::Error as E;
        match e {
            E::SingularMatrix | E::SingularGram => CliError::Singular(e.to_string()),
            E::DimensionCap { .. } => CliError::DimensionCap(e.to_string()),
            _ => CliError::Malformed(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Malformed(format!("i/o: {e}"))
    }
}
