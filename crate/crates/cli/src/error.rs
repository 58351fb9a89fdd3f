use std::fmt;

use distchrom::bounds::BoundsError;
use distchrom::colorings::ColoringError;
use distchrom::distgraph::GraphError;
use distchrom::exact::ExactError;
use distchrom::gf::GfError;
use distchrom::numtheory::NumTheoryError;

/// Exit statuses. Clap itself exits with 2 on malformed arguments.
pub mod code {
    pub const IO: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const IMPROPER: u8 = 3;
    pub const UNSUPPORTED_N: u8 = 4;
    pub const NOT_PRIME: u8 = 5;
    pub const TOO_LARGE: u8 = 6;
    pub const EXHAUSTED: u8 = 7;
    pub const INVALID_PARAMS: u8 = 8;
    pub const INCOMPLETE: u8 = 9;
    pub const ODD_CYCLE: u8 = 10;
    pub const INTERNAL: u8 = 11;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Io(String),
    Usage(String),
    Improper(String),
    UnsupportedN(String),
    NotPrime(String),
    TooLarge(String),
    Exhausted(String),
    InvalidParams(String),
    Incomplete(String),
    OddCycle(String),
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Io(_) => code::IO,
            CliError::Usage(_) => code::USAGE,
            CliError::Improper(_) => code::IMPROPER,
            CliError::UnsupportedN(_) => code::UNSUPPORTED_N,
            CliError::NotPrime(_) => code::NOT_PRIME,
            CliError::TooLarge(_) => code::TOO_LARGE,
            CliError::Exhausted(_) => code::EXHAUSTED,
            CliError::InvalidParams(_) => code::INVALID_PARAMS,
            CliError::Incomplete(_) => code::INCOMPLETE,
            CliError::OddCycle(_) => code::ODD_CYCLE,
            CliError::Internal(_) => code::INTERNAL,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            CliError::Io(m)
            | CliError::Usage(m)
            | CliError::Improper(m)
            | CliError::UnsupportedN(m)
            | CliError::NotPrime(m)
            | CliError::TooLarge(m)
            | CliError::Exhausted(m)
            | CliError::InvalidParams(m)
            | CliError::Incomplete(m)
            | CliError::OddCycle(m)
            | CliError::Internal(m) => m,
        };
        f.write_str(msg)
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::TooLarge { .. } => CliError::TooLarge(e.to_string()),
            _ => CliError::InvalidParams(e.to_string()),
        }
    }
}

impl From<NumTheoryError> for CliError {
    fn from(e: NumTheoryError) -> Self {
        match e {
            NumTheoryError::NotPrime(_) | NumTheoryError::InvalidPrime(_) => {
                CliError::NotPrime(e.to_string())
            }
            _ => CliError::InvalidParams(e.to_string()),
        }
    }
}

impl From<GfError> for CliError {
    fn from(e: GfError) -> Self {
        match e {
            GfError::NotPrime(_) => CliError::NotPrime(e.to_string()),
            GfError::TooLarge { .. } => CliError::TooLarge(e.to_string()),
            _ => CliError::InvalidParams(e.to_string()),
        }
    }
}

impl From<ColoringError> for CliError {
    fn from(e: ColoringError) -> Self {
        match e {
            ColoringError::UnsupportedN(_) => CliError::UnsupportedN(e.to_string()),
            ColoringError::NotPrime(_) => CliError::NotPrime(e.to_string()),
            ColoringError::OddCycle(_) => CliError::OddCycle(e.to_string()),
            ColoringError::IncompleteColoring { .. } => CliError::Incomplete(e.to_string()),
            ColoringError::PaletteOverflow(_) => CliError::TooLarge(e.to_string()),
            ColoringError::Graph(g) => g.into(),
            ColoringError::Field(g) => g.into(),
            ColoringError::NumTheory(g) => g.into(),
            ColoringError::BadInput(_) | ColoringError::SpecMismatch { .. } => {
                CliError::InvalidParams(e.to_string())
            }
        }
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        match e {
            BoundsError::Graph(g) => g.into(),
            BoundsError::Contradiction { .. } | BoundsError::Inconsistent { .. } => {
                CliError::Internal(e.to_string())
            }
            BoundsError::Overflow => CliError::TooLarge(e.to_string()),
            _ => CliError::InvalidParams(e.to_string()),
        }
    }
}

impl From<ExactError> for CliError {
    fn from(e: ExactError) -> Self {
        match e {
            ExactError::TooLarge { .. } => CliError::TooLarge(e.to_string()),
            ExactError::InvalidLimits => CliError::InvalidParams(e.to_string()),
            ExactError::Graph(g) => g.into(),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
