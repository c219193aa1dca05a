use thiserror::Error;

/// Broad classification used by front ends to pick exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Domain,
    Internal,
}

/// Which clause of the y-index membership test failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YViolation {
    Empty,
    AllZeros,
    AllTop,
    DigitSum { sum_mod: usize, modulus: usize },
}

impl std::fmt::Display for YViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            YViolation::Empty => write!(f, "index is the empty word"),
            YViolation::AllZeros => write!(f, "index is a power of 0"),
            YViolation::AllTop => write!(f, "index is a power of the top letter"),
            YViolation::DigitSum { sum_mod, modulus } => {
                write!(f, "digit sum is {sum_mod} mod {modulus}, expected 0")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity must be between 2 and 255, got {0}")]
    InvalidArity(usize),
    #[error("letter {letter} is out of range for arity {arity}")]
    LetterOutOfRange { letter: usize, arity: usize },
    #[error("alphabet mismatch: arity {left} vs arity {right}")]
    AlphabetMismatch { left: usize, right: usize },
    #[error("eventually periodic word needs a nonempty period")]
    EmptyPeriod,
    #[error("the order on words is strict; both arguments are {0}")]
    EqualWords(String),
    #[error("points are equal: {0}")]
    EqualPoints(String),
    #[error("transducer needs a second letter of lookahead")]
    InsufficientLookahead,
    #[error("calculation contains a potential cancellation")]
    PotentialCancellation,
    #[error("calculation is not defined: {0}")]
    UndefinedCalculation(String),
    #[error("generator index {index} out of range for arity {arity}")]
    GeneratorIndex { index: usize, arity: usize },
    #[error("y[{word}] is not a generator: {reason}")]
    NotInY { word: String, reason: YViolation },
    #[error("prefix action of {element} on {word} is undefined")]
    UndefinedPrefixAction { element: String, word: String },
    #[error("side condition violated: {0}")]
    SideCondition(String),
    #[error("no potential contraction at {0}")]
    NoPotentialContraction(String),
    #[error("ER move on y[{target}] is blocked by y[{blocker}]")]
    BlockedErMove { target: String, blocker: String },
    #[error("({p}, {q}) is not a valid arity pair: q-1 must be a multiple of p-1")]
    InvalidArityPair { p: usize, q: usize },
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("internal invariant violated: {0}")]
    InvariantBreach(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Syntax { .. } | Error::NotInY { .. } => ErrorKind::Parse,
            Error::InvariantBreach(_) => ErrorKind::Internal,
            _ => ErrorKind::Domain,
        }
    }

    pub(crate) fn syntax(position: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            position,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
