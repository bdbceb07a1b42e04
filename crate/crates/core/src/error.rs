use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty word where a nonempty word is required")]
    EmptyWord,

    #[error("word {0} is not a Lyndon word")]
    NotLyndon(String),

    #[error("letter x{letter} is outside the alphabet x0..x{max}")]
    InvalidLetter { letter: usize, max: usize },

    #[error("alphabet mismatch: expected {expected} letters, found {found}")]
    AlphabetMismatch { expected: usize, found: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid signal: {0}")]
    InvalidSignal(String),

    #[error("level {k} over {card} letters is too large for dense matrices (limit {limit} rows)")]
    TooLarge { k: usize, card: usize, limit: usize },

    #[error("state diverged at t = {t}")]
    Divergence { t: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
