use thiserror::Error;

/// Error type shared across the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible discriminants: sqrt({0}) vs sqrt({1})")]
    MixedDiscriminants(String, String),
    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(String),
    #[error("matrix is not hyperbolic in SL(2,Z): trace = {trace}, det = {det}")]
    NotHyperbolic { trace: String, det: String },
    #[error("slope action pole: a + b*x = 0 (image is the vertical line)")]
    SlopePole,
    #[error("rational input where a quadratic irrational is required")]
    RationalInput,
    #[error("crossing window could not be certified complete: {0}")]
    WindowIncomplete(String),
    #[error("search bound exceeded: {0}")]
    Inconclusive(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("fat graph is not admissible: {0}")]
    Inadmissible(String),
    #[error("unmatched chain classes in gluing table: {0}")]
    UnmatchedChains(String),
    #[error("window touches an accumulation point; enumeration would be infinite: {0}")]
    InfiniteWindow(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
