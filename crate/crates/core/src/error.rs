use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a supported prime")]
    InvalidField(u32),
    #[error("characteristic 2 requires the Bar-Natan deformation")]
    CharacteristicTwo,
    #[error("braid letter {index} out of range for {strands} strands")]
    BraidIndex { index: i32, strands: usize },
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("expected a knot, got {0} components")]
    NotAKnot(usize),
    #[error("strand set is not a union of closure orbits")]
    NotOrbitClosed,
    #[error("component set must be a proper nonempty subset")]
    ImproperSubset,
    #[error("{crossings} crossings exceed the naive cube limit {limit}; use the scanning path")]
    CubeLimit { crossings: usize, limit: usize },
    #[error("memory budget of {budget} generators exceeded after {processed} crossings (girth {girth})")]
    MemoryBudget { budget: usize, processed: usize, girth: usize },
    #[error("differential does not square to zero at degree {0}")]
    NotAComplex(i32),
    #[error("vector is not a cycle")]
    NotACycle,
    #[error("{0}")]
    Deformation(String),
    #[error("band rejected: {0}")]
    InvalidBand(String),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("manifest: {0}")]
    Manifest(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
