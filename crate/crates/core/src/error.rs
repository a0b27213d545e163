use thiserror::Error;

/// Everything that can go wrong while building or querying the structures in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Syntax(#[from] serde_json::Error),

    #[error("the generator list is empty")]
    NoGenerators,

    #[error("generator names must be nonempty")]
    EmptyGeneratorName,

    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("generator index {0} is out of range")]
    GeneratorIndex(usize),

    #[error(
        "invalid label {label} for pair ({s}, {t}): off-diagonal labels must be >= 2 or \"inf\""
    )]
    InvalidLabel { s: String, t: String, label: String },

    #[error("relation pairs generator `{0}` with itself")]
    DiagonalRelation(String),

    #[error("duplicate relation for pair ({0}, {1})")]
    DuplicatePair(String, String),

    #[error("missing `default` label (must be 2 or \"inf\")")]
    MissingDefault,

    #[error("default label must be 2 or \"inf\", got {0}")]
    InvalidDefault(String),

    #[error("{what}: {count} generators exceeds the limit of {limit}")]
    TooManyGenerators {
        what: &'static str,
        count: usize,
        limit: usize,
    },

    #[error("the generator subset is empty")]
    EmptySubset,

    #[error("subset {0} is not connected in the Coxeter diagram")]
    NotConnected(String),

    #[error("subset {0} is not spherical")]
    NotSpherical(String),

    #[error("subset {0} is reducible")]
    Reducible(String),

    #[error("{0} is not a face of the complex")]
    NotAFace(String),

    #[error("dimension {k} is out of range for a complex of dimension {dim}")]
    DimensionOutOfRange { k: usize, dim: isize },

    #[error("the complex is empty")]
    EmptyComplex,

    #[error("unknown example `{0}`")]
    UnknownExample(String),

    /// A structural fact that holds for every Coxeter system failed to hold; this always
    /// indicates a bug.
    #[error("lemma violation: {0}")]
    LemmaViolation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
