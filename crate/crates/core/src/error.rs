use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("field of order {order:?} exceeds the bound {bound}")]
    TooLarge { order: Option<u64>, bound: u64 },
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("no primitive polynomial of degree {degree} over F_{p}")]
    NoPrimitive { p: u32, degree: usize },
    #[error("bad element: {0}")]
    BadElement(String),
    #[error("element must be a nonzero element of F_q")]
    NotInFqStar,
    #[error("word has length {got}, expected {expected}")]
    WordLength { expected: usize, got: usize },
    #[error("matrix product is not a Dickson matrix")]
    NotDickson,
    #[error("singular matrix")]
    Singular,
    #[error("code needs at least two words")]
    TooFewWords,
    #[error("basis is not linearly independent over F_q")]
    DependentBasis,
    #[error("sets intersect: {0}")]
    NotDisjoint(String),
    #[error("code file: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
