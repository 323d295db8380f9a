use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PadicError {
    #[error("p = {0} is not supported: need an odd prime below 2^31")]
    UnsupportedPrime(String),
    #[error("precision must be at least 1 digit")]
    ZeroPrecision,
    #[error("defining polynomial {poly} is reducible mod {p}: {witness}")]
    ReducibleModulus { poly: String, p: u64, witness: String },
    #[error("defining polynomial must be monic of degree 2..={max}, got {got}")]
    BadModulus { got: String, max: u32 },
    #[error("operands belong to different local fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not a unit (valuation {0})")]
    NotAUnit(String),
    #[error("logarithm of zero")]
    LogOfZero,
    #[error("seed {0} is not a simple root: the derivative vanishes modulo the maximal ideal")]
    NonSimpleSeed(String),
    #[error("seed {0} is not a root modulo the maximal ideal")]
    NotARoot(String),
    #[error("residue field has {size} elements, above the search bound {bound}")]
    ResidueFieldTooLarge { size: String, bound: u64 },
    #[error("polynomial is not squarefree over Q")]
    NotSquarefree,
    #[error("height {height} is too large for p^{digits}: uniqueness of the reconstruction is lost")]
    HeightTooLarge { height: String, digits: u32 },
    #[error("precision too low for height {height}: need p^N >= 2*height^3")]
    PrecisionTooLow { height: String },
    #[error("element does not lie in Q_p: coordinate {index} has valuation {valuation}")]
    NotInBaseField { index: usize, valuation: String },
    #[error("exponential series needs valuation above 1/(p-1)")]
    ExpDiverges,
    #[error("Newton iteration failed to converge")]
    NoConvergence,
}
