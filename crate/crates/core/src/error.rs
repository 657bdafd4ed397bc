use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {}x{} times {}x{}", left.0, left.1, right.0, right.1)]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("negative power needs a triangular matrix with +-1 on the diagonal")]
    NotUnimodularTriangular,
    #[error("leading principal minor of order {order} vanishes")]
    VanishingMinor { order: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{got} entries cannot fill a {rows}x{cols} matrix")]
    EntryCount {
        rows: usize,
        cols: usize,
        got: usize,
    },
    #[error("ragged rows: expected length {expected}, got {got}")]
    RaggedRows { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown matrix family {0:?} (expected P1:a=<int>, M1:a=<int>, P2, M2, H1, H2 or Hankel:<sequence>)")]
    UnknownFamily(String),
    #[error("unknown sequence {0:?}")]
    UnknownSequence(String),
    #[error("bad parameter in {0:?}")]
    BadParameter(String),
    #[error("unknown series {0:?} (expected L1 or L2)")]
    UnknownSeries(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("cannot invert a series whose known coefficients are all zero")]
    ZeroSeries,
    #[error("convergent index {requested} exceeds the {available} available quotients")]
    ConvergentOutOfRange { requested: usize, available: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("composition sums to {got}, expected m - t = {expected}")]
    CompositionSum { expected: usize, got: usize },
    #[error("composition has {got} parts but the generating set has {expected} matrices")]
    CompositionLength { expected: usize, got: usize },
    #[error("t = {t} exceeds m = {m}")]
    TExceedsM { t: usize, m: usize },
    #[error("requested {n} points but only p^m = {capacity} exist at depth m")]
    TooManyPoints { n: u64, capacity: String },
    #[error("generating set needs at least one matrix")]
    EmptyGeneratingSet,
    #[error("explicit matrix {index} is {rows}x{cols}, too small for depth {m}")]
    ExplicitTooSmall {
        index: usize,
        rows: usize,
        cols: usize,
        m: usize,
    },
    #[error("star discrepancy is only implemented for dimension 1 or 2, got {0}")]
    UnsupportedDimension(usize),
    #[error("point set is empty")]
    EmptyPointSet,
    #[error("unknown candidate generator {0:?}")]
    UnknownGenerator(String),
}
