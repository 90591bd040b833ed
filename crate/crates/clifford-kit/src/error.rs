use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("table is not square: row {row} has {found} entries, expected {expected}")]
    NotSquare {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("table entry out of range: table[{row}][{col}] = {value}, size is {size}")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        size: usize,
    },

    #[error(
        "operation is not associative at ({i},{j},{k}): (x{i}*x{j})*x{k} = x{left} \
         but x{i}*(x{j}*x{k}) = x{right}"
    )]
    NotAssociative {
        i: usize,
        j: usize,
        k: usize,
        left: usize,
        right: usize,
    },

    #[error("semigroup has {size} elements, exceeding the cap of {cap} (set CK_MAX_ELEMENTS to raise it)")]
    TooManyElements { size: usize, cap: usize },

    #[error("element {element} is out of range for a semigroup of size {size}")]
    NoSuchElement { element: usize, size: usize },

    #[error("subset is not closed under the operation: x{x}*x{y} = x{product} is outside it")]
    SubsetNotClosed { x: usize, y: usize, product: usize },

    #[error("semigroup is not Clifford: {reason}")]
    NotClifford { reason: String },

    #[error("semigroup is not a semilattice")]
    NotSemilattice,

    #[error("semigroup is not a group")]
    NotAGroup,

    #[error("element {element} is not idempotent")]
    NotIdempotent { element: usize },

    #[error("subset is not an ideal: {x}*{y} = {product} escapes it")]
    NotAnIdeal { x: usize, y: usize, product: usize },

    #[error("map is not a homomorphism: it breaks the law at the pair ({x},{y})")]
    NotAHomomorphism { x: usize, y: usize },

    #[error(
        "coordinate set omits idempotent {missing}; only the full idempotent set is U-dense \
         in the discrete reading (pass the override to experiment anyway)"
    )]
    NotUDense { missing: usize },

    #[error("element {e} is not below {a} in the natural order")]
    NotBelow { e: usize, a: usize },

    #[error("enumeration budget exceeded: {explored} candidates, budget {budget}")]
    BudgetExceeded { explored: u128, budget: u128 },

    #[error("ideal enumeration over {size} elements exceeds the cap of {cap} elements")]
    IdealEnumerationTooLarge { size: usize, cap: usize },

    #[error("target semigroup would need {required} elements, cap is {cap}")]
    TargetTooLarge { required: String, cap: usize },

    #[error("generators do not generate the group: element {unreached} is unreachable")]
    NotGenerating { unreached: usize },

    #[error("invalid metric: {0}")]
    InvalidMetric(MetricAxiomFailure),

    #[error("cone point has level {level}, expected a rational in [0,1]")]
    InvalidConePoint { level: String },

    #[error("sample is not closed under the cone operation: point {x} * point {y} is missing")]
    SampleNotClosed { x: usize, y: usize },

    #[error("malformed oracle: {0}")]
    MalformedOracle(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// The first metric axiom broken by a distance table, with its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MetricAxiomFailure {
    Negative { x: usize, y: usize },
    NonzeroDiagonal { x: usize },
    ZeroOffDiagonal { x: usize, y: usize },
    NotSymmetric { x: usize, y: usize },
    Triangle { x: usize, y: usize, z: usize },
}

impl std::fmt::Display for MetricAxiomFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MetricAxiomFailure::Negative { x, y } => write!(f, "d({x},{y}) is negative"),
            MetricAxiomFailure::NonzeroDiagonal { x } => write!(f, "d({x},{x}) is nonzero"),
            MetricAxiomFailure::ZeroOffDiagonal { x, y } => {
                write!(f, "d({x},{y}) = 0 for distinct points")
            }
            MetricAxiomFailure::NotSymmetric { x, y } => {
                write!(f, "d({x},{y}) differs from d({y},{x})")
            }
            MetricAxiomFailure::Triangle { x, y, z } => {
                write!(f, "triangle inequality fails: d({x},{z}) > d({x},{y}) + d({y},{z})")
            }
        }
    }
}
