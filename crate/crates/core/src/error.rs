use thiserror::Error;

use crate::groups::Elem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error("table entry ({row}, {col}) = {value} is outside 0..{order}")]
    NotClosed { row: Elem, col: Elem, value: usize, order: usize },
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(Elem, Elem, Elem),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(Elem),
    #[error("group order {order} exceeds the configured bound {bound}")]
    OrderBoundExceeded { order: usize, bound: usize },
    #[error("unknown builtin group `{0}`")]
    UnknownBuiltin(String),
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CochainError {
    #[error("degree {degree} outside the supported range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("coface index {index} out of range for degree {degree}")]
    FaceOutOfRange { index: usize, degree: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("cochain is not normalized at argument tuple {0:?}")]
    NotNormalized(Vec<Elem>),
    #[error("value {value} at {at:?} is not an element of a group of order {order}")]
    ValueOutOfRange { at: Vec<Elem>, value: usize, order: usize },
    #[error("quasiaction is invalid: {0}")]
    InvalidQuasiaction(String),
    #[error("cochains live over different groups or quasiactions")]
    Incompatible,
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("elements lie in different fibers (base components {0} and {1})")]
    FiberMismatch(Elem, Elem),
    #[error("cochain is not integrable on the requested fiber: MC fails at ({a}, {b}) on element {n}")]
    NotIntegrable { a: Elem, b: Elem, n: Elem },
    #[error("quasiaction is not an action: L({a})L({b}) != L({a}{b})")]
    NotAnAction { a: Elem, b: Elem },
    #[error("witness does not satisfy the coboundary relation at {0:?}")]
    WitnessInvalid(Vec<Elem>),
    #[error("no splitting found")]
    NoSplittingFound,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("fiber is not an invariant subgroup containing the image of the cochain")]
    InvalidFiber,
    #[error("magma is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Census(#[from] CensusError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("morphisms are not composable: target {0} != source {1}")]
    NotComposable(usize, usize),
    #[error("no morphism with label {label} from {src} to {dst}")]
    NoSuchMorphism { src: usize, dst: usize, label: usize },
    #[error("family is not natural at {0:?}")]
    NotNatural(Vec<usize>),
    #[error("function is not normalized: s(1) = {0}")]
    NotNormalized(Elem),
    #[error("functors target different categories")]
    TargetMismatch,
    #[error("category has no tensor structure")]
    NoTensor,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("family degree {0} outside 0..=2")]
    DegreeOutOfRange(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cochain(#[from] CochainError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("enumeration needs {needed} candidate tables, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("coefficient group is not abelian")]
    NotAbelian,
    #[error("quasiaction is not an action")]
    NotAnAction,
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
