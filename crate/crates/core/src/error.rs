use thiserror::Error;

use crate::mesh::ElementKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("element {element} references unknown node {node}")]
    DanglingNodeRef { element: u64, node: u64 },

    #[error("duplicate {what} id {id}")]
    DuplicateId { what: &'static str, id: u64 },

    #[error("unsupported element kind `{0}`")]
    UnsupportedKind(String),

    #[error("global edge {0} is shared by more than two elements")]
    NonManifold(usize),

    #[error("local edge {index} is out of range for {kind} (1..={max})")]
    IndexOutOfRange {
        index: usize,
        kind: ElementKind,
        max: usize,
    },

    #[error("edge would connect node {0} to itself")]
    SelfLoop(usize),

    /// Node ids are 1-based compacted ids.
    #[error("node {0} would exceed 12 incident edges")]
    EdgeOverflow(usize),

    #[error("mesh mixes first-order and second-order elements ({0} with {1})")]
    MixedOrderMismatch(ElementKind, ElementKind),

    #[error("singular Jacobian (det J = {det:e})")]
    SingularJacobian { det: f64 },

    #[error("expected {expected} values, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("no free degrees of freedom remain after boundary elimination")]
    EmptySystem,

    #[error("operation requires a first-order (tri3/quad4) mesh")]
    WrongOrder,

    #[error("mass matrix is not positive definite")]
    MassNotPd,

    #[error("{0} free DOFs exceed the dense solver limit of {limit}", limit = crate::eigen::MAX_DENSE_DOFS)]
    TooLarge(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
