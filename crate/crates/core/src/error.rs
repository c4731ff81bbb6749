use thiserror::Error;

use crate::hodge::DiamondReport;
use crate::stringy::DescriptorViolation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator factor (uv)^{0} - 1 is not allowed; exponents must be at least 2")]
    InvalidDenominatorFactor(u32),

    #[error("invalid Hodge diamond: {0}")]
    InvalidDiamond(DiamondReport),

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),

    #[error("invalid resolution descriptor: {}", join(.0))]
    InvalidDescriptor(Vec<DescriptorViolation>),

    #[error(
        "component {component} has discrepancy 0; this formula needs a terminal descriptor (all discrepancies >= 1)"
    )]
    NotTerminal { component: u32 },

    #[error("expected a descriptor of dimension {expected}, got {found}")]
    WrongDimension { expected: u32, found: u32 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: u32, right: u32 },

    #[error("closed form only known for q <= 2, got q = {0}")]
    UnsupportedDegree(i64),

    #[error("invalid SNC complex data: {0}")]
    InvalidSnc(String),

    #[error("no restriction map supplied for degree {degree}, Hodge type ({p},{q}), delta_{level}")]
    MissingMap { degree: u32, p: u32, q: u32, level: usize },

    #[error("invalid exceptional fiber `{point}`: {}", join(.problems))]
    InvalidFiber { point: String, problems: Vec<String> },
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}
