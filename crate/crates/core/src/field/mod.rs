//! Exact scalars: arbitrary-precision rationals and cyclotomic fields ℚ(ζ_N).

mod cyclo;
pub mod numeric;
mod rational;

use thiserror::Error;

pub use cyclo::CycloElement;
pub(crate) use cyclo::euler_phi;
pub use numeric::{complex_enclosure, Enclosure};
pub use rational::{format_rational, int, parse_rational, rat, Rational};

/// Conductor used when nothing else is requested. ℚ(ζ_24) contains the
/// 4th, 6th, 8th and 12th roots of unity as well as √2 and √3.
pub const DEFAULT_CONDUCTOR: u32 = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("conductor must be a positive integer")]
    InvalidConductor,
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor mismatch: {left} vs {right}")]
    ConductorMismatch { left: u32, right: u32 },
    #[error("element of Q(zeta_{source_conductor}) does not lie in Q(zeta_{target})")]
    NotInSubfield { source_conductor: u32, target: u32 },
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpKind {
    Add,
    Sub,
    Mul,
    Div,
}

/// One exact field operation on operands of the same conductor.
pub fn cyclo_op(kind: OpKind, x: &CycloElement, y: &CycloElement) -> Result<CycloElement, FieldError> {
    match kind {
        OpKind::Add => x.checked_add(y),
        OpKind::Sub => x.checked_sub(y),
        OpKind::Mul => x.checked_mul(y),
        OpKind::Div => x.checked_div(y),
    }
}

/// `ζ_N^k`, exact.
pub fn root_of_unity(conductor: u32, k: i64) -> CycloElement {
    CycloElement::root_of_unity(conductor, k)
}

/// Re-expresses `x` in ℚ(ζ_target), either by lifting into a larger field or
/// by recognizing it inside a subfield.
pub fn embed_lift(x: &CycloElement, target: u32) -> Result<CycloElement, FieldError> {
    x.embed(target)
}
