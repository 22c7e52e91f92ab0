use thiserror::Error;

use crate::RatFunc;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("substitution makes a denominator vanish identically")]
    ZeroDenominator,

    #[error("singular matrix")]
    SingularMatrix,

    #[error("singular Jacobian: the first n components of the parametrization are algebraically dependent")]
    SingularJacobian,

    #[error("extension of Q(i) required: {0}")]
    ExtensionRequired(String),

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown identifier `{name}` at byte {pos}")]
    UnknownIdentifier { name: String, pos: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parametrization does not lead to a realization: state derivative {} depends on derivatives of u", fmt_list(.z))]
    NotRealizableFromP { z: Vec<RatFunc> },

    #[error("singular reparametrization: Jacobian of s vanishes")]
    SingularReparametrization,

    #[error("degenerate parametrization: {0}")]
    Degenerate(String),

    #[error("no u-free reparametrization found: {0}")]
    SearchExhausted(String),

    #[error("inconsistent reparametrization: {0}")]
    InconsistentAnsatz(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

fn fmt_list(z: &[RatFunc]) -> String {
    let parts: Vec<String> = z.iter().map(|r| r.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub type Result<T> = std::result::Result<T, Error>;
