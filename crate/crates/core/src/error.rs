use crate::algebra::basis::BasisError;
use crate::algebra::complex::ComplexError;
use crate::freelie::expr::ExprError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DgError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Basis(#[from] BasisError),
    #[error("parse error: {0}")]
    Parse(#[from] ExprError),
    #[error("expression is not homogeneous: term at byte {offset} has degree {found}, expected {expected}")]
    InhomogeneousExpression { offset: usize, expected: i64, found: i64 },
    #[error("unknown generator {name:?} at byte {offset}")]
    UnknownGenerator { name: String, offset: usize },
    #[error("generator {generator} has degree {degree}; generators must have degree at least 1")]
    NonPositiveDegree { generator: String, degree: i64 },
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("unknown subalgebra {0:?}")]
    UnknownSub(String),
    #[error("subalgebra {sub:?} is not supported here: {reason}")]
    UnsupportedSub { sub: String, reason: String },
    #[error("incompatible subalgebras: {0}")]
    IncompatibleSubs(String),
    #[error("the linear part on indecomposables is not invertible")]
    NotInvertibleLinearPart,
    #[error("the presentation is not minimal relative to {0:?}")]
    NonMinimalAmbient(String),
    #[error("trivial-differential mode needs d = 0, but d({0}) is nonzero")]
    ModeUnavailable(String),
    #[error("derivations do not agree on the shared subalgebra: {0}")]
    SubMismatch(String),
    #[error("not a quasi-isomorphism: {0}")]
    NotQuasiIso(String),
    #[error("the pairing is not unimodular: {0}")]
    NotUnimodular(String),
    #[error("omega is not closed: d(omega) = {0}")]
    OmegaNotClosed(String),
    #[error("not minimal: d({0}) has a nonzero linear part")]
    NotMinimal(String),
    #[error("Pontryagin functionals are only allowed in degrees 4i-1, got degree {0}")]
    BadPontryaginDegrees(i64),
    #[error("outer action axiom fails: {0}")]
    AxiomFailure(String),
    #[error("rho is not a chain map: {0}")]
    RhoNotChainMap(String),
    #[error("nilpotency class {class} exceeded: {witness}")]
    ClassExceeded { class: usize, witness: String },
    #[error("not nilpotent: {0}")]
    NotNilpotent(String),
    #[error("this pipeline needs the semisimplicity assertion")]
    SemisimplicityNotAsserted,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("morphism check failed: {0}")]
    InvalidMorphism(String),
    #[error("{0}")]
    Invalid(String),
}

impl DgError {
    /// Whether the error comes from malformed input rather than a failed check.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            DgError::Parse(_)
                | DgError::InhomogeneousExpression { .. }
                | DgError::UnknownGenerator { .. }
                | DgError::NonPositiveDegree { .. }
                | DgError::InvalidPresentation(_)
                | DgError::UnknownSub(_)
                | DgError::Basis(_)
                | DgError::BadPontryaginDegrees(_)
                | DgError::DimensionMismatch(_)
        )
    }
}
