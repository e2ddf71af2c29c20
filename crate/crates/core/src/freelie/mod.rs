pub mod algebra;
pub mod expr;
pub mod lyndon;
pub mod morphism;
pub mod presentation;
pub mod pushout;
pub mod tensor;

pub use algebra::{BasisKey, FreeLie, LieElement};
pub use expr::LieExpression;
pub use morphism::Morphism;
pub use presentation::{Indecomposables, Presentation, PresentationSpec, RawSub, Rho, SubSpec};
pub use pushout::{pushout, Pushout};
