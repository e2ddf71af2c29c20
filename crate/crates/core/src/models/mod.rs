//! Manifold models, Hom complexes, outer actions and the block dg Lie
//! algebras built from them.

pub mod g;
pub mod hom;
pub mod manifold;
pub mod outer;
pub mod symplectic;

pub use g::{build_block_g, build_g, build_tilde_g, twisted_action, GAlgebra, GInput, CHECK_LIMIT};
pub use hom::{HomAction, HomComplex, Source};
pub use manifold::{ManifoldModel, TildeModel, BETA, OMEGA};
pub use outer::{outer_action_check, Adjoint, OuterAction, Semidirect};
pub use symplectic::SymplecticSpace;
