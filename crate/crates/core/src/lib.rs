pub mod algebra;
pub mod ce;
pub mod cli;
pub mod derivations;
pub mod dgla;
pub mod error;
pub mod freelie;
pub mod gluing;
pub mod io;
pub mod models;
pub mod report;

pub use error::DgError;
