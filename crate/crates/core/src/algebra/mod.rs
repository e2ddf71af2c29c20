pub mod basis;
pub mod complex;
pub mod linmap;
pub mod matrix;
pub mod rational;
