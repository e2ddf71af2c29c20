//! Chevalley–Eilenberg (co)homology, BCH groups, Maurer–Cartan elements,
//! the gauge action and homotopies over interval forms.

pub mod bch;
pub mod complex;
pub mod mc;

pub use bch::{bch, check_class, LieOps, NilpotentGroup};
pub use complex::{ce_cohomology, ce_product_check, chain_dims, CeComplex};
pub use mc::{gauge_action, homotopy_check, mc_check, Homotopy, IntervalElement};
