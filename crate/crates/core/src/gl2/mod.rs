//! Finite-dimensional representation theory of gl(2): symmetric powers in
//! the unnormalized symmetrized tensor-word basis, the sl(2) action on
//! End(Sym^m), and its isotypic decomposition.

mod isotypic;
mod sympower;

pub use isotypic::{
    isotypic_decompose, sl2_action_on_end, Decomposition, IsotypicSummand, ProjectorFamily,
};
pub use sympower::{sym_power_lie, sym_power_matrix};
