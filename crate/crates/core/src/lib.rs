//! Exact symbolic engine for local Galois deformation calculus: rational
//! function arithmetic, symmetric powers of gl(2), formal character
//! derivatives, cocycle extraction, and the linear algebra that turns
//! coordinates of cohomology classes into L-invariant formulas.

pub mod characters;
pub mod classify;
pub mod deformation;
pub mod error;
pub mod gl2;
pub mod jet;
pub mod linsys;
pub mod matrix;
pub mod poly;
pub mod ring;
pub mod solver;
pub mod symbol;
pub mod symexpr;

pub use error::{Error, Result};
pub use jet::Jet;
pub use matrix::Matrix;
pub use ring::{int, rat, Field, Rational, Ring};
pub use symbol::Symbol;
pub use symexpr::SymExpr;
