//! Exact and numerical computations on the Eisenstein part of the arithmetic
//! Chow group of the modular curve X₀(N), N squarefree.

pub mod arith;
pub mod disc;
pub mod eis;
pub mod gamma0;
pub mod lseries;
pub mod modular;
pub mod numeric;
pub mod symbolic;
