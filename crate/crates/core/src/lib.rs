//! Exact computations around Morava K-theory coefficient rings: p-adic and
//! finite-field arithmetic, formal group laws and their p-adic multiples,
//! level-wise models of `C(Z_p, R)` and `R[[Z_p]]`, Adams operations,
//! cannibalistic classes and image-of-J torsion orders.

pub mod adams;
pub mod arith;
pub mod cannibal;
pub mod cli;
pub mod imj;
pub mod linalg;
pub mod profinite;
pub mod ring;
pub mod series;

pub use ring::Ring;
