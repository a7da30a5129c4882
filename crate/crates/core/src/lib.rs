//! Exact computations in Verma modules over the N=1 BMS superalgebra and
//! its even part W(2,2).
//!
//! Scalars live in Q(cL, cM, hL, hM) or any rational specialization of it.
//! The main entry points are [`singular::build_s`], [`singular::build_r`],
//! [`subsingular::build_t`], [`subsingular::build_t_pr`] and the character
//! routines in [`characters`].

pub mod characters;
pub mod error;
pub mod exactla;
pub mod liealg;
pub mod par;
pub mod pbw;
pub mod scalars;
pub mod singular;
pub mod subsingular;
pub mod vector;
pub mod verma;

pub use error::{Error, Result};
pub use scalars::{Scalar, Var};
