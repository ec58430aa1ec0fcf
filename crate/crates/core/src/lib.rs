//! Differential elimination with Jacobi bound bookkeeping: exact
//! differential polynomials, Ritt reduction, tropical order matrices and
//! the normal-form reduction engine.

pub mod diffpoly;
pub mod engine;
pub mod error;
pub mod matching;
pub mod pencil;
pub mod reduction;
pub mod text;
pub mod tropical;

pub use diffpoly::{
    Convention, Derivative, DiffPoly, ExtInt, LinearOperator, Monomial, Ranking, Rational, Ring,
    RingRef,
};
pub use error::{Error, Result};
