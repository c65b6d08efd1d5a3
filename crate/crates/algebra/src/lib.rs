//! Exact arithmetic: rationals, number fields, sparse multivariate polynomials,
//! rational functions, resultants and gcds, finite fields and factorization.

pub mod absfactor;
pub mod coeff;
pub mod error;
pub mod fp;
pub mod json;
mod kernel;
pub mod mono;
pub mod numfield;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod resultant;
pub mod roots;
pub mod upoly;

pub use coeff::Coeff;
pub use error::{AlgebraError, Result};
pub use mono::Mono;
pub use numfield::{NfElem, NumberField};
pub use parse::parse_poly;
pub use poly::{vars, MultiPoly, Vars};
pub use ratfunc::RationalFunction;
pub use rational::{frac, rat, Rat};
