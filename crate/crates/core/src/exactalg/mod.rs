//! Exact arithmetic: parameter polynomials, `S(V)` and the skew group algebra.

mod param;
mod poly;
mod skew;

pub use param::{int, parse_rational, random_point, rat, Param, ParamExps, ParamPoly, Rational};
pub use poly::{Monomial, PolyElem, Vect, DEGREE_CAP};
pub use skew::{act, commutator, skew_mul, SkewElem};
