//! Exact scalars, projective points and multivariate polynomials.

mod poly;
mod proj;
mod rational;

pub use poly::{Monomial, MultiPoly};
pub use proj::ProjPoint;
pub use rational::{int, parse_rational, rat, rat_arith, ArithOp, Rational};
