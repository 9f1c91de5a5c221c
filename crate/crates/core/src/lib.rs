//! Exact models of the moduli space of quadratic endomorphisms of the
//! projective line with a marked 6-cycle: the affine models, the quintic
//! surface `W^2 F3(X,Y,Z) = F5(X,Y,Z)` in P^3, families of maps over the
//! rationals with rational 6-cycles, and a height-bounded point search.

pub mod cli;
pub mod endo;
pub mod error;
pub mod exactmath;
pub mod families;
pub mod moduli;
pub mod search;
pub mod surface;

pub use error::{Error, Result};
