//! Exact algebra for integer polynomials, composed polynomials, splitting
//! sequences and the exponentially cyclic Puiseux monoids `M_q` together with
//! their monoid algebras.
//!
//! The modules build on each other bottom-up: [`intpoly`] provides dense
//! arithmetic in `Z[x]`, [`factor`] factors over the integers, and the
//! remaining modules use those factorizations to study compositions `f(x^r)`,
//! splitting sequences, valuation bounds and the level algebras of `Z[M_q]`.

pub mod corpus;
pub mod cyclotomic;
pub mod error;
pub mod factor;
pub mod intpoly;
pub mod monalg;
pub mod monoid;
pub(crate) mod modp;
pub mod numfield;
pub mod splitting;

pub use error::{Error, Result};
pub use factor::{factor_over_integers, is_irreducible, Factorization};
pub use intpoly::{IntPoly, Sign};
pub use monalg::MonAlgPoly;
pub use monoid::PuiseuxParam;
