//! Lefschetz-class calculus for homogeneous spaces of classical groups and
//! rank-stratified determinantal and Pfaffian loci, with exhaustive
//! finite-field point counts to check every class against.

pub mod analysis;
pub mod catalog;
mod decimal;
pub mod enumerate;
pub mod ffield;
pub mod lefschetz;
pub mod linalg;
pub mod routes;
pub mod space;

pub use ffield::{Fp, PrimeField};
pub use lefschetz::{ClassError, LPoly, ScaledClass};
pub use space::{parse_space, Atom, OrthSign, SpaceExpr};
