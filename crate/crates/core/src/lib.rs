//! Symbolic verification engine for the kappa-deformed Galilei algebra and
//! group: exact normal ordering, Hopf axiom checks, bicrossproduct
//! structure, Lie bialgebra cohomology, duality pairings and projective
//! representations.

pub mod cohom;
pub mod dsl;
pub mod duality;
pub mod error;
pub mod hopf;
pub mod models;
pub mod ncalg;
pub mod projrep;
pub mod report;
pub mod scalars;
pub mod suite;

pub use error::{Error, Result};
