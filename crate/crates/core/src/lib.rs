//! Exact arithmetic for Hermitian lattices over the Eisenstein integers, their
//! discriminant forms and gluing, and the F2 quadratic forms attached to them.

pub mod bimonster;
pub mod checks;
pub mod disc;
pub mod eisenstein;
pub mod error;
pub mod f2;
pub mod f2config;
pub mod glue;
pub mod lattice;
pub mod matrix;
pub mod perm;
pub mod roots;
pub mod simplex;
pub mod witnesses;
pub mod zlinalg;
pub mod zoo;

pub use eisenstein::{Eis, QEis};
pub use error::{Error, Result};
pub use lattice::{HermitianLattice, IsometryWitness, Signature};
pub use matrix::EisMatrix;
