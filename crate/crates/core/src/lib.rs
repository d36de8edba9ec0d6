//! Exact and high-precision tools for theta functions on the torus: cyclotomic
//! arithmetic, finite Heisenberg groups, the torus skein algebra, quantum-group
//! fusion data and numerical theta series.

pub mod error;
pub mod heisenberg;
pub mod linalg;
pub mod numeric;
pub mod pillowcase;
pub mod quantum_group;
pub mod rt_torus;
pub mod scalar;
pub mod sl2z;
pub mod theta_numeric;
pub mod verify;

pub use error::{Error, Result};
