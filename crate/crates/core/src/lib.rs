//! Finite symplectic polar spaces over fields of characteristic two, and two
//! constructions of m-ovoids of W(5, q) with their verification and
//! classification tooling.

pub mod classify;
pub mod error;
pub mod forms;
pub mod gf;
pub mod glued;
pub mod group;
pub mod linalg;
pub mod pencil;
pub mod pointfile;
pub mod polar;
pub mod projgeom;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
