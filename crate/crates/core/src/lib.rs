//! Schubert problems on Grassmannians as exact polynomial systems: degrees,
//! real solution counts over osculating and secant flags, and Frobenius
//! sampling of Galois groups.

pub mod combinat;
pub mod error;
pub mod family;
pub mod galois;
pub mod harness;
pub mod parallel;
pub mod realcount;
pub mod sampling;
pub mod schubert;

pub use error::{Error, Result};
