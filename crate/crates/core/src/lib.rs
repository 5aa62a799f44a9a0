//! Error identities and two-sided bounds for one-dimensional obstacle problems.

pub mod breakdown;
pub mod classical;
pub mod double;
pub mod error;
pub mod exact;
pub mod par;
pub mod sampling;
pub mod solvers;
pub mod space;
pub mod study;
pub mod tables;
pub mod verify;

pub use breakdown::{CombinedBreakdown, ErrorBreakdown, IDENTITY_TOL};
pub use error::{Error, Result};
