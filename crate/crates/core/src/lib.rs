//! Exact-arithmetic toolkit for finite-dimensional Hopf algebras, comodule
//! algebras, strong connections, and fusion (join) constructions over finite
//! chain intervals.

pub mod algebra;
pub mod certificate;
pub mod classical;
pub mod comodule;
pub mod error;
pub mod fusion;
pub mod hopf;
pub mod io;
pub mod linalg;
pub mod par;
pub mod report;

pub use error::{Error, Result};
pub use par::Exec;
