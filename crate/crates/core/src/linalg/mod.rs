//! Exact rational linear algebra on labeled bases.

mod echelon;
mod map;
mod scalar;
mod space;
mod subspace;
mod vector;

pub use map::{AffineSolution, LinearMap};
pub use scalar::{format_scalar, int, one, parse_scalar, ratio, rational_sqrt, zero, Scalar};
pub use space::Space;
pub use subspace::{QuotientSpace, Subspace};
pub use vector::SparseVec;
