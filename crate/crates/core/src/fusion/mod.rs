//! Fusion and equivariant fusion algebras over a base with two ends, the
//! lifted strong connection, and the piecewise (pullback) structure.

mod base;
mod carrier;
mod lift;
mod piecewise;

pub use base::{make_sqrt_pair, BaseWithEnds, ChainInterval, SqrtPair};
pub use carrier::{
    build_equivariant_fusion, build_fusion, coinvariants_of_fusion, EquivariantFusion, FusionAlgebra,
    RestrictedComodule,
};
pub use lift::{
    lift_connection, verify_theorem_main, verify_theorem_with, LiftedConnection, TheoremCertificate, TheoremOptions,
};
pub use piecewise::{piecewise_parts, pullback_identification, PiecewiseParts, PullbackReport};
