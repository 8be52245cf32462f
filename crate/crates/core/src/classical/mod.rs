//! Finite groups, finite G-sets and discrete joins.

mod group;
mod gset;
mod join;

pub use group::FiniteGroup;
pub use gset::{enumerate_actions, fun_comodule, is_free, FiniteGSet};
pub use join::{
    check_triple_map, diagonal_join_freeness, diagonal_join_freeness_with, discrete_join, fun_of_join_vs_fusion,
    gauged_join, gauged_join_iso, DiagonalFreeness, DiscreteJoin, GaugedJoinReport, JoinFusionReport,
};
