//! Finite combinatorial substrates.

pub mod graph;
pub mod partitions;
pub mod poset;
pub mod qint;
pub mod quiver;
pub mod simplicial;

pub use graph::SimpleGraph;
pub use partitions::set_partitions;
pub use poset::{
    all_intervals_are_chains, is_forest_hasse, is_multitree_hasse, poset_isomorphic, Interval,
    Poset,
};
pub use qint::{q_binomial, q_factorial, q_int};
pub use quiver::{Arrow, Quiver};
pub use simplicial::SimplicialComplex;
