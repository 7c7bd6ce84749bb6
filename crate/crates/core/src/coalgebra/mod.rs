//! Graded coalgebras with finite bases: the sequence coalgebras (divided
//! powers, binomial, Eulerian), Dirichlet and polynomial coalgebras, full
//! incidence coalgebras of posets and graph coalgebras, with their linear
//! duals, morphisms and coextensions.

pub mod algebra;
pub mod coextension;
pub mod constructors;
pub mod graded;
pub mod graphs;
pub mod morphism;

pub use algebra::{dual_algebra, dual_coalgebra, FDAlgebra, SparseVec};
pub use coextension::{auxiliary_z, dirichlet_coextension, point_coalgebra, Coextension};
pub use constructors::{
    bin_coalgebra, binq_coalgebra, dir_coalgebra, div_coalgebra, first_primes,
    full_incidence_coalgebra, polynomial_coalgebra,
};
pub use graded::{CoalgebraData, GradedCoalgebra, IncidenceForm, Term};
pub use graphs::{graph_coalgebra, GraphCoalgebra};
pub use morphism::{eta, gamma, gamma_q, theta, CoalgebraMorphism};
