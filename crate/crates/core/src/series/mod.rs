//! Arithmetic in incidence algebras: the four classical reduced incidence
//! algebras as truncated series, full incidence algebras of finite posets,
//! and reduced algebras of interval types.

pub mod incidence;
pub mod reduced;
pub mod truncated;

pub use incidence::IncidenceFunction;
pub use reduced::{check_order_compatible, Counterexample, IntervalType, ReducedIncidenceTable};
pub use truncated::{SeriesKind, TruncatedSeries};
