//! Exact computation of dual Turán numbers of uniform hypergraphs.
//!
//! * [`hypergraph`]: r-uniform hypergraphs on at most 64 vertices with
//!   complement, components, independence number and the covering test.
//! * [`solver`]: fewest edges so that every k-set contains an edge, with
//!   optional component or independence-sequence constraints, plus an
//!   exhaustive oracle.
//! * [`constructions`]: Turán graphs and disjoint unions of complete
//!   r-graphs.
//! * [`bounds`]: exact rational enclosures of the limiting densities.

pub mod bounds;
mod combinatorics;
pub mod constructions;
mod error;
pub mod hypergraph;
mod independence;
pub mod io;
pub mod solver;

pub use bounds::{BoundReport, DensityInterval};
pub use combinatorics::binom;
pub use error::{Error, Result};
pub use hypergraph::{Hypergraph, IndependenceSequence};
pub use solver::{Certificate, Family, SolveConfig, SolveSpec, Solver};
