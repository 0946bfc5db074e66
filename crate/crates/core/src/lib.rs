//! Non-regular path homology of digraphs and its comparison with cyclomatic
//! complexity on control flow graphs.
//!
//! A [`Digraph`] is built or parsed, its path complex is assembled lazily by
//! [`path_complex::PathComplex`], and [`homology::betti`] reports plain and
//! reduced Betti numbers with exact arithmetic. [`metrics`] pairs those with
//! the cyclomatic number, and [`corpus`] generates the program skeletons and
//! two-way-branching flow graphs the comparison is run on.

pub mod corpus;
pub mod digraph;
pub mod error;
pub mod field;
pub mod homology;
pub mod metrics;
pub mod path_complex;
pub mod sparse;
pub mod verify;

pub use digraph::{Digraph, FlowGraph};
pub use error::Error;
pub use field::{Field, PrimeField, Rationals};
pub use homology::{betti, betti_with, brute_force_oracle, h1_generators, BettiProfile};
pub use metrics::{compare, cyclomatic, MetricReport};
