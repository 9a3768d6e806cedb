//! Expanded (corona) trees, maximal independent set counting, and exact
//! verification of generalized Fibonacci product identities together with
//! their iterated generalizations.

pub mod fib;
pub mod graph;
pub mod mis;
pub mod rational;
pub mod report;
pub mod symbolic;
pub mod xk;

pub use fib::{fib, fib_int, FibSequence, Identity};
pub use graph::{expand, path_tree, random_tree, ExpandedTree, Tree, VertexId, VertexKind};
pub use mis::{count_mis, count_mis_containing, enumerate_mis, MisCount, MisFamily};
pub use rational::Rational;
pub use report::{Counterexample, IdentityReport};
