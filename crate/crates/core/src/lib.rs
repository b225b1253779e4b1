//! Exact solvers for the network content-caching problem, together with
//! hard-instance generators built from classic NP-hard source problems and
//! brute-force oracles for those source problems.
//!
//! The [`model`] module defines instances and the hit-rate objective,
//! [`solvers`] holds the exact algorithms and preprocessing rules, and
//! [`reductions`] turns SAT, bin packing, knapsack and max k-vertex-cover
//! instances into caching instances with witness back-maps.

pub mod generate;
pub mod model;
pub mod parallel;
pub mod reductions;
pub mod solvers;

pub use model::{Allocation, Instance, Rational};
