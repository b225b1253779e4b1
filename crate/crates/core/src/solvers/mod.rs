//! Exact solvers and optimum-preserving preprocessing.
//!
//! Every solver returns the maximum hit rate over all feasible allocations,
//! a witness allocation attaining it, and search statistics. Results are
//! deterministic: equal inputs give equal witnesses.

mod bound;
mod brute_force;
mod capacity_dp;
mod homnc;
mod packed;
mod portfolio;
mod preprocess;
mod scaled;
mod type_dp;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use thiserror::Error;

use crate::model::{Allocation, Instance, Rational};

pub use bound::Bound;
#[cfg(feature = "parallel")]
pub use brute_force::brute_force_parallel;
pub use brute_force::{brute_force, brute_force_sequential};
pub use capacity_dp::capacity_vector_dp;
pub use homnc::solve_homnc_by_users;
pub use portfolio::{algorithm_bounds, auto_solve, AlgorithmBounds};
pub use preprocess::{amalgamate_caches_homnc, dedup_same_neighborhood_caches, Amalgamation, Dedup};
pub use type_dp::cache_type_dp;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    BruteForce,
    CapacityDp,
    TypeDp,
    HomncByUsers,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] =
        [Algorithm::BruteForce, Algorithm::CapacityDp, Algorithm::TypeDp, Algorithm::HomncByUsers];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::BruteForce => "brute",
            Algorithm::CapacityDp => "capdp",
            Algorithm::TypeDp => "typedp",
            Algorithm::HomncByUsers => "homnc-u",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which solver to run: a fixed algorithm or the portfolio.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selector {
    Auto,
    Use(Algorithm),
}

impl FromStr for Selector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "auto" {
            return Ok(Selector::Auto);
        }
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .map(Selector::Use)
            .ok_or_else(|| format!("unknown algorithm `{s}` (expected auto, brute, capdp, typedp or homnc-u)"))
    }
}

/// Size guards. Solvers refuse with [`SolveError::TooLarge`] rather than
/// attempt a search beyond these limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Largest `S·C` the brute-force enumeration accepts.
    pub brute_force_limit: usize,
    /// Largest a-priori DP state bound the dynamic programs accept.
    pub max_states: u64,
}

pub const DEFAULT_BRUTE_FORCE_LIMIT: usize = 24;
pub const DEFAULT_MAX_STATES: u64 = 100_000_000;

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { brute_force_limit: DEFAULT_BRUTE_FORCE_LIMIT, max_states: DEFAULT_MAX_STATES }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveStats {
    pub algorithm: Algorithm,
    /// Allocations evaluated (brute force) or distinct DP states reached.
    pub states_explored: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub optimum: Rational,
    pub witness: Allocation,
    pub stats: SolveStats,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("{algorithm}: search bound {bound} exceeds limit {limit}")]
    TooLarge { algorithm: Algorithm, bound: String, limit: String },
    #[error("instance is not homogeneous (all content sizes must be 1)")]
    NotHomogeneous,
    #[error("no algorithm has a search bound within the budget of {budget} states")]
    NoFeasibleAlgorithm { budget: u64 },
}

/// Runs the selected solver.
pub fn solve(instance: &Instance, selector: Selector, config: &SolverConfig) -> Result<SolveResult, SolveError> {
    solve_at(instance, selector, config, None)
}

/// [`solve`] with the dynamic programs pruned against `target`.
pub(crate) fn solve_at(
    instance: &Instance,
    selector: Selector,
    config: &SolverConfig,
    target: Option<&Rational>,
) -> Result<SolveResult, SolveError> {
    match selector {
        Selector::Auto => portfolio::auto_solve_at(instance, config.max_states, target),
        Selector::Use(Algorithm::BruteForce) => brute_force(instance, config),
        Selector::Use(Algorithm::CapacityDp) => capacity_dp::capacity_vector_dp_at(instance, config, target),
        Selector::Use(Algorithm::TypeDp) => type_dp::cache_type_dp_at(instance, config, target),
        Selector::Use(Algorithm::HomncByUsers) => homnc::solve_homnc_by_users_at(instance, config, target),
    }
}

/// Decision version: is there a feasible allocation with `CH(Z) ≥ threshold`?
/// On a yes answer the optimal witness is returned. The dynamic programs
/// drop partial solutions that cannot reach the threshold.
pub fn decide(
    instance: &Instance,
    threshold: &Rational,
    selector: Selector,
    config: &SolverConfig,
) -> Result<(bool, Option<Allocation>), SolveError> {
    let result = solve_at(instance, selector, config, Some(threshold))?;
    if &result.optimum >= threshold {
        Ok((true, Some(result.witness)))
    } else {
        Ok((false, None))
    }
}
