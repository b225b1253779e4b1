use std::time::Instant;

use super::capacity_dp::capacity_vector_dp_at;
use super::{amalgamate_caches_homnc, Algorithm, SolveError, SolveResult, SolverConfig};
use crate::model::{Instance, Rational};

/// Unit-size instances: merge same-neighborhood caches, leaving at most
/// `2^U` caches, then run the capacity-vector DP and lift its witness back.
pub fn solve_homnc_by_users(instance: &Instance, config: &SolverConfig) -> Result<SolveResult, SolveError> {
    solve_homnc_by_users_at(instance, config, None)
}

pub(crate) fn solve_homnc_by_users_at(
    instance: &Instance,
    config: &SolverConfig,
    target: Option<&Rational>,
) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    let merged = amalgamate_caches_homnc(instance)?;
    let mut result = capacity_vector_dp_at(&merged.instance, config, target).map_err(|e| match e {
        SolveError::TooLarge { bound, limit, .. } => SolveError::TooLarge {
            algorithm: Algorithm::HomncByUsers,
            bound: format!("{bound} after amalgamation"),
            limit,
        },
        other => other,
    })?;
    result.witness = merged.lift(&result.witness);
    result.stats.algorithm = Algorithm::HomncByUsers;
    result.stats.elapsed = start.elapsed();
    Ok(result)
}
