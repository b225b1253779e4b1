//! Picks the exact solver with the smallest a-priori search bound.

use super::type_dp::TypeLayout;
use super::{amalgamate_caches_homnc, solve_at, Algorithm, Bound, Selector, SolveError, SolveResult, SolverConfig};
use crate::model::{Instance, Rational};

/// Brute-force limit used once the portfolio has already checked the bound.
const RELAXED_BRUTE_FORCE_LIMIT: usize = 64;

/// A-priori search bounds of every solver on one instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AlgorithmBounds {
    /// `2^(S·C)`.
    pub brute: Bound,
    /// `(K+1)^C · 2^C`.
    pub capdp: Bound,
    /// Reachable type-count vectors times `2^min(T, C)`.
    pub typedp: Bound,
    /// Capacity DP bound after amalgamation; `None` unless all sizes are 1.
    pub homnc: Option<Bound>,
}

impl AlgorithmBounds {
    /// Candidates in tie-break order.
    pub fn candidates(&self) -> Vec<(Algorithm, Bound)> {
        let mut out = vec![(Algorithm::CapacityDp, self.capdp), (Algorithm::TypeDp, self.typedp)];
        if let Some(b) = self.homnc {
            out.push((Algorithm::HomncByUsers, b));
        }
        out.push((Algorithm::BruteForce, self.brute));
        out
    }

    /// Solver with the smallest bound within `budget`, earliest on ties.
    pub fn choose(&self, budget: u64) -> Option<(Algorithm, Bound)> {
        self.candidates().into_iter().filter(|(_, b)| b.within(budget)).fold(
            None,
            |best: Option<(Algorithm, Bound)>, (a, b)| match best {
                Some((_, bb)) if bb <= b => best,
                _ => Some((a, b)),
            },
        )
    }
}

fn capdp_bound(instance: &Instance) -> Bound {
    let c = instance.num_caches() as u64;
    Bound::from_big(&(instance.max_capacity() + 1u32)).pow(c) * Bound::pow2(c)
}

pub fn algorithm_bounds(instance: &Instance) -> AlgorithmBounds {
    let sc = (instance.num_contents() as u64).saturating_mul(instance.num_caches() as u64);
    AlgorithmBounds {
        brute: Bound::pow2(sc),
        capdp: capdp_bound(instance),
        typedp: TypeLayout::new(instance).map_or(Bound::Overflow, |l| l.work_bound(instance.num_caches())),
        homnc: amalgamate_caches_homnc(instance).ok().map(|a| capdp_bound(&a.instance)),
    }
}

/// Runs the solver chosen by [`AlgorithmBounds::choose`], with its guard set
/// to `budget`.
pub fn auto_solve(instance: &Instance, budget: u64) -> Result<SolveResult, SolveError> {
    auto_solve_at(instance, budget, None)
}

pub(crate) fn auto_solve_at(
    instance: &Instance,
    budget: u64,
    target: Option<&Rational>,
) -> Result<SolveResult, SolveError> {
    let (algorithm, _) = algorithm_bounds(instance).choose(budget).ok_or(SolveError::NoFeasibleAlgorithm { budget })?;
    let config = SolverConfig { brute_force_limit: RELAXED_BRUTE_FORCE_LIMIT, max_states: budget };
    solve_at(instance, Selector::Use(algorithm), &config, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::*;
    use crate::model::{ratio, Rational};
    use crate::solvers::DEFAULT_MAX_STATES;

    #[test]
    fn ex1_prefers_capacity_dp() {
        let b = algorithm_bounds(&ex1());
        assert_eq!(b.capdp, Bound::Finite(4));
        assert_eq!(b.brute, Bound::Finite(4));
        let r = auto_solve(&ex1(), DEFAULT_MAX_STATES).unwrap();
        assert_eq!(r.stats.algorithm, Algorithm::CapacityDp);
        assert_eq!(r.optimum, ratio(3, 5));
    }

    #[test]
    fn duplicated_unit_caches_amalgamate() {
        let mut b = Instance::builder()
            .content("s1", 1u32)
            .content("s2", 1u32)
            .content("s3", 1u32)
            .user("u1", Rational::one(), [("s1", ratio(1, 2)), ("s2", ratio(1, 2))])
            .user("u2", Rational::one(), [("s2", ratio(1, 2)), ("s3", ratio(1, 2))]);
        for i in 0..50 {
            let c = format!("c{i:02}");
            let u = if i % 2 == 0 { "u1" } else { "u2" };
            b = b.cache(c.clone(), 1u32).edge(c, u);
        }
        let inst = b.build().unwrap();
        let r = auto_solve(&inst, DEFAULT_MAX_STATES).unwrap();
        assert_eq!(r.stats.algorithm, Algorithm::HomncByUsers);
        assert_eq!(r.optimum, ratio(2, 1));
    }

    #[test]
    fn huge_binary_instance_has_no_algorithm() {
        let mut b = Instance::builder();
        for s in 0..30u64 {
            b = b.content(format!("s{s:02}"), 1_000_000_000u64 + s);
        }
        let requests: Vec<_> = (0..30).map(|s| (format!("s{s:02}"), ratio(1, 30))).collect();
        for u in 0..20 {
            b = b.user(format!("u{u:02}"), Rational::one(), requests.clone());
        }
        for c in 0..10 {
            let id = format!("c{c}");
            b = b.cache(id.clone(), 1_000_000_000u64);
            for u in 0..20 {
                if (u + c) % 3 != 0 {
                    b = b.edge(id.clone(), format!("u{u:02}"));
                }
            }
        }
        let inst = b.build().unwrap();
        assert_eq!(
            auto_solve(&inst, DEFAULT_MAX_STATES),
            Err(SolveError::NoFeasibleAlgorithm { budget: DEFAULT_MAX_STATES })
        );
    }
}
