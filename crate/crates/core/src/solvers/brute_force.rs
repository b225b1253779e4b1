//! Exhaustive enumeration of all feasible allocations.
//!
//! Each cache branches over the content subsets that fit its capacity, so
//! infeasible stores are pruned at the cache where they arise. Hit values are
//! accumulated as integers over the common denominator of all `w(u)·p_us`
//! terms; the returned optimum is converted back to a [`Rational`].
//!
//! Enumeration order: caches by id, and for each cache its feasible subsets
//! in ascending bitmask order over content ids. The first allocation attaining
//! the maximum wins, which the parallel variant reproduces by reducing its
//! per-branch winners in branch order.

use std::time::Instant;

use num_bigint::BigUint;

use super::scaled::{Gain, Scaled};
use super::{Algorithm, SolveError, SolveResult, SolveStats, SolverConfig};
use crate::model::{Instance, Rational};

struct Search<G> {
    /// Feasible content bitmasks per cache, ascending.
    feasible: Vec<Vec<u64>>,
    cache_users: Vec<Vec<usize>>,
    /// Per user: `(content bit, scaled w·p)` for every positive request.
    user_gains: Vec<Vec<(u32, G)>>,
    num_users: usize,
}

#[derive(Clone)]
struct Best<G> {
    value: G,
    /// Index into `feasible[c]` chosen for each cache.
    path: Vec<usize>,
    leaves: u64,
}

impl<G: Gain> Search<G> {
    fn new(instance: &Instance, feasible: Vec<Vec<u64>>, gains: Vec<Vec<(usize, G)>>) -> Self {
        Search {
            feasible,
            cache_users: (0..instance.num_caches()).map(|c| instance.cache_neighbors(c).to_vec()).collect(),
            user_gains: gains.into_iter().map(|g| g.into_iter().map(|(s, v)| (s as u32, v)).collect()).collect(),
            num_users: instance.num_users(),
        }
    }

    fn leaf_value(&self, hits: &[u64]) -> G {
        let mut total = G::zero();
        for (u, gains) in self.user_gains.iter().enumerate() {
            let h = hits[u];
            if h == 0 {
                continue;
            }
            for (bit, g) in gains {
                if h >> bit & 1 == 1 {
                    total.add(g);
                }
            }
        }
        total
    }

    /// Depth-first enumeration of caches `depth..`. `levels[0]` holds the
    /// per-user hit masks accumulated so far; deeper slots are scratch.
    fn dfs(&self, depth: usize, levels: &mut [Vec<u64>], path: &mut Vec<usize>, best: &mut Best<G>) {
        if depth == self.feasible.len() {
            best.leaves += 1;
            let value = self.leaf_value(&levels[0]);
            if best.path.is_empty() || value > best.value {
                best.value = value;
                best.path.clone_from(path);
            }
            return;
        }
        let (head, tail) = levels.split_at_mut(1);
        let current = &head[0];
        for (i, &mask) in self.feasible[depth].iter().enumerate() {
            tail[0].copy_from_slice(current);
            for &u in &self.cache_users[depth] {
                tail[0][u] |= mask;
            }
            path.push(i);
            self.dfs(depth + 1, tail, path, best);
            path.pop();
        }
    }

    fn branch(&self, first: usize) -> Best<G> {
        let mut levels = vec![vec![0u64; self.num_users]; self.feasible.len()];
        let mask = self.feasible[0][first];
        for &u in &self.cache_users[0] {
            levels[0][u] |= mask;
        }
        let mut path = vec![first];
        let mut best = Best { value: G::zero(), path: Vec::new(), leaves: 0 };
        self.dfs(1, &mut levels, &mut path, &mut best);
        best
    }

    fn run(&self, parallel: bool) -> Best<G> {
        let branches = self.feasible[0].len();
        let results: Vec<Best<G>> = if parallel {
            crate::parallel::map_range(branches, |i| self.branch(i))
        } else {
            (0..branches).map(|i| self.branch(i)).collect()
        };
        let leaves = results.iter().map(|b| b.leaves).sum();
        let mut winner: Option<Best<G>> = None;
        for b in results {
            match &winner {
                Some(w) if b.value <= w.value => {}
                _ => winner = Some(b),
            }
        }
        let mut winner = winner.expect("the empty store is always feasible");
        winner.leaves = leaves;
        winner
    }
}

/// Bitmasks of all content subsets whose total size fits `capacity`,
/// ascending.
fn feasible_subsets(sizes: &[BigUint], capacity: &BigUint) -> Vec<u64> {
    fn rec(sizes: &[BigUint], i: usize, left: &BigUint, mask: u64, out: &mut Vec<u64>) {
        if i == sizes.len() {
            out.push(mask);
            return;
        }
        rec(sizes, i + 1, left, mask, out);
        if &sizes[i] <= left {
            let rest = left - &sizes[i];
            rec(sizes, i + 1, &rest, mask | 1 << i, out);
        }
    }
    let mut out = Vec::new();
    rec(sizes, 0, capacity, 0, &mut out);
    out.sort_unstable();
    out
}

fn run_search(instance: &Instance, config: &SolverConfig, parallel: bool) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    let (c, s) = (instance.num_caches(), instance.num_contents());
    if c.saturating_mul(s) > config.brute_force_limit || (c > 0 && s > 63) {
        return Err(SolveError::TooLarge {
            algorithm: Algorithm::BruteForce,
            bound: format!("S·C = {}", c.saturating_mul(s)),
            limit: config.brute_force_limit.to_string(),
        });
    }
    if c == 0 {
        return Ok(SolveResult {
            optimum: Rational::zero(),
            witness: Default::default(),
            stats: SolveStats { algorithm: Algorithm::BruteForce, states_explored: 1, elapsed: start.elapsed() },
        });
    }

    let scaled = Scaled::new(instance);

    let sizes: Vec<BigUint> = instance.contents().iter().map(|x| x.size.clone()).collect();
    let feasible: Vec<Vec<u64>> =
        instance.caches().iter().map(|cache| feasible_subsets(&sizes, &cache.capacity)).collect();

    let (value, path, leaves) = if scaled.fits_u128 {
        let search = Search::new(instance, feasible, scaled.user_gains::<u128>());
        let best = search.run(parallel);
        (best.value.into_big(), resolve(&search.feasible, &best.path), best.leaves)
    } else {
        let search = Search::new(instance, feasible, scaled.user_gains::<BigUint>());
        let best = search.run(parallel);
        (best.value.into_big(), resolve(&search.feasible, &best.path), best.leaves)
    };

    let placement: Vec<Vec<usize>> =
        path.iter().map(|&mask| (0..s).filter(|&i| mask >> i & 1 == 1).collect()).collect();
    Ok(SolveResult {
        optimum: scaled.rational(value),
        witness: instance.allocation_from_placement(&placement),
        stats: SolveStats { algorithm: Algorithm::BruteForce, states_explored: leaves, elapsed: start.elapsed() },
    })
}

fn resolve(feasible: &[Vec<u64>], path: &[usize]) -> Vec<u64> {
    path.iter().enumerate().map(|(c, &i)| feasible[c][i]).collect()
}

/// Brute force on the calling thread.
pub fn brute_force_sequential(instance: &Instance, config: &SolverConfig) -> Result<SolveResult, SolveError> {
    run_search(instance, config, false)
}

/// Brute force with the first cache's branches spread over the rayon pool.
/// Returns the same witness as [`brute_force_sequential`].
#[cfg(feature = "parallel")]
pub fn brute_force_parallel(instance: &Instance, config: &SolverConfig) -> Result<SolveResult, SolveError> {
    run_search(instance, config, true)
}

/// Exhaustive search; parallel when the `parallel` feature is enabled.
pub fn brute_force(instance: &Instance, config: &SolverConfig) -> Result<SolveResult, SolveError> {
    run_search(instance, config, crate::parallel::ENABLED)
}
