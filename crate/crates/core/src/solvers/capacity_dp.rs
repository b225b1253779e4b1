//! Dynamic program over vectors of remaining cache capacities.
//!
//! Contents are processed one at a time. A state is the vector of remaining
//! capacities `(j_1, …, j_C)` and its value is the best hit rate reachable
//! with the contents seen so far. Storing content `s` in a cache subset `C'`
//! moves `j_t → j_t − σ(s)` for every `t ∈ C'` and gains `w(u)·p_us` for each
//! user adjacent to some cache of `C'`.
//!
//! Only reachable states are kept. Each layer starts as a copy of the
//! previous one (storing nothing), and a transition overwrites a state only
//! when strictly better, so earlier transitions win ties. Subsets are tried
//! in ascending bitmask order over caches sorted by id.
//!
//! Subsets are restricted to irredundant ones (see
//! [`irredundant_moves`](super::scaled::irredundant_moves)): a cache that is
//! not the only chosen cache of some requesting user adds no hits, and
//! leaving it out keeps its capacity. The optimum is unchanged.

use std::time::Instant;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rustc_hash::FxHashMap;

use super::packed::{Codec, Packed, Plain, StateSet};
use super::scaled::{irredundant_moves, keeps, Gain, Prune, Scaled};
use super::{Algorithm, Bound, SolveError, SolveResult, SolveStats, SolverConfig};
use crate::model::{Instance, Placement, Rational};

pub fn capacity_vector_dp(instance: &Instance, config: &SolverConfig) -> Result<SolveResult, SolveError> {
    capacity_vector_dp_at(instance, config, None)
}

/// With a `target`, partial solutions that cannot reach it are pruned: the
/// result is exact when the optimum is at least `target` and otherwise only
/// some value below it.
pub(crate) fn capacity_vector_dp_at(
    instance: &Instance,
    config: &SolverConfig,
    target: Option<&Rational>,
) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    let num_caches = instance.num_caches();
    let k = instance.max_capacity();
    let bound = Bound::from_big(&(k.clone() + 1u32)).pow(num_caches as u64);
    if !bound.within(config.max_states) || num_caches > 63 {
        return Err(SolveError::TooLarge {
            algorithm: Algorithm::CapacityDp,
            bound: format!("(K+1)^C = {bound}"),
            limit: config.max_states.to_string(),
        });
    }

    let scaled = Scaled::new(instance);
    let (value, placement, states) = if scaled.fits_u128 {
        with_codec::<u128>(instance, &scaled, target)
    } else {
        with_codec::<BigUint>(instance, &scaled, target)
    };
    Ok(SolveResult {
        optimum: scaled.rational(value),
        witness: instance.allocation_from_placement(&placement),
        stats: SolveStats {
            algorithm: Algorithm::CapacityDp,
            states_explored: states as u64,
            elapsed: start.elapsed(),
        },
    })
}

fn with_codec<G: Gain>(instance: &Instance, scaled: &Scaled, target: Option<&Rational>) -> (BigUint, Placement, usize) {
    let prune = target.map(|t| Prune::<G>::new(scaled, instance.num_contents(), t));
    let capacities: Vec<u64> =
        instance.caches().iter().map(|c| c.capacity.to_u64().expect("bounded by the state guard")).collect();
    let (value, placement, states) = match Packed::new(&capacities) {
        Some(codec) => run(instance, scaled, prune.as_ref(), capacities, &codec),
        None => run(instance, scaled, prune.as_ref(), capacities, &Plain),
    };
    (value.into_big(), placement, states)
}

fn run<G: Gain, K: Codec>(
    instance: &Instance,
    scaled: &Scaled,
    prune: Option<&Prune<G>>,
    capacities: Vec<u64>,
    codec: &K,
) -> (G, Placement, usize) {
    let num_caches = instance.num_caches();
    let user_masks: Vec<u64> =
        (0..instance.num_users()).map(|u| instance.user_neighbors(u).iter().fold(0u64, |m, &c| m | 1 << c)).collect();
    let mut per_content: Vec<Vec<(u64, G)>> = vec![Vec::new(); instance.num_contents()];
    for (u, gains) in scaled.user_gains::<G>().into_iter().enumerate() {
        for (s, g) in gains {
            per_content[s].push((user_masks[u], g));
        }
    }

    let mut states: StateSet<K::Key> = StateSet::default();
    states.insert(codec.encode(&capacities));
    let mut values: Vec<G> = vec![G::zero()];
    // For each content, the states whose value was set by storing it:
    // state index -> (predecessor index, cache subset).
    let mut layers: Vec<FxHashMap<usize, (usize, u64)>> = Vec::with_capacity(instance.num_contents());
    let mut key = vec![0u64; num_caches];
    let mut next = vec![0u64; num_caches];

    for (s, content) in instance.contents().iter().enumerate() {
        let mut changes = FxHashMap::default();
        let Some(size) = content.size.to_u64() else {
            layers.push(changes);
            continue;
        };
        let moves = irredundant_moves(&per_content[s]);
        if moves.is_empty() {
            layers.push(changes);
            continue;
        }
        let previous = values.clone();
        for (st, base) in previous.iter().enumerate() {
            if !keeps(prune, base, s) {
                continue;
            }
            codec.decode(&states[st], &mut key);
            let fits = key.iter().enumerate().filter(|&(_, &j)| j >= size).fold(0u64, |m, (t, _)| m | 1 << t);
            for (subset, gain) in &moves {
                if subset & !fits != 0 {
                    continue;
                }
                next.copy_from_slice(&key);
                for (t, j) in next.iter_mut().enumerate() {
                    if subset >> t & 1 == 1 {
                        *j -= size;
                    }
                }
                let mut candidate = base.clone();
                candidate.add(gain);
                if !keeps(prune, &candidate, s + 1) {
                    continue;
                }
                let (idx, inserted) = states.insert_full(codec.encode(&next));
                if inserted {
                    values.push(candidate);
                    changes.insert(idx, (st, *subset));
                } else if candidate > values[idx] {
                    values[idx] = candidate;
                    changes.insert(idx, (st, *subset));
                }
            }
        }
        layers.push(changes);
    }

    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if v > &values[best] {
            best = i;
        }
    }

    let mut placement = vec![Vec::new(); num_caches];
    let mut cur = best;
    for (s, changes) in layers.iter().enumerate().rev() {
        if let Some(&(pred, subset)) = changes.get(&cur) {
            for (c, store) in placement.iter_mut().enumerate() {
                if subset >> c & 1 == 1 {
                    store.push(s);
                }
            }
            cur = pred;
        }
    }
    debug_assert_eq!(cur, 0);
    for store in placement.iter_mut() {
        store.reverse();
    }
    let n = states.len();
    (values.swap_remove(best), placement, n)
}
