//! Dynamic program over counts of cache types.
//!
//! Caches with the same user neighborhood form a group; a cache's type is its
//! group plus its current remaining capacity. A state records how many
//! caches of each type remain. Storing a content in a set of types sends one
//! cache of each chosen type `(r, y)` to `(r, y − σ)`. Storing it twice in
//! one group never gains more, so a move picks an irredundant set of groups
//! and one capacity level in each.
//!
//! Only neighborhoods that actually occur form groups, and each group's
//! capacity axis stops at the largest capacity inside that group.

use std::time::Instant;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rustc_hash::FxHashMap;

use super::packed::{Codec, Packed, Plain, StateSet};
use super::preprocess::neighborhood_groups;
use super::scaled::{irredundant_moves, keeps, Gain, Prune, Scaled};
use super::{Algorithm, Bound, SolveError, SolveResult, SolveStats, SolverConfig};
use crate::model::{Instance, Placement, Rational};

/// Cache types of an instance: groups of caches with equal neighborhoods.
pub(crate) struct TypeLayout {
    /// Cache indices of each group, ascending.
    pub groups: Vec<Vec<usize>>,
    /// Largest capacity inside each group.
    pub group_capacity: Vec<u64>,
    /// First type index of each group; type `(r, y)` is `offset[r] + y`.
    pub offset: Vec<usize>,
    pub num_types: usize,
}

impl TypeLayout {
    /// `None` when some capacity does not fit in a machine word.
    pub(crate) fn new(instance: &Instance) -> Option<TypeLayout> {
        let groups = neighborhood_groups(instance);
        let mut group_capacity = Vec::with_capacity(groups.len());
        for g in &groups {
            let caps: Option<Vec<u64>> = g.iter().map(|&c| instance.caches()[c].capacity.to_u64()).collect();
            group_capacity.push(caps?.into_iter().max().unwrap_or(0));
        }
        let mut offset = Vec::with_capacity(groups.len());
        let mut num_types = 0usize;
        for &k in &group_capacity {
            offset.push(num_types);
            num_types = num_types.saturating_add(k as usize).saturating_add(1);
        }
        Some(TypeLayout { groups, group_capacity, offset, num_types })
    }

    /// Upper bound on reachable count vectors: per group, the ways to spread
    /// its caches over capacity levels `0..=K_r`.
    pub(crate) fn state_bound(&self) -> Bound {
        self.groups
            .iter()
            .zip(&self.group_capacity)
            .fold(Bound::ONE, |acc, (g, &k)| acc * Bound::multisets(g.len() as u64, k))
    }

    /// State bound times the transitions per state, `2^min(T, C)`.
    pub(crate) fn work_bound(&self, num_caches: usize) -> Bound {
        self.state_bound() * Bound::pow2(self.num_types.min(num_caches) as u64)
    }
}

pub fn cache_type_dp(instance: &Instance, config: &SolverConfig) -> Result<SolveResult, SolveError> {
    cache_type_dp_at(instance, config, None)
}

/// Target pruning as in [`capacity_vector_dp_at`](super::capacity_dp::capacity_vector_dp_at).
pub(crate) fn cache_type_dp_at(
    instance: &Instance,
    config: &SolverConfig,
    target: Option<&Rational>,
) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    let layout = TypeLayout::new(instance);
    let bound = layout.as_ref().map_or(Bound::Overflow, |l| l.work_bound(instance.num_caches()));
    if !bound.within(config.max_states) || layout.as_ref().is_some_and(|l| l.groups.len() > 64) {
        return Err(SolveError::TooLarge {
            algorithm: Algorithm::TypeDp,
            bound: format!("states·2^min(T,C) = {bound}"),
            limit: config.max_states.to_string(),
        });
    }
    let layout = layout.expect("checked above");

    let scaled = Scaled::new(instance);
    let (value, placement, states) = if scaled.fits_u128 {
        with_codec::<u128>(instance, &layout, &scaled, target)
    } else {
        with_codec::<BigUint>(instance, &layout, &scaled, target)
    };
    Ok(SolveResult {
        optimum: scaled.rational(value),
        witness: instance.allocation_from_placement(&placement),
        stats: SolveStats { algorithm: Algorithm::TypeDp, states_explored: states as u64, elapsed: start.elapsed() },
    })
}

fn with_codec<G: Gain>(
    instance: &Instance,
    layout: &TypeLayout,
    scaled: &Scaled,
    target: Option<&Rational>,
) -> (BigUint, Placement, usize) {
    let prune = target.map(|t| Prune::<G>::new(scaled, instance.num_contents(), t));
    // A type count never exceeds the size of its group.
    let mut maxima = vec![0u64; layout.num_types];
    for (r, g) in layout.groups.iter().enumerate() {
        let first = layout.offset[r];
        maxima[first..=first + layout.group_capacity[r] as usize].fill(g.len() as u64);
    }
    let (value, placement, states) = match Packed::new(&maxima) {
        Some(codec) => run(instance, layout, scaled, prune.as_ref(), &codec),
        None => run(instance, layout, scaled, prune.as_ref(), &Plain),
    };
    (value.into_big(), placement, states)
}

fn run<G: Gain, K: Codec>(
    instance: &Instance,
    layout: &TypeLayout,
    scaled: &Scaled,
    prune: Option<&Prune<G>>,
    codec: &K,
) -> (G, Placement, usize) {
    // Type of each (group, capacity) pair, and the group of each type.
    let mut type_group = vec![0usize; layout.num_types];
    let mut type_level = vec![0u64; layout.num_types];
    for (r, &k) in layout.group_capacity.iter().enumerate() {
        for y in 0..=k {
            type_group[layout.offset[r] + y as usize] = r;
            type_level[layout.offset[r] + y as usize] = y;
        }
    }
    let mut initial = vec![0u64; layout.num_types];
    let mut cache_group = vec![0usize; instance.num_caches()];
    for (r, g) in layout.groups.iter().enumerate() {
        for &c in g {
            cache_group[c] = r;
            let y = instance.caches()[c].capacity.to_u64().expect("checked by layout");
            initial[layout.offset[r] + y as usize] += 1;
        }
    }

    let user_groups: Vec<u64> = (0..instance.num_users())
        .map(|u| instance.user_neighbors(u).iter().fold(0u64, |m, &c| m | 1 << cache_group[c]))
        .collect();
    let mut per_content: Vec<Vec<(u64, G)>> = vec![Vec::new(); instance.num_contents()];
    for (u, gains) in scaled.user_gains::<G>().into_iter().enumerate() {
        for (s, g) in gains {
            per_content[s].push((user_groups[u], g));
        }
    }

    let mut states: StateSet<K::Key> = StateSet::default();
    states.insert(codec.encode(&initial));
    let mut values: Vec<G> = vec![G::zero()];
    let mut layers: Vec<FxHashMap<usize, (usize, Vec<usize>)>> = Vec::with_capacity(instance.num_contents());

    let mut key = vec![0u64; layout.num_types];
    let mut next = vec![0u64; layout.num_types];
    for (s, content) in instance.contents().iter().enumerate() {
        let mut changes = FxHashMap::default();
        let Some(size) = content.size.to_u64() else {
            layers.push(changes);
            continue;
        };
        let size = size as usize;
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
            // Usable levels of each group, and the groups that have one.
            let mut levels: Vec<Vec<usize>> = vec![Vec::new(); layout.groups.len()];
            let mut usable = 0u64;
            for (r, lv) in levels.iter_mut().enumerate() {
                let k = layout.group_capacity[r] as usize;
                lv.extend((size..=k).map(|y| layout.offset[r] + y).filter(|&t| key[t] > 0));
                if !lv.is_empty() {
                    usable |= 1 << r;
                }
            }
            for (group_mask, gain) in &moves {
                if group_mask & !usable != 0 {
                    continue;
                }
                let chosen_groups: Vec<usize> =
                    (0..layout.groups.len()).filter(|&r| group_mask >> r & 1 == 1).collect();
                let mut candidate = base.clone();
                candidate.add(gain);
                if !keeps(prune, &candidate, s + 1) {
                    continue;
                }
                // Every combination of one level per chosen group.
                let mut pick = vec![0usize; chosen_groups.len()];
                loop {
                    let chosen: Vec<usize> = chosen_groups.iter().zip(&pick).map(|(&r, &i)| levels[r][i]).collect();
                    next.copy_from_slice(&key);
                    for &t in &chosen {
                        next[t] -= 1;
                        next[t - size] += 1;
                    }
                    let (idx, inserted) = states.insert_full(codec.encode(&next));
                    if inserted {
                        values.push(candidate.clone());
                        changes.insert(idx, (st, chosen));
                    } else if candidate > values[idx] {
                        values[idx] = candidate.clone();
                        changes.insert(idx, (st, chosen));
                    }
                    let Some(i) = (0..pick.len()).find(|&i| pick[i] + 1 < levels[chosen_groups[i]].len()) else {
                        break;
                    };
                    pick[i] += 1;
                    pick[..i].iter_mut().for_each(|p| *p = 0);
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

    // Recover the chosen types per content, then replay forward assigning
    // each chosen type to its lowest-id cache currently at that level.
    let mut decisions: Vec<&[usize]> = vec![&[]; instance.num_contents()];
    let mut cur = best;
    for (s, changes) in layers.iter().enumerate().rev() {
        if let Some((pred, chosen)) = changes.get(&cur) {
            decisions[s] = chosen;
            cur = *pred;
        }
    }
    let mut remaining: Vec<u64> =
        instance.caches().iter().map(|c| c.capacity.to_u64().expect("checked by layout")).collect();
    let mut placement = vec![Vec::new(); instance.num_caches()];
    for (s, chosen) in decisions.iter().enumerate() {
        let size = instance.contents()[s].size.to_u64().unwrap_or(u64::MAX);
        let picks: Vec<usize> = chosen
            .iter()
            .map(|&t| {
                let r = type_group[t];
                *layout.groups[r]
                    .iter()
                    .find(|&&c| remaining[c] == type_level[t])
                    .expect("type counts track concrete caches")
            })
            .collect();
        for c in picks {
            remaining[c] -= size;
            placement[c].push(s);
        }
    }

    let n = states.len();
    (values.swap_remove(best), placement, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::*;
    use crate::model::{ratio, Allocation, Rational};

    #[test]
    fn small_fixtures() {
        let cfg = SolverConfig::default();
        let r = cache_type_dp(&ex3(), &cfg).unwrap();
        assert_eq!(r.optimum, ratio(2, 1));
        assert_eq!(r.witness, Allocation::new().with("c1", &["s2"]));
        let r = cache_type_dp(&ex1(), &cfg).unwrap();
        assert_eq!(r.optimum, ratio(3, 5));
        let r = cache_type_dp(&ex2(), &cfg).unwrap();
        assert_eq!(r.optimum, ratio(1, 1));
    }

    #[test]
    fn duplicate_caches_share_a_group() {
        let mut b = Instance::builder().content("s1", 1u32).content("s2", 1u32).content("s3", 1u32).user(
            "u1",
            Rational::one(),
            [("s1", ratio(1, 2)), ("s2", ratio(1, 3)), ("s3", ratio(1, 6))],
        );
        for c in ["a", "b", "c"] {
            b = b.cache(c, 1u32).edge(c, "u1");
        }
        let inst = b.build().unwrap();
        let layout = TypeLayout::new(&inst).unwrap();
        assert_eq!(layout.groups, vec![vec![0, 1, 2]]);
        assert_eq!(layout.num_types, 2);
        let r = cache_type_dp(&inst, &SolverConfig::default()).unwrap();
        assert_eq!(r.optimum, ratio(1, 1));
        assert!(inst.placement_is_feasible(&inst.placement_of(&r.witness).unwrap()));
    }
}
