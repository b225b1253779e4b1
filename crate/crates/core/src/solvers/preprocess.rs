//! Optimum-preserving reductions on the cache side.
//!
//! Both keep cache ids stable: surviving caches retain their original id, so
//! witnesses of the reduced instance lift back by id.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;

use super::SolveError;
use crate::model::{Allocation, CacheId, Instance};

/// Caches grouped by identical user neighborhood, groups in order of their
/// lowest cache index and caches ascending within each group.
pub(crate) fn neighborhood_groups(instance: &Instance) -> Vec<Vec<usize>> {
    let mut index: HashMap<&[usize], usize> = HashMap::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for c in 0..instance.num_caches() {
        let r = *index.entry(instance.cache_neighbors(c)).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[r].push(c);
    }
    groups
}

/// Instance with at most `S` caches per neighborhood.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dedup {
    pub instance: Instance,
    /// Every original cache mapped to itself if kept, `None` if deleted.
    pub cache_map: BTreeMap<CacheId, Option<CacheId>>,
}

impl Dedup {
    /// Witness on the original instance. Deleted caches store nothing.
    pub fn lift(&self, z: &Allocation) -> Allocation {
        z.restricted(|c| matches!(self.cache_map.get(c), Some(Some(_))))
    }
}

/// Keeps the `S` largest caches of every neighborhood group, ties broken by
/// id. A content stored twice in one group adds nothing, so an optimal
/// allocation never needs more than `S` caches of a group, and the largest
/// ones can hold whatever smaller ones could.
pub fn dedup_same_neighborhood_caches(instance: &Instance) -> Dedup {
    let keep_per_group = instance.num_contents();
    let mut keep = vec![false; instance.num_caches()];
    for mut group in neighborhood_groups(instance) {
        // Stable sort keeps id order among equal capacities.
        group.sort_by(|&a, &b| instance.caches()[b].capacity.cmp(&instance.caches()[a].capacity));
        for &c in group.iter().take(keep_per_group) {
            keep[c] = true;
        }
    }

    let mut builder = instance.to_builder();
    builder.caches.retain(|(id, _)| keep[instance.cache_index(id.as_str()).expect("own id")]);
    builder.edges.retain(|(c, _)| keep[instance.cache_index(c.as_str()).expect("own id")]);
    let reduced = builder.build().expect("subinstance of a valid instance");
    let cache_map = instance
        .caches()
        .iter()
        .enumerate()
        .map(|(c, cache)| (cache.id.clone(), keep[c].then(|| cache.id.clone())))
        .collect();
    Dedup { instance: reduced, cache_map }
}

/// Instance with one cache per neighborhood, capacities summed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Amalgamation {
    pub instance: Instance,
    /// Every original cache mapped to the representative of its group.
    pub cache_map: BTreeMap<CacheId, CacheId>,
    /// Representative, then the original group members with capacities,
    /// ascending by id.
    groups: Vec<(CacheId, Vec<(CacheId, BigUint)>)>,
}

impl Amalgamation {
    /// Distributes each representative's contents over its original group in
    /// id order, filling each cache before moving to the next. Sizes are all
    /// one, so any store of at most the summed capacity fits.
    pub fn lift(&self, z: &Allocation) -> Allocation {
        let mut lifted = Allocation::new();
        for (rep, members) in &self.groups {
            let Some(store) = z.get(rep.as_str()) else { continue };
            let mut contents = store.iter();
            'members: for (cache, capacity) in members {
                let mut used = BigUint::ZERO;
                while &used < capacity {
                    let Some(s) = contents.next() else { break 'members };
                    lifted.insert(cache.clone(), s.clone());
                    used += 1u32;
                }
            }
            debug_assert!(contents.next().is_none(), "store exceeds group capacity");
        }
        lifted
    }
}

/// Merges every neighborhood group into its lowest-id cache. Requires unit
/// sizes: with unit sizes a group behaves exactly like one cache of the
/// combined capacity.
pub fn amalgamate_caches_homnc(instance: &Instance) -> Result<Amalgamation, SolveError> {
    if !instance.has_unit_sizes() {
        return Err(SolveError::NotHomogeneous);
    }
    let groups = neighborhood_groups(instance);
    let mut builder = instance.to_builder();
    let mut cache_map = BTreeMap::new();
    let mut lift_groups = Vec::with_capacity(groups.len());
    let mut capacity = BTreeMap::new();
    for group in &groups {
        let rep = instance.caches()[group[0]].id.clone();
        let members: Vec<(CacheId, BigUint)> =
            group.iter().map(|&c| (instance.caches()[c].id.clone(), instance.caches()[c].capacity.clone())).collect();
        let total: BigUint = members.iter().map(|(_, k)| k).sum();
        capacity.insert(rep.clone(), total);
        for (id, _) in &members {
            cache_map.insert(id.clone(), rep.clone());
        }
        lift_groups.push((rep, members));
    }
    builder.caches = builder.caches.into_iter().filter_map(|(id, _)| capacity.remove(&id).map(|k| (id, k))).collect();
    builder.edges.retain(|(c, _)| cache_map.get(c) == Some(c));
    // Validation clamps the summed capacities to the catalog size.
    let reduced = builder.build().expect("subinstance of a valid instance");
    Ok(Amalgamation { instance: reduced, cache_map, groups: lift_groups })
}
