use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;

use super::error::ModelError;
use super::ids::{CacheId, ContentId};
use super::instance::Instance;
use super::rational::Rational;

/// A caching allocation: which contents each cache stores.
///
/// Caches with an empty store are not kept in the map, so two allocations
/// are equal exactly when every cache stores the same set. The derived
/// ordering is lexicographic over `(cache id, content set)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Allocation {
    store: BTreeMap<CacheId, BTreeSet<ContentId>>,
}

impl Allocation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, cache: impl Into<CacheId>, content: impl Into<ContentId>) {
        self.store.entry(cache.into()).or_default().insert(content.into());
    }

    pub fn with(mut self, cache: impl Into<CacheId>, contents: &[&str]) -> Self {
        let cache = cache.into();
        for &s in contents {
            self.insert(cache.clone(), s);
        }
        self
    }

    pub fn set(&mut self, cache: impl Into<CacheId>, contents: BTreeSet<ContentId>) {
        let cache = cache.into();
        if contents.is_empty() {
            self.store.remove(&cache);
        } else {
            self.store.insert(cache, contents);
        }
    }

    pub fn get(&self, cache: &str) -> Option<&BTreeSet<ContentId>> {
        self.store.get(cache)
    }

    pub fn stores(&self, cache: &str, content: &str) -> bool {
        self.store.get(cache).is_some_and(|s| s.contains(content))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CacheId, &BTreeSet<ContentId>)> {
        self.store.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.store.is_empty()
    }

    /// Copy without the stores of caches for which `keep` is false.
    pub fn restricted(&self, mut keep: impl FnMut(&CacheId) -> bool) -> Allocation {
        Allocation { store: self.store.iter().filter(|(c, _)| keep(c)).map(|(c, s)| (c.clone(), s.clone())).collect() }
    }
}

/// Index-level allocation: for every cache index, the stored content
/// indices (ascending).
pub type Placement = Vec<Vec<usize>>;

impl Instance {
    pub fn allocation_from_placement(&self, placement: &[Vec<usize>]) -> Allocation {
        let mut z = Allocation::new();
        for (c, contents) in placement.iter().enumerate() {
            for &s in contents {
                z.insert(self.caches()[c].id.clone(), self.contents()[s].id.clone());
            }
        }
        z
    }

    /// Resolves an allocation to indices, failing on unknown ids.
    pub fn placement_of(&self, z: &Allocation) -> Result<Placement, ModelError> {
        let mut placement = vec![Vec::new(); self.num_caches()];
        for (cache, contents) in z.iter() {
            let c = self.cache_index(cache.as_str()).ok_or_else(|| ModelError::UnknownCache(cache.to_string()))?;
            for s in contents {
                let s = self.content_index(s.as_str()).ok_or_else(|| ModelError::UnknownContent(s.to_string()))?;
                placement[c].push(s);
            }
            placement[c].sort_unstable();
        }
        Ok(placement)
    }

    /// Hit rate of an index-level placement.
    pub fn placement_hit_rate(&self, placement: &[Vec<usize>]) -> Rational {
        let mut total = Rational::zero();
        let mut hit = vec![false; self.num_contents()];
        for (u, user) in self.users().iter().enumerate() {
            hit.iter_mut().for_each(|h| *h = false);
            for &c in self.user_neighbors(u) {
                for &s in &placement[c] {
                    hit[s] = true;
                }
            }
            let gained: Rational = user.requests.iter().filter(|(s, _)| hit[*s]).map(|(_, p)| p).sum();
            if !gained.is_zero() {
                total += &user.weight * &gained;
            }
        }
        total
    }

    pub fn placement_is_feasible(&self, placement: &[Vec<usize>]) -> bool {
        placement.iter().enumerate().all(|(c, contents)| {
            let used: BigUint = contents.iter().map(|&s| &self.contents()[s].size).sum();
            used <= self.caches()[c].capacity
        })
    }
}

/// `H(u)`: contents stored in at least one cache adjacent to `user`.
pub fn hit_set(instance: &Instance, z: &Allocation, user: &str) -> Result<BTreeSet<ContentId>, ModelError> {
    let u = instance.user_index(user).ok_or_else(|| ModelError::UnknownUser(user.to_string()))?;
    let placement = instance.placement_of(z)?;
    Ok(instance
        .user_neighbors(u)
        .iter()
        .flat_map(|&c| placement[c].iter())
        .map(|&s| instance.contents()[s].id.clone())
        .collect())
}

/// `CH(Z) = Σ_u Σ_{s ∈ H(u)} w(u)·p_us`, exactly.
pub fn cache_hit_rate(instance: &Instance, z: &Allocation) -> Result<Rational, ModelError> {
    let placement = instance.placement_of(z)?;
    Ok(instance.placement_hit_rate(&placement))
}

/// True iff no cache stores more than its capacity.
pub fn is_feasible(instance: &Instance, z: &Allocation) -> Result<bool, ModelError> {
    let placement = instance.placement_of(z)?;
    Ok(instance.placement_is_feasible(&placement))
}
