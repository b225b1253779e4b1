use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::error::ModelError;
use super::ids::{CacheId, ContentId, UserId};
use super::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Content {
    pub id: ContentId,
    pub size: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cache {
    pub id: CacheId,
    pub capacity: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct User {
    pub id: UserId,
    pub weight: Rational,
    /// Positive request probabilities keyed by content index, ascending.
    pub requests: Vec<(usize, Rational)>,
}

impl User {
    pub fn probability(&self, content: usize) -> Option<&Rational> {
        self.requests.binary_search_by_key(&content, |(s, _)| *s).ok().map(|i| &self.requests[i].1)
    }
}

/// A validated Network-Caching instance.
///
/// Entities are stored sorted by id, so index order equals lexicographic id
/// order everywhere. Request maps hold only positive probabilities; each
/// user's distribution sums to exactly one. Capacities never exceed the
/// catalog's total size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    contents: Vec<Content>,
    caches: Vec<Cache>,
    users: Vec<User>,
    cache_users: Vec<Vec<usize>>,
    user_caches: Vec<Vec<usize>>,
    content_index: BTreeMap<ContentId, usize>,
    cache_index: BTreeMap<CacheId, usize>,
    user_index: BTreeMap<UserId, usize>,
    total_size: BigUint,
}

/// Unvalidated instance description. `build` checks every invariant and
/// produces an [`Instance`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InstanceBuilder {
    pub contents: Vec<(ContentId, BigUint)>,
    pub caches: Vec<(CacheId, BigUint)>,
    pub users: Vec<UserSpec>,
    pub edges: Vec<(CacheId, UserId)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UserSpec {
    pub id: UserId,
    pub weight: Rational,
    pub requests: Vec<(ContentId, Rational)>,
}

impl InstanceBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn content(mut self, id: impl Into<ContentId>, size: impl Into<BigUint>) -> Self {
        self.contents.push((id.into(), size.into()));
        self
    }

    pub fn cache(mut self, id: impl Into<CacheId>, capacity: impl Into<BigUint>) -> Self {
        self.caches.push((id.into(), capacity.into()));
        self
    }

    pub fn user<I, C>(mut self, id: impl Into<UserId>, weight: Rational, requests: I) -> Self
    where
        I: IntoIterator<Item = (C, Rational)>,
        C: Into<ContentId>,
    {
        self.users.push(UserSpec {
            id: id.into(),
            weight,
            requests: requests.into_iter().map(|(c, p)| (c.into(), p)).collect(),
        });
        self
    }

    pub fn edge(mut self, cache: impl Into<CacheId>, user: impl Into<UserId>) -> Self {
        self.edges.push((cache.into(), user.into()));
        self
    }

    pub fn build(self) -> Result<Instance, ModelError> {
        validate(self)
    }
}

/// Checks every instance invariant and normalizes the result.
///
/// Capacities larger than the catalog's total size are clamped down to it.
/// Zero-probability requests and duplicate edges are dropped.
pub fn validate(spec: InstanceBuilder) -> Result<Instance, ModelError> {
    let mut contents: Vec<Content> = Vec::with_capacity(spec.contents.len());
    for (id, size) in spec.contents {
        if size.is_zero() {
            return Err(ModelError::NonPositive { kind: "content size", id: id.to_string() });
        }
        contents.push(Content { id, size });
    }
    contents.sort_by(|a, b| a.id.cmp(&b.id));
    let content_index = index_of(contents.iter().map(|c| &c.id), "content")?;

    let total_size: BigUint = contents.iter().map(|c| &c.size).sum();
    let capacity_cap = if total_size.is_zero() { BigUint::one() } else { total_size.clone() };

    let mut caches: Vec<Cache> = Vec::with_capacity(spec.caches.len());
    for (id, capacity) in spec.caches {
        if capacity.is_zero() {
            return Err(ModelError::NonPositive { kind: "cache capacity", id: id.to_string() });
        }
        let capacity = capacity.min(capacity_cap.clone());
        caches.push(Cache { id, capacity });
    }
    caches.sort_by(|a, b| a.id.cmp(&b.id));
    let cache_index = index_of(caches.iter().map(|c| &c.id), "cache")?;

    let mut users: Vec<User> = Vec::with_capacity(spec.users.len());
    for u in spec.users {
        if !u.weight.is_positive() {
            return Err(ModelError::NonPositive { kind: "user weight", id: u.id.to_string() });
        }
        let mut requests: BTreeMap<usize, Rational> = BTreeMap::new();
        let mut total = Rational::zero();
        for (content, p) in u.requests {
            let &s = content_index.get(&content).ok_or_else(|| ModelError::DanglingId {
                kind: "content",
                id: content.to_string(),
                context: format!("requests of user {}", u.id),
            })?;
            if p.is_negative() {
                return Err(ModelError::BadDistribution {
                    user: u.id.to_string(),
                    reason: format!("negative probability {p} for content {content}"),
                });
            }
            total += &p;
            if requests.insert(s, p).is_some() {
                return Err(ModelError::DuplicateId { kind: "request", id: format!("{}:{}", u.id, content) });
            }
        }
        if total != Rational::one() {
            return Err(ModelError::BadDistribution {
                user: u.id.to_string(),
                reason: format!("probabilities sum to {total}, expected 1"),
            });
        }
        let requests = requests.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        users.push(User { id: u.id, weight: u.weight, requests });
    }
    users.sort_by(|a, b| a.id.cmp(&b.id));
    // Request keys were resolved before sorting users; content indices are
    // already final since contents were sorted first.
    let user_index = index_of(users.iter().map(|u| &u.id), "user")?;

    let mut edge_set: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (c, u) in spec.edges {
        let &ci = cache_index.get(&c).ok_or_else(|| ModelError::DanglingId {
            kind: "cache",
            id: c.to_string(),
            context: format!("edge ({c}, {u})"),
        })?;
        let &ui = user_index.get(&u).ok_or_else(|| ModelError::DanglingId {
            kind: "user",
            id: u.to_string(),
            context: format!("edge ({c}, {u})"),
        })?;
        edge_set.insert((ci, ui));
    }
    let mut cache_users = vec![Vec::new(); caches.len()];
    let mut user_caches = vec![Vec::new(); users.len()];
    for &(c, u) in &edge_set {
        cache_users[c].push(u);
        user_caches[u].push(c);
    }
    for list in user_caches.iter_mut() {
        list.sort_unstable();
    }

    Ok(Instance {
        contents,
        caches,
        users,
        cache_users,
        user_caches,
        content_index,
        cache_index,
        user_index,
        total_size,
    })
}

fn index_of<'a, K: Ord + Clone + std::fmt::Display + 'a>(
    ids: impl Iterator<Item = &'a K>,
    kind: &'static str,
) -> Result<BTreeMap<K, usize>, ModelError> {
    let mut map = BTreeMap::new();
    for (i, id) in ids.enumerate() {
        if map.insert(id.clone(), i).is_some() {
            return Err(ModelError::DuplicateId { kind, id: id.to_string() });
        }
    }
    Ok(map)
}

impl Instance {
    pub fn builder() -> InstanceBuilder {
        InstanceBuilder::new()
    }

    /// Inverse of `build`: a builder that reproduces this instance exactly.
    pub fn to_builder(&self) -> InstanceBuilder {
        InstanceBuilder {
            contents: self.contents.iter().map(|c| (c.id.clone(), c.size.clone())).collect(),
            caches: self.caches.iter().map(|c| (c.id.clone(), c.capacity.clone())).collect(),
            users: self
                .users
                .iter()
                .map(|u| UserSpec {
                    id: u.id.clone(),
                    weight: u.weight.clone(),
                    requests: u.requests.iter().map(|(s, p)| (self.contents[*s].id.clone(), p.clone())).collect(),
                })
                .collect(),
            edges: self.edges().map(|(c, u)| (self.caches[c].id.clone(), self.users[u].id.clone())).collect(),
        }
    }

    pub fn contents(&self) -> &[Content] {
        &self.contents
    }

    pub fn caches(&self) -> &[Cache] {
        &self.caches
    }

    pub fn users(&self) -> &[User] {
        &self.users
    }

    pub fn num_contents(&self) -> usize {
        self.contents.len()
    }

    pub fn num_caches(&self) -> usize {
        self.caches.len()
    }

    pub fn num_users(&self) -> usize {
        self.users.len()
    }

    /// Users served by cache `c`, ascending.
    pub fn cache_neighbors(&self, c: usize) -> &[usize] {
        &self.cache_users[c]
    }

    /// Caches reachable from user `u`, ascending.
    pub fn user_neighbors(&self, u: usize) -> &[usize] {
        &self.user_caches[u]
    }

    /// Edges as `(cache index, user index)` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cache_users.iter().enumerate().flat_map(|(c, us)| us.iter().map(move |&u| (c, u)))
    }

    pub fn num_edges(&self) -> usize {
        self.cache_users.iter().map(Vec::len).sum()
    }

    pub fn content_index(&self, id: &str) -> Option<usize> {
        self.content_index.get(id).copied()
    }

    pub fn cache_index(&self, id: &str) -> Option<usize> {
        self.cache_index.get(id).copied()
    }

    pub fn user_index(&self, id: &str) -> Option<usize> {
        self.user_index.get(id).copied()
    }

    pub fn total_size(&self) -> &BigUint {
        &self.total_size
    }

    pub fn max_capacity(&self) -> BigUint {
        self.caches.iter().map(|c| c.capacity.clone()).max().unwrap_or_default()
    }

    /// Sum of all user weights: the largest achievable hit rate.
    pub fn total_weight(&self) -> Rational {
        self.users.iter().map(|u| &u.weight).sum()
    }

    /// True when every content has the same size.
    pub fn has_uniform_sizes(&self) -> bool {
        self.contents.windows(2).all(|w| w[0].size == w[1].size)
    }

    /// True when every content has size exactly one (the homogeneous model).
    pub fn has_unit_sizes(&self) -> bool {
        self.contents.iter().all(|c| c.size.is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::*;
    use crate::model::ratio;

    #[test]
    fn fixtures_validate() {
        ex1();
        ex2();
        ex3();
    }

    #[test]
    fn rejects_distribution_not_summing_to_one() {
        let err = Instance::builder()
            .content("s1", 1u32)
            .content("s2", 1u32)
            .cache("c1", 1u32)
            .user("u1", Rational::one(), [("s1", ratio(3, 5)), ("s2", ratio(1, 2))])
            .edge("c1", "u1")
            .build()
            .unwrap_err();
        assert!(matches!(err, ModelError::BadDistribution { .. }), "{err:?}");
    }

    #[test]
    fn rejects_negative_probability() {
        let err = Instance::builder()
            .content("s1", 1u32)
            .content("s2", 1u32)
            .user("u1", Rational::one(), [("s1", ratio(3, 2)), ("s2", ratio(-1, 2))])
            .build()
            .unwrap_err();
        assert!(matches!(err, ModelError::BadDistribution { .. }));
    }

    #[test]
    fn clamps_oversized_capacity() {
        let inst = Instance::builder()
            .content("s1", 2u32)
            .content("s2", 1u32)
            .cache("c1", 100u32)
            .cache("c2", 1u32)
            .user("u1", Rational::one(), [("s1", ratio(1, 2)), ("s2", ratio(1, 2))])
            .edge("c1", "u1")
            .edge("c2", "u1")
            .build()
            .unwrap();
        assert_eq!(inst.caches()[0].capacity, BigUint::from(3u32));
    }

    #[test]
    fn rejects_dangling_ids() {
        let err = ex1().to_builder().edge("c9", "u1").build().unwrap_err();
        assert!(matches!(err, ModelError::DanglingId { kind: "cache", .. }));
        let err = ex1().to_builder().edge("c1", "u9").build().unwrap_err();
        assert!(matches!(err, ModelError::DanglingId { kind: "user", .. }));
        let err = Instance::builder().user("u1", Rational::one(), [("nope", Rational::one())]).build().unwrap_err();
        assert!(matches!(err, ModelError::DanglingId { kind: "content", .. }));
    }

    #[test]
    fn rejects_non_positive_values() {
        let err = Instance::builder().content("s1", 0u32).build().unwrap_err();
        assert!(matches!(err, ModelError::NonPositive { .. }));
        let err = Instance::builder().content("s1", 1u32).cache("c1", 0u32).build().unwrap_err();
        assert!(matches!(err, ModelError::NonPositive { .. }));
        let err = Instance::builder()
            .content("s1", 1u32)
            .user("u1", Rational::zero(), [("s1", Rational::one())])
            .build()
            .unwrap_err();
        assert!(matches!(err, ModelError::NonPositive { .. }));
    }

    #[test]
    fn rejects_duplicate_ids() {
        let err = ex1().to_builder().cache("c1", 1u32).build().unwrap_err();
        assert!(matches!(err, ModelError::DuplicateId { .. }));
    }

    #[test]
    fn drops_zero_probability_requests() {
        let inst = Instance::builder()
            .content("s1", 1u32)
            .content("s2", 1u32)
            .user("u1", Rational::one(), [("s1", Rational::one()), ("s2", Rational::zero())])
            .build()
            .unwrap();
        assert_eq!(inst.users()[0].requests.len(), 1);
    }

    #[test]
    fn builder_round_trip() {
        for inst in [ex1(), ex2(), ex3()] {
            assert_eq!(inst.to_builder().build().unwrap(), inst);
        }
    }
}
