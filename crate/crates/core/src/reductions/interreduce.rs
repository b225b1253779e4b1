//! Optimum-preserving transformations of unit-size instances that trade one
//! structural parameter for another.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::ReductionError;
use crate::model::{vertex_cover_flags, CacheId, ContentId, Instance, InstanceBuilder, Rational, UserId, UserSpec};
use crate::solvers::amalgamate_caches_homnc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    /// Merge caches with equal neighborhoods: at most `2^U` caches.
    MergeCaches = 1,
    /// Merge users with equal neighborhoods: at most `2^C` users.
    MergeUsers = 2,
    /// Split every cache into unit-capacity copies: `K = 1`.
    UnitCapacities = 3,
    /// Split every user into one user per requested content: `λ = 1`.
    SingleRequests = 4,
    /// Merge equal-neighborhood users and caches outside a 2-approximate
    /// vertex cover `X`.
    OutsideCover = 5,
}

impl TryFrom<u8> for Case {
    type Error = ReductionError;

    fn try_from(n: u8) -> Result<Self, Self::Error> {
        Ok(match n {
            1 => Case::MergeCaches,
            2 => Case::MergeUsers,
            3 => Case::UnitCapacities,
            4 => Case::SingleRequests,
            5 => Case::OutsideCover,
            other => return Err(ReductionError::InvalidCase(other)),
        })
    }
}

pub fn interreduce(instance: &Instance, case: Case) -> Result<Instance, ReductionError> {
    if !instance.has_unit_sizes() {
        return Err(ReductionError::NotHomogeneous);
    }
    let all_users = vec![true; instance.num_users()];
    match case {
        Case::MergeCaches => {
            Ok(amalgamate_caches_homnc(instance).map_err(|_| ReductionError::NotHomogeneous)?.instance)
        }
        Case::MergeUsers => rebuild(merge_users(instance, instance.to_builder(), &all_users)),
        Case::UnitCapacities => rebuild(unit_capacities(instance)),
        Case::SingleRequests => rebuild(single_requests(instance)),
        Case::OutsideCover => {
            let (cache_in_x, user_in_x) = vertex_cover_flags(instance);
            let outside = |flags: Vec<bool>| flags.into_iter().map(|x| !x).collect::<Vec<_>>();
            let builder = merge_users(instance, instance.to_builder(), &outside(user_in_x));
            let builder = merge_caches(instance, builder, &outside(cache_in_x));
            rebuild(builder)
        }
    }
}

fn rebuild(builder: InstanceBuilder) -> Result<Instance, ReductionError> {
    builder.build().map_err(|e| ReductionError::InvalidInstance(e.to_string()))
}

/// Groups of eligible vertices with equal neighborhoods, in index order.
fn groups<'a>(neighbors: impl Iterator<Item = &'a [usize]>, eligible: &[bool]) -> Vec<Vec<usize>> {
    let mut index: HashMap<&[usize], usize> = HashMap::new();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (v, nb) in neighbors.enumerate() {
        if !eligible[v] {
            continue;
        }
        let g = *index.entry(nb).or_insert_with(|| {
            out.push(Vec::new());
            out.len() - 1
        });
        out[g].push(v);
    }
    out
}

/// Each group becomes its lowest-id member with the summed weight and the
/// weight-averaged request distribution.
fn merge_users(instance: &Instance, mut builder: InstanceBuilder, eligible: &[bool]) -> InstanceBuilder {
    let users = instance.users();
    let mut replaced: BTreeMap<UserId, UserSpec> = BTreeMap::new();
    let mut removed: BTreeSet<UserId> = BTreeSet::new();
    for group in groups((0..users.len()).map(|u| instance.user_neighbors(u)), eligible) {
        if group.len() < 2 {
            continue;
        }
        let weight: Rational = group.iter().map(|&u| &users[u].weight).sum();
        let mut mass: BTreeMap<usize, Rational> = BTreeMap::new();
        for &u in &group {
            for (s, p) in &users[u].requests {
                *mass.entry(*s).or_insert_with(Rational::zero) += &users[u].weight * p;
            }
        }
        let rep = users[group[0]].id.clone();
        let requests = mass.into_iter().map(|(s, m)| (instance.contents()[s].id.clone(), m / &weight)).collect();
        replaced.insert(rep.clone(), UserSpec { id: rep, weight, requests });
        removed.extend(group[1..].iter().map(|&u| users[u].id.clone()));
    }
    builder.users.retain(|u| !removed.contains(&u.id));
    for spec in builder.users.iter_mut() {
        if let Some(merged) = replaced.remove(&spec.id) {
            *spec = merged;
        }
    }
    builder.edges.retain(|(_, u)| !removed.contains(u));
    builder
}

/// Each group becomes its lowest-id member with the summed capacity.
fn merge_caches(instance: &Instance, mut builder: InstanceBuilder, eligible: &[bool]) -> InstanceBuilder {
    let caches = instance.caches();
    let mut capacity: BTreeMap<CacheId, BigUint> = BTreeMap::new();
    let mut removed: BTreeSet<CacheId> = BTreeSet::new();
    for group in groups((0..caches.len()).map(|c| instance.cache_neighbors(c)), eligible) {
        if group.len() < 2 {
            continue;
        }
        capacity.insert(caches[group[0]].id.clone(), group.iter().map(|&c| &caches[c].capacity).sum());
        removed.extend(group[1..].iter().map(|&c| caches[c].id.clone()));
    }
    builder.caches.retain(|(c, _)| !removed.contains(c));
    for (c, k) in builder.caches.iter_mut() {
        if let Some(total) = capacity.remove(c) {
            *k = total;
        }
    }
    builder.edges.retain(|(c, _)| !removed.contains(c));
    builder
}

/// Cache `c` of capacity `κ` becomes `c.1`, …, `c.κ`, each of capacity 1.
fn unit_capacities(instance: &Instance) -> InstanceBuilder {
    let mut builder = instance.to_builder();
    builder.caches.clear();
    builder.edges.clear();
    for (c, cache) in instance.caches().iter().enumerate() {
        let copies = cache.capacity.to_u64().expect("capacity is at most the catalog size");
        for j in 1..=copies {
            let id = CacheId::new(format!("{}.{j}", cache.id));
            builder.caches.push((id.clone(), BigUint::from(1u32)));
            for &u in instance.cache_neighbors(c) {
                builder.edges.push((id.clone(), instance.users()[u].id.clone()));
            }
        }
    }
    builder
}

/// User `u` becomes `u:s` for every requested `s`, with weight `w(u)·p_us`
/// and `p = 1`, keeping the neighborhood of `u`.
fn single_requests(instance: &Instance) -> InstanceBuilder {
    let mut builder = instance.to_builder();
    builder.users.clear();
    builder.edges.clear();
    for (u, user) in instance.users().iter().enumerate() {
        for (s, p) in &user.requests {
            let content: &ContentId = &instance.contents()[*s].id;
            let id = UserId::new(format!("{}:{}", user.id, content));
            builder.users.push(UserSpec {
                id: id.clone(),
                weight: &user.weight * p,
                requests: vec![(content.clone(), Rational::one())],
            });
            for &c in instance.user_neighbors(u) {
                builder.edges.push((instance.caches()[c].id.clone(), id.clone()));
            }
        }
    }
    builder
}
