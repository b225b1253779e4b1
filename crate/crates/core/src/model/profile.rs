use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;

use super::ids::Vertex;
use super::instance::Instance;

/// Default limit on `Σσ(s)` below which a heterogeneous instance counts as
/// unary-encoded.
pub const DEFAULT_UNARY_BUDGET: u64 = 1_000_000;

/// The structural parameters that drive solver selection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterProfile {
    pub caches: usize,
    pub users: usize,
    pub contents: usize,
    /// Largest cache capacity `K`.
    pub max_capacity: BigUint,
    /// Maximum degree `Δ` over both sides of the network.
    pub max_degree: usize,
    /// Largest request support `λ`.
    pub max_support: usize,
    pub total_size: BigUint,
    /// All content sizes are equal.
    pub homogeneous: bool,
    /// Size of the matching-based 2-approximate vertex cover.
    pub vc_upper: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    HomNc,
    HetNcUnary,
    HetNcBinary,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::HomNc => "HomNC",
            Variant::HetNcUnary => "HetNC-U",
            Variant::HetNcBinary => "HetNC-B",
        })
    }
}

pub fn parameter_profile(instance: &Instance) -> ParameterProfile {
    let cache_deg = (0..instance.num_caches()).map(|c| instance.cache_neighbors(c).len());
    let user_deg = (0..instance.num_users()).map(|u| instance.user_neighbors(u).len());
    ParameterProfile {
        caches: instance.num_caches(),
        users: instance.num_users(),
        contents: instance.num_contents(),
        max_capacity: instance.max_capacity(),
        max_degree: cache_deg.chain(user_deg).max().unwrap_or(0),
        max_support: instance.users().iter().map(|u| u.requests.len()).max().unwrap_or(0),
        total_size: instance.total_size().clone(),
        homogeneous: instance.has_uniform_sizes(),
        vc_upper: vertex_cover_2approx(instance).len(),
    }
}

/// HomNC when all sizes agree, HetNC-U while `Σσ ≤ unary_budget`, otherwise
/// HetNC-B.
pub fn classify(instance: &Instance, unary_budget: &BigUint) -> Variant {
    if instance.has_uniform_sizes() {
        Variant::HomNc
    } else if instance.total_size() <= unary_budget {
        Variant::HetNcUnary
    } else {
        Variant::HetNcBinary
    }
}

/// Both endpoints of a greedy maximal matching, scanning edges in
/// `(cache id, user id)` order. Covers every edge with at most twice the
/// optimum number of vertices.
pub fn vertex_cover_2approx(instance: &Instance) -> BTreeSet<Vertex> {
    let (cache_in, user_in) = vertex_cover_flags(instance);
    let caches = instance.caches().iter().zip(cache_in).filter(|(_, keep)| *keep);
    let users = instance.users().iter().zip(user_in).filter(|(_, keep)| *keep);
    caches.map(|(c, _)| Vertex::Cache(c.id.clone())).chain(users.map(|(u, _)| Vertex::User(u.id.clone()))).collect()
}

/// Index form of [`vertex_cover_2approx`]: membership flags for caches and
/// users.
pub fn vertex_cover_flags(instance: &Instance) -> (Vec<bool>, Vec<bool>) {
    let mut cache_used = vec![false; instance.num_caches()];
    let mut user_used = vec![false; instance.num_users()];
    for (c, u) in instance.edges() {
        if !cache_used[c] && !user_used[u] {
            cache_used[c] = true;
            user_used[u] = true;
        }
    }
    (cache_used, user_used)
}
