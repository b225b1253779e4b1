//! Seeded random instances for tests, benchmarks and the verify harness.
//!
//! Every generator takes the RNG explicitly; [`rng`] builds the ChaCha8
//! stream used throughout, so a seed fully determines the output.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{Instance, Rational};
use crate::reductions::{BinPackingInstance, CnfFormula, KnapsackInstance, Literal, MaxKVcInstance};

/// Largest denominator used for request probabilities.
pub const MAX_DENOMINATOR: u64 = 12;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Size limits for [`random_instance`]. Counts are drawn uniformly from
/// `1..=max`; sizes and capacities from `1..=max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InstanceCaps {
    pub caches: usize,
    pub users: usize,
    pub contents: usize,
    pub size: u64,
    pub capacity: u64,
    /// Force every content size to 1.
    pub unit_sizes: bool,
}

impl Default for InstanceCaps {
    fn default() -> Self {
        InstanceCaps { caches: 3, users: 4, contents: 5, size: 3, capacity: 4, unit_sizes: false }
    }
}

pub fn random_instance(rng: &mut impl Rng, caps: &InstanceCaps) -> Instance {
    let shape = Shape {
        caches: rng.random_range(1..=caps.caches.max(1)),
        users: rng.random_range(1..=caps.users.max(1)),
        contents: rng.random_range(1..=caps.contents.max(1)),
        size: if caps.unit_sizes { 1 } else { caps.size.max(1) },
        capacity: Capacity::Random(caps.capacity.max(1)),
    };
    shape.build(rng)
}

/// How cache capacities are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Capacity {
    Fixed(u64),
    Random(u64),
}

/// Exact counts for one generated instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Shape {
    caches: usize,
    users: usize,
    contents: usize,
    size: u64,
    capacity: Capacity,
}

impl Shape {
    fn build(&self, rng: &mut impl Rng) -> Instance {
        let mut b = Instance::builder();
        for s in 1..=self.contents {
            b = b.content(format!("s{s}"), rng.random_range(1..=self.size));
        }
        for c in 1..=self.caches {
            let k = match self.capacity {
                Capacity::Fixed(k) => k,
                Capacity::Random(max) => rng.random_range(1..=max),
            };
            b = b.cache(format!("c{c}"), k);
        }
        for u in 1..=self.users {
            let weight = Rational::new(rng.random_range(1..=6u64), rng.random_range(1..=3u64));
            let requests = random_distribution(rng, self.contents);
            b = b.user(format!("u{u}"), weight, requests);
            for c in 1..=self.caches {
                if rng.random_bool(0.5) {
                    b = b.edge(format!("c{c}"), format!("u{u}"));
                }
            }
        }
        b.build().expect("generated instances are valid")
    }
}

/// A distribution over a random nonempty subset of `s1..=s{n}` with every
/// denominator at most [`MAX_DENOMINATOR`].
fn random_distribution(rng: &mut impl Rng, n: usize) -> Vec<(String, Rational)> {
    let mut ids: Vec<usize> = (1..=n).collect();
    ids.shuffle(rng);
    let support = rng.random_range(1..=n.min(MAX_DENOMINATOR as usize));
    ids.truncate(support);
    ids.sort_unstable();
    let denom = rng.random_range(support as u64..=MAX_DENOMINATOR);
    // Split `denom` units into `support` positive parts.
    let mut cuts: Vec<u64> = (1..denom).collect();
    cuts.shuffle(rng);
    cuts.truncate(support - 1);
    cuts.sort_unstable();
    cuts.push(denom);
    let mut prev = 0;
    ids.into_iter()
        .zip(cuts)
        .map(|(s, cut)| {
            let p = Rational::new(cut - prev, denom);
            prev = cut;
            (format!("s{s}"), p)
        })
        .collect()
}

/// Parsed form of a generator string such as
/// `gen:C=2,U=40,S=120,cap=60,homogeneous,seed=7`.
///
/// Keys: `C`, `U`, `S` (exact counts), `cap` (every capacity), `maxcap`
/// (capacities drawn from `1..=maxcap`), `size` (sizes drawn from
/// `1..=size`), `homogeneous` (unit sizes) and `seed`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub caches: usize,
    pub users: usize,
    pub contents: usize,
    pub capacity: Capacity,
    pub size: u64,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn generate(&self) -> Instance {
        let shape = Shape {
            caches: self.caches,
            users: self.users,
            contents: self.contents,
            size: self.size,
            capacity: self.capacity,
        };
        shape.build(&mut rng(self.seed))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpecError(String);

impl fmt::Display for GeneratorSpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bad generator spec: {}", self.0)
    }
}

impl std::error::Error for GeneratorSpecError {}

impl FromStr for GeneratorSpec {
    type Err = GeneratorSpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |m: String| GeneratorSpecError(m);
        let body = s.strip_prefix("gen:").ok_or_else(|| err("expected a `gen:` prefix".into()))?;
        let mut spec =
            GeneratorSpec { caches: 2, users: 2, contents: 2, capacity: Capacity::Random(2), size: 1, seed: 0 };
        for part in body.split(',').filter(|p| !p.is_empty()) {
            if part == "homogeneous" {
                spec.size = 1;
                continue;
            }
            let (key, value) = part.split_once('=').ok_or_else(|| err(format!("`{part}` is not key=value")))?;
            let num: u64 = value.parse().map_err(|_| err(format!("`{value}` is not a non-negative integer")))?;
            match key {
                "C" => spec.caches = num as usize,
                "U" => spec.users = num as usize,
                "S" => spec.contents = num as usize,
                "cap" | "maxcap" | "size" if num == 0 => return Err(err(format!("`{key}` must be positive"))),
                "cap" => spec.capacity = Capacity::Fixed(num),
                "maxcap" => spec.capacity = Capacity::Random(num),
                "size" => spec.size = num,
                "seed" => spec.seed = num,
                _ => return Err(err(format!("unknown key `{key}`"))),
            }
        }
        if spec.contents == 0 && spec.users > 0 {
            return Err(err("users need at least one content".into()));
        }
        Ok(spec)
    }
}

/// A monotone formula with clauses of 2 or 3 distinct variables, each
/// variable in at most 3 clauses. May stop short of `clauses` when no
/// variable has occurrences left.
pub fn random_monotone_formula(rng: &mut impl Rng, vars: usize, clauses: usize) -> CnfFormula {
    let mut occ = vec![0usize; vars];
    let mut out = Vec::new();
    for _ in 0..clauses {
        let mut free: Vec<usize> = (0..vars).filter(|&v| occ[v] < 3).collect();
        if free.len() < 2 {
            break;
        }
        free.shuffle(rng);
        let len = rng.random_range(2..=free.len().min(3));
        let mut clause: Vec<Literal> = free[..len].iter().map(|&v| Literal::pos(v)).collect();
        clause.sort();
        for l in &clause {
            occ[l.var] += 1;
        }
        out.push(clause);
    }
    CnfFormula::new(vars, out).expect("indices in range")
}

/// A formula in which every variable occurs in exactly 3 clauses of 2 or 3
/// distinct variables, with random polarities. Needs `vars >= 2`.
pub fn random_e3_formula(rng: &mut impl Rng, vars: usize) -> CnfFormula {
    assert!(vars >= 2, "exactly-3 formulas need at least two variables");
    loop {
        let mut slots: Vec<usize> = (0..vars).flat_map(|v| [v; 3]).collect();
        slots.shuffle(rng);
        let mut clauses = Vec::new();
        let mut rest = &slots[..];
        let mut ok = true;
        while !rest.is_empty() {
            let len = match rest.len() {
                2 | 3 => rest.len(),
                4 => 2,
                _ if vars == 2 => 2,
                _ => rng.random_range(2..=3),
            };
            let (head, tail) = rest.split_at(len);
            let mut vs = head.to_vec();
            vs.sort_unstable();
            vs.dedup();
            if vs.len() != len {
                ok = false;
                break;
            }
            clauses.push(head.iter().map(|&v| Literal { var: v, positive: rng.random_bool(0.5) }).collect());
            rest = tail;
        }
        if ok {
            return CnfFormula::new(vars, clauses).expect("indices in range");
        }
    }
}

pub fn random_bin_packing(rng: &mut impl Rng, items: usize, max_capacity: u64) -> BinPackingInstance {
    let capacity = rng.random_range(1..=max_capacity.max(1));
    let n = rng.random_range(1..=items.max(1));
    let sizes = (0..n).map(|_| rng.random_range(1..=capacity)).collect();
    let bins = rng.random_range(1..=3usize);
    BinPackingInstance::new(sizes, bins, capacity).expect("positive data")
}

/// Weights up to `max_weight`, or around `2^40` when `wide`; the capacity
/// is a random fraction of the total weight and the target a random
/// fraction of the total value.
pub fn random_knapsack(
    rng: &mut impl Rng,
    items: usize,
    max_weight: u64,
    max_value: u64,
    wide: bool,
) -> KnapsackInstance {
    let n = rng.random_range(1..=items.max(1));
    let items: Vec<(BigUint, BigUint)> = (0..n)
        .map(|_| {
            let w =
                if wide { (1u64 << 40) + rng.random_range(0..1u64 << 39) } else { rng.random_range(1..=max_weight) };
            (BigUint::from(w), BigUint::from(rng.random_range(1..=max_value)))
        })
        .collect();
    let total_w: BigUint = items.iter().map(|(w, _)| w).sum();
    let total_v: u64 = items.iter().map(|(_, v)| u64::try_from(v).expect("small values")).sum();
    let capacity = (total_w * rng.random_range(1..=9u32) / 10u32).max(BigUint::from(1u32));
    let target = rng.random_range(1..=total_v);
    KnapsackInstance::new(capacity, items, target).expect("positive data")
}

/// `G(n, 1/2)` with `k` and `t` drawn from their valid ranges.
pub fn random_max_kvc(rng: &mut impl Rng, vertices: usize, max_k: usize) -> MaxKVcInstance {
    let n = vertices.max(1);
    let mut edges = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if rng.random_bool(0.5) {
                edges.push((x, y));
            }
        }
    }
    let k = rng.random_range(1..=max_k.clamp(1, n));
    let t = rng.random_range(0..=edges.len());
    MaxKVcInstance::new(n, &edges, k, t).expect("simple graph")
}
