use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use super::ReductionError;

/// A literal over 0-based variable indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, positive: false }
    }

    /// DIMACS convention: `+i` is `x_i`, `-i` is `¬x_i`, 1-based.
    pub fn from_dimacs(lit: i64) -> Option<Self> {
        (lit != 0).then(|| Literal { var: lit.unsigned_abs() as usize - 1, positive: lit > 0 })
    }

    pub fn value(self, assignment: &[bool]) -> bool {
        assignment[self.var] == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("~")?;
        }
        write!(f, "x{}", self.var + 1)
    }
}

/// A CNF formula. Clause shapes are not restricted here; each construction
/// checks the shape it needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<Literal>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self, ReductionError> {
        for (j, clause) in clauses.iter().enumerate() {
            if let Some(l) = clause.iter().find(|l| l.var >= num_vars) {
                return Err(ReductionError::InvalidFormula(format!(
                    "clause {} mentions variable {} but the formula has {num_vars}",
                    j + 1,
                    l.var + 1
                )));
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    /// Builds a formula from DIMACS-style signed 1-based literals.
    pub fn from_dimacs(num_vars: usize, clauses: &[&[i64]]) -> Result<Self, ReductionError> {
        let clauses = clauses
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&l| {
                        Literal::from_dimacs(l)
                            .ok_or_else(|| ReductionError::InvalidFormula("literal 0 inside a clause".into()))
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        CnfFormula::new(num_vars, clauses)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    /// Number of clauses each variable occurs in.
    pub fn occurrences(&self) -> Vec<usize> {
        let mut occ = vec![0; self.num_vars];
        for clause in &self.clauses {
            for l in clause {
                occ[l.var] += 1;
            }
        }
        occ
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        assignment.len() == self.num_vars && self.clauses.iter().all(|c| c.iter().any(|l| l.value(assignment)))
    }

    /// Every clause has a true literal and a false literal.
    pub fn nae_satisfied_by(&self, assignment: &[bool]) -> bool {
        assignment.len() == self.num_vars
            && self
                .clauses
                .iter()
                .all(|c| c.iter().any(|l| l.value(assignment)) && c.iter().any(|l| !l.value(assignment)))
    }

    /// Checks clause lengths and that no clause repeats a variable.
    pub(crate) fn check_clause_shapes(&self) -> Result<(), ReductionError> {
        for (j, clause) in self.clauses.iter().enumerate() {
            if !(2..=3).contains(&clause.len()) {
                return Err(ReductionError::InvalidFormula(format!(
                    "clause {} has {} literals (expected 2 or 3)",
                    j + 1,
                    clause.len()
                )));
            }
            let vars: BTreeSet<usize> = clause.iter().map(|l| l.var).collect();
            if vars.len() != clause.len() {
                return Err(ReductionError::InvalidFormula(format!("clause {} mentions a variable twice", j + 1)));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinPackingInstance {
    pub sizes: Vec<u64>,
    pub bins: usize,
    pub capacity: u64,
}

impl BinPackingInstance {
    pub fn new(sizes: Vec<u64>, bins: usize, capacity: u64) -> Result<Self, ReductionError> {
        if sizes.contains(&0) {
            return Err(ReductionError::InvalidInstance("item sizes must be positive".into()));
        }
        if bins == 0 || capacity == 0 {
            return Err(ReductionError::InvalidInstance("bin count and capacity must be positive".into()));
        }
        Ok(BinPackingInstance { sizes, bins, capacity })
    }

    /// `bin_of[i]` is the bin of item `i`. True iff every item is placed and
    /// no bin overflows.
    pub fn is_packing(&self, bin_of: &[Option<usize>]) -> bool {
        if bin_of.len() != self.sizes.len() {
            return false;
        }
        let mut load = vec![0u64; self.bins];
        for (i, b) in bin_of.iter().enumerate() {
            match b {
                Some(b) if *b < self.bins => load[*b] += self.sizes[i],
                _ => return false,
            }
        }
        load.iter().all(|&l| l <= self.capacity)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnapsackInstance {
    pub capacity: BigUint,
    /// `(weight, value)` per item.
    pub items: Vec<(BigUint, BigUint)>,
    pub target: BigUint,
}

impl KnapsackInstance {
    pub fn new(
        capacity: impl Into<BigUint>,
        items: Vec<(BigUint, BigUint)>,
        target: impl Into<BigUint>,
    ) -> Result<Self, ReductionError> {
        let capacity = capacity.into();
        let target = target.into();
        if capacity.is_zero() || target.is_zero() {
            return Err(ReductionError::InvalidInstance("capacity and target must be positive".into()));
        }
        if items.iter().any(|(w, v)| w.is_zero() || v.is_zero()) {
            return Err(ReductionError::InvalidInstance("item weights and values must be positive".into()));
        }
        Ok(KnapsackInstance { capacity, items, target })
    }

    /// Convenience constructor for small integer data.
    pub fn from_u64(capacity: u64, items: &[(u64, u64)], target: u64) -> Result<Self, ReductionError> {
        let items = items.iter().map(|&(w, v)| (BigUint::from(w), BigUint::from(v))).collect();
        KnapsackInstance::new(capacity, items, target)
    }

    pub fn total_value(&self) -> BigUint {
        self.items.iter().map(|(_, v)| v).sum()
    }

    /// Total value of a set of distinct item indices, or `None` when the set
    /// is malformed or exceeds the capacity.
    pub fn value_of(&self, chosen: &[usize]) -> Option<BigUint> {
        let set: BTreeSet<usize> = chosen.iter().copied().collect();
        if set.len() != chosen.len() || set.iter().any(|&i| i >= self.items.len()) {
            return None;
        }
        let weight: BigUint = set.iter().map(|&i| &self.items[i].0).sum();
        (weight <= self.capacity).then(|| set.iter().map(|&i| &self.items[i].1).sum())
    }
}

/// Maximum k-vertex-cover: is there a set of at most `k` vertices touching
/// at least `t` edges? Vertices are `0..num_vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxKVcInstance {
    num_vertices: usize,
    /// Sorted, each as `(x, y)` with `x < y`.
    edges: Vec<(usize, usize)>,
    pub k: usize,
    pub t: usize,
}

impl MaxKVcInstance {
    pub fn new(num_vertices: usize, edges: &[(usize, usize)], k: usize, t: usize) -> Result<Self, ReductionError> {
        let mut set = BTreeSet::new();
        for &(x, y) in edges {
            if x == y || x >= num_vertices || y >= num_vertices {
                return Err(ReductionError::InvalidInstance(format!(
                    "edge ({}, {}) is a loop or leaves the vertex range 1..={num_vertices}",
                    x + 1,
                    y + 1
                )));
            }
            if !set.insert((x.min(y), x.max(y))) {
                return Err(ReductionError::InvalidInstance(format!("duplicate edge ({}, {})", x + 1, y + 1)));
            }
        }
        if k == 0 || k > num_vertices {
            return Err(ReductionError::InvalidInstance(format!("k = {k} must lie in 1..={num_vertices}")));
        }
        if t > set.len() {
            return Err(ReductionError::InvalidInstance(format!("t = {t} exceeds the {} edges", set.len())));
        }
        Ok(MaxKVcInstance { num_vertices, edges: set.into_iter().collect(), k, t })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_vertices];
        for &(x, y) in &self.edges {
            adj[x].push(y);
            adj[y].push(x);
        }
        adj
    }

    /// Edges touched by `chosen`, or `None` when it has more than `k`
    /// vertices or names one outside the graph.
    pub fn covered_edges(&self, chosen: &[usize]) -> Option<usize> {
        let set: BTreeSet<usize> = chosen.iter().copied().collect();
        if set.len() > self.k || set.iter().any(|&v| v >= self.num_vertices) {
            return None;
        }
        Some(self.edges.iter().filter(|(x, y)| set.contains(x) || set.contains(y)).count())
    }
}
