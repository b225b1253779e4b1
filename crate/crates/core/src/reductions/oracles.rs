//! Exhaustive solvers for the source problems, independent of the caching
//! code and meant for small instances only.

use num_bigint::BigUint;

use super::{BinPackingInstance, CnfFormula, KnapsackInstance, MaxKVcInstance, ReductionError};

/// Largest number of variables, items or vertices an oracle accepts.
pub const ORACLE_LIMIT: usize = 24;

fn guard(what: &'static str, size: usize) -> Result<(), ReductionError> {
    if size > ORACLE_LIMIT {
        return Err(ReductionError::TooLarge { what, size, limit: ORACLE_LIMIT });
    }
    Ok(())
}

fn assignments(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u32..1 << n).map(move |m| (0..n).map(|i| m >> i & 1 == 1).collect())
}

/// Is there an assignment leaving no clause with all literals equal?
pub fn nae_oracle(phi: &CnfFormula) -> Result<bool, ReductionError> {
    guard("variables", phi.num_vars())?;
    Ok(assignments(phi.num_vars()).any(|a| phi.nae_satisfied_by(&a)))
}

pub fn sat_oracle(phi: &CnfFormula) -> Result<bool, ReductionError> {
    guard("variables", phi.num_vars())?;
    Ok(assignments(phi.num_vars()).any(|a| phi.satisfied_by(&a)))
}

/// Can the items be split into the bins without overflow?
pub fn binpack_oracle(inst: &BinPackingInstance) -> Result<bool, ReductionError> {
    guard("items", inst.sizes.len())?;
    let mut sizes = inst.sizes.clone();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    let mut loads = vec![0u64; inst.bins.min(sizes.len()).max(1)];
    Ok(place(&sizes, &mut loads, inst.capacity))
}

fn place(items: &[u64], loads: &mut [u64], capacity: u64) -> bool {
    let Some((&first, rest)) = items.split_first() else { return true };
    for b in 0..loads.len() {
        // Bins with equal load are interchangeable; try only the first.
        if loads[..b].contains(&loads[b]) || loads[b] + first > capacity {
            continue;
        }
        loads[b] += first;
        let ok = place(rest, loads, capacity);
        loads[b] -= first;
        if ok {
            return true;
        }
    }
    false
}

/// Largest total value of a subset of items within the capacity.
pub fn knapsack_oracle(inst: &KnapsackInstance) -> Result<BigUint, ReductionError> {
    guard("items", inst.items.len())?;
    let mut best = BigUint::ZERO;
    subsets(&inst.items, &inst.capacity, BigUint::ZERO, &mut best);
    Ok(best)
}

fn subsets(items: &[(BigUint, BigUint)], room: &BigUint, value: BigUint, best: &mut BigUint) {
    let Some(((w, v), rest)) = items.split_first() else {
        if value > *best {
            *best = value;
        }
        return;
    };
    if w <= room {
        subsets(rest, &(room - w), &value + v, best);
    }
    subsets(rest, room, value, best);
}

/// Most edges touched by at most `k` vertices.
pub fn max_kvc_oracle(inst: &MaxKVcInstance) -> Result<usize, ReductionError> {
    let n = inst.num_vertices();
    guard("vertices", n)?;
    let edges: Vec<u32> = inst.edges().iter().map(|&(x, y)| 1 << x | 1 << y).collect();
    Ok((0u32..1 << n)
        .filter(|m| m.count_ones() as usize <= inst.k)
        .map(|m| edges.iter().filter(|&&e| e & m != 0).count())
        .max()
        .unwrap_or(0))
}
