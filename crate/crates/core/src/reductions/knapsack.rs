use num_bigint::BigInt;

use super::{BackMap, KnapsackInstance, ReductionError, ReductionOutput};
use crate::model::{Allocation, Instance, Rational};

pub const KNAPSACK_CACHE: &str = "knapsack";

/// Item `i` is content `s{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnapsackBackMap {
    contents: Vec<String>,
}

impl BackMap for KnapsackBackMap {
    /// Indices of the chosen items, ascending.
    type Witness = Vec<usize>;

    fn translate(&self, z: &Allocation) -> Vec<usize> {
        (0..self.contents.len()).filter(|&i| z.stores(KNAPSACK_CACHE, &self.contents[i])).collect()
    }
}

/// A single cache of capacity `W` and one content per item of size `w_i`.
/// Values are normalized by `V = Σv`: either one weight-1 user requests item
/// `i` with probability `v_i / V`, or (split) each item has its own user of
/// weight `v_i / V` requesting it with `p = 1`. Either way a stored set is
/// worth its total value over `V`, and `ℓ = t / V`.
pub fn from_knapsack(
    inst: &KnapsackInstance,
    split_users: bool,
) -> Result<ReductionOutput<KnapsackBackMap>, ReductionError> {
    if inst.items.is_empty() {
        return Err(ReductionError::InvalidInstance("no items".into()));
    }
    let total = BigInt::from(inst.total_value());
    let share = |v| Rational::new(BigInt::from(v), total.clone());
    let contents: Vec<String> = (1..=inst.items.len()).map(|i| format!("s{i}")).collect();
    let mut builder = Instance::builder().cache(KNAPSACK_CACHE, inst.capacity.clone());
    for (s, (w, _)) in contents.iter().zip(&inst.items) {
        builder = builder.content(s.as_str(), w.clone());
    }
    if split_users {
        for (s, (_, v)) in contents.iter().zip(&inst.items) {
            let u = format!("u_{s}");
            builder = builder
                .user(u.as_str(), share(v.clone()), [(s.as_str(), Rational::one())])
                .edge(KNAPSACK_CACHE, u.as_str());
        }
    } else {
        let requests = contents.iter().zip(&inst.items).map(|(s, (_, v))| (s.as_str(), share(v.clone())));
        builder = builder.user("u", Rational::one(), requests).edge(KNAPSACK_CACHE, "u");
    }
    let instance = builder.build().expect("construction is well formed");
    let threshold = share(inst.target.clone());
    Ok(ReductionOutput { instance, threshold, back_map: KnapsackBackMap { contents } })
}
