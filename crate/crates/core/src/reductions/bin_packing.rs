use super::{BackMap, BinPackingInstance, ReductionError, ReductionOutput};
use crate::model::{Allocation, Instance, Rational};

/// Item `i` is content `s{i+1}`, bin `b` is cache `bin{b+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinPackingBackMap {
    contents: Vec<String>,
    bins: Vec<String>,
}

impl BackMap for BinPackingBackMap {
    /// Bin of each item; `None` for items stored nowhere.
    type Witness = Vec<Option<usize>>;

    /// A content stored in several caches goes to the lowest-numbered one.
    fn translate(&self, z: &Allocation) -> Vec<Option<usize>> {
        self.contents.iter().map(|s| self.bins.iter().position(|b| z.stores(b, s))).collect()
    }
}

/// `b` caches of capacity `B`, one content per item with the item's size.
/// Without splitting, a single weight-1 user requests every item uniformly
/// and `ℓ = 1`; with splitting, each item gets its own weight-1 user with
/// `p = 1` and `ℓ = |I|`. Every user is adjacent to every cache, so the hit
/// rate reaches `ℓ` exactly when all items are packed.
pub fn from_unary_bin_packing(
    inst: &BinPackingInstance,
    split_users: bool,
) -> Result<ReductionOutput<BinPackingBackMap>, ReductionError> {
    let n = inst.sizes.len();
    if n == 0 {
        return Err(ReductionError::InvalidInstance("no items".into()));
    }
    let contents: Vec<String> = (1..=n).map(|i| format!("s{i}")).collect();
    let bins: Vec<String> = (1..=inst.bins).map(|b| format!("bin{b}")).collect();
    let mut builder = Instance::builder();
    for (s, &size) in contents.iter().zip(&inst.sizes) {
        builder = builder.content(s.as_str(), size);
    }
    for bin in &bins {
        builder = builder.cache(bin.as_str(), inst.capacity);
    }
    let mut users = Vec::new();
    if split_users {
        for s in &contents {
            let u = format!("u_{s}");
            builder = builder.user(u.as_str(), Rational::one(), [(s.as_str(), Rational::one())]);
            users.push(u);
        }
    } else {
        let p = Rational::new(1, n as u64);
        builder = builder.user("u", Rational::one(), contents.iter().map(|s| (s.as_str(), p.clone())));
        users.push("u".to_string());
    }
    for bin in &bins {
        for u in &users {
            builder = builder.edge(bin.as_str(), u.as_str());
        }
    }
    let instance = builder.build().expect("construction is well formed");
    let threshold = if split_users { Rational::from(n as u64) } else { Rational::one() };
    Ok(ReductionOutput { instance, threshold, back_map: BinPackingBackMap { contents, bins } })
}
