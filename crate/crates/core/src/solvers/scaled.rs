//! Integer hit values.
//!
//! Every `w(u)·p_us` is scaled by the least common denominator of all such
//! terms, so solvers add integers and convert back to a [`Rational`] once.
//! When the grand total fits in a `u128` every partial sum does too.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::model::{Instance, Rational};

pub(crate) trait Gain: Clone + Ord + Send + Sync {
    fn zero() -> Self;
    fn add(&mut self, other: &Self);
    fn from_big(v: &BigUint) -> Self;
    fn into_big(self) -> BigUint;
}

impl Gain for u128 {
    fn zero() -> Self {
        0
    }
    fn add(&mut self, other: &Self) {
        *self += *other;
    }
    fn from_big(v: &BigUint) -> Self {
        v.to_u128().expect("checked against the grand total")
    }
    fn into_big(self) -> BigUint {
        BigUint::from(self)
    }
}

impl Gain for BigUint {
    fn zero() -> Self {
        BigUint::ZERO
    }
    fn add(&mut self, other: &Self) {
        *self += other;
    }
    fn from_big(v: &BigUint) -> Self {
        v.clone()
    }
    fn into_big(self) -> BigUint {
        self
    }
}

pub(crate) struct Scaled {
    pub denom: BigUint,
    /// Per user: `(content index, scaled w(u)·p_us)`.
    pub users: Vec<Vec<(usize, BigUint)>>,
    pub fits_u128: bool,
}

impl Scaled {
    pub(crate) fn new(instance: &Instance) -> Scaled {
        let terms: Vec<Vec<(usize, Rational)>> =
            instance.users().iter().map(|u| u.requests.iter().map(|(s, p)| (*s, &u.weight * p)).collect()).collect();
        let denom = terms.iter().flatten().fold(BigUint::one(), |acc, (_, g)| acc.lcm(&g.denom_unsigned()));
        let users: Vec<Vec<(usize, BigUint)>> = terms
            .into_iter()
            .map(|gains| {
                gains
                    .into_iter()
                    .map(|(s, g)| {
                        let num = g.numer_unsigned().expect("gains are non-negative");
                        (s, num * (&denom / g.denom_unsigned()))
                    })
                    .collect()
            })
            .collect();
        let total: BigUint = users.iter().flatten().map(|(_, g)| g).sum();
        // One spare unit so a clamped decision target fits as well.
        Scaled { denom, users, fits_u128: (total + 1u32).to_u128().is_some() }
    }

    pub(crate) fn user_gains<G: Gain>(&self) -> Vec<Vec<(usize, G)>> {
        self.users.iter().map(|gains| gains.iter().map(|(s, g)| (*s, G::from_big(g))).collect()).collect()
    }

    pub(crate) fn rational(&self, value: BigUint) -> Rational {
        Rational::new(BigInt::from(value), BigInt::from(self.denom.clone()))
    }
}

/// Threshold pruning for the decision version. A partial solution is
/// dropped once even serving every remaining request cannot lift it to the
/// target, so only values of at least the target remain exact.
pub(crate) struct Prune<G> {
    target: G,
    /// `rest[s]`: total gain of contents `s..`.
    rest: Vec<G>,
}

impl<G: Gain> Prune<G> {
    pub(crate) fn new(scaled: &Scaled, num_contents: usize, target: &Rational) -> Prune<G> {
        let mut per_content = vec![BigUint::ZERO; num_contents];
        for (s, g) in scaled.users.iter().flatten() {
            per_content[*s] += g;
        }
        let total: BigUint = per_content.iter().sum();
        // Values are integers, so `v ≥ target·D` iff `v ≥ ⌈target·D⌉`.
        let scaled_target = (target.as_big_rational() * BigInt::from(scaled.denom.clone())).ceil();
        let target = match scaled_target.to_integer().to_biguint() {
            Some(t) => t.min(total + 1u32),
            None => BigUint::ZERO,
        };
        let mut rest = vec![G::zero(); num_contents + 1];
        for s in (0..num_contents).rev() {
            let mut r = rest[s + 1].clone();
            r.add(&G::from_big(&per_content[s]));
            rest[s] = r;
        }
        Prune { target: G::from_big(&target), rest }
    }

    /// Can `value`, with contents `s..` still open, reach the target?
    pub(crate) fn keeps(&self, value: &G, s: usize) -> bool {
        let mut v = value.clone();
        v.add(&self.rest[s]);
        v >= self.target
    }
}

pub(crate) fn keeps<G: Gain>(prune: Option<&Prune<G>>, value: &G, s: usize) -> bool {
    prune.is_none_or(|p| p.keeps(value, s))
}

/// Ascending non-empty submasks of `mask`.
pub(crate) fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut sub = 0u64;
    std::iter::from_fn(move || {
        sub = (sub | !mask).wrapping_add(1) & mask;
        (sub != 0).then_some(sub)
    })
}

/// Store moves for one content in the dynamic programs. `terms` pairs each
/// requesting user's mask of units (caches or cache groups) with its gain.
///
/// Only irredundant unit sets are returned: every unit must be the sole
/// chosen unit of at least one requesting user. Dropping a redundant unit
/// keeps the gain and leaves more capacity, so the remaining moves reach
/// the same optimum. Moves come in ascending mask order.
pub(crate) fn irredundant_moves<G: Gain>(terms: &[(u64, G)]) -> Vec<(u64, G)> {
    let support = terms.iter().fold(0u64, |m, (mask, _)| m | mask);
    let mut out = Vec::new();
    for sub in submasks(support) {
        let mut private = 0u64;
        let mut gain = G::zero();
        for (mask, g) in terms {
            let hit = mask & sub;
            if hit != 0 {
                gain.add(g);
                if hit & (hit - 1) == 0 {
                    private |= hit;
                }
            }
        }
        if private == sub {
            out.push((sub, gain));
        }
    }
    out
}
