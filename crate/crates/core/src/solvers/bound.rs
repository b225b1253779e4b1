use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

/// A search-size bound that saturates instead of overflowing.
///
/// `Bound::Overflow` compares greater than every finite bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    Finite(u128),
    Overflow,
}

impl std::ops::Mul for Bound {
    type Output = Bound;

    fn mul(self, other: Bound) -> Bound {
        match (self, other) {
            (Bound::Finite(a), Bound::Finite(b)) => a.checked_mul(b).map_or(Bound::Overflow, Bound::Finite),
            // 0 · ∞ never arises: every factor here is at least one.
            _ => Bound::Overflow,
        }
    }
}

impl Bound {
    pub const ONE: Bound = Bound::Finite(1);

    pub fn from_big(n: &BigUint) -> Bound {
        n.to_u128().map_or(Bound::Overflow, Bound::Finite)
    }

    pub fn pow(self, exp: u64) -> Bound {
        let mut acc = Bound::ONE;
        for _ in 0..exp {
            acc = acc * self;
            if acc == Bound::Overflow {
                break;
            }
        }
        acc
    }

    pub fn pow2(exp: u64) -> Bound {
        if exp < 128 {
            Bound::Finite(1u128 << exp)
        } else {
            Bound::Overflow
        }
    }

    /// `C(n + k, k)`: multisets of size `n` over `k + 1` values.
    pub fn multisets(n: u64, k: u64) -> Bound {
        // C(n+k, min(n,k)) computed incrementally; each prefix is itself a
        // binomial coefficient, so the division is exact.
        let r = n.min(k) as u128;
        let top = n as u128 + k as u128;
        let mut acc: u128 = 1;
        for i in 0..r {
            acc = match acc.checked_mul(top - i) {
                Some(v) => v / (i + 1),
                None => return Bound::Overflow,
            };
        }
        Bound::Finite(acc)
    }

    pub fn within(self, limit: u64) -> bool {
        matches!(self, Bound::Finite(v) if v <= limit as u128)
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(v) => write!(f, "{v}"),
            Bound::Overflow => f.write_str(">2^128"),
        }
    }
}
