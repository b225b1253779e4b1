//! Compact hash keys for dynamic-program states.
//!
//! A state is a short vector of small counters. When every counter fits in a
//! fixed bit width and the widths sum to at most 128 bits, states are keyed
//! by a single `u128`; otherwise by the vector itself.

use std::hash::{BuildHasherDefault, Hash};

use indexmap::IndexSet;
use rustc_hash::FxHasher;

pub(crate) type StateSet<K> = IndexSet<K, BuildHasherDefault<FxHasher>>;

pub(crate) trait Codec {
    type Key: Hash + Eq + Clone;
    fn encode(&self, state: &[u64]) -> Self::Key;
    fn decode(&self, key: &Self::Key, out: &mut [u64]);
}

/// Keys states by the vector itself.
pub(crate) struct Plain;

impl Codec for Plain {
    type Key = Box<[u64]>;

    fn encode(&self, state: &[u64]) -> Self::Key {
        state.into()
    }

    fn decode(&self, key: &Self::Key, out: &mut [u64]) {
        out.copy_from_slice(key);
    }
}

/// Packs counter `i` into `widths[i]` bits of a `u128`.
pub(crate) struct Packed {
    shifts: Vec<u32>,
    masks: Vec<u128>,
}

impl Packed {
    /// `None` when the counters, each bounded by `maxima[i]`, need more than
    /// 128 bits in total.
    pub(crate) fn new(maxima: &[u64]) -> Option<Packed> {
        let mut shifts = Vec::with_capacity(maxima.len());
        let mut masks = Vec::with_capacity(maxima.len());
        let mut used = 0u32;
        for &m in maxima {
            let width = 64 - m.leading_zeros();
            if used + width > 128 {
                return None;
            }
            shifts.push(used);
            masks.push(if width == 0 { 0 } else { (1u128 << width) - 1 });
            used += width;
        }
        Some(Packed { shifts, masks })
    }
}

impl Codec for Packed {
    type Key = u128;

    fn encode(&self, state: &[u64]) -> u128 {
        state.iter().zip(&self.shifts).fold(0, |key, (&v, &s)| key | (v as u128) << s)
    }

    fn decode(&self, key: &u128, out: &mut [u64]) {
        for ((o, &s), &m) in out.iter_mut().zip(&self.shifts).zip(&self.masks) {
            *o = (key >> s & m) as u64;
        }
    }
}
