#![allow(dead_code)]

use netcache_core::generate::{random_instance, rng, InstanceCaps};
use netcache_core::model::Allocation;
use netcache_core::Instance;
use rand::Rng;

pub fn instance(seed: u64, caps: &InstanceCaps) -> Instance {
    random_instance(&mut rng(seed), caps)
}

/// An arbitrary allocation, feasible or not.
pub fn allocation(instance: &Instance, seed: u64) -> Allocation {
    let mut r = rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut z = Allocation::new();
    for cache in instance.caches() {
        for content in instance.contents() {
            if r.random_bool(0.4) {
                z.insert(cache.id.clone(), content.id.clone());
            }
        }
    }
    z
}

/// Caps for instances brute force handles quickly (S·C ≤ 15).
pub fn small_caps() -> InstanceCaps {
    InstanceCaps { caches: 3, users: 4, contents: 5, size: 3, capacity: 4, unit_sizes: false }
}

pub fn unit_caps() -> InstanceCaps {
    InstanceCaps { unit_sizes: true, ..small_caps() }
}
