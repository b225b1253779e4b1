//! Hard-instance constructions from classic NP-hard problems, transformations
//! between parameterizations of the unit-size problem, and exhaustive oracles
//! for the source problems.
//!
//! Each construction returns a [`ReductionOutput`]: the caching instance, the
//! threshold `ℓ` at which the decision questions coincide, and a back-map
//! turning a caching allocation into a source-problem certificate.

mod bin_packing;
mod interreduce;
mod knapsack;
mod nae;
mod oracles;
mod planar_sat;
mod source;
mod vertex_cover;

use thiserror::Error;

use crate::model::{Allocation, Instance, Rational};

pub use bin_packing::{from_unary_bin_packing, BinPackingBackMap};
pub use interreduce::{interreduce, Case};
pub use knapsack::{from_knapsack, KnapsackBackMap};
pub use nae::{from_monotone_nae3sat, NaeBackMap};
pub use oracles::{binpack_oracle, knapsack_oracle, max_kvc_oracle, nae_oracle, sat_oracle, ORACLE_LIMIT};
pub use planar_sat::{from_planar_3sat_e3, PlanarSatBackMap};
pub use source::{BinPackingInstance, CnfFormula, KnapsackInstance, Literal, MaxKVcInstance};
pub use vertex_cover::{from_max_k_vertex_cover, VertexCoverBackMap, CENTRAL_CACHE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("invalid formula: {0}")]
    InvalidFormula(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("instance is not homogeneous (all content sizes must be 1)")]
    NotHomogeneous,
    #[error("invalid transformation case {0} (expected 1 to 5)")]
    InvalidCase(u8),
    #[error("{what} = {size} exceeds the oracle limit {limit}")]
    TooLarge { what: &'static str, size: usize, limit: usize },
}

/// Translates caching allocations of a constructed instance into
/// certificates for the source problem.
pub trait BackMap {
    type Witness;

    fn translate(&self, z: &Allocation) -> Self::Witness;
}

#[derive(Clone, Debug)]
pub struct ReductionOutput<B> {
    pub instance: Instance,
    /// Decision threshold: the source answer is yes iff some feasible
    /// allocation reaches `threshold`.
    pub threshold: Rational,
    pub back_map: B,
}

impl<B: BackMap> ReductionOutput<B> {
    pub fn translate(&self, z: &Allocation) -> B::Witness {
        self.back_map.translate(z)
    }
}
