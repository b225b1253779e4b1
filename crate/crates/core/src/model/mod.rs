//! Problem data model: instances, allocations, exact objective evaluation
//! and structural parameters.

mod allocation;
mod error;
pub mod fixtures;
mod ids;
mod instance;
mod profile;
mod rational;

pub use allocation::{cache_hit_rate, hit_set, is_feasible, Allocation, Placement};
pub use error::ModelError;
pub use ids::{CacheId, ContentId, UserId, Vertex};
pub use instance::{validate, Cache, Content, Instance, InstanceBuilder, User, UserSpec};
pub use profile::{
    classify, parameter_profile, vertex_cover_2approx, vertex_cover_flags, ParameterProfile, Variant,
    DEFAULT_UNARY_BUDGET,
};
pub use rational::{ratio, ParseRationalError, Rational};
