use super::{BackMap, MaxKVcInstance, ReductionError, ReductionOutput};
use crate::model::{ratio, Allocation, Instance, Rational};

pub const CENTRAL_CACHE: &str = "c";

/// Vertex `v` is content `v{v+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCoverBackMap {
    contents: Vec<String>,
}

impl BackMap for VertexCoverBackMap {
    /// The vertices stored in the central cache, ascending.
    type Witness = Vec<usize>;

    fn translate(&self, z: &Allocation) -> Vec<usize> {
        (0..self.contents.len()).filter(|&v| z.stores(CENTRAL_CACHE, &self.contents[v])).collect()
    }
}

/// One unit-size content per vertex. Each edge `xy` becomes a weight-1 user
/// requesting `x` and `y` at 1/2 with a private unit cache, and one central
/// cache of capacity `k` serves every user, so the network is a star with
/// each edge subdivided once. A private cache always secures half of its
/// user's weight; the other half needs an endpoint in the central cache.
/// Hence the optimum is `(U + covered)/2` and `ℓ = (U + t)/2`.
pub fn from_max_k_vertex_cover(inst: &MaxKVcInstance) -> Result<ReductionOutput<VertexCoverBackMap>, ReductionError> {
    let contents: Vec<String> = (1..=inst.num_vertices()).map(|v| format!("v{v}")).collect();
    let mut b = Instance::builder().cache(CENTRAL_CACHE, inst.k as u64);
    for s in &contents {
        b = b.content(s.as_str(), 1u32);
    }
    for &(x, y) in inst.edges() {
        let (sx, sy) = (&contents[x], &contents[y]);
        let u = format!("u_{sx}_{sy}");
        let c = format!("c_{sx}_{sy}");
        b = b
            .user(u.as_str(), Rational::one(), [(sx.as_str(), ratio(1, 2)), (sy.as_str(), ratio(1, 2))])
            .cache(c.as_str(), 1u32)
            .edge(c.as_str(), u.as_str())
            .edge(CENTRAL_CACHE, u.as_str());
    }
    let instance = b.build().expect("construction is well formed");
    let threshold = Rational::new((inst.edges().len() + inst.t) as u64, 2);
    Ok(ReductionOutput { instance, threshold, back_map: VertexCoverBackMap { contents } })
}
