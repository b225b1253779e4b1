use super::{BackMap, CnfFormula, Literal, ReductionError, ReductionOutput};
use crate::model::{Allocation, Instance, Rational};

/// Reads `x_i` off cache `c_x{i}`: true iff it stores content `x{i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarSatBackMap {
    num_vars: usize,
}

impl BackMap for PlanarSatBackMap {
    type Witness = Vec<bool>;

    fn translate(&self, z: &Allocation) -> Vec<bool> {
        (1..=self.num_vars).map(|i| z.stores(&format!("c_x{i}"), &format!("x{i}"))).collect()
    }
}

fn content(l: Literal) -> String {
    l.to_string()
}

/// One unit content per literal. Variable `x_i` gets caches `c_x{i}` and
/// `c'_x{i}` that both serve users `u_x{i}` and `u_~x{i}`, each requesting
/// its own literal with `p = 1`; filling both users forces `c_x{i}` to hold
/// one of the two literals, which fixes the truth value. Each clause gets a
/// weight-1 user `u_C{j}` requesting its literals uniformly, adjacent to the
/// `c_x` caches of its variables and to one private unit cache fewer than
/// its length. The private caches cover all but one literal, so the clause
/// user is full iff a variable cache holds one of its literals. `ℓ = U`.
///
/// Planarity of the incidence graph is not checked.
pub fn from_planar_3sat_e3(phi: &CnfFormula) -> Result<ReductionOutput<PlanarSatBackMap>, ReductionError> {
    phi.check_clause_shapes()?;
    if let Some(v) = phi.occurrences().iter().position(|&o| o != 3) {
        return Err(ReductionError::InvalidFormula(format!(
            "x{} occurs in {} clauses (expected exactly 3)",
            v + 1,
            phi.occurrences()[v]
        )));
    }

    let mut b = Instance::builder();
    for i in 0..phi.num_vars() {
        let (pos, neg) = (content(Literal::pos(i)), content(Literal::neg(i)));
        let (c, c2) = (format!("c_{pos}"), format!("c'_{pos}"));
        let (u, u_neg) = (format!("u_{pos}"), format!("u_{neg}"));
        b = b
            .content(pos.as_str(), 1u32)
            .content(neg.as_str(), 1u32)
            .cache(c.as_str(), 1u32)
            .cache(c2.as_str(), 1u32)
            .user(u.as_str(), Rational::one(), [(pos.as_str(), Rational::one())])
            .user(u_neg.as_str(), Rational::one(), [(neg.as_str(), Rational::one())]);
        for cache in [&c, &c2] {
            for user in [&u, &u_neg] {
                b = b.edge(cache.as_str(), user.as_str());
            }
        }
    }
    for (j, clause) in phi.clauses().iter().enumerate() {
        let u = format!("u_C{}", j + 1);
        let p = Rational::new(1, clause.len() as u64);
        b = b.user(u.as_str(), Rational::one(), clause.iter().map(|&l| (content(l), p.clone())));
        for l in clause {
            b = b.edge(format!("c_x{}", l.var + 1), u.as_str());
        }
        for private in [format!("c_{u}"), format!("c'_{u}")].into_iter().take(clause.len() - 1) {
            b = b.cache(private.as_str(), 1u32).edge(private.as_str(), u.as_str());
        }
    }
    let instance = b.build().expect("construction is well formed");
    let threshold = Rational::from(instance.num_users() as u64);
    Ok(ReductionOutput { instance, threshold, back_map: PlanarSatBackMap { num_vars: phi.num_vars() } })
}
