use super::{BackMap, CnfFormula, ReductionError, ReductionOutput};
use crate::model::{ratio, Allocation, Instance, Rational};

pub const TRUE: &str = "True";
pub const FALSE: &str = "False";

/// Reads variable `x_i` off the content stored in cache `c_{x_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaeBackMap {
    caches: Vec<String>,
}

impl BackMap for NaeBackMap {
    type Witness = Vec<bool>;

    /// A cache storing `True` sets its variable true; anything else, false.
    fn translate(&self, z: &Allocation) -> Vec<bool> {
        self.caches.iter().map(|c| z.stores(c, TRUE)).collect()
    }
}

/// One unit cache per variable, the two contents `True` and `False`, and one
/// weight-1 user per clause requesting both at 1/2, adjacent to the caches
/// of its variables. A clause user collects its full weight exactly when
/// its caches hold both values, so `ℓ = U`.
pub fn from_monotone_nae3sat(phi: &CnfFormula) -> Result<ReductionOutput<NaeBackMap>, ReductionError> {
    phi.check_clause_shapes()?;
    if phi.clauses().iter().flatten().any(|l| !l.positive) {
        return Err(ReductionError::InvalidFormula("monotone formulas have only positive literals".into()));
    }
    if let Some(v) = phi.occurrences().iter().position(|&o| o > 3) {
        return Err(ReductionError::InvalidFormula(format!("x{} occurs in more than 3 clauses", v + 1)));
    }

    let caches: Vec<String> = (1..=phi.num_vars()).map(|i| format!("c_x{i}")).collect();
    let mut b = Instance::builder().content(TRUE, 1u32).content(FALSE, 1u32);
    for c in &caches {
        b = b.cache(c.as_str(), 1u32);
    }
    for (j, clause) in phi.clauses().iter().enumerate() {
        let u = format!("u_C{}", j + 1);
        b = b.user(u.as_str(), Rational::one(), [(TRUE, ratio(1, 2)), (FALSE, ratio(1, 2))]);
        for l in clause {
            b = b.edge(caches[l.var].as_str(), u.as_str());
        }
    }
    let instance = b.build().expect("construction is well formed");
    let threshold = Rational::from(phi.clauses().len() as u64);
    Ok(ReductionOutput { instance, threshold, back_map: NaeBackMap { caches } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parameter_profile;

    #[test]
    fn path_formula() {
        let phi = CnfFormula::from_dimacs(3, &[&[1, 2], &[2, 3]]).unwrap();
        let out = from_monotone_nae3sat(&phi).unwrap();
        assert_eq!(out.instance.num_caches(), 3);
        assert_eq!(out.instance.num_users(), 2);
        assert_eq!(out.threshold, ratio(2, 1));
        let p = parameter_profile(&out.instance);
        assert_eq!((p.contents, p.max_support), (2, 2));
        let z = Allocation::new().with("c_x1", &[TRUE]).with("c_x2", &[FALSE]).with("c_x3", &[TRUE]);
        assert_eq!(out.translate(&z), vec![true, false, true]);
    }

    #[test]
    fn rejects_bad_shapes() {
        let neg = CnfFormula::from_dimacs(2, &[&[1, -2]]).unwrap();
        assert!(from_monotone_nae3sat(&neg).is_err());
        let four = CnfFormula::from_dimacs(5, &[&[1, 2], &[1, 3], &[1, 4], &[1, 5]]).unwrap();
        assert!(from_monotone_nae3sat(&four).is_err());
        let long = CnfFormula::from_dimacs(4, &[&[1, 2, 3, 4]]).unwrap();
        assert!(from_monotone_nae3sat(&long).is_err());
    }
}
