//! F-polynomials `F_V(y) = Σ_e χ(Gr_e(V)) y^e` and the two identities they
//! satisfy: multiplicativity on direct sums and the almost-split relation.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grass::grass_table;
use crate::rep::{DimVec, Representation};
use crate::IntPolyY;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FPolynomial {
    pub poly: IntPolyY,
    pub dims: DimVec,
}

impl FPolynomial {
    pub fn nvars(&self) -> usize {
        self.dims.len()
    }
}

impl fmt::Display for FPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

impl Serialize for FPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FPolynomial", 2)?;
        st.serialize_field("poly", &self.poly.to_string())?;
        st.serialize_field("dims", &self.dims)?;
        st.end()
    }
}

pub fn f_polynomial(v: &Representation) -> Result<FPolynomial> {
    let table = grass_table(v)?;
    let poly = IntPolyY::from_terms(
        v.dims().len(),
        table
            .into_iter()
            .filter(|(_, chi)| !chi.is_zero())
            .map(|(e, chi)| (e.into_iter().map(|x| x as u32).collect(), chi)),
    )?;
    Ok(FPolynomial { poly, dims: v.dims().to_vec() })
}

/// Whether `F_V · F_W = F_{V ⊕ W}`.
pub fn check_product(v: &Representation, w: &Representation) -> Result<bool> {
    let sum = v.direct_sum(w)?;
    let lhs = f_polynomial(v)?.poly.checked_mul(&f_polynomial(w)?.poly)?;
    Ok(lhs == f_polynomial(&sum)?.poly)
}

/// Whether `F_{τV} · F_V = F_E + y^{dim V}` for a sequence `0 → τV → E → V → 0`
/// supplied by the caller.
pub fn check_ar_identity(tau_v: &Representation, e: &Representation, v: &Representation) -> Result<bool> {
    if tau_v.quiver() != v.quiver() || e.quiver() != v.quiver() {
        return Err(Error::QuiverMismatch);
    }
    let lhs = f_polynomial(tau_v)?.poly.checked_mul(&f_polynomial(v)?.poly)?;
    let rhs = f_polynomial(e)?.poly.checked_add(&IntPolyY::y_power(v.dims()))?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    fn rep(q: Quiver, dims: Vec<usize>, maps: &[(&str, Vec<Vec<i64>>)]) -> Representation {
        Representation::new(q, dims, maps.iter().map(|(k, m)| (k.to_string(), m.clone())).collect()).unwrap()
    }

    fn y(s: &str, n: usize) -> IntPolyY {
        IntPolyY::parse(s, n).unwrap()
    }

    #[test]
    fn loop_modules() {
        let q = Quiver::from_edges(1, &[(1, 1)]).unwrap();
        let v1 = rep(q.clone(), vec![1], &[]);
        let v2 = rep(q, vec![2], &[("a1", vec![vec![0, 0], vec![1, 0]])]);
        assert_eq!(f_polynomial(&v1).unwrap().poly, y("1 + y1", 1));
        assert_eq!(f_polynomial(&v2).unwrap().poly, y("1 + y1 + y1^2", 1));
        assert!(check_product(&v1, &v1).unwrap());
        assert!(check_ar_identity(&v1, &v2, &v1).unwrap());
        let split = v1.direct_sum(&v1).unwrap();
        assert!(!check_ar_identity(&v1, &split, &v1).unwrap());
    }

    #[test]
    fn kronecker_pair_and_two_cycle() {
        let k = Quiver::kronecker();
        let v1 = rep(k.clone(), vec![1, 1], &[("a1", vec![vec![0]]), ("a2", vec![vec![1]])]);
        let v2 = rep(k, vec![1, 1], &[("a1", vec![vec![1]]), ("a2", vec![vec![0]])]);
        assert_eq!(f_polynomial(&v1).unwrap().poly, y("1 + y2 + y1*y2", 2));
        assert_eq!(f_polynomial(&v1).unwrap(), f_polynomial(&v2).unwrap());
        assert!(check_product(&v1, &v2).unwrap());

        let cyc = Quiver::from_edges(2, &[(1, 2), (2, 1)]).unwrap();
        let m = rep(cyc, vec![2, 1], &[("a1", vec![vec![1, 0]]), ("a2", vec![vec![0], vec![1]])]);
        let f = f_polynomial(&m).unwrap().poly;
        assert_eq!(f, y("1 + y1 + y1*y2 + y1^2*y2", 2));
        assert_eq!(f, y("1 + y1*y2", 2).checked_mul(&y("1 + y1", 2)).unwrap());
    }

    #[test]
    fn zero_module_is_neutral() {
        let q = Quiver::kronecker();
        let v = rep(q.clone(), vec![1, 1], &[("a1", vec![vec![1]])]);
        assert_eq!(f_polynomial(&Representation::zero(q.clone())).unwrap().to_string(), "1");
        assert!(check_product(&v, &Representation::zero(q)).unwrap());
    }
}
