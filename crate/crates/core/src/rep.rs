//! Quiver representations with integer matrices.
//!
//! A representation is a representation of its own quiver: the matrix of an
//! arrow `a: s → t` has `dims[t]` rows and `dims[s]` columns and acts on
//! column vectors. Right modules over a path algebra `kQ` are representations
//! of the opposite quiver, so the module constructors ([`standard_module`],
//! [`interval_module`]) take `Q` and return representations of `Q^op`. For
//! `Q = 1 → 2 → 3 → 4` this makes `P1` simple, `I1 = P4` the module
//! `4/3/2/1`, and `[1,3]` the module `3/2/1` whose submodules are
//! `0 ⊂ 1 ⊂ 2/1 ⊂ 3/2/1`.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quiver::Quiver;
use crate::scalar::Field;
use crate::Rational;

/// Integer matrix, row-major.
pub type IntMatrix = Vec<Vec<i64>>;
/// Dimension vector, indexed by vertex `1..=n` at positions `0..n`.
pub type DimVec = Vec<usize>;

/// Formal integer combination of paths with common endpoints. Each path lists
/// its arrow ids in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub paths: Vec<Vec<String>>,
    pub coeffs: Vec<i64>,
}

#[derive(Deserialize)]
struct RawRep {
    quiver: Quiver,
    dims: Vec<usize>,
    #[serde(default)]
    matrices: BTreeMap<String, IntMatrix>,
    #[serde(default)]
    relations: Vec<Relation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawRep")]
pub struct Representation {
    quiver: Quiver,
    dims: DimVec,
    matrices: BTreeMap<String, IntMatrix>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    relations: Vec<Relation>,
}

impl TryFrom<RawRep> for Representation {
    type Error = Error;
    fn try_from(raw: RawRep) -> Result<Self> {
        Representation::with_relations(raw.quiver, raw.dims, raw.matrices, raw.relations)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModuleKind {
    Simple,
    Projective,
    Injective,
}

fn zero_matrix(rows: usize, cols: usize) -> IntMatrix {
    vec![vec![0; cols]; rows]
}

fn shape(m: &IntMatrix, rows: usize) -> (usize, usize) {
    (m.len(), m.first().map_or(if rows == 0 { usize::MAX } else { 0 }, Vec::len))
}

impl Representation {
    /// Arrows missing from `matrices` get the zero matrix.
    pub fn new(quiver: Quiver, dims: DimVec, matrices: BTreeMap<String, IntMatrix>) -> Result<Self> {
        Self::with_relations(quiver, dims, matrices, Vec::new())
    }

    pub fn with_relations(
        quiver: Quiver,
        dims: DimVec,
        mut matrices: BTreeMap<String, IntMatrix>,
        relations: Vec<Relation>,
    ) -> Result<Self> {
        if dims.len() != quiver.n() {
            return Err(Error::LengthMismatch { expected: quiver.n(), got: dims.len() });
        }
        if let Some(id) = matrices.keys().find(|id| quiver.arrow(id).is_none()) {
            return Err(Error::InvalidQuiver(format!("matrix given for unknown arrow `{id}`")));
        }
        for a in quiver.arrows() {
            let (rows, cols) = (dims[a.target - 1], dims[a.source - 1]);
            let m = matrices.entry(a.id.clone()).or_insert_with(|| zero_matrix(rows, cols));
            let (r, c) = shape(m, rows);
            let ragged = m.iter().any(|row| row.len() != cols);
            // a 0-row matrix has no column count to check
            if r != rows || (rows > 0 && (c != cols || ragged)) {
                return Err(Error::ShapeMismatch { arrow: a.id.clone(), expected: (rows, cols), got: (r, c) });
            }
        }
        let rep = Representation { quiver, dims, matrices, relations };
        for rel in &rep.relations {
            rep.relation_endpoints(rel)?;
        }
        Ok(rep)
    }

    pub fn zero(quiver: Quiver) -> Self {
        let dims = vec![0; quiver.n()];
        Self::new(quiver, dims, BTreeMap::new()).expect("zero representation")
    }

    /// Parses a representation and rejects it if it violates one of its own relations.
    pub fn from_json(s: &str) -> Result<Self> {
        let rep: Self = serde_json::from_str(s)?;
        for (k, rel) in rep.relations.iter().enumerate() {
            if !rep.check_relations(std::slice::from_ref(rel))? {
                return Err(Error::RelationViolated(k + 1));
            }
        }
        Ok(rep)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn matrix(&self, arrow: &str) -> &IntMatrix {
        &self.matrices[arrow]
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Matrix of `arrow` over an arbitrary field.
    pub fn matrix_over<F: Field>(&self, arrow: &str) -> Matrix<F> {
        let a = self.quiver.arrow(arrow).expect("known arrow");
        let cols = self.dims[a.source - 1];
        Matrix::from_i64_rows(cols, &self.matrices[arrow])
    }

    /// Reduction of every matrix entry modulo the prime `p`.
    pub fn specialize_mod_p(&self, p: u64) -> Result<FpRep> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let maps = self
            .quiver
            .arrows()
            .iter()
            .map(|a| {
                self.matrices[&a.id]
                    .iter()
                    .map(|row| row.iter().map(|&v| v.rem_euclid(p as i64) as u64).collect())
                    .collect()
            })
            .collect();
        Ok(FpRep { p, quiver: self.quiver.clone(), dims: self.dims.clone(), maps })
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.quiver != other.quiver {
            return Err(Error::QuiverMismatch);
        }
        let dims: DimVec = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let mut matrices = BTreeMap::new();
        for a in self.quiver.arrows() {
            let (s, t) = (a.source - 1, a.target - 1);
            let mut m = zero_matrix(dims[t], dims[s]);
            for (r, row) in self.matrices[&a.id].iter().enumerate() {
                for (c, &v) in row.iter().enumerate() {
                    m[r][c] = v;
                }
            }
            for (r, row) in other.matrices[&a.id].iter().enumerate() {
                for (c, &v) in row.iter().enumerate() {
                    m[self.dims[t] + r][self.dims[s] + c] = v;
                }
            }
            matrices.insert(a.id.clone(), m);
        }
        let mut relations = self.relations.clone();
        relations.extend(other.relations.iter().filter(|r| !self.relations.contains(r)).cloned());
        Self::with_relations(self.quiver.clone(), dims, matrices, relations)
    }

    fn relation_endpoints(&self, rel: &Relation) -> Result<(usize, usize)> {
        if rel.paths.len() != rel.coeffs.len() || rel.paths.is_empty() {
            return Err(Error::PathInvalid("relation needs one coefficient per path".into()));
        }
        let mut ends = None;
        for path in &rel.paths {
            if path.len() < 2 {
                return Err(Error::PathInvalid(format!("relation path {path:?} has length < 2")));
            }
            let mut cur: Option<usize> = None;
            let mut start = 0;
            for id in path {
                let a = self.quiver.arrow(id).ok_or_else(|| Error::PathInvalid(format!("unknown arrow `{id}`")))?;
                match cur {
                    None => start = a.source,
                    Some(v) if v != a.source => {
                        return Err(Error::PathInvalid(format!("arrows {path:?} do not compose")))
                    }
                    _ => {}
                }
                cur = Some(a.target);
            }
            let e = (start, cur.expect("nonempty"));
            if ends.is_some_and(|x| x != e) {
                return Err(Error::PathInvalid("relation paths have different endpoints".into()));
            }
            ends = Some(e);
        }
        Ok(ends.expect("nonempty"))
    }

    /// `V_w` for a path given in traversal order.
    fn path_matrix(&self, path: &[String]) -> Vec<Vec<i128>> {
        let first = self.quiver.arrow(&path[0]).expect("validated");
        let n0 = self.dims[first.source - 1];
        let mut acc: Vec<Vec<i128>> = (0..n0).map(|i| (0..n0).map(|j| (i == j) as i128).collect()).collect();
        for id in path {
            let m = &self.matrices[id];
            let cols = acc.first().map_or(0, Vec::len);
            acc = m
                .iter()
                .map(|row| {
                    (0..cols).map(|j| row.iter().enumerate().map(|(k, &v)| v as i128 * acc[k][j]).sum()).collect()
                })
                .collect();
        }
        acc
    }

    /// Whether every relation evaluates to zero on this representation.
    pub fn check_relations(&self, rels: &[Relation]) -> Result<bool> {
        for rel in rels {
            let (s, t) = self.relation_endpoints(rel)?;
            let mut sum = vec![vec![0i128; self.dims[s - 1]]; self.dims[t - 1]];
            for (path, &c) in rel.paths.iter().zip(&rel.coeffs) {
                let m = self.path_matrix(path);
                for (r, row) in m.iter().enumerate() {
                    for (k, v) in row.iter().enumerate() {
                        sum[r][k] += c as i128 * v;
                    }
                }
            }
            if sum.iter().flatten().any(|&v| v != 0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Componentwise dimension of the socle: at each vertex, the common
    /// kernel of all arrows leaving it.
    pub fn socle(&self) -> DimVec {
        (1..=self.quiver.n())
            .map(|i| {
                let d = self.dims[i - 1];
                let out: Vec<_> = self.quiver.arrows().iter().filter(|a| a.source == i).collect();
                if d == 0 || out.is_empty() {
                    return d;
                }
                let stacked = out
                    .iter()
                    .map(|a| self.matrix_over::<Rational>(&a.id))
                    .reduce(|acc, m| acc.vstack(&m))
                    .expect("nonempty");
                stacked.nullity()
            })
            .collect()
    }

    /// Multiplicities `(b, a)` of a minimal injective copresentation
    /// `0 → V → ⊕ I_j^{b_j} → ⊕ I_j^{a_j}` over an acyclic quiver.
    pub fn injective_copresentation(&self) -> Result<(DimVec, DimVec)> {
        let injectives = injective_dims(&self.quiver)?;
        let n = self.quiver.n();
        let b = self.socle();
        let envelope: Vec<i64> = (0..n)
            .map(|i| (0..n).map(|j| (b[j] * injectives[j][i]) as i64).sum())
            .collect();
        let rhs: Vec<i64> = envelope.iter().zip(&self.dims).map(|(e, &d)| e - d as i64).collect();
        if rhs.iter().any(|&v| v < 0) {
            return Err(Error::NegativeSolution(rhs));
        }
        // columns are the injective dimension vectors
        let cols: Vec<Vec<i64>> =
            (0..n).map(|i| (0..n).map(|j| injectives[j][i] as i64).collect()).collect();
        let m = Matrix::<Rational>::from_i64_rows(n, &cols);
        let rhs_q: Vec<Rational> = rhs.iter().map(|&v| Rational::from_integer(v.into())).collect();
        let sol = m.solve(&rhs_q).ok_or_else(|| Error::NegativeSolution(rhs.clone()))?;
        let mut a = Vec::with_capacity(n);
        for v in sol {
            if !v.is_integer() || v.is_negative() {
                return Err(Error::NegativeSolution(rhs));
            }
            a.push(usize::try_from(v.to_integer()).map_err(|_| Error::NegativeSolution(rhs.clone()))?);
        }
        Ok((b, a))
    }
}

/// `dim Hom(V, W)`, computed over the rationals.
pub fn dim_hom(v: &Representation, w: &Representation) -> Result<usize> {
    dim_hom_over::<Rational>(v, w)
}

/// `dim Hom(V, W)` over the field `F`: the nullity of the commuting-square
/// system `W_a f_s = f_t V_a`.
pub fn dim_hom_over<F: Field>(v: &Representation, w: &Representation) -> Result<usize> {
    if v.quiver != w.quiver {
        return Err(Error::QuiverMismatch);
    }
    let q = &v.quiver;
    let mut offset = vec![0usize; q.n() + 1];
    for i in 1..=q.n() {
        offset[i] = offset[i - 1] + w.dims[i - 1] * v.dims[i - 1];
    }
    let unknowns = offset[q.n()];
    // f_i[r][c] lives at offset[i-1] + r * v.dims[i-1] + c
    let var = |i: usize, r: usize, c: usize| offset[i - 1] + r * v.dims[i - 1] + c;
    let mut rows: Vec<Vec<F>> = Vec::new();
    for a in q.arrows() {
        let (s, t) = (a.source, a.target);
        let (va, wa) = (v.matrix_over::<F>(&a.id), w.matrix_over::<F>(&a.id));
        for r in 0..w.dims[t - 1] {
            for c in 0..v.dims[s - 1] {
                let mut row = vec![F::zero(); unknowns];
                for k in 0..w.dims[s - 1] {
                    let x = var(s, k, c);
                    row[x] = row[x].clone() + wa[(r, k)].clone();
                }
                for k in 0..v.dims[t - 1] {
                    let x = var(t, r, k);
                    row[x] = row[x].clone() - va[(k, c)].clone();
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return Ok(unknowns);
    }
    Ok(Matrix::from_rows(unknowns, rows).nullity())
}

/// Dimension vectors of the indecomposable injective representations of
/// `quiver` (its own orientation): `injectives[j][i] = #paths i → j`.
pub fn injective_dims(quiver: &Quiver) -> Result<Vec<DimVec>> {
    let c = quiver.path_count_matrix()?;
    Ok((0..quiver.n()).map(|j| (0..quiver.n()).map(|i| c[i][j]).collect()).collect())
}

/// Indecomposable injective representation of `quiver` at `j`: basis at `i`
/// dual to the paths `i → j`.
fn rep_injective(quiver: &Quiver, j: usize) -> Result<Representation> {
    let paths = quiver.enumerate_paths()?;
    let basis: Vec<Vec<_>> = (1..=quiver.n())
        .map(|i| paths.iter().filter(|p| p.source == i && p.target == j).collect())
        .collect();
    let dims = basis.iter().map(Vec::len).collect();
    let mut matrices = BTreeMap::new();
    for a in quiver.arrows() {
        let (src, tgt) = (&basis[a.source - 1], &basis[a.target - 1]);
        let mut m = zero_matrix(tgt.len(), src.len());
        // the dual of a path starting with `a` goes to the dual of its tail
        for (c, path) in src.iter().enumerate() {
            if path.arrows.first() == Some(&a.id) {
                let r = tgt.iter().position(|p| p.arrows[..] == path.arrows[1..]).expect("tail is a path");
                m[r][c] = 1;
            }
        }
        matrices.insert(a.id.clone(), m);
    }
    Representation::new(quiver.clone(), dims, matrices)
}

/// Indecomposable projective representation of `quiver` at `j`: basis at `i`
/// the paths `j → i`.
fn rep_projective(quiver: &Quiver, j: usize) -> Result<Representation> {
    let paths = quiver.enumerate_paths()?;
    let basis: Vec<Vec<_>> = (1..=quiver.n())
        .map(|i| paths.iter().filter(|p| p.source == j && p.target == i).collect())
        .collect();
    let dims = basis.iter().map(Vec::len).collect();
    let mut matrices = BTreeMap::new();
    for a in quiver.arrows() {
        let (src, tgt) = (&basis[a.source - 1], &basis[a.target - 1]);
        let mut m = zero_matrix(tgt.len(), src.len());
        for (c, path) in src.iter().enumerate() {
            let mut longer = path.arrows.clone();
            longer.push(a.id.clone());
            let r = tgt.iter().position(|p| p.arrows == longer).expect("extension is a path");
            m[r][c] = 1;
        }
        matrices.insert(a.id.clone(), m);
    }
    Representation::new(quiver.clone(), dims, matrices)
}

/// Simple, projective or injective right `kQ`-module at vertex `j`, as a
/// representation of `Q^op`. `dim (P_j)_i = #paths i → j` and
/// `dim (I_j)_i = #paths j → i` in `Q`.
pub fn standard_module(q: &Quiver, kind: ModuleKind, j: usize) -> Result<Representation> {
    q.topological_order()?;
    q.check_vertex(j)?;
    let op = q.opposite();
    match kind {
        ModuleKind::Simple => {
            let mut dims = vec![0; q.n()];
            dims[j - 1] = 1;
            Representation::new(op, dims, BTreeMap::new())
        }
        ModuleKind::Projective => rep_projective(&op, j),
        ModuleKind::Injective => rep_injective(&op, j),
    }
}

/// Thin module supported on the vertices `a..=b` of a type-A quiver, every
/// arrow inside the support acting as the identity.
pub fn interval_module(q: &Quiver, a: usize, b: usize) -> Result<Representation> {
    q.require_type_a()?;
    if a == 0 || a > b || b > q.n() {
        return Err(Error::BadInterval(a, b));
    }
    let op = q.opposite();
    let inside = |v: usize| (a..=b).contains(&v);
    let dims = (1..=q.n()).map(|v| inside(v) as usize).collect();
    let matrices = op
        .arrows()
        .iter()
        .filter(|x| inside(x.source) && inside(x.target))
        .map(|x| (x.id.clone(), vec![vec![1]]))
        .collect();
    Representation::new(op, dims, matrices)
}

/// Representation over the prime field `F_p`; `maps[k]` belongs to the
/// `k`-th arrow of the quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpRep {
    pub p: u64,
    pub quiver: Quiver,
    pub dims: DimVec,
    pub maps: Vec<Vec<Vec<u64>>>,
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// The first `k` primes, in increasing order.
pub fn first_primes(k: usize) -> Vec<u64> {
    (2..).filter(|&p| is_prime(p)).take(k).collect()
}

/// Whether every matrix entry is zero.
pub fn is_zero_matrix(m: &IntMatrix) -> bool {
    m.iter().flatten().all(|v| v.is_zero())
}
