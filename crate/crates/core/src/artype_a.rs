//! Type `A_n`: the Auslander–Reiten quiver of `mod kQ` by knitting, the
//! translation `τ`, almost-split sequences, and the indecomposable objects of
//! the cluster category `C_Q` with its suspension.
//!
//! Every indecomposable module over a type-A quiver is thin and supported on
//! an interval `[a, b]` of the path `1 — 2 — … — n`, so modules are handled
//! through their dimension vectors.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quiver::Quiver;
use crate::rep::{interval_module, Representation};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Interval {
    pub a: usize,
    pub b: usize,
}

impl Interval {
    pub fn new(a: usize, b: usize, n: usize) -> Result<Self> {
        if a == 0 || a > b || b > n {
            return Err(Error::BadInterval(a, b));
        }
        Ok(Interval { a, b })
    }

    pub fn contains(&self, v: usize) -> bool {
        (self.a..=self.b).contains(&v)
    }

    pub fn dim_vector(&self, n: usize) -> Vec<usize> {
        (1..=n).map(|v| self.contains(v) as usize).collect()
    }

    /// Inverse of [`Interval::dim_vector`]; `None` unless `d` is a 0/1
    /// vector with contiguous nonempty support.
    pub fn from_dim_vector(d: &[i64]) -> Option<Self> {
        if d.iter().any(|&x| x != 0 && x != 1) {
            return None;
        }
        let a = d.iter().position(|&x| x == 1)? + 1;
        let b = d.iter().rposition(|&x| x == 1)? + 1;
        d[a - 1..b].iter().all(|&x| x == 1).then_some(Interval { a, b })
    }

    /// The module as a representation of `Q^op` (identity maps on the support).
    pub fn module(&self, q: &Quiver) -> Result<Representation> {
        interval_module(q, self.a, self.b)
    }

    /// Composition series read from top to socle, e.g. `3/2/1`, when the
    /// module is uniserial; otherwise the bracket form `[a,b]`.
    pub fn label(&self, q: &Quiver) -> String {
        let inner: Vec<_> = q.arrows().iter().filter(|x| self.contains(x.source) && self.contains(x.target)).collect();
        // module maps run against the arrows of Q
        if inner.iter().all(|x| x.target == x.source + 1) {
            (self.a..=self.b).rev().map(|v| v.to_string()).collect::<Vec<_>>().join("/")
        } else if inner.iter().all(|x| x.target + 1 == x.source) {
            (self.a..=self.b).map(|v| v.to_string()).collect::<Vec<_>>().join("/")
        } else {
            self.to_string()
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.a, self.b)
    }
}

/// Indecomposable object of `C_Q`: a module, or the shifted projective
/// `T_i = P_i[1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IndecObject {
    Module(Interval),
    ShiftedProjective { i: usize },
}

impl fmt::Display for IndecObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndecObject::Module(iv) => iv.fmt(f),
            IndecObject::ShiftedProjective { i } => write!(f, "T{i}"),
        }
    }
}

impl FromStr for IndecObject {
    type Err = Error;

    /// Accepts `[a,b]` or `T<i>`; range checks happen against a quiver later.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("expected `[a,b]` or `T<i>`, got `{s}`"));
        if let Some(rest) = s.strip_prefix('T') {
            let i: usize = rest.parse().map_err(|_| bad())?;
            return if i == 0 { Err(bad()) } else { Ok(IndecObject::ShiftedProjective { i }) };
        }
        let inner = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
        if a == 0 || a > b {
            return Err(Error::BadInterval(a, b));
        }
        Ok(IndecObject::Module(Interval { a, b }))
    }
}

impl IndecObject {
    pub fn check(&self, n: usize) -> Result<()> {
        match *self {
            IndecObject::Module(Interval { a, b }) => Interval::new(a, b, n).map(|_| ()),
            IndecObject::ShiftedProjective { i } if (1..=n).contains(&i) => Ok(()),
            IndecObject::ShiftedProjective { i } => Err(Error::VertexOutOfRange(i)),
        }
    }
}

/// Coxeter transformation on dimension vectors, `Φ = −Cᵀ C⁻¹` with
/// `C_ij = #paths i → j`; sends `dim P_j` to `−dim I_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoxeterMatrix(pub Vec<Vec<i64>>);

impl CoxeterMatrix {
    pub fn new(q: &Quiver) -> Result<Self> {
        let c = q.path_count_matrix()?;
        let n = q.n();
        let rows: Vec<Vec<i64>> = c.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
        let cm = Matrix::<Rational>::from_i64_rows(n, &rows);
        let inv = cm.inverse().ok_or(Error::NotAcyclic)?;
        let phi = cm.transpose().mul(&inv);
        let entries = (0..n)
            .map(|i| (0..n).map(|j| -phi[(i, j)].to_integer().to_i64().expect("small")).collect())
            .collect();
        Ok(CoxeterMatrix(entries))
    }

    pub fn apply(&self, d: &[i64]) -> Vec<i64> {
        self.0.iter().map(|row| row.iter().zip(d).map(|(a, b)| a * b).sum()).collect()
    }
}

/// An almost-split sequence `0 → τX → ⊕ middle → X → 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArSequence {
    pub tau_x: Interval,
    pub middle: Vec<Interval>,
    pub x: Interval,
}

/// AR quiver of `mod kQ` for `Q` of type `A_n`.
#[derive(Clone, Debug)]
pub struct ARQuiver {
    quiver: Quiver,
    /// knitting order: projectives first, then each `τ⁻¹X` as it is created
    vertices: Vec<Interval>,
    arrows: BTreeSet<(Interval, Interval)>,
    /// `X ↦ τX` on non-projectives
    tau: BTreeMap<Interval, Interval>,
    projectives: Vec<Interval>,
    injectives: Vec<Interval>,
    coxeter: CoxeterMatrix,
}

fn vec_sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn to_i64(d: &[usize]) -> Vec<i64> {
    d.iter().map(|&x| x as i64).collect()
}

/// Knits the AR quiver starting from the projectives: `dim τ⁻¹X` is the sum
/// over the successors of `X` minus `dim X`, and the process stops at the
/// injectives.
pub fn knit(q: &Quiver) -> Result<ARQuiver> {
    q.require_type_a()?;
    let n = q.n();
    let c = q.path_count_matrix()?;
    let interval_of = |d: Vec<i64>| Interval::from_dim_vector(&d).ok_or(Error::NotTypeA);
    let projectives: Vec<Interval> =
        (0..n).map(|j| interval_of((0..n).map(|i| c[i][j] as i64).collect())).collect::<Result<_>>()?;
    let injectives: Vec<Interval> =
        (0..n).map(|j| interval_of((0..n).map(|i| c[j][i] as i64).collect())).collect::<Result<_>>()?;
    let is_injective = |x: &Interval| injectives.contains(x);

    let mut vertices = projectives.clone();
    let mut pred: BTreeMap<Interval, Vec<Interval>> = BTreeMap::new();
    let mut proj_succ: BTreeMap<Interval, Vec<Interval>> = BTreeMap::new();
    for p in &projectives {
        pred.entry(*p).or_default();
    }
    for a in q.arrows() {
        let (from, to) = (projectives[a.source - 1], projectives[a.target - 1]);
        pred.entry(to).or_default().push(from);
        proj_succ.entry(from).or_default().push(to);
    }
    let mut tau_inv: BTreeMap<Interval, Interval> = BTreeMap::new();
    loop {
        let mut progressed = false;
        for idx in 0..vertices.len() {
            let x = vertices[idx];
            if tau_inv.contains_key(&x) || is_injective(&x) {
                continue;
            }
            let preds = &pred[&x];
            if preds.iter().any(|y| !is_injective(y) && !tau_inv.contains_key(y)) {
                continue;
            }
            let mut succ: Vec<Interval> = proj_succ.get(&x).cloned().unwrap_or_default();
            succ.extend(preds.iter().filter_map(|y| tau_inv.get(y).copied()));
            let mut d = vec![0i64; n];
            for s in &succ {
                d = d.iter().zip(s.dim_vector(n)).map(|(u, v)| u + v as i64).collect();
            }
            let next = interval_of(vec_sub(&d, &to_i64(&x.dim_vector(n))))?;
            if vertices.contains(&next) {
                return Err(Error::InvalidQuiver(format!("knitting revisited {next}")));
            }
            vertices.push(next);
            pred.insert(next, succ);
            tau_inv.insert(x, next);
            progressed = true;
        }
        if !progressed {
            break;
        }
    }
    if vertices.len() != n * (n + 1) / 2 {
        return Err(Error::InvalidQuiver(format!("knitting produced {} modules", vertices.len())));
    }
    let arrows = pred.iter().flat_map(|(to, froms)| froms.iter().map(move |f| (*f, *to))).collect();
    let tau = tau_inv.iter().map(|(x, y)| (*y, *x)).collect();
    Ok(ARQuiver { quiver: q.clone(), vertices, arrows, tau, projectives, injectives, coxeter: CoxeterMatrix::new(q)? })
}

impl ARQuiver {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn n(&self) -> usize {
        self.quiver.n()
    }

    pub fn vertices(&self) -> &[Interval] {
        &self.vertices
    }

    pub fn arrows(&self) -> &BTreeSet<(Interval, Interval)> {
        &self.arrows
    }

    pub fn coxeter(&self) -> &CoxeterMatrix {
        &self.coxeter
    }

    /// `P_i`, for `i` in `1..=n`.
    pub fn projective(&self, i: usize) -> Interval {
        self.projectives[i - 1]
    }

    pub fn injective(&self, i: usize) -> Interval {
        self.injectives[i - 1]
    }

    pub fn is_projective(&self, x: &Interval) -> bool {
        self.projectives.contains(x)
    }

    fn check(&self, x: &Interval) -> Result<()> {
        Interval::new(x.a, x.b, self.n()).map(|_| ())
    }

    pub fn tau(&self, x: &Interval) -> Result<Interval> {
        self.check(x)?;
        self.tau.get(x).copied().ok_or_else(|| Error::IsProjective(x.to_string()))
    }

    /// All `(X, τX)` pairs, ordered by `X`.
    pub fn tau_pairs(&self) -> impl Iterator<Item = (&Interval, &Interval)> {
        self.tau.iter()
    }

    pub fn predecessors(&self, x: &Interval) -> Vec<Interval> {
        self.arrows.iter().filter(|(_, t)| t == x).map(|(s, _)| *s).collect()
    }

    pub fn ar_sequence(&self, x: &Interval) -> Result<ArSequence> {
        let tau_x = self.tau(x)?;
        Ok(ArSequence { tau_x, middle: self.predecessors(x), x: *x })
    }

    /// Every almost-split sequence, ordered by the right-hand term.
    pub fn ar_sequences(&self) -> Vec<ArSequence> {
        self.tau.keys().map(|x| self.ar_sequence(x).expect("non-projective")).collect()
    }

    /// Suspension of `C_Q` on indecomposables.
    pub fn sigma(&self, x: &IndecObject) -> Result<IndecObject> {
        x.check(self.n())?;
        Ok(match *x {
            IndecObject::Module(m) => match self.tau.get(&m) {
                Some(t) => IndecObject::Module(*t),
                None => {
                    let i = self.projectives.iter().position(|p| *p == m).expect("projective") + 1;
                    IndecObject::ShiftedProjective { i }
                }
            },
            IndecObject::ShiftedProjective { i } => IndecObject::Module(self.injective(i)),
        })
    }

    pub fn label(&self, x: &IndecObject) -> String {
        match x {
            IndecObject::Module(m) => m.label(&self.quiver),
            IndecObject::ShiftedProjective { .. } => x.to_string(),
        }
    }

    pub fn document(&self) -> ArDocument {
        let n = self.n();
        let vertices = self
            .vertices
            .iter()
            .map(|v| ArVertex {
                interval: *v,
                label: v.label(&self.quiver),
                dims: v.dim_vector(n),
                projective: self.is_projective(v),
                injective: self.injectives.contains(v),
            })
            .collect();
        ArDocument {
            n,
            vertices,
            arrows: self.arrows.iter().copied().collect(),
            tau: self.tau.iter().map(|(x, t)| (*x, *t)).collect(),
            meshes: self.ar_sequences(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ArVertex {
    pub interval: Interval,
    pub label: String,
    pub dims: Vec<usize>,
    pub projective: bool,
    pub injective: bool,
}

/// Serializable snapshot of an AR quiver.
#[derive(Clone, Debug, Serialize)]
pub struct ArDocument {
    pub n: usize,
    pub vertices: Vec<ArVertex>,
    pub arrows: Vec<(Interval, Interval)>,
    pub tau: Vec<(Interval, Interval)>,
    pub meshes: Vec<ArSequence>,
}

/// Indecomposables of `C_Q`: the intervals in lexicographic order, then
/// `T_1, …, T_n`.
pub fn cluster_indecomposables(q: &Quiver) -> Result<Vec<IndecObject>> {
    q.require_type_a()?;
    let n = q.n();
    let modules = (1..=n).flat_map(|a| (a..=n).map(move |b| IndecObject::Module(Interval { a, b })));
    Ok(modules.chain((1..=n).map(|i| IndecObject::ShiftedProjective { i })).collect())
}

/// `Φ·dim X` as an interval when it is one.
pub fn coxeter_image(phi: &CoxeterMatrix, x: &Interval, n: usize) -> Option<Interval> {
    let d = phi.apply(&to_i64(&x.dim_vector(n)));
    if d.iter().any(|v| v.is_negative()) || d.iter().all(Zero::is_zero) {
        return None;
    }
    Interval::from_dim_vector(&d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: usize, b: usize) -> Interval {
        Interval { a, b }
    }

    #[test]
    fn linear_a2() {
        let ar = knit(&Quiver::linear_a(2)).unwrap();
        assert_eq!(ar.vertices().len(), 3);
        let seq = ar.ar_sequence(&iv(2, 2)).unwrap();
        assert_eq!(seq, ArSequence { tau_x: iv(1, 1), middle: vec![iv(1, 2)], x: iv(2, 2) });
        assert!(matches!(ar.tau(&iv(1, 1)), Err(Error::IsProjective(_))));
    }

    #[test]
    fn linear_a4_tau() {
        let q = Quiver::linear_a(4);
        let ar = knit(&q).unwrap();
        assert_eq!(ar.vertices().len(), 10);
        for k in 2..=4 {
            assert_eq!(ar.tau(&iv(k, k)).unwrap(), iv(k - 1, k - 1));
        }
        assert_eq!(ar.tau(&iv(2, 3)).unwrap(), iv(1, 2));
        assert_eq!(iv(2, 3).label(&q), "3/2");
        assert_eq!(iv(1, 4).label(&q), "4/3/2/1");
        let seq = ar.ar_sequence(&iv(2, 3)).unwrap();
        let mut middle = seq.middle.clone();
        middle.sort();
        assert_eq!(middle, vec![iv(1, 3), iv(2, 2)]);
        let seq = ar.ar_sequence(&iv(4, 4)).unwrap();
        assert_eq!((seq.tau_x, seq.middle), (iv(3, 3), vec![iv(3, 4)]));
        assert_eq!(ar.projective(1), iv(1, 1));
        assert_eq!(ar.injective(1), iv(1, 4));
    }

    #[test]
    fn sigma_rule() {
        let ar = knit(&Quiver::linear_a(4)).unwrap();
        let m = |a, b| IndecObject::Module(iv(a, b));
        assert_eq!(ar.sigma(&m(2, 2)).unwrap(), m(1, 1));
        assert_eq!(ar.sigma(&m(1, 1)).unwrap(), IndecObject::ShiftedProjective { i: 1 });
        assert_eq!(ar.sigma(&IndecObject::ShiftedProjective { i: 1 }).unwrap(), m(1, 4));
    }

    #[test]
    fn counts_of_indecomposables() {
        assert_eq!(cluster_indecomposables(&Quiver::linear_a(4)).unwrap().len(), 14);
        assert_eq!(cluster_indecomposables(&Quiver::linear_a(2)).unwrap().len(), 5);
        assert_eq!(cluster_indecomposables(&Quiver::linear_a(1)).unwrap().len(), 2);
        assert!(matches!(cluster_indecomposables(&Quiver::kronecker()), Err(Error::NotTypeA)));
    }

    #[test]
    fn coxeter_matches_knitting_on_a2() {
        let q = Quiver::linear_a(2);
        let ar = knit(&q).unwrap();
        assert_eq!(coxeter_image(ar.coxeter(), &iv(2, 2), 2), Some(iv(1, 1)));
        assert_eq!(coxeter_image(ar.coxeter(), &iv(1, 1), 2), None);
    }

    #[test]
    fn object_parsing() {
        assert_eq!("[1,3]".parse::<IndecObject>().unwrap(), IndecObject::Module(iv(1, 3)));
        assert_eq!("T2".parse::<IndecObject>().unwrap(), IndecObject::ShiftedProjective { i: 2 });
        assert!("[3,1]".parse::<IndecObject>().is_err());
        assert!("X".parse::<IndecObject>().is_err());
        assert!(IndecObject::ShiftedProjective { i: 5 }.check(4).is_err());
    }
}
