//! Finite quivers, paths, exchange matrices and quiver mutation.
//!
//! Vertices are numbered `1..=n`. Arrows carry string ids, which
//! representations use to key their matrices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub id: String,
    #[serde(rename = "s")]
    pub source: usize,
    #[serde(rename = "t")]
    pub target: usize,
}

#[derive(Deserialize)]
struct RawArrow {
    id: Option<String>,
    s: usize,
    t: usize,
}

#[derive(Deserialize)]
struct RawQuiver {
    n: usize,
    arrows: Vec<RawArrow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawQuiver")]
pub struct Quiver {
    n: usize,
    arrows: Vec<Arrow>,
}

impl TryFrom<RawQuiver> for Quiver {
    type Error = Error;

    fn try_from(raw: RawQuiver) -> Result<Self> {
        let arrows = raw
            .arrows
            .into_iter()
            .enumerate()
            .map(|(k, a)| Arrow { id: a.id.unwrap_or_else(|| format!("a{}", k + 1)), source: a.s, target: a.t })
            .collect();
        Quiver::new(raw.n, arrows)
    }
}

/// A path, stored with its arrows in traversal order (first arrow first).
/// Displayed right to left, e.g. `a2*a1`; lazy paths print as `e<i>`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<String>,
}

impl Path {
    pub fn lazy(i: usize) -> Self {
        Path { source: i, target: i, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            write!(f, "e{}", self.source)
        } else {
            let rev: Vec<&str> = self.arrows.iter().rev().map(String::as_str).collect();
            f.write_str(&rev.join("*"))
        }
    }
}

/// Skew-symmetric matrix `b_ij = #(i→j) − #(j→i)`, indexed from 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeMatrix(Vec<Vec<i64>>);

impl ExchangeMatrix {
    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0[i - 1][j - 1]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.0
    }

    pub fn negated(&self) -> Self {
        ExchangeMatrix(self.0.iter().map(|r| r.iter().map(|v| -v).collect()).collect())
    }

    /// Matrix mutation at `k`.
    pub fn mutate(&self, k: usize) -> Self {
        let n = self.n();
        let mut out = self.0.clone();
        for i in 1..=n {
            for j in 1..=n {
                out[i - 1][j - 1] = if i == k || j == k {
                    -self.get(i, j)
                } else {
                    let (bik, bkj) = (self.get(i, k), self.get(k, j));
                    self.get(i, j) + bik.max(0) * bkj + bik * (-bkj).max(0)
                };
            }
        }
        ExchangeMatrix(out)
    }
}

impl Quiver {
    pub fn new(n: usize, arrows: Vec<Arrow>) -> Result<Self> {
        let mut ids = BTreeSet::new();
        for a in &arrows {
            if a.source == 0 || a.source > n || a.target == 0 || a.target > n {
                return Err(Error::InvalidQuiver(format!("arrow `{}` has endpoint outside 1..={n}", a.id)));
            }
            if !ids.insert(a.id.as_str()) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow id `{}`", a.id)));
            }
        }
        Ok(Quiver { n, arrows })
    }

    /// Quiver with arrows `a1, a2, …` given as `(source, target)` pairs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let arrows = edges
            .iter()
            .enumerate()
            .map(|(k, &(s, t))| Arrow { id: format!("a{}", k + 1), source: s, target: t })
            .collect();
        Self::new(n, arrows)
    }

    /// `1 → 2 → … → n`.
    pub fn linear_a(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Self::from_edges(n, &edges).expect("valid")
    }

    /// Two arrows `1 ⇉ 2`.
    pub fn kronecker() -> Self {
        Self::from_edges(2, &[(1, 2), (1, 2)]).expect("valid")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, id: &str) -> Option<&Arrow> {
        self.arrows.iter().find(|a| a.id == id)
    }

    pub fn check_vertex(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            return Err(Error::VertexOutOfRange(i));
        }
        Ok(())
    }

    /// Same vertices and arrow ids, every arrow reversed.
    pub fn opposite(&self) -> Self {
        Quiver {
            n: self.n,
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { id: a.id.clone(), source: a.target, target: a.source })
                .collect(),
        }
    }

    /// `(source, target) ↦ number of arrows`.
    pub fn arrow_counts(&self) -> BTreeMap<(usize, usize), usize> {
        let mut m = BTreeMap::new();
        for a in &self.arrows {
            *m.entry((a.source, a.target)).or_insert(0) += 1;
        }
        m
    }

    pub fn validate_mutable(&self) -> Result<()> {
        if let Some(a) = self.arrows.iter().find(|a| a.source == a.target) {
            return Err(Error::HasLoop(a.source));
        }
        let counts = self.arrow_counts();
        for &(s, t) in counts.keys() {
            if s < t && counts.contains_key(&(t, s)) {
                return Err(Error::HasTwoCycle(s, t));
            }
        }
        Ok(())
    }

    pub fn b_matrix(&self) -> Result<ExchangeMatrix> {
        self.validate_mutable()?;
        let mut b = vec![vec![0i64; self.n]; self.n];
        for a in &self.arrows {
            b[a.source - 1][a.target - 1] += 1;
            b[a.target - 1][a.source - 1] -= 1;
        }
        Ok(ExchangeMatrix(b))
    }

    /// Quiver with `b_ij` arrows `i → j` whenever `b_ij > 0`.
    pub fn from_b_matrix(b: &ExchangeMatrix) -> Self {
        let mut edges = Vec::new();
        for i in 1..=b.n() {
            for j in 1..=b.n() {
                for _ in 0..b.get(i, j).max(0) {
                    edges.push((i, j));
                }
            }
        }
        Self::from_edges(b.n(), &edges).expect("valid")
    }

    /// Quiver mutation at `k`. The result's arrows are renamed `a1, a2, …`
    /// in `(source, target)` order.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        self.validate_mutable()?;
        self.check_vertex(k)?;
        let n = self.n;
        let mut count = vec![vec![0usize; n + 1]; n + 1];
        for a in &self.arrows {
            count[a.source][a.target] += 1;
        }
        let mut next = count.clone();
        // one new arrow h → j for each path h → k → j
        for h in 1..=n {
            for j in 1..=n {
                if h != k && j != k {
                    next[h][j] += count[h][k] * count[k][j];
                }
            }
        }
        for v in 1..=n {
            next[v][k] = count[k][v];
            next[k][v] = count[v][k];
        }
        for h in 1..=n {
            for j in h + 1..=n {
                let m = next[h][j].min(next[j][h]);
                next[h][j] -= m;
                next[j][h] -= m;
            }
        }
        let mut edges = Vec::new();
        for (s, row) in next.iter().enumerate() {
            for (t, &c) in row.iter().enumerate() {
                edges.extend(std::iter::repeat_n((s, t), c));
            }
        }
        Self::from_edges(n, &edges)
    }

    /// Vertices in an order where every arrow goes forward.
    pub fn topological_order(&self) -> Result<Vec<usize>> {
        let mut indeg = vec![0usize; self.n + 1];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut ready: BTreeSet<usize> = (1..=self.n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    ready.insert(a.target);
                }
            }
        }
        if order.len() < self.n {
            return Err(Error::NotAcyclic);
        }
        Ok(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_ok()
    }

    /// All paths, lazy ones included, ordered by length, then source, then
    /// arrow sequence.
    pub fn enumerate_paths(&self) -> Result<Vec<Path>> {
        self.topological_order()?;
        let mut all: Vec<Path> = (1..=self.n).map(Path::lazy).collect();
        let mut frontier = all.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                for a in self.arrows.iter().filter(|a| a.source == p.target) {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a.id.clone());
                    next.push(Path { source: p.source, target: a.target, arrows });
                }
            }
            next.sort_by(|a, b| (a.source, &a.arrows).cmp(&(b.source, &b.arrows)));
            all.extend(next.iter().cloned());
            frontier = next;
        }
        Ok(all)
    }

    /// Paths from `i` to `j` (traversal order). Requires an acyclic quiver.
    pub fn paths_between(&self, i: usize, j: usize) -> Result<Vec<Path>> {
        Ok(self.enumerate_paths()?.into_iter().filter(|p| p.source == i && p.target == j).collect())
    }

    /// `C[i][j] = #paths i → j` (0-based indices).
    pub fn path_count_matrix(&self) -> Result<Vec<Vec<usize>>> {
        let mut c = vec![vec![0usize; self.n]; self.n];
        for p in self.enumerate_paths()? {
            c[p.source - 1][p.target - 1] += 1;
        }
        Ok(c)
    }

    /// Underlying graph is the path `1 — 2 — … — n` (any orientation).
    pub fn is_type_a(&self) -> bool {
        if self.n == 0 || self.arrows.len() != self.n - 1 {
            return false;
        }
        let mut seen = vec![false; self.n];
        for a in &self.arrows {
            let lo = a.source.min(a.target);
            if a.source.abs_diff(a.target) != 1 || seen[lo] {
                return false;
            }
            seen[lo] = true;
        }
        true
    }

    pub fn require_type_a(&self) -> Result<()> {
        if self.is_type_a() {
            Ok(())
        } else {
            Err(Error::NotTypeA)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn multiset(q: &Quiver) -> BTreeMap<(usize, usize), usize> {
        q.arrow_counts()
    }

    #[test]
    fn validate_mutable_cases() {
        assert!(Quiver::linear_a(4).validate_mutable().is_ok());
        let loop_q = Quiver::from_edges(1, &[(1, 1)]).unwrap();
        assert!(matches!(loop_q.validate_mutable(), Err(Error::HasLoop(1))));
        let two = Quiver::from_edges(2, &[(1, 2), (2, 1)]).unwrap();
        assert!(matches!(two.validate_mutable(), Err(Error::HasTwoCycle(1, 2))));
    }

    #[test]
    fn b_matrix_cases() {
        let b = Quiver::linear_a(4).b_matrix().unwrap();
        let expect = vec![vec![0, 1, 0, 0], vec![-1, 0, 1, 0], vec![0, -1, 0, 1], vec![0, 0, -1, 0]];
        assert_eq!(b.rows(), expect.as_slice());
        assert_eq!(Quiver::kronecker().b_matrix().unwrap().get(1, 2), 2);
        let empty = Quiver::from_edges(3, &[]).unwrap().b_matrix().unwrap();
        assert!(empty.rows().iter().flatten().all(|&v| v == 0));
    }

    #[test]
    fn mutation_examples() {
        let k = Quiver::kronecker().mutate(1).unwrap();
        assert_eq!(multiset(&k), BTreeMap::from([((2, 1), 2)]));
        let a3 = Quiver::linear_a(3).mutate(2).unwrap();
        assert_eq!(multiset(&a3), BTreeMap::from([((1, 3), 1), ((2, 1), 1), ((3, 2), 1)]));
        assert!(matches!(Quiver::linear_a(3).mutate(4), Err(Error::VertexOutOfRange(4))));
    }

    #[test]
    fn path_enumeration() {
        let paths = Quiver::linear_a(3).enumerate_paths().unwrap();
        let shown: Vec<String> = paths.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, ["e1", "e2", "e3", "a1", "a2", "a2*a1"]);
        assert_eq!(Quiver::from_edges(1, &[]).unwrap().enumerate_paths().unwrap().len(), 1);
        let loop_q = Quiver::from_edges(1, &[(1, 1)]).unwrap();
        assert!(matches!(loop_q.enumerate_paths(), Err(Error::NotAcyclic)));
        for n in 1..=6 {
            assert_eq!(Quiver::linear_a(n).enumerate_paths().unwrap().len(), n * (n + 1) / 2);
        }
    }

    #[test]
    fn json_roundtrip_and_auto_ids() {
        let q = Quiver::from_json(r#"{"n": 2, "arrows": [{"s": 1, "t": 2}, {"id": "b", "s": 1, "t": 2}]}"#).unwrap();
        assert_eq!(q.arrows()[0].id, "a1");
        assert_eq!(q.arrows()[1].id, "b");
        assert_eq!(Quiver::from_json(&q.to_json()).unwrap(), q);
        assert!(Quiver::from_json(r#"{"n": 2, "arrows": [{"s": 1, "t": 3}]}"#).is_err());
        assert!(Quiver::from_json(r#"{"n": 2, "arrows": [{"id":"a","s": 1, "t": 2},{"id":"a","s":2,"t":1}]}"#).is_err());
    }

    #[test]
    fn type_a_detection() {
        assert!(Quiver::linear_a(5).is_type_a());
        assert!(Quiver::from_edges(3, &[(2, 1), (2, 3)]).unwrap().is_type_a());
        assert!(!Quiver::kronecker().is_type_a());
        assert!(!Quiver::from_edges(3, &[(1, 3), (2, 3)]).unwrap().is_type_a());
    }

    /// All mutable quivers on `n` vertices with at most `max` arrows between
    /// each pair.
    fn small_quivers(n: usize, max: i64) -> Vec<Quiver> {
        let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
        let mut out = Vec::new();
        let choices = (2 * max + 1) as usize;
        let total = choices.pow(pairs.len() as u32);
        for code in 0..total {
            let mut c = code;
            let mut edges = Vec::new();
            for &(i, j) in &pairs {
                let v = (c % choices) as i64 - max;
                c /= choices;
                for _ in 0..v.abs() {
                    edges.push(if v > 0 { (i, j) } else { (j, i) });
                }
            }
            out.push(Quiver::from_edges(n, &edges).unwrap());
        }
        out
    }

    #[test]
    fn mutation_is_involutive_and_matches_matrix_mutation() {
        for n in 1..=4 {
            let max = if n <= 3 { 2 } else { 1 };
            for q in small_quivers(n, max) {
                for k in 1..=n {
                    let m = q.mutate(k).unwrap();
                    assert!(m.validate_mutable().is_ok());
                    assert_eq!(multiset(&m.mutate(k).unwrap()), multiset(&q));
                    assert_eq!(m.b_matrix().unwrap(), q.b_matrix().unwrap().mutate(k));
                }
            }
        }
    }

    #[test]
    fn mutation_involution_on_five_vertices() {
        // a handful of generated 5-vertex quivers: all acyclic orientations of the 5-cycle graph
        let cycle = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)];
        for mask in 0..32u32 {
            let edges: Vec<_> =
                cycle.iter().enumerate().map(|(b, &(i, j))| if mask >> b & 1 == 1 { (j, i) } else { (i, j) }).collect();
            let q = Quiver::from_edges(5, &edges).unwrap();
            for k in 1..=5 {
                let m = q.mutate(k).unwrap();
                assert_eq!(multiset(&m.mutate(k).unwrap()), multiset(&q));
                assert_eq!(m.b_matrix().unwrap(), q.b_matrix().unwrap().mutate(k));
            }
        }
    }
}
