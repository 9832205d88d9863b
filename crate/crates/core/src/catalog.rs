//! Small named modules used by the verification suites and the CLI.

use std::collections::BTreeMap;

use crate::quiver::Quiver;
use crate::rep::{IntMatrix, Representation};

fn build(q: Quiver, dims: Vec<usize>, maps: Vec<(&str, IntMatrix)>) -> Representation {
    let maps: BTreeMap<String, IntMatrix> = maps.into_iter().map(|(k, m)| (k.to_string(), m)).collect();
    Representation::new(q, dims, maps).expect("catalog modules are well formed")
}

/// `k² ⇉ k²` with maps `[[1,0],[0,1]]` and `[[1,1],[0,1]]`.
pub fn kronecker_v() -> Representation {
    build(
        Quiver::kronecker(),
        vec![2, 2],
        vec![("a1", vec![vec![1, 0], vec![0, 1]]), ("a2", vec![vec![1, 1], vec![0, 1]])],
    )
}

/// The non-isomorphic pair `k ⇉ k` with maps `(0, 1)` and `(1, 0)`.
pub fn kronecker_pair() -> (Representation, Representation) {
    let one = |a: i64, b: i64| build(Quiver::kronecker(), vec![1, 1], vec![("a1", vec![vec![a]]), ("a2", vec![vec![b]])]);
    (one(0, 1), one(1, 0))
}

pub fn loop_quiver() -> Quiver {
    Quiver::from_edges(1, &[(1, 1)]).expect("valid")
}

/// `k` with the zero loop.
pub fn loop_v1() -> Representation {
    build(loop_quiver(), vec![1], vec![])
}

/// `k²` with the nilpotent loop `[[0,0],[1,0]]`.
pub fn loop_v2() -> Representation {
    build(loop_quiver(), vec![2], vec![("a1", vec![vec![0, 0], vec![1, 0]])])
}

/// `k^d` on the quiver with one vertex and no arrows.
pub fn vector_space(d: usize) -> Representation {
    build(Quiver::from_edges(1, &[]).expect("valid"), vec![d], vec![])
}

/// Indecomposable `k² ⇄ k` on the 2-cycle with maps `(1 0)` and `(0 1)ᵀ`.
pub fn two_cycle_module() -> Representation {
    let q = Quiver::from_edges(2, &[(1, 2), (2, 1)]).expect("valid");
    build(q, vec![2, 1], vec![("a1", vec![vec![1, 0]]), ("a2", vec![vec![0], vec![1]])])
}
