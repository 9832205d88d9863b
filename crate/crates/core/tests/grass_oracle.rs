//! Subrepresentation counts against a brute-force oracle that knows nothing
//! about echelon forms: subspaces are explicit sets of vectors.

use std::collections::{BTreeMap, BTreeSet};

use clusterchar::grass::{count_subreps, dim_vectors_below, grass_table};
use clusterchar::quiver::Quiver;
use clusterchar::rep::Representation;
use num_bigint::BigInt;
use proptest::prelude::*;

type Vector = Vec<u64>;
type Space = BTreeSet<Vector>;

fn all_vectors(d: usize, q: u64) -> Vec<Vector> {
    (0..q.pow(d as u32))
        .map(|mut k| {
            (0..d)
                .map(|_| {
                    let x = k % q;
                    k /= q;
                    x
                })
                .collect()
        })
        .collect()
}

fn span(gens: &[Vector], d: usize, q: u64) -> Space {
    let mut s: Space = [vec![0; d]].into();
    for g in gens {
        let mut next = Space::new();
        for v in &s {
            for c in 0..q {
                next.insert(v.iter().zip(g).map(|(a, b)| (a + c * b) % q).collect());
            }
        }
        s = next;
    }
    s
}

/// Every subspace of `F_q^d`, as the set of its vectors.
fn all_subspaces(d: usize, q: u64) -> Vec<Space> {
    let vs = all_vectors(d, q);
    let mut out = BTreeSet::new();
    for a in &vs {
        for b in &vs {
            out.insert(span(&[a.clone(), b.clone()][..d.min(2)], d, q));
        }
    }
    if d == 0 {
        out.insert(span(&[], 0, q));
    }
    out.into_iter().collect()
}

fn dim_of(s: &Space, q: u64) -> usize {
    let mut k = 0;
    while q.pow(k as u32) < s.len() as u64 {
        k += 1;
    }
    k
}

fn apply(m: &[Vec<i64>], v: &[u64], q: u64) -> Vector {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| (a.rem_euclid(q as i64) as u64 * b) % q).sum::<u64>() % q).collect()
}

/// Counts of stable tuples by dimension vector, over all tuples of subspaces.
fn oracle(v: &Representation, q: u64) -> BTreeMap<Vec<usize>, u64> {
    let quiver = v.quiver();
    let spaces: Vec<Vec<Space>> = v.dims().iter().map(|&d| all_subspaces(d, q)).collect();
    let mut counts = BTreeMap::new();
    let mut choice = vec![0usize; quiver.n()];
    loop {
        let stable = quiver.arrows().iter().all(|a| {
            let (ws, wt) = (&spaces[a.source - 1][choice[a.source - 1]], &spaces[a.target - 1][choice[a.target - 1]]);
            ws.iter().all(|w| wt.contains(&apply(v.matrix(&a.id), w, q)))
        });
        if stable {
            let e: Vec<usize> = (0..quiver.n()).map(|i| dim_of(&spaces[i][choice[i]], q)).collect();
            *counts.entry(e).or_insert(0) += 1;
        }
        let mut k = 0;
        loop {
            if k == choice.len() {
                return counts;
            }
            choice[k] += 1;
            if choice[k] < spaces[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn quivers() -> Vec<Quiver> {
    vec![
        Quiver::kronecker(),
        Quiver::linear_a(3),
        Quiver::from_edges(3, &[(2, 1), (2, 3)]).unwrap(),
        Quiver::from_edges(3, &[(1, 2), (3, 2)]).unwrap(),
        Quiver::from_edges(1, &[(1, 1)]).unwrap(),
        Quiver::from_edges(2, &[(1, 2), (2, 1)]).unwrap(),
        Quiver::from_edges(3, &[(1, 2), (2, 3), (3, 1)]).unwrap(),
        Quiver::from_edges(2, &[(1, 1), (1, 2)]).unwrap(),
    ]
}

fn arb_rep() -> impl Strategy<Value = Representation> {
    (0..quivers().len())
        .prop_flat_map(|k| {
            let q = quivers()[k].clone();
            (Just(q.clone()), prop::collection::vec(0usize..=2, q.n()))
        })
        .prop_flat_map(|(q, dims)| {
            let shapes: Vec<(usize, usize)> = q.arrows().iter().map(|a| (dims[a.target - 1], dims[a.source - 1])).collect();
            let entries: Vec<_> = shapes.iter().map(|&(r, c)| prop::collection::vec(-1i64..=2, r * c)).collect();
            (Just(q), Just(dims), entries)
        })
        .prop_map(|(q, dims, entries)| {
            let maps = q
                .arrows()
                .iter()
                .zip(entries)
                .map(|(a, flat)| {
                    let (r, c) = (dims[a.target - 1], dims[a.source - 1]);
                    (a.id.clone(), (0..r).map(|i| flat[i * c..(i + 1) * c].to_vec()).collect())
                })
                .collect();
            Representation::new(q, dims, maps).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn counts_match_oracle(v in arb_rep(), q in prop::sample::select(vec![2u64, 3])) {
        let want = oracle(&v, q);
        let mut total = BigInt::from(0);
        for e in dim_vectors_below(v.dims()) {
            let got = count_subreps(&v, &e, q).unwrap();
            prop_assert_eq!(&got, &BigInt::from(*want.get(&e).unwrap_or(&0)), "e = {:?}", e);
            total += got;
        }
        prop_assert_eq!(total, BigInt::from(want.values().sum::<u64>()));
    }
}

#[test]
fn table_ends_are_points() {
    for q in quivers().into_iter().filter(|q| q.is_acyclic() || q.n() == 1) {
        let dims = vec![1; q.n()];
        let maps = q.arrows().iter().map(|a| (a.id.clone(), vec![vec![1]])).collect();
        let Ok(v) = Representation::new(q, dims.clone(), maps) else { continue };
        let Ok(t) = grass_table(&v) else { continue };
        assert_eq!(t[&vec![0; dims.len()]], BigInt::from(1));
        assert_eq!(t[&dims], BigInt::from(1));
        assert!(t.values().all(|c| *c == BigInt::from(0) || *c == BigInt::from(1)));
    }
}
