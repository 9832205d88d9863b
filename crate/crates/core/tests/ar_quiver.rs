use std::collections::BTreeSet;

use clusterchar::artype_a::{cluster_indecomposables, coxeter_image, knit, IndecObject, Interval};
use clusterchar::quiver::Quiver;
use clusterchar::Error;

fn iv(a: usize, b: usize) -> Interval {
    Interval { a, b }
}

/// Every orientation of the path `1 — … — n`.
fn orientations(n: usize) -> Vec<Quiver> {
    (0..1u32 << (n - 1))
        .map(|mask| {
            let edges: Vec<_> =
                (1..n).map(|i| if mask >> (i - 1) & 1 == 0 { (i, i + 1) } else { (i + 1, i) }).collect();
            Quiver::from_edges(n, &edges).unwrap()
        })
        .collect()
}

fn dims(x: &Interval, n: usize) -> Vec<i64> {
    x.dim_vector(n).into_iter().map(|v| v as i64).collect()
}

#[test]
fn linear_a4_matches_the_figure() {
    let ar = knit(&Quiver::linear_a(4)).unwrap();
    let arrows: BTreeSet<(Interval, Interval)> = [
        ((1, 1), (1, 2)),
        ((1, 2), (2, 2)),
        ((1, 2), (1, 3)),
        ((2, 2), (2, 3)),
        ((1, 3), (2, 3)),
        ((1, 3), (1, 4)),
        ((2, 3), (3, 3)),
        ((2, 3), (2, 4)),
        ((1, 4), (2, 4)),
        ((3, 3), (3, 4)),
        ((2, 4), (3, 4)),
        ((3, 4), (4, 4)),
    ]
    .into_iter()
    .map(|((a, b), (c, d))| (iv(a, b), iv(c, d)))
    .collect();
    assert_eq!(ar.arrows(), &arrows);
    let tau: Vec<(Interval, Interval)> = ar.tau_pairs().map(|(x, t)| (*x, *t)).collect();
    let mut want = vec![
        (iv(2, 2), iv(1, 1)),
        (iv(3, 3), iv(2, 2)),
        (iv(4, 4), iv(3, 3)),
        (iv(2, 3), iv(1, 2)),
        (iv(3, 4), iv(2, 3)),
        (iv(2, 4), iv(1, 3)),
    ];
    want.sort();
    assert_eq!(tau, want);
}

#[test]
fn every_orientation_up_to_six() {
    for n in 1..=6 {
        for q in orientations(n) {
            let ar = knit(&q).unwrap();
            let got: BTreeSet<Interval> = ar.vertices().iter().copied().collect();
            let all: BTreeSet<Interval> = (1..=n).flat_map(|a| (a..=n).map(move |b| iv(a, b))).collect();
            assert_eq!(got, all, "{q:?}");
            for x in ar.vertices() {
                let image = coxeter_image(ar.coxeter(), x, n);
                match ar.ar_sequence(x) {
                    Ok(seq) => {
                        assert!(!seq.middle.is_empty() && seq.middle.len() <= 2);
                        let lhs: Vec<i64> = dims(&seq.tau_x, n).iter().zip(dims(x, n)).map(|(a, b)| a + b).collect();
                        let rhs = seq.middle.iter().fold(vec![0; n], |acc, m| {
                            acc.iter().zip(dims(m, n)).map(|(a, b)| a + b).collect()
                        });
                        assert_eq!(lhs, rhs, "mesh at {x}");
                        assert_eq!(image, Some(seq.tau_x), "Φ at {x}");
                    }
                    Err(Error::IsProjective(_)) => {
                        assert!(ar.is_projective(x));
                        assert_eq!(image, None);
                    }
                    Err(e) => panic!("{e}"),
                }
            }
            let objs = cluster_indecomposables(&q).unwrap();
            assert_eq!(objs.len(), n * (n + 3) / 2);
            let images: BTreeSet<IndecObject> = objs.iter().map(|x| ar.sigma(x).unwrap()).collect();
            assert_eq!(images.len(), objs.len());
            assert!(objs.iter().all(|x| ar.sigma(x).unwrap() != *x));
        }
    }
}

#[test]
fn non_type_a_is_rejected() {
    assert!(matches!(knit(&Quiver::kronecker()), Err(Error::NotTypeA)));
    let d4 = Quiver::from_edges(4, &[(1, 2), (3, 2), (4, 2)]).unwrap();
    assert!(matches!(knit(&d4), Err(Error::NotTypeA)));
}
