//! Seeds, seed mutation and breadth-first enumeration of seeds and cluster
//! variables.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::Quiver;
use crate::Laurent;

pub const DEFAULT_MAX_DEPTH: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    pub quiver: Quiver,
    pub cluster: Vec<Laurent>,
}

/// Vertex-free identity of a seed: the set of cluster variables and the
/// arrows between them.
pub type SeedKey = (Vec<String>, Vec<(String, String)>);

impl Seed {
    /// `(Q, (x1, …, xn))`.
    pub fn initial(q: &Quiver) -> Result<Self> {
        q.validate_mutable()?;
        let n = q.n();
        Ok(Seed { quiver: q.clone(), cluster: (1..=n).map(|i| Laurent::variable(n, i)).collect() })
    }

    pub fn n(&self) -> usize {
        self.quiver.n()
    }

    pub fn key(&self) -> SeedKey {
        let names: Vec<String> = self.cluster.iter().map(ToString::to_string).collect();
        let mut vars = names.clone();
        vars.sort();
        let mut arrows: Vec<(String, String)> = self
            .quiver
            .arrows()
            .iter()
            .map(|a| (names[a.source - 1].clone(), names[a.target - 1].clone()))
            .collect();
        arrows.sort();
        (vars, arrows)
    }

    pub fn cluster_strings(&self) -> Vec<String> {
        self.cluster.iter().map(ToString::to_string).collect()
    }
}

impl Serialize for Seed {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Seed", 3)?;
        st.serialize_field("quiver", &self.quiver)?;
        st.serialize_field("cluster", &self.cluster_strings())?;
        st.serialize_field(
            "fractions",
            &self.cluster.iter().map(Laurent::fraction_string).collect::<Vec<_>>(),
        )?;
        st.end()
    }
}

/// `∏_{a: i→j} u_j + ∏_{b: h→i} u_h`, empty products being 1.
pub fn exchange_binomial(q: &Quiver, values: &[Laurent], i: usize) -> Result<Laurent> {
    q.check_vertex(i)?;
    if values.len() != q.n() {
        return Err(Error::LengthMismatch { expected: q.n(), got: values.len() });
    }
    let nvars = values.first().map_or(0, Laurent::nvars);
    let mut out_prod = Laurent::one(nvars);
    let mut in_prod = Laurent::one(nvars);
    for a in q.arrows() {
        if a.source == i {
            out_prod = out_prod.checked_mul(&values[a.target - 1])?;
        }
        if a.target == i {
            in_prod = in_prod.checked_mul(&values[a.source - 1])?;
        }
    }
    out_prod.checked_add(&in_prod)
}

pub fn mutate_seed(s: &Seed, i: usize) -> Result<Seed> {
    let num = exchange_binomial(&s.quiver, &s.cluster, i)?;
    let new_var = num.exact_div(&s.cluster[i - 1]).map_err(|err| match err {
        Error::NotDivisible { num, den } => Error::NotDivisible {
            num: format!("{num} in seed ({})", s.cluster_strings().join(", ")),
            den,
        },
        other => other,
    })?;
    let mut cluster = s.cluster.clone();
    cluster[i - 1] = new_var;
    Ok(Seed { quiver: s.quiver.mutate(i)?, cluster })
}

/// Applies mutations in order.
pub fn mutate_sequence(s: &Seed, seq: &[usize]) -> Result<Seed> {
    seq.iter().try_fold(s.clone(), |acc, &i| mutate_seed(&acc, i))
}

/// Seeds in canonical-key order and cluster variables in canonical-string
/// order.
#[derive(Clone, Debug, Serialize)]
pub struct SeedEnumeration {
    pub seeds: Vec<Seed>,
    pub variables: Vec<Laurent>,
    /// deepest BFS level reached
    pub depth: usize,
}

impl SeedEnumeration {
    pub fn variable_strings(&self) -> Vec<String> {
        self.variables.iter().map(ToString::to_string).collect()
    }

    pub fn seed_keys(&self) -> Vec<SeedKey> {
        self.seeds.iter().map(Seed::key).collect()
    }
}

pub fn enumerate_seeds(q: &Quiver, max_depth: usize) -> Result<SeedEnumeration> {
    let order: Vec<usize> = (1..=q.n()).collect();
    enumerate_seeds_in_order(q, max_depth, &order)
}

/// Breadth-first closure of the initial seed, expanding each seed at the
/// vertices in `order`. Fails with `DepthExceeded` when a new seed would lie
/// deeper than `max_depth`; the error carries everything found up to there.
pub fn enumerate_seeds_in_order(q: &Quiver, max_depth: usize, order: &[usize]) -> Result<SeedEnumeration> {
    let initial = Seed::initial(q)?;
    for &i in order {
        q.check_vertex(i)?;
    }
    let mut seen: BTreeMap<SeedKey, Seed> = BTreeMap::new();
    seen.insert(initial.key(), initial.clone());
    let mut frontier = vec![initial];
    let mut depth = 0;
    loop {
        let children: Vec<Seed> = frontier
            .par_iter()
            .map(|s| order.iter().map(|&i| mutate_seed(s, i)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        let mut next = Vec::new();
        for child in children {
            if let std::collections::btree_map::Entry::Vacant(slot) = seen.entry(child.key()) {
                slot.insert(child.clone());
                next.push(child);
            }
        }
        if next.is_empty() {
            return Ok(finish(seen, depth));
        }
        if depth + 1 > max_depth {
            for s in &next {
                seen.remove(&s.key());
            }
            return Err(Error::DepthExceeded { depth: max_depth, partial: Box::new(finish(seen, depth)) });
        }
        depth += 1;
        frontier = next;
    }
}

fn finish(seen: BTreeMap<SeedKey, Seed>, depth: usize) -> SeedEnumeration {
    let mut vars: BTreeMap<String, Laurent> = BTreeMap::new();
    for s in seen.values() {
        for v in &s.cluster {
            vars.entry(v.to_string()).or_insert_with(|| v.clone());
        }
    }
    SeedEnumeration { seeds: seen.into_values().collect(), variables: vars.into_values().collect(), depth }
}

/// Canonical strings of every variable in `e`, as a set.
pub fn variable_set(e: &SeedEnumeration) -> BTreeSet<String> {
    e.variable_strings().into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str, n: usize) -> Laurent {
        Laurent::parse(s, n).unwrap()
    }

    #[test]
    fn a2_mutations() {
        let s = Seed::initial(&Quiver::linear_a(2)).unwrap();
        let s1 = mutate_seed(&s, 1).unwrap();
        assert_eq!(s1.cluster, vec![lp("x1^-1 + x1^-1*x2", 2), lp("x2", 2)]);
        assert_eq!(mutate_seed(&s1, 1).unwrap(), s);
        let s12 = mutate_sequence(&s, &[1, 2]).unwrap();
        assert_eq!(s12.cluster[1], lp("x1^-1*x2^-1 + x1^-1 + x2^-1", 2));
    }

    #[test]
    fn finite_type_counts() {
        let e = enumerate_seeds(&Quiver::linear_a(2), DEFAULT_MAX_DEPTH).unwrap();
        assert_eq!((e.seeds.len(), e.variables.len()), (5, 5));
        let e = enumerate_seeds(&Quiver::linear_a(1), DEFAULT_MAX_DEPTH).unwrap();
        assert_eq!((e.seeds.len(), e.variables.len()), (2, 2));
    }

    #[test]
    fn kronecker_exceeds_depth() {
        match enumerate_seeds(&Quiver::kronecker(), 8) {
            Err(Error::DepthExceeded { depth, partial }) => {
                assert_eq!(depth, 8);
                assert_eq!(partial.variables.len(), 18);
                assert_eq!(partial.seeds.len(), 17);
            }
            other => panic!("expected DepthExceeded, got {other:?}"),
        }
    }

    #[test]
    fn two_cycles_are_rejected() {
        let q = Quiver::from_edges(2, &[(1, 2), (2, 1)]).unwrap();
        assert!(Seed::initial(&q).is_err());
    }
}
