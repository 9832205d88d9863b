//! Cluster characters on the cluster category of a type-A quiver, with
//! respect to the cluster-tilting object `T = kQ[1]`.
//!
//! `CC(X) = x^{ind X} · F_{HX}(ŷ)` with `ŷ_i = ∏_j x_j^{b_ji}`; `HX` is the
//! module `X` itself and `H(T_i) = 0`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::artype_a::{cluster_indecomposables, knit, ARQuiver, IndecObject};
use crate::clusteralg::exchange_binomial;
use crate::error::{Error, Result};
use crate::exactalg::ExpVec;
use crate::fpoly::{f_polynomial, FPolynomial};
use crate::quiver::{ExchangeMatrix, Quiver};
use crate::rep::Representation;
use crate::{Integer, Laurent};

pub type IndexVec = Vec<i64>;

/// Index of a representation of `Q^op`: `a − b` for a minimal injective
/// copresentation `0 → V → I^b → I^a`.
pub fn index_of_rep(v: &Representation) -> Result<IndexVec> {
    let (b, a) = v.injective_copresentation()?;
    Ok(a.iter().zip(&b).map(|(x, y)| *x as i64 - *y as i64).collect())
}

/// `ι(e)_j = −Σ_i b_ji e_i`.
pub fn iota(e: &[usize], b: &ExchangeMatrix) -> Result<IndexVec> {
    let n = b.n();
    if e.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: e.len() });
    }
    Ok((1..=n).map(|j| -(1..=n).map(|i| b.get(j, i) * e[i - 1] as i64).sum::<i64>()).collect())
}

fn monomial(exp: &[i64]) -> Laurent {
    Laurent::monomial(ExpVec(exp.iter().map(|&v| v as i32).collect()), Integer::from(1))
}

/// Everything needed to evaluate cluster characters on one quiver.
#[derive(Clone, Debug)]
pub struct CharContext {
    ar: ARQuiver,
    b: ExchangeMatrix,
    yhat: Vec<Laurent>,
}

impl CharContext {
    pub fn new(q: &Quiver) -> Result<Self> {
        Self::with_exchange_matrix(q, q.b_matrix()?)
    }

    /// Uses `b` in place of the exchange matrix of `q` when forming `ŷ`. Only
    /// meaningful as a negative control, e.g. with `b_matrix().negated()`.
    pub fn with_exchange_matrix(q: &Quiver, b: ExchangeMatrix) -> Result<Self> {
        let ar = knit(q)?;
        let n = q.n();
        if b.n() != n {
            return Err(Error::LengthMismatch { expected: n, got: b.n() });
        }
        let yhat = (1..=n).map(|i| monomial(&(1..=n).map(|j| b.get(j, i)).collect::<Vec<_>>())).collect();
        Ok(CharContext { ar, b, yhat })
    }

    pub fn quiver(&self) -> &Quiver {
        self.ar.quiver()
    }

    pub fn n(&self) -> usize {
        self.ar.n()
    }

    pub fn ar(&self) -> &ARQuiver {
        &self.ar
    }

    pub fn exchange_matrix(&self) -> &ExchangeMatrix {
        &self.b
    }

    pub fn yhat(&self) -> &[Laurent] {
        &self.yhat
    }

    pub fn module(&self, x: &IndecObject) -> Result<Option<Representation>> {
        x.check(self.n())?;
        match x {
            IndecObject::Module(m) => Ok(Some(m.module(self.quiver())?)),
            IndecObject::ShiftedProjective { .. } => Ok(None),
        }
    }

    pub fn index(&self, x: &IndecObject) -> Result<IndexVec> {
        match (x, self.module(x)?) {
            (_, Some(m)) => index_of_rep(&m),
            (IndecObject::ShiftedProjective { i }, None) => {
                Ok((1..=self.n()).map(|j| (j == *i) as i64).collect())
            }
            _ => unreachable!("modules always have a representation"),
        }
    }

    pub fn iota(&self, e: &[usize]) -> Result<IndexVec> {
        iota(e, &self.b)
    }

    /// F-polynomial of `HX`; `1` for the shifted projectives.
    pub fn f_poly(&self, x: &IndecObject) -> Result<FPolynomial> {
        match self.module(x)? {
            Some(m) => f_polynomial(&m),
            None => f_polynomial(&Representation::zero(self.quiver().opposite())),
        }
    }

    pub fn cc(&self, x: &IndecObject) -> Result<Laurent> {
        let f = self.f_poly(x)?;
        let shift = monomial(&self.index(x)?);
        shift.checked_mul(&f.poly.substitute(&self.yhat)?)
    }

    /// `CC` of a direct sum, multiplicatively; the empty sum gives `1`.
    pub fn cc_sum(&self, xs: &[IndecObject]) -> Result<Laurent> {
        xs.iter().try_fold(Laurent::one(self.n()), |acc, x| acc.checked_mul(&self.cc(x)?))
    }

    pub fn sigma(&self, x: &IndecObject) -> Result<IndecObject> {
        self.ar.sigma(x)
    }
}

/// One row of a [`CCTable`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CCEntry {
    /// `[a,b]` or `T<i>`
    pub id: String,
    pub object: IndecObject,
    pub label: String,
    pub index: IndexVec,
    pub cc: Laurent,
    pub fraction: String,
}

/// Cluster characters of all indecomposables of `C_Q`, with the inverse
/// lookup from canonical strings.
#[derive(Clone, Debug)]
pub struct CCTable {
    n: usize,
    entries: Vec<CCEntry>,
    by_value: HashMap<String, usize>,
    by_object: HashMap<IndecObject, usize>,
}

impl CCTable {
    pub fn build(ctx: &CharContext) -> Result<Self> {
        let objects = cluster_indecomposables(ctx.quiver())?;
        let entries = objects
            .par_iter()
            .map(|x| {
                let cc = ctx.cc(x)?;
                Ok(CCEntry {
                    id: x.to_string(),
                    object: *x,
                    label: ctx.ar().label(x),
                    index: ctx.index(x)?,
                    fraction: cc.fraction_string(),
                    cc,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_entries(ctx.n(), entries)
    }

    /// Checks injectivity of the value map.
    pub fn from_entries(n: usize, entries: Vec<CCEntry>) -> Result<Self> {
        let mut by_value = HashMap::new();
        let mut by_object = HashMap::new();
        for (k, e) in entries.iter().enumerate() {
            if let Some(&prev) = by_value.get(&e.cc.to_string()) {
                let prev: &CCEntry = &entries[prev];
                return Err(Error::CollisionDetected(prev.object.to_string(), e.object.to_string()));
            }
            by_value.insert(e.cc.to_string(), k);
            by_object.insert(e.object, k);
        }
        Ok(CCTable { n, entries, by_value, by_object })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[CCEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, x: &IndecObject) -> Result<&CCEntry> {
        self.by_object.get(x).map(|&k| &self.entries[k]).ok_or_else(|| Error::NotInTable(x.to_string()))
    }

    pub fn cc(&self, x: &IndecObject) -> Result<&Laurent> {
        Ok(&self.get(x)?.cc)
    }

    pub fn lookup(&self, value: &Laurent) -> Result<IndecObject> {
        self.by_value
            .get(&value.to_string())
            .map(|&k| self.entries[k].object)
            .ok_or_else(|| Error::NotInTable(value.to_string()))
    }

    pub fn value_set(&self) -> BTreeSet<String> {
        self.by_value.keys().cloned().collect()
    }

    /// Whether every value has nonnegative coefficients.
    pub fn all_positive(&self) -> bool {
        self.entries.iter().all(|e| e.cc.has_nonnegative_coefficients())
    }
}

/// A cluster-tilting object `R = ⊕ R_i` together with the quiver `Q_R`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CTObject {
    pub summands: Vec<IndecObject>,
    pub quiver: Quiver,
}

impl CTObject {
    /// `T = kQ[1] = ⊕ T_i` with quiver `Q`.
    pub fn initial(q: &Quiver) -> Result<Self> {
        q.validate_mutable()?;
        Ok(CTObject { summands: (1..=q.n()).map(|i| IndecObject::ShiftedProjective { i }).collect(), quiver: q.clone() })
    }

    /// Sorted summand identifiers.
    pub fn key(&self) -> Vec<IndecObject> {
        let mut k = self.summands.clone();
        k.sort();
        k
    }

    fn values(&self, table: &CCTable) -> Result<Vec<Laurent>> {
        self.summands.iter().map(|x| table.cc(x).cloned()).collect()
    }
}

/// Replaces `R_i` by the unique object whose character is
/// `(∏_{i→j} CC(R_j) + ∏_{h→i} CC(R_h)) / CC(R_i)`, and mutates `Q_R` at `i`.
pub fn ct_mutate(r: &CTObject, i: usize, table: &CCTable) -> Result<CTObject> {
    let values = r.values(table)?;
    let num = exchange_binomial(&r.quiver, &values, i)?;
    let new_value = num.exact_div(&values[i - 1])?;
    let mut summands = r.summands.clone();
    summands[i - 1] = table.lookup(&new_value)?;
    Ok(CTObject { summands, quiver: r.quiver.mutate(i)? })
}

/// Outcome of checking one exchange relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeCheck {
    pub holds: bool,
    pub diagnostic: Option<String>,
}

/// Checks `CC(R_i) · CC(R_i*) = ∏_{i→j} CC(R_j) + ∏_{h→i} CC(R_h)` by
/// multiplication, where `R_i*` is the complement found by [`ct_mutate`].
pub fn verify_exchange(r: &CTObject, i: usize, table: &CCTable) -> ExchangeCheck {
    let run = || -> Result<Option<String>> {
        let values = r.values(table)?;
        let rhs = exchange_binomial(&r.quiver, &values, i)?;
        let mutated = ct_mutate(r, i, table)?;
        let lhs = values[i - 1].checked_mul(table.cc(&mutated.summands[i - 1])?)?;
        Ok((lhs != rhs).then(|| format!("at {i}: {lhs} != {rhs}")))
    };
    match run() {
        Ok(None) => ExchangeCheck { holds: true, diagnostic: None },
        Ok(Some(d)) => ExchangeCheck { holds: false, diagnostic: Some(d) },
        Err(e) => ExchangeCheck { holds: false, diagnostic: Some(format!("at {i}: {e}")) },
    }
}

/// Breadth-first closure of `T` under [`ct_mutate`], sorted by key.
pub fn ct_enumerate(q: &Quiver, table: &CCTable) -> Result<Vec<CTObject>> {
    let start = CTObject::initial(q)?;
    let mut seen = std::collections::BTreeMap::new();
    seen.insert(start.key(), start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(r) = queue.pop_front() {
        for i in 1..=q.n() {
            let m = ct_mutate(&r, i, table)?;
            if let std::collections::btree_map::Entry::Vacant(slot) = seen.entry(m.key()) {
                slot.insert(m.clone());
                queue.push_back(m);
            }
        }
    }
    Ok(seen.into_values().collect())
}

/// One checked instance of `CC(τX) · CC(X) = ∏ CC(middle) + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArIdentity {
    pub x: IndecObject,
    pub tau_x: IndecObject,
    pub middle: Vec<IndecObject>,
    pub lhs: Laurent,
}

/// Checks the multiplication formula on every almost-split sequence.
pub fn verify_ar_multiplication(ctx: &CharContext, table: &CCTable) -> Result<Vec<ArIdentity>> {
    ctx.ar()
        .ar_sequences()
        .into_iter()
        .map(|seq| {
            let x = IndecObject::Module(seq.x);
            let tau_x = IndecObject::Module(seq.tau_x);
            let middle: Vec<_> = seq.middle.iter().map(|m| IndecObject::Module(*m)).collect();
            let lhs = table.cc(&tau_x)?.checked_mul(table.cc(&x)?)?;
            let prod = middle.iter().try_fold(Laurent::one(ctx.n()), |acc, m| acc.checked_mul(table.cc(m)?))?;
            let rhs = prod.checked_add(&Laurent::one(ctx.n()))?;
            if lhs != rhs {
                return Err(Error::IdentityFailed(format!(
                    "CC({tau_x})·CC({x}) = {lhs} but the middle gives {rhs}"
                )));
            }
            Ok(ArIdentity { x, tau_x, middle, lhs })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artype_a::Interval;

    fn m(a: usize, b: usize) -> IndecObject {
        IndecObject::Module(Interval { a, b })
    }

    fn lp(s: &str, n: usize) -> Laurent {
        Laurent::parse(s, n).unwrap()
    }

    #[test]
    fn a4_pins() {
        let ctx = CharContext::new(&Quiver::linear_a(4)).unwrap();
        assert_eq!(ctx.index(&m(2, 2)).unwrap(), vec![0, -1, 1, 0]);
        assert_eq!(ctx.index(&m(1, 3)).unwrap(), vec![-1, 0, 0, 1]);
        assert_eq!(ctx.index(&m(1, 1)).unwrap(), vec![-1, 1, 0, 0]);
        assert_eq!(ctx.iota(&[0, 1, 0, 0]).unwrap(), vec![-1, 0, 1, 0]);
        let expected = lp("x1*x2 + x1*x4 + x3*x4 + x2*x3*x4", 4)
            .checked_mul(&lp("x1^-1*x2^-1*x3^-1", 4))
            .unwrap();
        assert_eq!(ctx.cc(&m(1, 3)).unwrap(), expected);
        for i in 1..=4 {
            assert_eq!(ctx.cc(&IndecObject::ShiftedProjective { i }).unwrap(), Laurent::variable(4, i));
        }
        assert!(ctx.cc_sum(&[]).unwrap().is_one());
    }

    #[test]
    fn a2_table_and_exchange() {
        let q = Quiver::linear_a(2);
        let ctx = CharContext::new(&q).unwrap();
        let table = CCTable::build(&ctx).unwrap();
        let want: BTreeSet<String> = ["x1", "x2", "x1^-1 + x1^-1*x2", "x1^-1*x2^-1 + x1^-1 + x2^-1", "x2^-1 + x1*x2^-1"]
            .iter()
            .map(|s| lp(s, 2).to_string())
            .collect();
        assert_eq!(table.value_set(), want);
        let t = CTObject::initial(&q).unwrap();
        assert!(verify_exchange(&t, 1, &table).holds);
        assert_eq!(ct_mutate(&ct_mutate(&t, 1, &table).unwrap(), 1, &table).unwrap(), t);
        assert_eq!(ct_enumerate(&q, &table).unwrap().len(), 5);
        assert_eq!(verify_ar_multiplication(&ctx, &table).unwrap().len(), 1);
    }

    #[test]
    fn a1_table() {
        let ctx = CharContext::new(&Quiver::linear_a(1)).unwrap();
        let table = CCTable::build(&ctx).unwrap();
        // B = 0, so ŷ1 = 1 and F(ŷ) = 2
        let values: Vec<_> = table.entries().iter().map(|e| e.cc.to_string()).collect();
        assert_eq!(values, vec!["2*x1^-1", "x1"]);
        assert!(verify_ar_multiplication(&ctx, &table).unwrap().is_empty());
    }

    #[test]
    fn flipped_sign_breaks_ar_multiplication() {
        let q = Quiver::linear_a(3);
        let ctx = CharContext::with_exchange_matrix(&q, q.b_matrix().unwrap().negated()).unwrap();
        match CCTable::build(&ctx) {
            Ok(table) => assert!(verify_ar_multiplication(&ctx, &table).is_err()),
            Err(e) => assert!(matches!(e, Error::CollisionDetected(..))),
        }
    }

    #[test]
    fn corrupted_table_fails_exchange() {
        let q = Quiver::linear_a(2);
        let table = CCTable::build(&CharContext::new(&q).unwrap()).unwrap();
        let mut entries = table.entries().to_vec();
        let target = lp("x1^-1 + x1^-1*x2", 2);
        let k = entries.iter().position(|e| e.cc == target).unwrap();
        entries[k].cc = lp("x1 + x2", 2);
        let bad = CCTable::from_entries(2, entries).unwrap();
        let check = verify_exchange(&CTObject::initial(&q).unwrap(), 1, &bad);
        assert!(!check.holds);
        assert!(check.diagnostic.is_some());
    }
}
