//! Verification suites: the worked examples and structural identities,
//! run end to end and reported check by check.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;

use crate::artype_a::{cluster_indecomposables, knit, IndecObject, Interval};
use crate::catalog;
use crate::charcat::{ct_enumerate, verify_ar_multiplication, verify_exchange, CCTable, CharContext, CTObject};
use crate::clusteralg::{enumerate_seeds, variable_set};
use crate::error::{Error, Result};
use crate::fpoly::{check_ar_identity, check_product, f_polynomial};
use crate::grass::{count_subspaces, euler_char, gaussian_binomial, grass_table};
use crate::quiver::Quiver;
use crate::rep::{interval_module, Representation};
use crate::IntPolyY;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Fpoly,
    Grass,
    Char,
    Algebra,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "fpoly" => Suite::Fpoly,
            "grass" => Suite::Grass,
            "char" => Suite::Char,
            "algebra" => Suite::Algebra,
            "all" => Suite::All,
            _ => return Err(Error::Parse(format!("unknown suite `{s}`"))),
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    /// Negates the exchange matrix used for `ŷ`; every character check
    /// should then fail.
    pub flip_b_sign: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

type Outcome = std::result::Result<String, String>;

fn run(name: &str, f: impl FnOnce() -> Outcome) -> CheckResult {
    let start = Instant::now();
    let out = f();
    let millis = start.elapsed().as_millis();
    match out {
        Ok(detail) => CheckResult { name: name.to_string(), passed: true, detail, millis },
        Err(detail) => CheckResult { name: name.to_string(), passed: false, detail, millis },
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

trait Explain<T> {
    fn explain(self) -> std::result::Result<T, String>;
}

impl<T> Explain<T> for Result<T> {
    fn explain(self) -> std::result::Result<T, String> {
        self.map_err(|e| e.to_string())
    }
}

fn context(q: &Quiver, opts: &VerifyOptions) -> Result<CharContext> {
    if opts.flip_b_sign {
        CharContext::with_exchange_matrix(q, q.b_matrix()?.negated())
    } else {
        CharContext::new(q)
    }
}

fn y(s: &str, n: usize) -> IntPolyY {
    IntPolyY::parse(s, n).expect("literal")
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Report {
    let checks = match suite {
        Suite::Grass => grass_checks(),
        Suite::Fpoly => fpoly_checks(),
        Suite::Char => char_checks(opts),
        Suite::Algebra => algebra_checks(opts),
        Suite::All => [grass_checks(), fpoly_checks(), char_checks(opts), algebra_checks(opts)].concat(),
    };
    Report { suite, checks }
}

fn grass_checks() -> Vec<CheckResult> {
    vec![
        run("kronecker grassmannian table", || {
            let table = grass_table(&catalog::kronecker_v()).explain()?;
            let want = [(vec![0, 0], 1), (vec![0, 1], 2), (vec![0, 2], 1), (vec![1, 1], 1), (vec![1, 2], 2), (vec![2, 2], 1)];
            for (e, chi) in &table {
                let expected = want.iter().find(|(w, _)| w == e).map_or(0, |(_, c)| *c);
                ensure(*chi == BigInt::from(expected), || format!("χ at {e:?} is {chi}, expected {expected}"))?;
            }
            Ok(format!("{} dimension vectors", table.len()))
        }),
        run("subspace enumeration against gaussian binomials", || {
            for q in [2, 3, 5] {
                for d in 0..=4 {
                    for e in 0..=d {
                        let got = count_subspaces(d, e, q).explain()?;
                        ensure(got == gaussian_binomial(d, e, q), || format!("d={d} e={e} q={q}: {got}"))?;
                    }
                }
            }
            Ok("d ≤ 4, q ∈ {2,3,5}".into())
        }),
        run("grassmannians of a vector space", || {
            for d in 0..=5usize {
                for i in 0..=d {
                    let chi = euler_char(&catalog::vector_space(d), &[i]).explain()?;
                    let binom: usize = (0..i).fold(1, |acc, k| acc * (d - k) / (k + 1));
                    ensure(chi == BigInt::from(binom), || format!("χ Gr({i},{d}) = {chi}"))?;
                }
            }
            Ok("d ≤ 5".into())
        }),
    ]
}

fn fpoly_checks() -> Vec<CheckResult> {
    vec![
        run("golden F-polynomials", || {
            let golden: Vec<(&str, Representation, IntPolyY)> = vec![
                ("kronecker V", catalog::kronecker_v(), y("1 + 2*y2 + y2^2 + y1*y2 + 2*y1*y2^2 + y1^2*y2^2", 2)),
                ("loop V1", catalog::loop_v1(), y("1 + y1", 1)),
                ("loop V2", catalog::loop_v2(), y("1 + y1 + y1^2", 1)),
                ("kronecker pair, first", catalog::kronecker_pair().0, y("1 + y2 + y1*y2", 2)),
                ("kronecker pair, second", catalog::kronecker_pair().1, y("1 + y2 + y1*y2", 2)),
                ("two-cycle", catalog::two_cycle_module(), y("1 + y1 + y1*y2 + y1^2*y2", 2)),
            ];
            for (name, v, want) in golden {
                let got = f_polynomial(&v).explain()?.poly;
                ensure(got == want, || format!("{name}: {got} != {want}"))?;
            }
            for d in 0..=5usize {
                let got = f_polynomial(&catalog::vector_space(d)).explain()?.poly;
                let want = y("1 + y1", 1).as_laurent().pow(d as u32);
                ensure(got.as_laurent() == &want, || format!("k^{d}: {got}"))?;
            }
            Ok("6 modules and k^d for d ≤ 5".into())
        }),
        run("direct-sum identity", || {
            let mut pairs = 0;
            for group in product_groups().explain()? {
                for i in 0..group.len() {
                    for j in i..group.len() {
                        ensure(check_product(&group[i], &group[j]).explain()?, || {
                            format!("F_V·F_W != F_(V⊕W) for dims {:?} and {:?}", group[i].dims(), group[j].dims())
                        })?;
                        pairs += 1;
                    }
                }
            }
            Ok(format!("{pairs} pairs"))
        }),
        run("almost-split identity", || {
            let (v1, v2) = (catalog::loop_v1(), catalog::loop_v2());
            ensure(check_ar_identity(&v1, &v2, &v1).explain()?, || "loop sequence".into())?;
            let mut meshes = 1;
            for n in [4, 5] {
                meshes += check_meshes(&Quiver::linear_a(n)).explain()?;
            }
            Ok(format!("{meshes} sequences"))
        }),
    ]
}

/// Modules grouped by quiver; the direct-sum identity is checked on every
/// pair within a group.
fn product_groups() -> Result<Vec<Vec<Representation>>> {
    let (k1, k2) = catalog::kronecker_pair();
    let a4 = Quiver::linear_a(4);
    let intervals = (1..=4).flat_map(|a| (a..=4).map(move |b| (a, b))).map(|(a, b)| interval_module(&a4, a, b)).collect::<Result<_>>()?;
    Ok(vec![
        vec![catalog::kronecker_v(), k1, k2],
        vec![catalog::loop_v1(), catalog::loop_v2()],
        (0..=5).map(catalog::vector_space).collect(),
        vec![catalog::two_cycle_module()],
        intervals,
    ])
}

/// Checks `F_{τX}·F_X = F_E + y^{dim X}` on every mesh; returns the count.
pub fn check_meshes(q: &Quiver) -> Result<usize> {
    let ar = knit(q)?;
    let seqs = ar.ar_sequences();
    for s in &seqs {
        let tau_x = s.tau_x.module(q)?;
        let x = s.x.module(q)?;
        let e = s.middle.iter().map(|m| m.module(q)).try_fold(Representation::zero(q.opposite()), |acc, m| acc.direct_sum(&m?))?;
        if !check_ar_identity(&tau_x, &e, &x)? {
            return Err(Error::IdentityFailed(format!("mesh ending at {}", s.x)));
        }
    }
    Ok(seqs.len())
}

fn char_checks(opts: &VerifyOptions) -> Vec<CheckResult> {
    let a4 = Quiver::linear_a(4);
    let m = |a, b| IndecObject::Module(Interval { a, b });
    vec![
        run("index pins", || {
            let ctx = context(&a4, opts).explain()?;
            for (x, want) in [(m(2, 2), vec![0, -1, 1, 0]), (m(1, 3), vec![-1, 0, 0, 1]), (m(1, 1), vec![-1, 1, 0, 0])] {
                let got = ctx.index(&x).explain()?;
                ensure(got == want, || format!("ind {x} = {got:?}"))?;
            }
            for i in 1..=4 {
                let got = ctx.index(&IndecObject::ShiftedProjective { i }).explain()?;
                ensure(got.iter().enumerate().all(|(j, &v)| v == (j + 1 == i) as i64), || format!("ind T{i} = {got:?}"))?;
            }
            Ok("A4".into())
        }),
        run("cluster character pins", || {
            let ctx = context(&a4, opts).explain()?;
            let want = crate::Laurent::parse("x1*x2 + x1*x4 + x3*x4 + x2*x3*x4", 4)
                .and_then(|p| p.checked_mul(&crate::Laurent::parse("x1^-1*x2^-1*x3^-1", 4)?))
                .explain()?;
            let got = ctx.cc(&m(1, 3)).explain()?;
            ensure(got == want, || format!("CC(3/2/1) = {got}"))?;
            for i in 1..=4 {
                let got = ctx.cc(&IndecObject::ShiftedProjective { i }).explain()?;
                ensure(got == crate::Laurent::variable(4, i), || format!("CC(T{i}) = {got}"))?;
            }
            ensure(ctx.cc_sum(&[]).explain()?.is_one(), || "CC(0) != 1".into())?;
            Ok(got.fraction_string())
        }),
        run("iota consistency", || {
            let mut count = 0;
            for n in 1..=5 {
                let ctx = context(&Quiver::linear_a(n), opts).explain()?;
                for x in cluster_indecomposables(ctx.quiver()).explain()? {
                    let IndecObject::Module(iv) = x else { continue };
                    let lhs: Vec<i64> = ctx
                        .index(&x)
                        .explain()?
                        .iter()
                        .zip(ctx.index(&ctx.sigma(&x).explain()?).explain()?)
                        .map(|(a, b)| a + b)
                        .collect();
                    let rhs = ctx.iota(&iv.dim_vector(n)).explain()?;
                    ensure(lhs == rhs, || format!("A{n}, {iv}: {lhs:?} != {rhs:?}"))?;
                    count += 1;
                }
            }
            Ok(format!("{count} intervals"))
        }),
        run("AR multiplication", || {
            let mut count = 0;
            for n in 1..=5 {
                let ctx = context(&Quiver::linear_a(n), opts).explain()?;
                let table = CCTable::build(&ctx).explain()?;
                count += verify_ar_multiplication(&ctx, &table).explain()?.len();
            }
            Ok(format!("{count} meshes"))
        }),
        run("exchange identities on A4", || {
            let ctx = context(&a4, opts).explain()?;
            let table = CCTable::build(&ctx).explain()?;
            let objects = ct_enumerate(&a4, &table).explain()?;
            let mut count = 0;
            for r in &objects {
                for i in 1..=4 {
                    let c = verify_exchange(r, i, &table);
                    ensure(c.holds, || c.diagnostic.clone().unwrap_or_default())?;
                    count += 1;
                }
            }
            Ok(format!("{count} exchanges"))
        }),
        run("index injectivity on A4", || {
            let ctx = context(&a4, opts).explain()?;
            let objs = cluster_indecomposables(&a4).explain()?;
            let set: BTreeSet<Vec<i64>> = objs.iter().map(|x| ctx.index(x)).collect::<Result<_>>().explain()?;
            ensure(set.len() == objs.len(), || format!("{} distinct of {}", set.len(), objs.len()))?;
            Ok(format!("{} vectors", set.len()))
        }),
    ]
}

fn algebra_checks(opts: &VerifyOptions) -> Vec<CheckResult> {
    vec![
        run("categorification for A1..A5", || {
            let mut out = Vec::new();
            for n in 1..=5 {
                let q = Quiver::linear_a(n);
                let ctx = context(&q, opts).explain()?;
                let table = CCTable::build(&ctx).explain()?;
                let seeds = enumerate_seeds(&q, crate::clusteralg::DEFAULT_MAX_DEPTH).explain()?;
                let vars = variable_set(&seeds);
                ensure(vars == table.value_set(), || format!("A{n}: character values differ from cluster variables"))?;
                ensure(vars.len() == n * (n + 3) / 2, || format!("A{n}: {} variables", vars.len()))?;
                let cts = ct_enumerate(&q, &table).explain()?;
                ensure(cts.len() == seeds.seeds.len(), || {
                    format!("A{n}: {} cluster-tilting objects vs {} seeds", cts.len(), seeds.seeds.len())
                })?;
                out.push(format!("A{n}: {}/{}", vars.len(), cts.len()));
            }
            Ok(out.join(", "))
        }),
        run("Laurent phenomenon", || {
            for n in 1..=5 {
                enumerate_seeds(&Quiver::linear_a(n), crate::clusteralg::DEFAULT_MAX_DEPTH).explain()?;
            }
            match enumerate_seeds(&Quiver::kronecker(), 8) {
                Err(Error::DepthExceeded { partial, .. }) => {
                    ensure(partial.variables.len() >= 9, || format!("{} variables", partial.variables.len()))?;
                    Ok(format!("kronecker: {} variables by depth 8", partial.variables.len()))
                }
                Ok(_) => Err("kronecker enumeration closed".into()),
                Err(e) => Err(e.to_string()),
            }
        }),
        run("initial seed and T agree", || {
            let q = Quiver::linear_a(4);
            let ctx = context(&q, opts).explain()?;
            let table = CCTable::build(&ctx).explain()?;
            let t = CTObject::initial(&q).explain()?;
            let values: Vec<String> = t.summands.iter().map(|x| table.cc(x).map(|v| v.to_string())).collect::<Result<_>>().explain()?;
            ensure(values == ["x1", "x2", "x3", "x4"], || format!("{values:?}"))?;
            Ok("A4".into())
        }),
    ]
}
