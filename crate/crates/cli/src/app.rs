//! Subcommands. Each returns the text to print, or an error that decides the
//! exit code.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use clusterchar::artype_a::{knit, IndecObject};
use clusterchar::charcat::{CCTable, CTObject, CharContext};
use clusterchar::clusteralg::{enumerate_seeds, mutate_seed, Seed, SeedEnumeration, DEFAULT_MAX_DEPTH};
use clusterchar::fpoly::f_polynomial;
use clusterchar::grass::{dim_vectors_below, euler_char};
use clusterchar::quiver::Quiver;
use clusterchar::rep::Representation;
use clusterchar::verify::{run_suite, Suite, VerifyOptions};
use clusterchar::Error;
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(name = "clusterchar", version, about = "Cluster characters, F-polynomials and quiver Grassmannians")]
pub struct Cli {
    /// Quiver JSON file
    #[arg(long, global = true)]
    pub quiver: Option<PathBuf>,
    /// Representation JSON file
    #[arg(long, global = true)]
    pub rep: Option<PathBuf>,
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
    /// Depth bound for seed enumeration
    #[arg(long, global = true)]
    pub max_depth: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// F-polynomial of a representation
    Fpoly,
    /// Euler characteristics of submodule Grassmannians
    Grassmannian {
        /// Single dimension vector, e.g. `1,0`
        #[arg(long, value_delimiter = ',')]
        e: Option<Vec<usize>>,
    },
    /// Cluster character of one indecomposable, `[a,b]` or `T<i>`
    Cc {
        #[arg(long)]
        object: String,
    },
    /// Cluster characters of all indecomposables
    CcTable,
    /// Index of one indecomposable with respect to `kQ[1]`
    Index {
        #[arg(long)]
        object: String,
    },
    /// Knitted Auslander–Reiten quiver
    ArQuiver,
    /// Apply a mutation sequence to the initial seed
    Mutate {
        /// Vertices, e.g. `1,2,1`
        #[arg(long, value_delimiter = ',')]
        seq: Vec<usize>,
    },
    /// Enumerate seeds and cluster variables
    Enumerate,
    /// Run verification suites
    Verify {
        /// fpoly, grass, char, algebra or all
        #[arg(long, default_value = "all")]
        suite: String,
        /// Negate the exchange matrix used by the character checks
        #[arg(long, hide = true)]
        flip_b_sign: bool,
    },
    /// Serve the JSON API
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
    },
}

#[derive(Debug)]
pub enum CliError {
    /// Bad or unusable input; exit code 2.
    Input(String),
    /// A verification suite failed; exit code 1. Carries the report.
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Input(_) => 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Input(e.to_string())
    }
}

type Out = Result<String, CliError>;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_quiver(cli: &Cli) -> Result<Quiver, CliError> {
    let path = cli.quiver.as_deref().ok_or_else(|| CliError::Input("--quiver is required".into()))?;
    Ok(Quiver::from_json(&read(path)?)?)
}

fn load_rep(cli: &Cli) -> Result<Representation, CliError> {
    let path = cli.rep.as_deref().ok_or_else(|| CliError::Input("--rep is required".into()))?;
    Ok(Representation::from_json(&read(path)?)?)
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn vec_str<T: std::fmt::Display>(v: &[T]) -> String {
    format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

/// Decimal integer as a JSON number when it fits, as a string otherwise.
pub fn int_json(s: &str) -> Value {
    s.parse::<i64>().map(Value::from).unwrap_or_else(|_| Value::from(s))
}

pub fn execute(cli: &Cli) -> Out {
    match &cli.command {
        Command::Fpoly => fpoly(cli),
        Command::Grassmannian { e } => grassmannian(cli, e.as_deref()),
        Command::Cc { object } => cc(cli, object),
        Command::CcTable => cc_table(cli),
        Command::Index { object } => index(cli, object),
        Command::ArQuiver => ar_quiver(cli),
        Command::Mutate { seq } => mutate(cli, seq),
        Command::Enumerate => enumerate(cli),
        Command::Verify { suite, flip_b_sign } => verify(cli, suite, *flip_b_sign),
        Command::Serve { .. } => Err(CliError::Input("serve is handled by the binary".into())),
    }
}

fn fpoly(cli: &Cli) -> Out {
    let f = f_polynomial(&load_rep(cli)?)?;
    Ok(if cli.json { pretty(&f) } else { format!("{f}\n") })
}

fn grassmannian(cli: &Cli, e: Option<&[usize]>) -> Out {
    let v = load_rep(cli)?;
    let es = match e {
        Some(e) => vec![e.to_vec()],
        None => dim_vectors_below(v.dims()),
    };
    let rows = es.into_iter().map(|e| euler_char(&v, &e).map(|chi| (e, chi))).collect::<Result<Vec<_>, _>>()?;
    if cli.json {
        let rows: Vec<Value> = rows.iter().map(|(e, chi)| json!({"e": e, "chi": int_json(&chi.to_string())})).collect();
        return Ok(pretty(&json!({"dims": v.dims(), "table": rows})));
    }
    Ok(rows.iter().map(|(e, chi)| format!("{}\t{chi}\n", vec_str(e))).collect())
}

fn object(s: &str, n: usize) -> Result<IndecObject, CliError> {
    let x: IndecObject = s.parse()?;
    x.check(n)?;
    Ok(x)
}

fn cc(cli: &Cli, obj: &str) -> Out {
    let q = load_quiver(cli)?;
    let ctx = CharContext::new(&q)?;
    let x = object(obj, q.n())?;
    let v = ctx.cc(&x)?;
    if cli.json {
        return Ok(pretty(&json!({"object": x.to_string(), "cc": v.to_string(), "fraction": v.fraction_string()})));
    }
    Ok(format!("{v}\n"))
}

fn index(cli: &Cli, obj: &str) -> Out {
    let q = load_quiver(cli)?;
    let ctx = CharContext::new(&q)?;
    let x = object(obj, q.n())?;
    let ind = ctx.index(&x)?;
    if cli.json {
        return Ok(pretty(&json!({"object": x.to_string(), "index": ind})));
    }
    Ok(format!("{}\n", vec_str(&ind)))
}

fn cc_table(cli: &Cli) -> Out {
    let q = load_quiver(cli)?;
    let table = CCTable::build(&CharContext::new(&q)?)?;
    if cli.json {
        return Ok(pretty(&json!({"n": q.n(), "entries": table.entries()})));
    }
    let mut out = String::new();
    for e in table.entries() {
        writeln!(out, "{}\t{}\t{}\t{}", e.id, e.label, vec_str(&e.index), e.cc).unwrap();
    }
    Ok(out)
}

fn ar_quiver(cli: &Cli) -> Out {
    let q = load_quiver(cli)?;
    let doc = knit(&q)?.document();
    if cli.json {
        return Ok(pretty(&doc));
    }
    let mut out = String::from("vertices\n");
    for v in &doc.vertices {
        let tag = match (v.projective, v.injective) {
            (true, true) => " projective-injective",
            (true, false) => " projective",
            (false, true) => " injective",
            _ => "",
        };
        writeln!(out, "  {}\t{}{tag}", v.interval, v.label).unwrap();
    }
    out.push_str("arrows\n");
    for (s, t) in &doc.arrows {
        writeln!(out, "  {s} -> {t}").unwrap();
    }
    out.push_str("tau\n");
    for (x, t) in &doc.tau {
        writeln!(out, "  tau {x} = {t}").unwrap();
    }
    out.push_str("meshes\n");
    for m in &doc.meshes {
        let mid: Vec<String> = m.middle.iter().map(ToString::to_string).collect();
        writeln!(out, "  0 -> {} -> {} -> {} -> 0", m.tau_x, mid.join(" + "), m.x).unwrap();
    }
    Ok(out)
}

fn seed_text(s: &Seed) -> String {
    let mut out = String::new();
    for (i, v) in s.cluster.iter().enumerate() {
        writeln!(out, "x'{}\t{}\t{}", i + 1, v, v.fraction_string()).unwrap();
    }
    let arrows: Vec<String> = s.quiver.arrows().iter().map(|a| format!("{}->{}", a.source, a.target)).collect();
    writeln!(out, "quiver\t{}", arrows.join(" ")).unwrap();
    out
}

fn mutate(cli: &Cli, seq: &[usize]) -> Out {
    let q = load_quiver(cli)?;
    let mut seed = Seed::initial(&q)?;
    // the categorical mirror exists for type A only
    let mut mirror = match q.is_type_a() {
        true => {
            let table = CCTable::build(&CharContext::new(&q)?)?;
            Some((CTObject::initial(&q)?, table))
        }
        false => None,
    };
    for &i in seq {
        seed = mutate_seed(&seed, i)?;
        if let Some((r, table)) = &mut mirror {
            *r = clusterchar::charcat::ct_mutate(r, i, table)?;
        }
    }
    let ct = mirror.as_ref().map(|(r, _)| r.summands.iter().map(ToString::to_string).collect::<Vec<_>>());
    if cli.json {
        return Ok(pretty(&json!({"sequence": seq, "seed": seed, "ct_object": ct})));
    }
    let mut out = seed_text(&seed);
    if let Some(ct) = ct {
        writeln!(out, "summands\t{}", ct.join(" ")).unwrap();
    }
    Ok(out)
}

fn enumeration_text(e: &SeedEnumeration) -> String {
    let mut out = format!("seeds\t{}\nvariables\t{}\n", e.seeds.len(), e.variables.len());
    for v in &e.variables {
        writeln!(out, "{v}").unwrap();
    }
    out
}

fn enumerate(cli: &Cli) -> Out {
    let q = load_quiver(cli)?;
    let depth = cli.max_depth.unwrap_or(DEFAULT_MAX_DEPTH);
    match enumerate_seeds(&q, depth) {
        Ok(e) if cli.json => Ok(pretty(&json!({"closed": true, "seeds": e.seeds.len(), "variables": e.variables}))),
        Ok(e) => Ok(enumeration_text(&e)),
        Err(Error::DepthExceeded { depth, partial }) => {
            // partial results still go to stdout
            let body = if cli.json {
                pretty(&json!({"closed": false, "max_depth": depth, "seeds": partial.seeds.len(), "variables": partial.variables}))
            } else {
                enumeration_text(&partial)
            };
            print!("{body}");
            Err(CliError::Input(format!("enumeration did not close within depth {depth}")))
        }
        Err(e) => Err(e.into()),
    }
}

fn verify(cli: &Cli, suite: &str, flip_b_sign: bool) -> Out {
    let suite: Suite = suite.parse()?;
    let report = run_suite(suite, &VerifyOptions { flip_b_sign });
    let text = if cli.json {
        pretty(&report)
    } else {
        let mut out = String::new();
        for c in &report.checks {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            writeln!(out, "{verdict} {} ({}) [{} ms]", c.name, c.detail, c.millis).unwrap();
        }
        out
    };
    if report.passed() {
        Ok(text)
    } else {
        Err(CliError::Failed(text))
    }
}
