//! Command-line front end. Every command prints JSON.
//!
//! Exit codes: 0 affirmative/success, 1 negative answer or failed check,
//! 2 usage or validation error. Roots are given as semicolon-separated
//! vectors of comma-separated simple-root coordinates, e.g. `"1,1;0,1"`.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::Error;
use crate::quasicox::{
    coxeter_witness, generates_lattice_criterion, hurwitz_move, quasi_coxeter_witness,
    reduced_factorizations, Factorization, HurwitzDirection,
};
use crate::rootsystem::{CartanType, Root, RootSystem};
use crate::selftest;
use crate::simple_systems::{
    completions, find_conjugator, is_parabolic_corank1, obtusify, orbit_partition,
    ObtusifyTraceJson, OrbitReportJson,
};
use crate::weyl::{
    bfs_cap_from_env, closure_subsystem, generates_oracle, group_bfs, reflection_length,
    ElementJson, GroupElement,
};

#[derive(Parser, Debug)]
#[command(name = "rootsmith", version, about = "Reflection generation in Weyl groups, decided exactly")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Emit JSON (the only output format)
    #[arg(long, global = true)]
    json: bool,
    /// Also run the root-closure oracle where applicable
    #[arg(long, global = true)]
    oracle: bool,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 100)]
    samples: usize,
    /// Maximum number of factorizations to list
    #[arg(long, global = true, default_value_t = 100)]
    limit: usize,
    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dump a root system
    Build { type_label: String },
    /// Lattice generation test for a set of reflections
    GenTest {
        type_label: String,
        #[arg(allow_hyphen_values = true)]
        roots: String,
    },
    /// Smallest root subsystem containing the given roots
    Closure {
        type_label: String,
        #[arg(allow_hyphen_values = true)]
        roots: String,
    },
    /// Quasi-Coxeter analysis of the product of the given reflections, or of
    /// every element of W when no roots are given
    QcSearch {
        type_label: String,
        #[arg(allow_hyphen_values = true)]
        roots: Option<String>,
    },
    /// Conjugate beta by the parabolic until it is obtuse to delta_p
    Obtusify {
        type_label: String,
        #[arg(allow_hyphen_values = true)]
        delta_p: String,
        #[arg(allow_hyphen_values = true)]
        beta: String,
    },
    /// Reflections completing delta_p to a generating set
    Completions {
        type_label: String,
        #[arg(allow_hyphen_values = true)]
        delta_p: String,
    },
    /// Orbits of the completions under conjugation by the parabolic
    Orbits {
        type_label: String,
        #[arg(allow_hyphen_values = true)]
        delta_p: String,
    },
    /// Find g in <rest> with g^-1 s_r1 g = s_t1
    Conjugator {
        type_label: String,
        #[arg(allow_hyphen_values = true)]
        r1: String,
        #[arg(allow_hyphen_values = true)]
        rest: String,
        #[arg(allow_hyphen_values = true)]
        t1: String,
    },
    /// Apply a Hurwitz move to a reflection factorization
    Hurwitz {
        type_label: String,
        #[arg(allow_hyphen_values = true)]
        factorization: String,
        /// 1-based position of the first reflection of the swapped pair
        #[arg(long)]
        index: usize,
        #[arg(long, default_value = "right")]
        dir: HurwitzDirection,
    },
    /// Seeded criterion-vs-oracle self-test
    Selftest {
        #[arg(long, default_value_t = 4)]
        max_rank: usize,
    },
}

/// A command failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DoesNotGenerate => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

/// Parses `"1,0;0,1"` into coordinate vectors. The empty string is the empty list.
pub fn parse_vectors(s: &str) -> Result<Vec<Vec<i64>>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(';')
        .map(|v| {
            v.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|_| format!("bad coordinate {x:?} in {v:?}"))
                })
                .collect()
        })
        .collect()
}

fn parse_roots(rs: &RootSystem, s: &str) -> Result<Vec<Root>, Failure> {
    let vectors = parse_vectors(s).map_err(usage)?;
    vectors
        .iter()
        .map(|v| rs.lookup(v).map_err(Failure::from))
        .collect()
}

fn parse_root(rs: &RootSystem, s: &str) -> Result<Root, Failure> {
    let roots = parse_roots(rs, s)?;
    match roots.as_slice() {
        [r] => Ok(*r),
        _ => Err(usage(format!("expected exactly one root, got {:?}", s))),
    }
}

fn system(label: &str) -> Result<RootSystem, Failure> {
    let t: CartanType = label.parse()?;
    Ok(RootSystem::build(t))
}

fn coords(rs: &RootSystem, r: &[Root]) -> Vec<Vec<i64>> {
    r.iter().map(|&a| rs.coords(a).to_vec()).collect()
}

fn execute(cli: &Cli) -> Result<(Value, i32), Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Build { type_label } => {
            let rs = system(type_label)?;
            Ok((serde_json::to_value(rs.dump()).expect("serializable"), 0))
        }
        Command::GenTest { type_label, roots } => {
            let rs = system(type_label)?;
            let r = parse_roots(&rs, roots)?;
            if r.is_empty() {
                return Err(usage("at least one root is required"));
            }
            let verdict = generates_lattice_criterion(&rs, &r);
            let mut out = serde_json::to_value(verdict).expect("serializable");
            if g.oracle {
                out["oracle"] = json!(generates_oracle(&rs, &r));
            }
            Ok((out, if verdict.generates { 0 } else { 1 }))
        }
        Command::Closure { type_label, roots } => {
            let rs = system(type_label)?;
            let r = parse_roots(&rs, roots)?;
            if r.is_empty() {
                return Err(usage("at least one root is required"));
            }
            let c = closure_subsystem(&rs, &r);
            let generates = c.len() == rs.len();
            Ok((
                json!({
                    "closure": c.coords(&rs),
                    "size": c.len(),
                    "generates": generates,
                }),
                if generates { 0 } else { 1 },
            ))
        }
        Command::QcSearch { type_label, roots } => {
            let rs = system(type_label)?;
            match roots {
                Some(roots) => qc_element(&rs, &parse_roots(&rs, roots)?, g.limit),
                None => qc_exhaustive(&rs),
            }
        }
        Command::Obtusify {
            type_label,
            delta_p,
            beta,
        } => {
            let rs = system(type_label)?;
            let dp = parse_roots(&rs, delta_p)?;
            let beta = parse_root(&rs, beta)?;
            let trace = obtusify(&rs, &dp, beta)?;
            Ok((
                serde_json::to_value(ObtusifyTraceJson::new(&rs, &trace)).expect("serializable"),
                0,
            ))
        }
        Command::Completions { type_label, delta_p } => {
            let rs = system(type_label)?;
            let dp = parse_roots(&rs, delta_p)?;
            let c = completions(&rs, &dp)?;
            let mut out = json!({ "completions": coords(&rs, &c) });
            let code = if dp.len() + 1 == rs.rank() {
                let parabolic = is_parabolic_corank1(&rs, &dp)?;
                out["parabolic"] = json!(parabolic);
                if parabolic { 0 } else { 1 }
            } else if c.is_empty() {
                1
            } else {
                0
            };
            Ok((out, code))
        }
        Command::Orbits { type_label, delta_p } => {
            let rs = system(type_label)?;
            let dp = parse_roots(&rs, delta_p)?;
            let report = orbit_partition(&rs, &dp, bfs_cap_from_env())?;
            let code = if report.orbit_count == 1 { 0 } else { 1 };
            Ok((
                serde_json::to_value(OrbitReportJson::new(&rs, &report)).expect("serializable"),
                code,
            ))
        }
        Command::Conjugator {
            type_label,
            r1,
            rest,
            t1,
        } => {
            let rs = system(type_label)?;
            let r1 = parse_root(&rs, r1)?;
            let rest = parse_roots(&rs, rest)?;
            let t1 = parse_root(&rs, t1)?;
            let g = find_conjugator(&rs, r1, &rest, t1)?;
            let s_r1 = GroupElement::reflection(&rs, r1);
            let verified = g.inverse().compose(&s_r1)?.compose(&g)? == GroupElement::reflection(&rs, t1);
            Ok((
                json!({ "g": ElementJson::new(&rs, &g), "verified": verified }),
                if verified { 0 } else { 1 },
            ))
        }
        Command::Hurwitz {
            type_label,
            factorization,
            index,
            dir,
        } => {
            let rs = system(type_label)?;
            let f = Factorization::new(&rs, parse_roots(&rs, factorization)?);
            let moved = hurwitz_move(&rs, &f, *index, *dir)?;
            let preserved = moved.product(&rs) == f.product(&rs);
            Ok((
                json!({
                    "before": f.to_coords(&rs),
                    "after": moved.to_coords(&rs),
                    "product_preserved": preserved,
                }),
                if preserved { 0 } else { 1 },
            ))
        }
        Command::Selftest { max_rank } => {
            let summary = selftest::run(g.seed, g.samples, *max_rank);
            let code = if summary.pass { 0 } else { 1 };
            Ok((serde_json::to_value(summary).expect("serializable"), code))
        }
    }
}

fn qc_element(rs: &RootSystem, word: &[Root], limit: usize) -> Result<(Value, i32), Failure> {
    let w = GroupElement::from_reflections(rs, word);
    let length = reflection_length(rs, &w);
    let qc = quasi_coxeter_witness(rs, &w);
    let cox = coxeter_witness(rs, &w);
    let facts: Vec<Vec<Vec<i64>>> = reduced_factorizations(rs, &w, limit)
        .iter()
        .map(|f| f.to_coords(rs))
        .collect();
    let code = if qc.is_some() { 0 } else { 1 };
    Ok((
        json!({
            "element": ElementJson::new(rs, &w),
            "reflection_length": length,
            "quasi_coxeter": qc.is_some(),
            "coxeter": cox.is_some(),
            "witness": qc.map(|f| f.to_coords(rs)),
            "factorizations": facts,
        }),
        code,
    ))
}

fn qc_exhaustive(rs: &RootSystem) -> Result<(Value, i32), Failure> {
    let gens: Vec<GroupElement> = rs
        .simple_roots()
        .into_iter()
        .map(|a| GroupElement::reflection(rs, a))
        .collect();
    let mut elements = group_bfs(rs, &gens, bfs_cap_from_env())?;
    elements.sort_by_key(|w| w.simple_images(rs));
    let n = rs.rank();
    let mut full_length = 0;
    let mut quasi = 0;
    let mut coxeter = 0;
    let mut strict = Vec::new();
    for w in &elements {
        if reflection_length(rs, w) != n {
            continue;
        }
        full_length += 1;
        let Some(witness) = quasi_coxeter_witness(rs, w) else { continue };
        quasi += 1;
        if coxeter_witness(rs, w).is_some() {
            coxeter += 1;
        } else {
            strict.push(json!({
                "element": ElementJson::new(rs, w),
                "witness": witness.to_coords(rs),
            }));
        }
    }
    Ok((
        json!({
            "type": rs.cartan_type().to_string(),
            "group_order": elements.len(),
            "full_length_elements": full_length,
            "quasi_coxeter": quasi,
            "coxeter": coxeter,
            "quasi_coxeter_not_coxeter": strict,
        }),
        0,
    ))
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let (value, code) = match execute(&cli) {
        Ok(ok) => ok,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return f.code;
        }
    };
    let mut text = serde_json::to_string_pretty(&value).expect("serializable");
    text.push('\n');
    match &cli.global.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{text}"),
    }
    code
}
