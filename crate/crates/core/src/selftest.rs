//! Seeded cross-validation of the lattice criterion against the root-closure
//! oracle, plus an obtusify sweep over every standard corank-one parabolic.
//!
//! Randomness: each type draws from its own `ChaCha8Rng::seed_from_u64`
//! stream, seeded with `seed ^ fnv1a64(type label)`; subsets are drawn with
//! `rand::seq::index::sample`. Results are assembled in type-label order, so
//! the summary does not depend on thread scheduling.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::quasicox::generates_lattice_criterion;
use crate::rootsystem::{CartanType, Root, RootSystem};
use crate::simple_systems::{is_simple_system, obtusify, standard_parabolic};
use crate::weyl::generates_oracle;

pub const PRNG_ID: &str = "ChaCha8Rng/seed_from_u64(seed ^ fnv1a64(type))";

pub fn fnv1a64(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// The RNG stream used for type `label`.
pub fn type_rng(seed: u64, label: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ fnv1a64(label))
}

#[derive(Clone, Debug, Serialize)]
pub struct Disagreement {
    #[serde(rename = "type")]
    pub type_label: String,
    pub roots: Vec<Vec<i64>>,
    pub criterion: bool,
    pub oracle: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TypeSummary {
    #[serde(rename = "type")]
    pub type_label: String,
    pub checks: usize,
    pub generating: usize,
    pub disagreements: usize,
    pub obtusify_runs: usize,
    pub obtusify_failures: usize,
    pub max_obtusify_steps: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub prng: &'static str,
    pub seed: u64,
    pub samples: usize,
    pub max_rank: usize,
    pub types: Vec<TypeSummary>,
    pub total_checks: usize,
    pub disagreements: usize,
    pub obtusify_failures: usize,
    pub max_obtusify_steps: usize,
    pub offending: Vec<Disagreement>,
    pub pass: bool,
}

/// `samples` random subsets of Φ⁺ for each size n, n+1, n+2 (sizes larger
/// than |Φ⁺| are skipped).
pub fn random_subsets(rs: &RootSystem, rng: &mut ChaCha8Rng, samples: usize) -> Vec<Vec<Root>> {
    let n = rs.rank();
    let positives: Vec<Root> = rs.positive_roots().collect();
    let mut out = Vec::new();
    for size in n..=n + 2 {
        if size > positives.len() {
            continue;
        }
        for _ in 0..samples {
            let mut picked: Vec<Root> = sample(rng, positives.len(), size)
                .into_iter()
                .map(|i| positives[i])
                .collect();
            picked.sort();
            out.push(picked);
        }
    }
    out
}

fn run_type(t: CartanType, seed: u64, samples: usize) -> (TypeSummary, Vec<Disagreement>) {
    let rs = RootSystem::build(t);
    let label = t.to_string();
    let mut rng = type_rng(seed, &label);
    let mut summary = TypeSummary {
        type_label: label.clone(),
        checks: 0,
        generating: 0,
        disagreements: 0,
        obtusify_runs: 0,
        obtusify_failures: 0,
        max_obtusify_steps: 0,
    };
    let mut offending = Vec::new();

    for r in random_subsets(&rs, &mut rng, samples) {
        let criterion = generates_lattice_criterion(&rs, &r).generates;
        let oracle = generates_oracle(&rs, &r);
        summary.checks += 1;
        summary.generating += usize::from(oracle);
        if criterion != oracle {
            summary.disagreements += 1;
            offending.push(Disagreement {
                type_label: label.clone(),
                roots: r.iter().map(|&a| rs.coords(a).to_vec()).collect(),
                criterion,
                oracle,
            });
        }
    }

    if samples > 0 {
        for drop in 0..rs.rank() {
            let dp = standard_parabolic(&rs, drop);
            for beta in rs.roots() {
                let mut all = dp.clone();
                all.push(beta);
                if !generates_lattice_criterion(&rs, &all).generates {
                    continue;
                }
                summary.obtusify_runs += 1;
                let ok = match obtusify(&rs, &dp, beta) {
                    Ok(trace) => {
                        summary.max_obtusify_steps = summary.max_obtusify_steps.max(trace.steps);
                        let mut sys = dp.clone();
                        sys.push(trace.gamma);
                        is_simple_system(&rs, &sys)
                            && trace.element(&rs, &dp).apply_root(beta) == trace.gamma
                    }
                    Err(_) => false,
                };
                summary.obtusify_failures += usize::from(!ok);
            }
        }
    }
    (summary, offending)
}

pub fn run(seed: u64, samples: usize, max_rank: usize) -> Summary {
    let types = CartanType::all_up_to(max_rank);
    let results: Vec<(TypeSummary, Vec<Disagreement>)> = types
        .par_iter()
        .map(|&t| run_type(t, seed, samples))
        .collect();

    let mut summaries = Vec::with_capacity(results.len());
    let mut offending = Vec::new();
    for (s, d) in results {
        summaries.push(s);
        offending.extend(d);
    }
    let total_checks = summaries.iter().map(|s| s.checks).sum();
    let disagreements = summaries.iter().map(|s| s.disagreements).sum();
    let obtusify_failures = summaries.iter().map(|s| s.obtusify_failures).sum();
    let max_obtusify_steps = summaries.iter().map(|s| s.max_obtusify_steps).max().unwrap_or(0);
    Summary {
        prng: PRNG_ID,
        seed,
        samples,
        max_rank,
        types: summaries,
        total_checks,
        disagreements,
        obtusify_failures,
        max_obtusify_steps,
        offending,
        pass: disagreements == 0 && obtusify_failures == 0,
    }
}
