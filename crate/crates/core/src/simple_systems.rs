//! Simple systems, corank-one parabolic subgroups and the conjugation
//! procedure that moves a completing reflection into a simple system.
//!
//! `delta_p` always denotes an ordered list of roots generating a reflection
//! subgroup P of rank n − 1. Obtusify words index into it 1-based.

use std::collections::VecDeque;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::IntMatrix;
use crate::quasicox::generates_lattice_criterion;
use crate::rootsystem::{Root, RootSystem};
use crate::weyl::{closure_subsystem, conjugate_reflection, group_bfs, GroupElement};

fn span_rank(rs: &RootSystem, r: &[Root]) -> usize {
    let rows: Vec<&[i64]> = r.iter().map(|&a| rs.coords(a)).collect();
    IntMatrix::from_rows_with_cols(&rows, rs.rank())
        .expect("rows of length n")
        .rank()
}

fn pairwise_obtuse(rs: &RootSystem, r: &[Root]) -> bool {
    r.iter().enumerate().all(|(i, &a)| {
        r[i + 1..]
            .iter()
            .all(|&b| a == b || rs.inner_roots(a, b) <= 0)
    })
}

/// Is `r` (signs as given) a simple system of Φ? Checked as: n roots,
/// pairwise non-acute, and generating W.
pub fn is_simple_system(rs: &RootSystem, r: &[Root]) -> bool {
    let mut sorted = r.to_vec();
    sorted.sort();
    sorted.dedup();
    sorted.len() == rs.rank()
        && r.len() == rs.rank()
        && pairwise_obtuse(rs, r)
        && generates_lattice_criterion(rs, r).generates
}

/// Do the reflections s_α, α ∈ r, form a simple system of (W, T), i.e. is
/// there a choice of signs ±α making `r` a simple system?
pub fn reflections_form_simple_system(rs: &RootSystem, r: &[Root]) -> bool {
    let n = rs.rank();
    if r.len() != n || !generates_lattice_criterion(rs, r).generates {
        return false;
    }
    // the first sign can stay fixed: negating everything keeps obtuseness
    let free = n.saturating_sub(1);
    (0u32..1 << free).any(|mask| {
        let signed: Vec<Root> = r
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                if i > 0 && mask & (1 << (i - 1)) != 0 {
                    rs.negate(a)
                } else {
                    a
                }
            })
            .collect();
        pairwise_obtuse(rs, &signed)
    })
}

/// The canonical simple system of the subsystem spanned by `r`: the
/// indecomposable roots among its positive roots.
pub fn subsystem_simple_system(rs: &RootSystem, r: &[Root]) -> Vec<Root> {
    let sub = closure_subsystem(rs, r);
    let positives: Vec<Root> = sub.iter().filter(|&a| rs.is_positive(a)).collect();
    let n = rs.rank();
    positives
        .iter()
        .copied()
        .filter(|&a| {
            let ca = rs.coords(a);
            !positives.iter().any(|&b| {
                let cb = rs.coords(b);
                let diff: Vec<i64> = (0..n).map(|i| ca[i] - cb[i]).collect();
                rs.root_index(&diff)
                    .is_some_and(|c| rs.is_positive(c) && sub.contains(c))
            })
        })
        .collect()
}

/// The standard corank-one parabolic: all simple roots except `drop`.
pub fn standard_parabolic(rs: &RootSystem, drop: usize) -> Vec<Root> {
    rs.simple_roots()
        .into_iter()
        .filter(|r| r.index() != drop)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObtusifyTrace {
    /// The final root γ.
    pub gamma: Root,
    /// 1-based indices into `delta_p`; step k replaced β by s_{α_{jₖ}}(β).
    pub word: Vec<usize>,
    pub steps: usize,
}

impl ObtusifyTrace {
    /// The element s_{α_{j_m}} ⋯ s_{α_{j_1}} ∈ P carrying β to γ.
    pub fn element(&self, rs: &RootSystem, delta_p: &[Root]) -> GroupElement {
        let letters: Vec<Root> = self.word.iter().rev().map(|&j| delta_p[j - 1]).collect();
        GroupElement::from_reflections(rs, &letters)
    }
}

#[derive(Serialize)]
pub struct ObtusifyTraceJson {
    pub gamma: Vec<i64>,
    pub word: Vec<usize>,
    pub steps: usize,
}

impl ObtusifyTraceJson {
    pub fn new(rs: &RootSystem, t: &ObtusifyTrace) -> Self {
        ObtusifyTraceJson {
            gamma: rs.coords(t.gamma).to_vec(),
            word: t.word.clone(),
            steps: t.steps,
        }
    }
}

fn check_delta_p(rs: &RootSystem, delta_p: &[Root]) -> Result<()> {
    let n = rs.rank();
    if delta_p.len() + 1 != n {
        return Err(Error::WrongCount {
            expected: n - 1,
            found: delta_p.len(),
        });
    }
    if !pairwise_obtuse(rs, delta_p) {
        return Err(Error::NotObtuse);
    }
    let rank = span_rank(rs, delta_p);
    if rank != n - 1 {
        return Err(Error::WrongRank {
            expected: n - 1,
            found: rank,
        });
    }
    Ok(())
}

/// Replace β by s_{αⱼ}(β) while some αⱼ ∈ `delta_p` has (αⱼ|β) > 0, taking the
/// smallest such j. On exit `delta_p ∪ {γ}` is a simple system of Φ.
pub fn obtusify(rs: &RootSystem, delta_p: &[Root], beta: Root) -> Result<ObtusifyTrace> {
    obtusify_by(rs, delta_p, beta, |candidates| candidates[0])
}

/// [`obtusify`] with a uniformly random admissible j at every step.
pub fn obtusify_random<R: Rng>(
    rs: &RootSystem,
    delta_p: &[Root],
    beta: Root,
    rng: &mut R,
) -> Result<ObtusifyTrace> {
    obtusify_by(rs, delta_p, beta, |candidates| {
        candidates[rng.gen_range(0..candidates.len())]
    })
}

fn obtusify_by<F>(rs: &RootSystem, delta_p: &[Root], beta: Root, mut choose: F) -> Result<ObtusifyTrace>
where
    F: FnMut(&[usize]) -> usize,
{
    check_delta_p(rs, delta_p)?;
    let mut all = delta_p.to_vec();
    all.push(beta);
    if !generates_lattice_criterion(rs, &all).generates {
        return Err(Error::DoesNotGenerate);
    }

    let cap = rs.weyl_order();
    let mut gamma = beta;
    let mut word = Vec::new();
    loop {
        let candidates: Vec<usize> = (0..delta_p.len())
            .filter(|&j| rs.inner_roots(delta_p[j], gamma) > 0)
            .collect();
        if candidates.is_empty() {
            break;
        }
        if word.len() as u128 >= cap {
            return Err(Error::Internal(format!(
                "obtusify exceeded {cap} steps without terminating"
            )));
        }
        let j = choose(&candidates);
        gamma = rs.reflect_root(delta_p[j], gamma);
        word.push(j + 1);
    }
    Ok(ObtusifyTrace {
        gamma,
        steps: word.len(),
        word,
    })
}

fn completions_unchecked(rs: &RootSystem, delta_p: &[Root]) -> Vec<Root> {
    let mut all = delta_p.to_vec();
    all.push(rs.simple_root(0));
    let last = all.len() - 1;
    rs.positive_roots()
        .filter(|&t| {
            all[last] = t;
            generates_lattice_criterion(rs, &all).generates
        })
        .collect()
}

/// All positive roots t with ⟨s_α (α ∈ delta_p), s_t⟩ = W.
pub fn completions(rs: &RootSystem, delta_p: &[Root]) -> Result<Vec<Root>> {
    let rank = span_rank(rs, delta_p);
    if rank != delta_p.len() {
        return Err(Error::WrongRank {
            expected: delta_p.len(),
            found: rank,
        });
    }
    Ok(completions_unchecked(rs, delta_p))
}

/// A reflection subgroup of rank n − 1 is parabolic iff one more
/// reflection completes it to W.
pub fn is_parabolic_corank1(rs: &RootSystem, delta_p: &[Root]) -> Result<bool> {
    let rank = span_rank(rs, delta_p);
    if rank + 1 != rs.rank() {
        return Err(Error::WrongRank {
            expected: rs.rank() - 1,
            found: rank,
        });
    }
    Ok(!completions_unchecked(rs, delta_p).is_empty())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    pub completions: Vec<Root>,
    pub orbit_count: usize,
    pub orbits: Vec<Vec<Root>>,
}

#[derive(Serialize)]
pub struct OrbitReportJson {
    pub completions: Vec<Vec<i64>>,
    pub orbit_count: usize,
    pub orbits: Vec<Vec<Vec<i64>>>,
}

impl OrbitReportJson {
    pub fn new(rs: &RootSystem, r: &OrbitReport) -> Self {
        let coords = |v: &[Root]| v.iter().map(|&a| rs.coords(a).to_vec()).collect::<Vec<_>>();
        OrbitReportJson {
            completions: coords(&r.completions),
            orbit_count: r.orbit_count,
            orbits: r.orbits.iter().map(|o| coords(o)).collect(),
        }
    }
}

/// Partition the completions of `delta_p` into orbits under conjugation by P.
/// P is enumerated element by element, so `cap` bounds |P|.
pub fn orbit_partition(rs: &RootSystem, delta_p: &[Root], cap: usize) -> Result<OrbitReport> {
    let completions = completions(rs, delta_p)?;
    let gens: Vec<GroupElement> = delta_p
        .iter()
        .map(|&a| GroupElement::reflection(rs, a))
        .collect();
    let p = group_bfs(rs, &gens, cap)?;

    let mut assigned = vec![false; rs.len()];
    let mut orbits = Vec::new();
    for &t in &completions {
        if assigned[t.index()] {
            continue;
        }
        let mut orbit: Vec<Root> = p.iter().map(|g| conjugate_reflection(rs, g, t)).collect();
        orbit.sort();
        orbit.dedup();
        for &o in &orbit {
            assigned[o.index()] = true;
        }
        orbits.push(orbit);
    }
    Ok(OrbitReport {
        orbit_count: orbits.len(),
        completions,
        orbits,
    })
}

/// Find g ∈ ⟨s_α : α ∈ rest⟩ with g⁻¹·s_{r1}·g = s_{t1}.
///
/// Both r1 and t1 are first obtusified against the canonical simple system
/// of ⟨rest⟩; when they land on the same reflection the two traces compose
/// to g. Otherwise g comes from a breadth-first search of the P-orbit of t1.
pub fn find_conjugator(rs: &RootSystem, r1: Root, rest: &[Root], t1: Root) -> Result<GroupElement> {
    let n = rs.rank();
    if rest.len() + 1 != n {
        return Err(Error::WrongCount {
            expected: n - 1,
            found: rest.len(),
        });
    }
    for head in [r1, t1] {
        let mut all = vec![head];
        all.extend_from_slice(rest);
        if !generates_lattice_criterion(rs, &all).generates {
            return Err(Error::DoesNotGenerate);
        }
    }

    let s_r1 = GroupElement::reflection(rs, r1);
    let s_t1 = GroupElement::reflection(rs, t1);
    let verify = |g: &GroupElement| g.inverse().mul(&s_r1).mul(g) == s_t1;

    let delta_p = subsystem_simple_system(rs, rest);
    let via_r = obtusify(rs, &delta_p, rs.positive(r1))?;
    let via_t = obtusify(rs, &delta_p, rs.positive(t1))?;
    if rs.positive(via_r.gamma) == rs.positive(via_t.gamma) {
        let w1 = via_r.element(rs, &delta_p);
        let w2 = via_t.element(rs, &delta_p);
        let g = w1.inverse().mul(&w2);
        if verify(&g) {
            return Ok(g);
        }
    }

    // orbit search: g(t1) = ±r1 gives g⁻¹ s_{r1} g = s_{t1}
    let target = rs.positive(r1);
    let gens: Vec<GroupElement> = rest.iter().map(|&a| GroupElement::reflection(rs, a)).collect();
    let mut seen = vec![false; rs.len()];
    let mut queue = VecDeque::from([(t1, GroupElement::identity(rs))]);
    seen[t1.index()] = true;
    while let Some((root, g)) = queue.pop_front() {
        if rs.positive(root) == target && verify(&g) {
            return Ok(g);
        }
        for s in &gens {
            let next = s.apply_root(root);
            if !seen[next.index()] {
                seen[next.index()] = true;
                queue.push_back((next, s.mul(&g)));
            }
        }
    }
    Err(Error::Internal(
        "no conjugator found although both sets generate".to_string(),
    ))
}
