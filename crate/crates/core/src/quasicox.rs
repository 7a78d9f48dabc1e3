//! Generation of W by reflections through the root and coroot lattices,
//! reduced reflection factorizations, and quasi-Coxeter elements.

use std::ops::ControlFlow;
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{hnf, is_unimodular_basis, lattice_index, IntMatrix};
use crate::rootsystem::{Root, RootSystem};
use crate::simple_systems::reflections_form_simple_system;
use crate::weyl::{conjugate_reflection, reflection_length, GroupElement};

/// Index of a span inside ℤⁿ, or a note that the span has lower rank.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SpanIndex {
    Index(u64),
    RankDeficient,
}

impl Serialize for SpanIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SpanIndex::Index(i) => s.serialize_u64(*i),
            SpanIndex::RankDeficient => s.serialize_str("rank-deficient"),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenerationVerdict {
    pub generates: bool,
    pub root_span_index: SpanIndex,
    pub coroot_span_index: SpanIndex,
}

fn span_index(rows: &[&[i64]], n: usize) -> SpanIndex {
    let m = IntMatrix::from_rows_with_cols(rows, n).expect("rows of length n");
    if hnf(&m).rank < n {
        return SpanIndex::RankDeficient;
    }
    let idx = lattice_index(&m, &IntMatrix::identity(n)).expect("root coordinates lie in ℤⁿ");
    SpanIndex::Index(idx.to_u64().expect("span index fits in u64"))
}

/// Does {s_α : α ∈ r} generate W? Decided by whether the roots span the
/// root lattice and the coroots span the coroot lattice (both ℤⁿ here).
pub fn generates_lattice_criterion(rs: &RootSystem, r: &[Root]) -> GenerationVerdict {
    let n = rs.rank();
    let roots: Vec<&[i64]> = r.iter().map(|&a| rs.coords(a)).collect();
    let coroots: Vec<&[i64]> = r.iter().map(|&a| rs.coroot_coords(a)).collect();
    let root_span_index = span_index(&roots, n);
    let coroot_span_index = span_index(&coroots, n);
    GenerationVerdict {
        generates: root_span_index == SpanIndex::Index(1)
            && coroot_span_index == SpanIndex::Index(1),
        root_span_index,
        coroot_span_index,
    }
}

/// A minimal generating set: exactly n roots forming ℤ-bases of both lattices.
pub fn is_minimal_generating(rs: &RootSystem, r: &[Root]) -> bool {
    let n = rs.rank();
    if r.len() != n {
        return false;
    }
    let roots: Vec<&[i64]> = r.iter().map(|&a| rs.coords(a)).collect();
    let coroots: Vec<&[i64]> = r.iter().map(|&a| rs.coroot_coords(a)).collect();
    let basis = |rows: &[&[i64]]| {
        is_unimodular_basis(&IntMatrix::from_rows_with_cols(rows, n).expect("rows of length n"))
    };
    basis(&roots) && basis(&coroots)
}

/// An ordered reflection factorization t₁⋯t_k, each tᵢ labelled by its
/// positive root.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factorization {
    refs: Vec<Root>,
}

impl Factorization {
    /// Reflections are normalized to their positive roots.
    pub fn new(rs: &RootSystem, refs: impl IntoIterator<Item = Root>) -> Self {
        Factorization {
            refs: refs.into_iter().map(|r| rs.positive(r)).collect(),
        }
    }

    pub fn refs(&self) -> &[Root] {
        &self.refs
    }

    pub fn len(&self) -> usize {
        self.refs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.refs.is_empty()
    }

    pub fn product(&self, rs: &RootSystem) -> GroupElement {
        GroupElement::from_reflections(rs, &self.refs)
    }

    /// JSON form: list of root coordinate vectors.
    pub fn to_coords(&self, rs: &RootSystem) -> Vec<Vec<i64>> {
        self.refs.iter().map(|&r| rs.coords(r).to_vec()).collect()
    }
}

/// Visits the T-reduced factorizations of `w` depth-first, trying
/// positive roots in ascending index at every branch.
pub fn for_each_reduced_factorization<F>(rs: &RootSystem, w: &GroupElement, mut visit: F)
where
    F: FnMut(&[Root]) -> ControlFlow<()>,
{
    let k = reflection_length(rs, w);
    let mut prefix = Vec::with_capacity(k);
    let _ = descend(rs, w, k, &mut prefix, &mut visit);
}

fn descend<F>(
    rs: &RootSystem,
    w: &GroupElement,
    k: usize,
    prefix: &mut Vec<Root>,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[Root]) -> ControlFlow<()>,
{
    if k == 0 {
        return visit(prefix);
    }
    for t in rs.positive_roots() {
        // w = t·w' with ℓ(w') = ℓ(w) − 1
        let rest = GroupElement::reflection(rs, t).mul(w);
        if reflection_length(rs, &rest) != k - 1 {
            continue;
        }
        prefix.push(t);
        let flow = descend(rs, &rest, k - 1, prefix, visit);
        prefix.pop();
        flow?;
    }
    ControlFlow::Continue(())
}

/// Up to `limit` reduced factorizations of `w`, in deterministic order.
pub fn reduced_factorizations(rs: &RootSystem, w: &GroupElement, limit: usize) -> Vec<Factorization> {
    let mut out = Vec::new();
    if limit == 0 {
        return out;
    }
    for_each_reduced_factorization(rs, w, |refs| {
        out.push(Factorization {
            refs: refs.to_vec(),
        });
        if out.len() >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    out
}

/// First reduced factorization of length n whose reflections generate W.
pub fn quasi_coxeter_witness(rs: &RootSystem, w: &GroupElement) -> Option<Factorization> {
    if reflection_length(rs, w) != rs.rank() {
        return None;
    }
    let mut found = None;
    for_each_reduced_factorization(rs, w, |refs| {
        if generates_lattice_criterion(rs, refs).generates {
            found = Some(Factorization {
                refs: refs.to_vec(),
            });
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found
}

pub fn is_quasi_coxeter(rs: &RootSystem, w: &GroupElement) -> bool {
    quasi_coxeter_witness(rs, w).is_some()
}

/// First reduced factorization whose reflections form a simple system.
pub fn coxeter_witness(rs: &RootSystem, w: &GroupElement) -> Option<Factorization> {
    if reflection_length(rs, w) != rs.rank() {
        return None;
    }
    let mut found = None;
    for_each_reduced_factorization(rs, w, |refs| {
        if reflections_form_simple_system(rs, refs) {
            found = Some(Factorization {
                refs: refs.to_vec(),
            });
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found
}

/// w is a Coxeter element iff it is a product, in some order, of the
/// reflections of a simple system.
pub fn is_coxeter_element(rs: &RootSystem, w: &GroupElement) -> bool {
    coxeter_witness(rs, w).is_some()
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum HurwitzDirection {
    Left,
    Right,
}

impl FromStr for HurwitzDirection {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "left" => Ok(HurwitzDirection::Left),
            "right" => Ok(HurwitzDirection::Right),
            other => Err(format!("unknown direction {other:?} (expected left or right)")),
        }
    }
}

/// Hurwitz move on positions `i, i+1` (1-based, `1 ≤ i < len`).
///
/// Right: `(tᵢ, tᵢ₊₁) ↦ (tᵢ₊₁, tᵢ₊₁ tᵢ tᵢ₊₁)`; left: `(tᵢ, tᵢ₊₁) ↦ (tᵢ tᵢ₊₁ tᵢ, tᵢ)`.
pub fn hurwitz_move(
    rs: &RootSystem,
    f: &Factorization,
    i: usize,
    dir: HurwitzDirection,
) -> Result<Factorization> {
    if i == 0 || i >= f.len() {
        return Err(Error::HurwitzIndex { index: i, len: f.len() });
    }
    let (a, b) = (f.refs[i - 1], f.refs[i]);
    let mut refs = f.refs.clone();
    match dir {
        HurwitzDirection::Right => {
            let sb = GroupElement::reflection(rs, b);
            refs[i - 1] = b;
            refs[i] = conjugate_reflection(rs, &sb, a);
        }
        HurwitzDirection::Left => {
            let sa = GroupElement::reflection(rs, a);
            refs[i - 1] = conjugate_reflection(rs, &sa, b);
            refs[i] = a;
        }
    }
    Ok(Factorization { refs })
}

/// Does the graph on `r` with edges between non-orthogonal roots have a cycle?
pub fn factorization_graph_has_cycle(rs: &RootSystem, r: &[Root]) -> bool {
    let mut parent: Vec<usize> = (0..r.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..r.len() {
        for j in i + 1..r.len() {
            if r[i] == r[j] || rs.inner_roots(r[i], r[j]) == 0 {
                continue;
            }
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a == b {
                return true;
            }
            parent[a] = b;
        }
    }
    false
}
