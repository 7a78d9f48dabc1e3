//! Weyl group elements as permutations of the root table, reflection
//! subgroups via root closure, and a brute-force element BFS.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::IntMatrix;
use crate::rootsystem::{Root, RootSystem};

/// Default cap on subgroup size for [`group_bfs`].
pub const DEFAULT_BFS_CAP: usize = 1_000_000;

/// Environment variable overriding [`DEFAULT_BFS_CAP`].
pub const BFS_CAP_ENV: &str = "ROOTSMITH_BFS_CAP";

/// The BFS cap from `ROOTSMITH_BFS_CAP`, or the default when unset or invalid.
pub fn bfs_cap_from_env() -> usize {
    std::env::var(BFS_CAP_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&c| c > 0)
        .unwrap_or(DEFAULT_BFS_CAP)
}

/// An element w ∈ W, stored as `perm[i] = index of w(root i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    perm: Vec<u32>,
}

impl GroupElement {
    pub fn identity(rs: &RootSystem) -> Self {
        GroupElement {
            perm: (0..rs.len() as u32).collect(),
        }
    }

    /// The reflection s_α; `reflection(α) == reflection(−α)`.
    pub fn reflection(rs: &RootSystem, alpha: Root) -> Self {
        GroupElement {
            perm: rs.reflection_row(alpha).to_vec(),
        }
    }

    /// Product of reflections `s_{r₁} ⋯ s_{r_k}` (`s_{r_k}` acts first).
    pub fn from_reflections(rs: &RootSystem, word: &[Root]) -> Self {
        word.iter().fold(Self::identity(rs), |acc, &r| {
            acc.mul(&Self::reflection(rs, r))
        })
    }

    pub fn degree(&self) -> usize {
        self.perm.len()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.perm.len() != other.perm.len() {
            return Err(Error::ParentMismatch {
                left: self.perm.len(),
                right: other.perm.len(),
            });
        }
        Ok(self.mul(other))
    }

    pub(crate) fn mul(&self, other: &GroupElement) -> GroupElement {
        debug_assert_eq!(self.perm.len(), other.perm.len());
        GroupElement {
            perm: other.perm.iter().map(|&i| self.perm[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        let mut perm = vec![0u32; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            perm[p as usize] = i as u32;
        }
        GroupElement { perm }
    }

    /// The conjugate `self ∘ g ∘ self⁻¹` of `g`.
    pub fn conjugate(&self, g: &GroupElement) -> GroupElement {
        self.mul(g).mul(&self.inverse())
    }

    pub fn apply_root(&self, r: Root) -> Root {
        Root(self.perm[r.0] as usize)
    }

    /// Linear action on a coordinate vector, extended from the images of
    /// the simple roots.
    pub fn apply(&self, rs: &RootSystem, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != rs.rank() {
            return Err(Error::DimensionMismatch {
                found: v.len(),
                expected: rs.rank(),
            });
        }
        self.check_parent(rs)?;
        let mut out = vec![0i64; rs.rank()];
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let img = rs.coords(self.apply_root(rs.simple_root(i)));
            for (o, x) in out.iter_mut().zip(img) {
                *o += c * x;
            }
        }
        Ok(out)
    }

    fn check_parent(&self, rs: &RootSystem) -> Result<()> {
        if self.perm.len() != rs.len() {
            return Err(Error::ParentMismatch {
                left: self.perm.len(),
                right: rs.len(),
            });
        }
        Ok(())
    }

    /// Images of the simple roots, in coordinates.
    pub fn simple_images(&self, rs: &RootSystem) -> Vec<Vec<i64>> {
        rs.simple_roots()
            .into_iter()
            .map(|a| rs.coords(self.apply_root(a)).to_vec())
            .collect()
    }

    /// Matrix of w in the simple-root basis (column j = w(αⱼ)).
    pub fn matrix(&self, rs: &RootSystem) -> IntMatrix {
        IntMatrix::from_rows(&self.simple_images(rs))
            .expect("square")
            .transpose()
    }
}

/// JSON form of a group element: the images of all simple roots.
#[derive(Serialize)]
pub struct ElementJson {
    pub simple_images: Vec<Vec<i64>>,
}

impl ElementJson {
    pub fn new(rs: &RootSystem, w: &GroupElement) -> Self {
        ElementJson {
            simple_images: w.simple_images(rs),
        }
    }
}

/// A set of roots, kept sorted by canonical index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RootSubset {
    roots: Vec<Root>,
}

impl RootSubset {
    pub fn new(roots: impl IntoIterator<Item = Root>) -> Self {
        let mut roots: Vec<Root> = roots.into_iter().collect();
        roots.sort();
        roots.dedup();
        RootSubset { roots }
    }

    /// Adds −α for every α in the set.
    pub fn with_negatives(&self, rs: &RootSystem) -> Self {
        Self::new(
            self.roots
                .iter()
                .flat_map(|&r| [r, rs.negate(r)]),
        )
    }

    pub fn as_slice(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, r: Root) -> bool {
        self.roots.binary_search(&r).is_ok()
    }

    pub fn is_subset(&self, other: &RootSubset) -> bool {
        self.roots.iter().all(|&r| other.contains(r))
    }

    pub fn iter(&self) -> impl Iterator<Item = Root> + '_ {
        self.roots.iter().copied()
    }

    pub fn coords(&self, rs: &RootSystem) -> Vec<Vec<i64>> {
        self.roots.iter().map(|&r| rs.coords(r).to_vec()).collect()
    }
}

/// Smallest root subsystem containing `r`: the W_R-orbit of R.
pub fn closure_subsystem(rs: &RootSystem, r: &[Root]) -> RootSubset {
    let mut member = vec![false; rs.len()];
    let mut list: Vec<Root> = Vec::new();
    let mut start: Vec<Root> = r.iter().flat_map(|&a| [a, rs.negate(a)]).collect();
    start.sort();
    for a in start {
        if !member[a.0] {
            member[a.0] = true;
            list.push(a);
        }
    }
    let mut head = 0;
    while head < list.len() {
        let a = list[head];
        head += 1;
        let mut j = 0;
        while j < list.len() {
            let b = list[j];
            j += 1;
            for img in [rs.reflect_root(a, b), rs.reflect_root(b, a)] {
                if !member[img.0] {
                    member[img.0] = true;
                    list.push(img);
                }
            }
        }
    }
    RootSubset::new(list)
}

/// Whether the reflections s_α, α ∈ r, generate W (root-closure oracle).
pub fn generates_oracle(rs: &RootSystem, r: &[Root]) -> bool {
    !r.is_empty() && closure_subsystem(rs, r).len() == rs.len()
}

/// ℓ_T(w) = rank(M − I) where M is the matrix of w.
pub fn reflection_length(rs: &RootSystem, w: &GroupElement) -> usize {
    let mut m = w.matrix(rs);
    for i in 0..rs.rank() {
        m[(i, i)] -= BigInt::from(1);
    }
    m.rank()
}

/// The positive root β with w·s_α·w⁻¹ = s_β.
pub fn conjugate_reflection(rs: &RootSystem, w: &GroupElement, alpha: Root) -> Root {
    rs.positive(w.apply_root(alpha))
}

/// All elements of ⟨gens⟩ in breadth-first order from the identity, or
/// [`Error::BfsOverflow`] once more than `cap` elements are found.
pub fn group_bfs(rs: &RootSystem, gens: &[GroupElement], cap: usize) -> Result<Vec<GroupElement>> {
    for g in gens {
        g.check_parent(rs)?;
    }
    let id = GroupElement::identity(rs);
    let mut seen: HashSet<GroupElement> = HashSet::new();
    let mut order = vec![id.clone()];
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    if cap == 0 {
        return Err(Error::BfsOverflow { cap });
    }
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(g);
            if seen.contains(&y) {
                continue;
            }
            if order.len() == cap {
                return Err(Error::BfsOverflow { cap });
            }
            seen.insert(y.clone());
            order.push(y.clone());
            queue.push_back(y);
        }
    }
    Ok(order)
}

/// Least k ≥ 1 with wᵏ = 1.
pub fn element_order(w: &GroupElement) -> usize {
    let mut k = 1;
    let mut p = w.clone();
    while !p.is_identity() {
        p = p.mul(w);
        k += 1;
    }
    k
}
