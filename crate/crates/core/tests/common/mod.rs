//! Test-only oracles, independent of the library's lattice code.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rootsmith::weyl::closure_subsystem;
use rootsmith::{GroupElement, Root, RootSystem};

pub fn rs(label: &str) -> RootSystem {
    RootSystem::build(label.parse().unwrap())
}

pub fn at(rs: &RootSystem, c: &[i64]) -> Root {
    rs.root_index(c).unwrap_or_else(|| panic!("{c:?} is not a root"))
}

pub fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Solve x · basis = v over ℚ for a square basis; `None` if singular.
pub fn solve_rational(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<BigRational>> {
    let n = basis.len();
    // columns of the augmented system: (basisᵀ | v)
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..n).map(|k| q(basis[k][i])).collect();
            row.push(q(v[i]));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let pivot = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x / &pivot;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..=n {
                    let sub = &f * &a[col][c];
                    a[r][c] = &a[r][c] - sub;
                }
            }
        }
    }
    Some((0..n).map(|i| a[i][n].clone()).collect())
}

/// Rank over ℚ by plain rational elimination.
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(rank, p);
        for r in rank + 1..a.len() {
            if !a[r][col].is_zero() {
                let f = &a[r][col] / &a[rank][col];
                for c in 0..cols {
                    let sub = &f * &a[rank][c];
                    a[r][c] = &a[r][c] - sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Definition of a simple system: a basis in which every root has all
/// coefficients integral and of one sign.
pub fn definitional_simple_system(rs: &RootSystem, cand: &[Root]) -> bool {
    if cand.len() != rs.rank() {
        return false;
    }
    let basis: Vec<Vec<i64>> = cand.iter().map(|&r| rs.coords(r).to_vec()).collect();
    for r in rs.roots() {
        let Some(x) = solve_rational(&basis, rs.coords(r)) else { return false };
        if !x.iter().all(|c| c.is_integer()) {
            return false;
        }
        let nonneg = x.iter().all(|c| !c.is_negative());
        let nonpos = x.iter().all(|c| !c.is_positive());
        if !nonneg && !nonpos {
            return false;
        }
    }
    true
}

/// Root subsystems of all W-conjugates of standard parabolics of rank n − 1,
/// each as a sorted list of root indices.
pub fn conjugates_of_standard_corank1(rs: &RootSystem) -> HashSet<Vec<Root>> {
    let simple: Vec<GroupElement> = rs
        .simple_roots()
        .into_iter()
        .map(|a| GroupElement::reflection(rs, a))
        .collect();
    let mut seen: HashSet<Vec<Root>> = HashSet::new();
    let mut queue = VecDeque::new();
    for drop in 0..rs.rank() {
        let gens: Vec<Root> = rs.simple_roots().into_iter().filter(|r| r.index() != drop).collect();
        let sub = closure_subsystem(rs, &gens).as_slice().to_vec();
        if seen.insert(sub.clone()) {
            queue.push_back(sub);
        }
    }
    while let Some(sub) = queue.pop_front() {
        for s in &simple {
            let mut img: Vec<Root> = sub.iter().map(|&r| s.apply_root(r)).collect();
            img.sort();
            if seen.insert(img.clone()) {
                queue.push_back(img);
            }
        }
    }
    seen
}

/// The orbit of a root under the group generated by reflections in `gens`.
pub fn root_orbit(rs: &RootSystem, gens: &[Root], start: Root) -> BTreeSet<Root> {
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(r) = queue.pop_front() {
        for &g in gens {
            let img = rs.reflect_root(g, r);
            if seen.insert(img) {
                queue.push_back(img);
            }
        }
    }
    seen
}

/// k-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

pub fn one() -> BigRational {
    BigRational::one()
}
