//! Exact integer linear algebra over `BigInt`: row Hermite normal form,
//! Smith elementary divisors, and the lattice comparisons built on them.
//!
//! A matrix is read as the list of its rows; "the lattice of a matrix" is
//! the ℤ-span of those rows. Dependent and zero rows are allowed.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::ser::{Error as _, SerializeSeq};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Dense row-major integer matrix with unbounded entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows. All rows must have the same length;
    /// an empty row list yields a 0×0 matrix.
    pub fn from_rows<T, R>(rows: &[R]) -> Result<Self>
    where
        T: Clone + Into<BigInt>,
        R: AsRef<[T]>,
    {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        Self::from_rows_with_cols(rows, cols)
    }

    /// Like [`IntMatrix::from_rows`], but keeps the column count when there
    /// are no rows (a 0×`cols` matrix spans the zero lattice of ℤ^cols).
    pub fn from_rows_with_cols<T, R>(rows: &[R], cols: usize) -> Result<Self>
    where
        T: Clone + Into<BigInt>,
        R: AsRef<[T]>,
    {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::RaggedMatrix {
                    row: i,
                    found: row.len(),
                    expected: cols,
                });
            }
            data.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::ColumnMismatch {
                left: self.cols,
                right: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Rank over ℚ (equal to the rank of the row lattice).
    pub fn rank(&self) -> usize {
        hnf(self).rank
    }

    /// Determinant of a square matrix (fraction-free Bareiss elimination).
    pub fn determinant(&self) -> Option<BigInt> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return Some(BigInt::zero());
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        Some(if n == 0 { sign } else { sign * prev })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] -= q · row[src]
    fn sub_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = q * &self[(src, j)];
            self[(dst, j)] -= v;
        }
    }

    /// col[dst] -= q · col[src]
    fn sub_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = q * &self[(i, src)];
            self[(i, dst)] -= v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

// JSON form: array of arrays of integers. Entries beyond i128 cannot be
// represented as JSON numbers by serde and are reported as an error.
impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            let row = self
                .row(i)
                .iter()
                .map(|x| {
                    x.to_i128()
                        .ok_or_else(|| S::Error::custom(format!("entry {x} exceeds i128")))
                })
                .collect::<std::result::Result<Vec<i128>, _>>()?;
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<i128>>::deserialize(deserializer)?;
        IntMatrix::from_rows(&rows).map_err(D::Error::custom)
    }
}

/// Row-style Hermite normal form together with its rank profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnfResult {
    pub hnf: IntMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl HnfResult {
    /// The non-zero rows of the HNF: a ℤ-basis of the row lattice.
    pub fn basis(&self) -> Vec<Vec<BigInt>> {
        (0..self.rank).map(|i| self.hnf.row(i).to_vec()).collect()
    }
}

/// Row Hermite normal form: upper echelon, positive pivots, entries above a
/// pivot reduced into `[0, pivot)`, zero rows last.
pub fn hnf(m: &IntMatrix) -> HnfResult {
    hnf_with_transform(m).0
}

/// HNF plus the unimodular matrix `U` with `U · m = hnf`.
pub fn hnf_with_transform(m: &IntMatrix) -> (HnfResult, IntMatrix) {
    let mut a = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut r = 0;
    let mut pivot_cols = Vec::new();

    for j in 0..a.cols {
        if r == a.rows {
            break;
        }
        loop {
            // Euclid on column j restricted to rows r..: bring the smallest
            // non-zero entry up and reduce the others by it.
            let best = (r..a.rows)
                .filter(|&i| !a[(i, j)].is_zero())
                .min_by(|&x, &y| a[(x, j)].abs().cmp(&a[(y, j)].abs()));
            let Some(best) = best else { break };
            a.swap_rows(r, best);
            u.swap_rows(r, best);
            let mut clean = true;
            for i in r + 1..a.rows {
                if a[(i, j)].is_zero() {
                    continue;
                }
                let q = a[(i, j)].div_floor(&a[(r, j)]);
                a.sub_row_multiple(i, r, &q);
                u.sub_row_multiple(i, r, &q);
                if !a[(i, j)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if a[(r, j)].is_zero() {
            continue;
        }
        if a[(r, j)].is_negative() {
            a.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = a[(i, j)].div_floor(&a[(r, j)]);
            a.sub_row_multiple(i, r, &q);
            u.sub_row_multiple(i, r, &q);
        }
        pivot_cols.push(j);
        r += 1;
    }

    (
        HnfResult {
            hnf: a,
            rank: r,
            pivot_cols,
        },
        u,
    )
}

/// Non-zero Smith elementary divisors `d₁ | d₂ | …`, all positive.
pub fn elementary_divisors(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let dim = a.rows.min(a.cols);
    let mut divisors = Vec::new();

    for t in 0..dim {
        let mut pivot = None;
        for i in t..a.rows {
            for j in t..a.cols {
                if a[(i, j)].is_zero() {
                    continue;
                }
                if pivot.is_none_or(|(pi, pj)| a[(i, j)].abs() < a[(pi, pj)].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..a.rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                a.sub_row_multiple(i, t, &q);
                if !a[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..a.cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                a.sub_col_multiple(j, t, &q);
                if !a[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // move the smallest remaining entry of row/column t onto the diagonal
                let mut best = (t, t);
                for i in t + 1..a.rows {
                    if !a[(i, t)].is_zero() && a[(i, t)].abs() < a[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..a.cols {
                    if !a[(t, j)].is_zero() && a[(t, j)].abs() < a[best].abs() {
                        best = (t, j);
                    }
                }
                a.swap_rows(t, best.0);
                a.swap_cols(t, best.1);
                continue;
            }
            // divisibility: fold any offending row into row t and retry
            let offending = (t + 1..a.rows).find(|&i| {
                (t + 1..a.cols).any(|j| !(&a[(i, j)] % &a[(t, t)]).is_zero())
            });
            match offending {
                Some(i) => {
                    for j in 0..a.cols {
                        let v = a[(i, j)].clone();
                        a[(t, j)] += v;
                    }
                }
                None => break,
            }
        }
        divisors.push(a[(t, t)].abs());
    }
    divisors
}

/// Whether the row lattices of `a` and `b` coincide.
pub fn lattice_span_equal(a: &IntMatrix, b: &IntMatrix) -> Result<bool> {
    if a.cols != b.cols {
        return Err(Error::ColumnMismatch {
            left: a.cols,
            right: b.cols,
        });
    }
    let (ha, hb) = (hnf(a), hnf(b));
    Ok(ha.rank == hb.rank && ha.basis() == hb.basis())
}

/// Coordinates of `v` in the echelon basis `h` (rows `0..h.rank`), or `None`
/// if `v` is not in the row lattice.
fn coordinates_in_hnf(h: &HnfResult, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rest = v.to_vec();
    let mut coords = Vec::with_capacity(h.rank);
    for (k, &pc) in h.pivot_cols.iter().enumerate() {
        let pivot = &h.hnf[(k, pc)];
        let (q, r) = rest[pc].div_rem(pivot);
        if !r.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for (j, x) in h.hnf.row(k).iter().enumerate() {
                rest[j] -= &q * x;
            }
        }
        coords.push(q);
    }
    rest.iter().all(Zero::is_zero).then_some(coords)
}

/// Index `[span(sup) : span(sub)]` for a full-rank sublattice, computed as the
/// product of the Smith elementary divisors of the change-of-basis matrix.
pub fn lattice_index(sub: &IntMatrix, sup: &IntMatrix) -> Result<BigInt> {
    if sub.cols != sup.cols {
        return Err(Error::ColumnMismatch {
            left: sub.cols,
            right: sup.cols,
        });
    }
    let (hs, hp) = (hnf(sub), hnf(sup));
    let mut change = Vec::with_capacity(hs.rank);
    for row in hs.basis() {
        change.push(coordinates_in_hnf(&hp, &row).ok_or(Error::NotSublattice)?);
    }
    if hs.rank != hp.rank {
        return Err(Error::RankMismatch {
            sub: hs.rank,
            sup: hp.rank,
        });
    }
    let change = IntMatrix::from_rows_with_cols(&change, hp.rank)?;
    Ok(elementary_divisors(&change)
        .into_iter()
        .fold(BigInt::one(), |acc, d| acc * d))
}

/// Whether the rows form a ℤ-basis of ℤⁿ (square with determinant ±1).
pub fn is_unimodular_basis(vectors: &IntMatrix) -> bool {
    if vectors.rows != vectors.cols {
        return false;
    }
    let h = hnf(vectors);
    h.rank == vectors.rows && h.hnf == IntMatrix::identity(vectors.rows)
}
