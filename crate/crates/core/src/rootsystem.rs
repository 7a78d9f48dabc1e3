//! Irreducible crystallographic root systems in simple-root coordinates.
//!
//! Roots are integer vectors in the basis of simple roots, coroots integer
//! vectors in the basis of simple coroots, so both lattices are ℤⁿ in their
//! own coordinates. The inner product is the integer Gram form
//! `gram = diag(d) · cartan` where `cartan[i][j] = ⟨αⱼ, αᵢ∨⟩` and `d` are the
//! minimal coprime symmetrizers (`(αᵢ|αᵢ) = 2·dᵢ`). Node numbering follows
//! the Bourbaki plates.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::IntMatrix;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// A Cartan–Killing type such as `B3` or `E8`, validated on construction.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    family: Family,
    rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::InadmissibleRank {
                family: family.letter(),
                rank,
            })
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Every admissible type of rank at most `max_rank`, sorted by label.
    pub fn all_up_to(max_rank: usize) -> Vec<CartanType> {
        use Family::*;
        let mut out: Vec<CartanType> = [A, B, C, D, E, F, G]
            .into_iter()
            .flat_map(|f| (1..=max_rank).filter_map(move |n| CartanType::new(f, n).ok()))
            .collect();
        out.sort_by_key(|t| t.to_string());
        out
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
            Family::E => match self.rank {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }

    /// Number of roots, from the closed-form count.
    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1),
            Family::B | Family::C => 2 * n * n,
            Family::D => 2 * n * (n - 1),
            Family::E => match n {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            Family::F => 48,
            Family::G => 12,
        }
    }

    /// Symmetric Gram matrix of the simple roots.
    fn gram(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut g = vec![vec![0i64; n]; n];
        let mut edge = |i: usize, j: usize, v: i64| {
            g[i - 1][j - 1] = v;
            g[j - 1][i - 1] = v;
        };
        let norms: Vec<i64> = match self.family {
            Family::A | Family::D | Family::E => vec![2; n],
            Family::B => (1..=n).map(|i| if i < n { 4 } else { 2 }).collect(),
            Family::C => (1..=n).map(|i| if i < n { 2 } else { 4 }).collect(),
            Family::F => vec![4, 4, 2, 2],
            Family::G => vec![2, 6],
        };
        match self.family {
            Family::A => (1..n).for_each(|i| edge(i, i + 1, -1)),
            Family::B => (1..n).for_each(|i| edge(i, i + 1, -2)),
            Family::C => (1..n).for_each(|i| edge(i, i + 1, if i + 1 == n { -2 } else { -1 })),
            Family::D => {
                (1..n - 1).for_each(|i| edge(i, i + 1, -1));
                edge(n - 2, n, -1);
            }
            Family::E => {
                edge(1, 3, -1);
                edge(2, 4, -1);
                (3..n).for_each(|i| edge(i, i + 1, -1));
            }
            Family::F => {
                edge(1, 2, -2);
                edge(2, 3, -2);
                edge(3, 4, -1);
            }
            Family::G => edge(1, 2, -3),
        }
        for (i, &x) in norms.iter().enumerate() {
            g[i][i] = x;
        }
        g
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::ParseType(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::ParseType(s.to_string()))?;
        CartanType::new(family, rank)
    }
}

impl Serialize for CartanType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Index of a root in the canonical root table of its [`RootSystem`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(pub(crate) usize);

impl Root {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan_type: CartanType,
    coroot_form: bool,
    cartan: Vec<Vec<i64>>,
    d: Vec<i64>,
    gram: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    norms: Vec<i64>,
    positive_count: usize,
    index: HashMap<Vec<i64>, usize>,
    // reflect[a * len + b] = index of s_a(root b)
    reflect: Vec<u32>,
}

/// JSON dump of a root system.
#[derive(Serialize)]
pub struct RootSystemDump<'a> {
    #[serde(rename = "type")]
    pub type_label: String,
    pub rank: usize,
    pub cartan: &'a [Vec<i64>],
    pub d: &'a [i64],
    pub gram: &'a [Vec<i64>],
    pub roots: &'a [Vec<i64>],
    pub coroots: &'a [Vec<i64>],
}

impl RootSystem {
    pub fn build(t: CartanType) -> RootSystem {
        Self::from_gram(t, false, t.gram())
    }

    /// The dual root system Φ∨, with the simple coroots as simple roots.
    /// Its roots are exactly `self.coroot_coords(α)` for α ∈ Φ.
    pub fn dual(&self) -> RootSystem {
        let n = self.rank();
        let l = self.d.iter().fold(1i64, |acc, &x| acc.lcm(&x));
        let mut gram: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| self.gram[i][j] * l / (self.d[i] * self.d[j])).collect())
            .collect();
        let g = (0..n).fold(0i64, |acc, i| acc.gcd(&(gram[i][i] / 2)));
        gram.iter_mut().flatten().for_each(|x| *x /= g);
        Self::from_gram(self.cartan_type, !self.coroot_form, gram)
    }

    fn from_gram(cartan_type: CartanType, coroot_form: bool, gram: Vec<Vec<i64>>) -> RootSystem {
        let n = gram.len();
        let d: Vec<i64> = (0..n).map(|i| gram[i][i] / 2).collect();
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| gram[i][j] / d[i]).collect())
            .collect();

        // closure of the simple roots under simple reflections
        let unit = |i: usize| -> Vec<i64> { (0..n).map(|k| i64::from(k == i)).collect() };
        let mut found: Vec<Vec<i64>> = (0..n).map(unit).collect();
        let mut seen: std::collections::HashSet<Vec<i64>> = found.iter().cloned().collect();
        let mut head = 0;
        while head < found.len() {
            let v = found[head].clone();
            head += 1;
            for i in 0..n {
                let p: i64 = (0..n).map(|j| cartan[i][j] * v[j]).sum();
                if p == 0 {
                    continue;
                }
                let mut w = v.clone();
                w[i] -= p;
                if seen.insert(w.clone()) {
                    found.push(w);
                }
            }
        }

        let mut positives: Vec<Vec<i64>> = found
            .into_iter()
            .filter(|v| v.iter().all(|&x| x >= 0))
            .collect();
        positives.sort_by(|a, b| {
            let (ha, hb): (i64, i64) = (a.iter().sum(), b.iter().sum());
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let positive_count = positives.len();
        let mut roots = positives.clone();
        roots.extend(positives.iter().map(|v| v.iter().map(|x| -x).collect::<Vec<_>>()));

        let inner = |x: &[i64], y: &[i64]| -> i64 {
            (0..n)
                .map(|i| x[i] * (0..n).map(|j| gram[i][j] * y[j]).sum::<i64>())
                .sum()
        };
        let norms: Vec<i64> = roots.iter().map(|r| inner(r, r)).collect();
        let coroots: Vec<Vec<i64>> = roots
            .iter()
            .zip(&norms)
            .map(|(r, &nm)| {
                (0..n)
                    .map(|i| {
                        let num = r[i] * d[i] * 2;
                        assert!(num % nm == 0, "non-integral coroot coordinate");
                        num / nm
                    })
                    .collect()
            })
            .collect();
        let index: HashMap<Vec<i64>, usize> =
            roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();

        let len = roots.len();
        let mut reflect = vec![0u32; len * len];
        for a in 0..len {
            // ⟨v, α∨⟩ = coroot(α)ᵀ · cartan · v
            let row: Vec<i64> = (0..n)
                .map(|j| (0..n).map(|i| coroots[a][i] * cartan[i][j]).sum())
                .collect();
            for b in 0..len {
                let p: i64 = (0..n).map(|j| row[j] * roots[b][j]).sum();
                let img: Vec<i64> = (0..n).map(|j| roots[b][j] - p * roots[a][j]).collect();
                reflect[a * len + b] = index[&img] as u32;
            }
        }

        RootSystem {
            cartan_type,
            coroot_form,
            cartan,
            d,
            gram,
            roots,
            coroots,
            norms,
            positive_count,
            index,
            reflect,
        }
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    /// True for systems obtained through [`RootSystem::dual`] an odd number of times.
    pub fn is_coroot_form(&self) -> bool {
        self.coroot_form
    }

    pub fn rank(&self) -> usize {
        self.d.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn cartan_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.cartan).expect("square")
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.d
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn gram_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.gram).expect("square")
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn positive_count(&self) -> usize {
        self.positive_count
    }

    pub fn weyl_order(&self) -> u128 {
        self.cartan_type.weyl_order()
    }

    pub fn root(&self, index: usize) -> Result<Root> {
        if index < self.roots.len() {
            Ok(Root(index))
        } else {
            Err(Error::RootOutOfRange(index))
        }
    }

    /// The `i`-th simple root (0-based).
    pub fn simple_root(&self, i: usize) -> Root {
        assert!(i < self.rank());
        Root(i)
    }

    pub fn simple_roots(&self) -> Vec<Root> {
        (0..self.rank()).map(Root).collect()
    }

    pub fn roots(&self) -> impl Iterator<Item = Root> + '_ {
        (0..self.roots.len()).map(Root)
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = Root> + '_ {
        (0..self.positive_count).map(Root)
    }

    pub fn coords(&self, r: Root) -> &[i64] {
        &self.roots[r.0]
    }

    pub fn all_coords(&self) -> &[Vec<i64>] {
        &self.roots
    }

    /// Coordinates of α∨ in the basis of simple coroots.
    pub fn coroot_coords(&self, r: Root) -> &[i64] {
        &self.coroots[r.0]
    }

    pub fn norm(&self, r: Root) -> i64 {
        self.norms[r.0]
    }

    pub fn is_positive(&self, r: Root) -> bool {
        r.0 < self.positive_count
    }

    pub fn negate(&self, r: Root) -> Root {
        let n = self.positive_count;
        Root(if r.0 < n { r.0 + n } else { r.0 - n })
    }

    /// The positive representative of ±r; labels the reflection s_r.
    pub fn positive(&self, r: Root) -> Root {
        if self.is_positive(r) {
            r
        } else {
            self.negate(r)
        }
    }

    pub fn root_index(&self, coords: &[i64]) -> Option<Root> {
        self.index.get(coords).copied().map(Root)
    }

    /// Like [`RootSystem::root_index`] but reports non-roots as errors.
    pub fn lookup(&self, coords: &[i64]) -> Result<Root> {
        self.check_dim(coords)?;
        self.root_index(coords)
            .ok_or_else(|| Error::NotARoot(coords.to_vec()))
    }

    fn check_dim(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                found: v.len(),
                expected: self.rank(),
            });
        }
        Ok(())
    }

    /// `xᵀ · gram · y`.
    pub fn inner(&self, x: &[i64], y: &[i64]) -> Result<i64> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.inner_unchecked(x, y))
    }

    pub(crate) fn inner_unchecked(&self, x: &[i64], y: &[i64]) -> i64 {
        x.iter()
            .zip(&self.gram)
            .filter(|(&xi, _)| xi != 0)
            .map(|(xi, row)| xi * row.iter().zip(y).map(|(g, yj)| g * yj).sum::<i64>())
            .sum()
    }

    /// Inner product of two roots.
    pub fn inner_roots(&self, a: Root, b: Root) -> i64 {
        self.inner_unchecked(&self.roots[a.0], &self.roots[b.0])
    }

    /// ⟨β, α∨⟩ = 2(α|β)/(α|α).
    pub fn cartan_pairing(&self, beta: &[i64], alpha: Root) -> Result<i64> {
        self.check_dim(beta)?;
        let num = self.inner_unchecked(self.coords(alpha), beta);
        let den = self.norm(alpha);
        if (2 * num) % den != 0 {
            return Err(Error::InexactPairing { num, den });
        }
        Ok(2 * num / den)
    }

    /// s_α(v) = v − ⟨v, α∨⟩·α.
    pub fn reflect(&self, alpha: Root, v: &[i64]) -> Result<Vec<i64>> {
        let p = self.cartan_pairing(v, alpha)?;
        Ok(v.iter()
            .zip(self.coords(alpha))
            .map(|(x, a)| x - p * a)
            .collect())
    }

    /// s_α(β) as a root index, from the precomputed table.
    pub fn reflect_root(&self, alpha: Root, beta: Root) -> Root {
        Root(self.reflect[alpha.0 * self.roots.len() + beta.0] as usize)
    }

    /// The permutation of root indices induced by s_α.
    pub(crate) fn reflection_row(&self, alpha: Root) -> &[u32] {
        let len = self.roots.len();
        &self.reflect[alpha.0 * len..(alpha.0 + 1) * len]
    }

    pub fn is_simply_laced(&self) -> bool {
        self.norms.iter().all(|&x| x == self.norms[0])
    }

    pub fn dump(&self) -> RootSystemDump<'_> {
        let mut type_label = self.cartan_type.to_string();
        if self.coroot_form {
            type_label.push('v');
        }
        RootSystemDump {
            type_label,
            rank: self.rank(),
            cartan: &self.cartan,
            d: &self.d,
            gram: &self.gram,
            roots: &self.roots,
            coroots: &self.coroots,
        }
    }
}
