//! Exact linear algebra over the rationals.
//!
//! All elimination runs on primitive integer rows (denominators cleared,
//! content divided out after every update) with the pivot for each column
//! taken from the first remaining row that is nonzero there. The rows are
//! stored sparsely, which is what the Jacobian-ideal generator matrices look
//! like: a handful of entries per row.

pub mod modular;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::InvalidMatrix(format!(
                "row {bad} has {} entries, expected {cols}",
                rows[bad].len()
            )));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Panics on ragged input; intended for literals.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
        .expect("ragged matrix literal")
    }

    /// Builds a matrix from `(row, col, value)` triplets; repeated positions are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, BigRational)>,
    ) -> Result<Self> {
        let mut m = Self::zeros(rows, cols);
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::InvalidMatrix(format!(
                    "triplet ({r}, {c}) outside {rows}x{cols}"
                )));
            }
            m.entries[r * cols + c] += v;
        }
        Ok(m)
    }

    /// Nonzero entries as `(row, col, value)` in row-major order.
    pub fn to_triplets(&self) -> Vec<(usize, usize, BigRational)> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i / self.cols, i % self.cols, v.clone()))
            .collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    fn int_rows(&self) -> Vec<IntRow> {
        (0..self.rows)
            .map(|r| {
                IntRow::from_rational(
                    self.row(r)
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(c, v)| (c, v.clone())),
                )
            })
            .collect()
    }
}

/// Sparse primitive integer row: sorted by column, no zeros, gcd 1, positive leading entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct IntRow(Vec<(usize, BigInt)>);

impl IntRow {
    pub(crate) fn from_rational(entries: impl IntoIterator<Item = (usize, BigRational)>) -> Self {
        let entries: Vec<(usize, BigRational)> = entries.into_iter().collect();
        let lcm = entries
            .iter()
            .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
        let mut row = IntRow(
            entries
                .into_iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (c, v.numer() * (&lcm / v.denom())))
                .collect(),
        );
        row.0.sort_by_key(|(c, _)| *c);
        row.make_primitive();
        row
    }

    fn lead(&self) -> Option<usize> {
        self.0.first().map(|(c, _)| *c)
    }

    fn entry(&self, col: usize) -> Option<&BigInt> {
        self.0
            .binary_search_by_key(&col, |(c, _)| *c)
            .ok()
            .map(|i| &self.0[i].1)
    }

    fn bits(&self) -> u64 {
        self.0.iter().map(|(_, v)| v.bits()).sum()
    }

    fn make_primitive(&mut self) {
        let Some((_, first)) = self.0.first() else {
            return;
        };
        let negate = first.is_negative();
        let g = self.0.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
        if g.is_one() && !negate {
            return;
        }
        for (_, v) in &mut self.0 {
            *v /= &g;
            if negate {
                *v = -std::mem::take(v);
            }
        }
    }

    /// `a·self − b·other`, made primitive.
    fn combine(&self, a: &BigInt, other: &IntRow, b: &BigInt) -> IntRow {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let ci = self.0.get(i).map_or(usize::MAX, |e| e.0);
            let cj = other.0.get(j).map_or(usize::MAX, |e| e.0);
            if ci < cj {
                out.push((ci, a * &self.0[i].1));
                i += 1;
            } else if cj < ci {
                out.push((cj, -(b * &other.0[j].1)));
                j += 1;
            } else {
                let v = a * &self.0[i].1 - b * &other.0[j].1;
                if !v.is_zero() {
                    out.push((ci, v));
                }
                i += 1;
                j += 1;
            }
        }
        let mut row = IntRow(out);
        row.make_primitive();
        row
    }

    /// Removes the entry of `self` in `pivot`'s leading column.
    fn eliminate(&self, pivot: &IntRow, col: usize) -> Option<IntRow> {
        let e = self.entry(col)?;
        let p = pivot.entry(col).expect("pivot entry");
        let g = e.gcd(p);
        Some(self.combine(&(p / &g), pivot, &(e / &g)))
    }

    /// Sparse rational row scaled so that the entry in `lead_col` is 1.
    fn to_rational(&self, lead_col: usize) -> Vec<(usize, BigRational)> {
        let lead = self.entry(lead_col).expect("lead").clone();
        self.0
            .iter()
            .map(|(c, v)| (*c, BigRational::new(v.clone(), lead.clone())))
            .collect()
    }
}

/// Row echelon form as primitive integer rows, one per pivot.
#[derive(Debug, Clone)]
pub(crate) struct Echelon {
    pub(crate) rows: Vec<IntRow>,
    pub(crate) pivots: Vec<usize>,
}

pub(crate) fn echelon(rows: Vec<IntRow>) -> Echelon {
    // rows bucketed by leading column, each bucket kept in input order
    let mut buckets: BTreeMap<usize, BTreeMap<usize, IntRow>> = BTreeMap::new();
    for (i, r) in rows.into_iter().enumerate() {
        if let Some(c) = r.lead() {
            buckets.entry(c).or_default().insert(i, r);
        }
    }
    let mut out = Echelon {
        rows: Vec::new(),
        pivots: Vec::new(),
    };
    while let Some((col, mut bucket)) = buckets.pop_first() {
        // sparsest, then smallest, row first: limits fill-in and coefficient growth
        let key = *bucket
            .iter()
            .min_by_key(|(i, r)| (r.0.len(), r.bits(), **i))
            .expect("nonempty bucket")
            .0;
        let pivot = bucket.remove(&key).expect("chosen pivot");
        for (i, row) in bucket {
            let row = row.eliminate(&pivot, col).expect("entry at lead");
            if let Some(c) = row.lead() {
                buckets.entry(c).or_default().insert(i, row);
            }
        }
        out.rows.push(pivot);
        out.pivots.push(col);
    }
    out
}

/// Clears every pivot column above its pivot, in place.
pub(crate) fn back_substitute(ech: &mut Echelon) {
    for i in (0..ech.rows.len()).rev() {
        let col = ech.pivots[i];
        let (above, rest) = ech.rows.split_at_mut(i);
        let pivot = &rest[0];
        for row in above.iter_mut() {
            if let Some(r) = row.eliminate(pivot, col) {
                *row = r;
            }
        }
    }
}

/// Sparse rational row: `(column, value)` pairs sorted by column.
pub(crate) type SparseRow = Vec<(usize, BigRational)>;

/// Prime for the full-rank shortcut in [`reduced_rows`]; any prime is sound there.
const SHORTCUT_PRIME: u64 = (1 << 61) - 1;

/// Reduced echelon form as sparse rational rows (pivot entries equal to 1).
///
/// A rank modulo a prime never exceeds the rational rank, so full column
/// rank modulo `p` proves the reduced form is the identity.
pub(crate) fn reduced_rows(rows: Vec<IntRow>, ncols: usize) -> (Vec<SparseRow>, Vec<usize>) {
    if ncols > 0 && modular::sparse_rank_mod(&rows, SHORTCUT_PRIME) == ncols {
        let identity = (0..ncols).map(|c| vec![(c, BigRational::one())]).collect();
        return (identity, (0..ncols).collect());
    }
    let mut ech = echelon(rows);
    back_substitute(&mut ech);
    let rows = ech
        .rows
        .iter()
        .zip(&ech.pivots)
        .map(|(r, &p)| r.to_rational(p))
        .collect();
    (rows, ech.pivots)
}

/// How [`rank_with`] computes a rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RankMethod {
    #[default]
    Exact,
    /// Rank modulo the given prime first; accepted only when it is already
    /// maximal (a modular rank never exceeds the rational one), otherwise
    /// the exact elimination decides.
    Modular(u64),
}

pub fn rank(m: &ExactMatrix) -> usize {
    echelon(m.int_rows()).pivots.len()
}

pub fn rank_with(m: &ExactMatrix, method: RankMethod) -> usize {
    match method {
        RankMethod::Exact => rank(m),
        RankMethod::Modular(p) => match modular::rank_mod(m, p) {
            Some(r) if r == m.rows().min(m.cols()) => r,
            _ => rank(m),
        },
    }
}

/// Reduced row echelon form and the strictly increasing pivot columns.
pub fn row_reduce(m: &ExactMatrix) -> (ExactMatrix, Vec<usize>) {
    let (rows, pivots) = reduced_rows(m.int_rows(), m.cols());
    let mut out = ExactMatrix::zeros(m.rows(), m.cols());
    for (i, row) in rows.into_iter().enumerate() {
        for (c, v) in row {
            out.set(i, c, v);
        }
    }
    (out, pivots)
}

/// Basis of the right kernel: one vector per free column, with that
/// coordinate 1 and the other free coordinates 0.
pub fn nullspace_basis(m: &ExactMatrix) -> Vec<Vec<BigRational>> {
    let (rows, pivots) = reduced_rows(m.int_rows(), m.cols());
    let mut is_pivot = vec![false; m.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols())
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![BigRational::zero(); m.cols()];
            v[free] = BigRational::one();
            for (row, &p) in rows.iter().zip(&pivots) {
                if let Ok(k) = row.binary_search_by_key(&free, |(c, _)| *c) {
                    v[p] = -row[k].1.clone();
                }
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&ExactMatrix::identity(3)), 3);
        assert_eq!(rank(&ExactMatrix::zeros(3, 4)), 0);
        assert_eq!(rank(&ExactMatrix::from_i64_rows(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&ExactMatrix::zeros(0, 0)), 0);
    }

    #[test]
    fn nullspace_examples() {
        assert!(nullspace_basis(&ExactMatrix::identity(2)).is_empty());
        assert_eq!(
            nullspace_basis(&ExactMatrix::from_i64_rows(&[&[1, 2], &[2, 4]])),
            vec![vec![q(-2), q(1)]]
        );
        assert_eq!(nullspace_basis(&ExactMatrix::zeros(1, 3)).len(), 3);
        assert_eq!(nullspace_basis(&ExactMatrix::from_i64_rows(&[&[0, 5, 1]])).len(), 2);
        assert_eq!(nullspace_basis(&ExactMatrix::zeros(0, 2)).len(), 2);
    }

    #[test]
    fn row_reduce_examples() {
        let (r, p) = row_reduce(&ExactMatrix::identity(3));
        assert_eq!(r, ExactMatrix::identity(3));
        assert_eq!(p, vec![0, 1, 2]);
        let (r, p) = row_reduce(&ExactMatrix::from_i64_rows(&[&[2, 4]]));
        assert_eq!(r, ExactMatrix::from_i64_rows(&[&[1, 2]]));
        assert_eq!(p, vec![0]);
        let (r, p) = row_reduce(&ExactMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]));
        assert_eq!(r, ExactMatrix::identity(2));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn row_reduce_rational_entries() {
        let half = BigRational::new(1.into(), 2.into());
        let third = BigRational::new(1.into(), 3.into());
        let m = ExactMatrix::from_rows(vec![
            vec![half.clone(), third.clone(), q(1)],
            vec![q(1), q(0), -third.clone()],
        ])
        .unwrap();
        let (r, p) = row_reduce(&m);
        assert_eq!(p, vec![0, 1]);
        assert_eq!(r.get(0, 2), &-third.clone());
        // x = z/3 and y = -7z/2 solve both rows
        assert_eq!(r.get(1, 2), &BigRational::new(7.into(), 2.into()));
    }

    #[test]
    fn triplets() {
        let m = ExactMatrix::from_triplets(2, 2, [(0, 1, q(3)), (0, 1, q(1)), (1, 0, q(2))]).unwrap();
        assert_eq!(m, ExactMatrix::from_i64_rows(&[&[0, 4], &[2, 0]]));
        assert_eq!(m.to_triplets(), vec![(0, 1, q(4)), (1, 0, q(2))]);
        assert!(ExactMatrix::from_triplets(1, 1, [(1, 0, q(1))]).is_err());
        assert!(ExactMatrix::from_rows(vec![vec![q(1)], vec![]]).is_err());
    }

    #[test]
    fn modular_rank_falls_back_to_exact() {
        // det = 7·11, so the rank drops modulo 7
        let m = ExactMatrix::from_i64_rows(&[&[7, 0], &[0, 11]]);
        assert_eq!(modular::rank_mod(&m, 7), Some(1));
        assert_eq!(rank_with(&m, RankMethod::Modular(7)), 2);
        assert_eq!(rank_with(&m, RankMethod::Modular(1_000_000_007)), 2);
    }
}
