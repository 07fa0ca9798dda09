//! Exact Gaussian elimination over the rationals.
//!
//! [`RowSpace`] keeps a set of rows in reduced row-echelon form and accepts
//! new rows one at a time. It backs the derivation solver (rows are
//! constraints, the answer is the nullspace) and every span-membership test.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::rational::Rational;

/// The span of a set of rational row vectors, held in reduced row-echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowSpace {
    ncols: usize,
    // Sorted by pivot column; each row is 1 at its pivot and 0 at every other pivot.
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows<I>(ncols: usize, rows: I) -> Self
    where
        I: IntoIterator<Item = Vec<Rational>>,
    {
        let mut space = Self::new(ncols);
        for row in rows {
            space.insert(row);
        }
        space
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn into_rows(self) -> Vec<Vec<Rational>> {
        self.rows
    }

    /// Subtracts the span's component along each pivot, leaving `v` zero at
    /// every pivot column.
    pub fn reduce(&self, v: &mut [Rational]) {
        assert_eq!(v.len(), self.ncols, "row length mismatch");
        for (row, &pivot) in self.rows.iter().zip(&self.pivots) {
            if v[pivot].is_zero() {
                continue;
            }
            let factor = v[pivot].clone();
            axpy(v, &factor, row, pivot);
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        v.iter().all(Zero::is_zero)
    }

    /// Adds `v` to the span. Returns `true` if the rank grew.
    pub fn insert(&mut self, mut v: Vec<Rational>) -> bool {
        self.reduce(&mut v);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        if !v[pivot].is_one() {
            let inv = v[pivot].recip();
            for x in &mut v[pivot..] {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        for row in &mut self.rows {
            if row[pivot].is_zero() {
                continue;
            }
            let factor = row[pivot].clone();
            axpy(row, &factor, &v, pivot);
        }
        let at = self.pivots.partition_point(|&p| p < pivot);
        self.pivots.insert(at, pivot);
        self.rows.insert(at, v);
        true
    }

    /// Basis of `{x : r · x = 0 for every row r}`, one vector per free
    /// column, in canonical (reduced echelon) form.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let raw = (0..self.ncols).filter(|&c| !is_pivot[c]).map(|free| {
            let mut x = vec![Rational::zero(); self.ncols];
            x[free] = Rational::one();
            for (row, &pivot) in self.rows.iter().zip(&self.pivots) {
                if !row[free].is_zero() {
                    x[pivot] = -row[free].clone();
                }
            }
            x
        });
        canonical_basis(self.ncols, raw)
    }
}

/// `v -= factor * row`, touching only columns from `start` on (the caller
/// guarantees `row` is zero before `start`).
fn axpy(v: &mut [Rational], factor: &Rational, row: &[Rational], start: usize) {
    for (x, r) in v[start..].iter_mut().zip(&row[start..]) {
        if !r.is_zero() {
            *x -= factor * r;
        }
    }
}

/// Reduced row-echelon basis of the span of `vectors`, zero rows dropped.
pub fn canonical_basis<I>(ncols: usize, vectors: I) -> Vec<Vec<Rational>>
where
    I: IntoIterator<Item = Vec<Rational>>,
{
    RowSpace::from_rows(ncols, vectors).into_rows()
}

pub fn rank<I>(ncols: usize, vectors: I) -> usize
where
    I: IntoIterator<Item = Vec<Rational>>,
{
    RowSpace::from_rows(ncols, vectors).rank()
}
