//! Exact linear algebra over either level of a tower: echelon forms, rank,
//! kernels, the subspace lattice and exhaustive subspace enumeration.
//!
//! A [`Subspace`] is always held as its reduced row-echelon basis with no
//! zero rows, so equality of subspaces is equality of values.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::{ExtElem, FieldTower};

/// Which field of the tower the entries live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    /// `F_q`
    Base,
    /// `F_{q^m}`
    Ext,
}

impl Level {
    /// Number of elements of the field at this level.
    pub fn field_size(self, t: &FieldTower) -> u32 {
        match self {
            Level::Base => t.q(),
            Level::Ext => t.order(),
        }
    }

    fn admits(self, t: &FieldTower, a: ExtElem) -> bool {
        match self {
            Level::Base => t.is_base_rational(a),
            Level::Ext => t.contains(a),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    level: Level,
    data: Vec<ExtElem>,
}

impl Matrix {
    pub fn zeros(level: Level, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            level,
            data: vec![ExtElem::ZERO; rows * cols],
        }
    }

    pub fn identity(level: Level, n: usize) -> Self {
        let mut m = Matrix::zeros(level, n, n);
        for i in 0..n {
            m.set(i, i, ExtElem::ONE);
        }
        m
    }

    /// Builds a matrix from rows, checking shape and that every entry lies in
    /// the field at `level`.
    pub fn from_rows(t: &FieldTower, level: Level, cols: usize, rows: &[Vec<ExtElem>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            for &a in r {
                if !level.admits(t, a) {
                    return Err(if t.contains(a) {
                        Error::LevelMismatch
                    } else {
                        Error::ForeignElement(a.index())
                    });
                }
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            level,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn level(&self) -> Level {
        self.level
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> ExtElem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: ExtElem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[ExtElem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<ExtElem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[ExtElem] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.level, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn push_row(&mut self, row: &[ExtElem]) {
        assert_eq!(row.len(), self.cols, "row length");
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    /// Rows of `self` followed by rows of `other`; the level is the coarser of
    /// the two (`Ext` if either is `Ext`).
    pub fn stack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "column count");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            level: self.level.max(other.level),
            data,
        }
    }

    /// Re-tags the level; lowering to `Base` requires every entry in `F_q`.
    pub fn with_level(mut self, t: &FieldTower, level: Level) -> Result<Matrix> {
        if level == Level::Base && self.data.iter().any(|&a| !t.is_base_rational(a)) {
            return Err(Error::LevelMismatch);
        }
        self.level = level;
        Ok(self)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }
}

/// Gauss-Jordan elimination in place; returns the pivot columns.
pub(crate) fn rref_in_place(t: &FieldTower, m: &mut Matrix) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = t.inv(m.get(r, c)).expect("pivot is nonzero");
        for j in c..cols {
            let v = t.mul(m.get(r, j), inv);
            m.set(r, j, v);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = m.get(i, c);
            if f.is_zero() {
                continue;
            }
            for j in c..cols {
                let v = t.sub(m.get(i, j), t.mul(f, m.get(r, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Reduced row-echelon form; same shape as `m`, zero rows at the bottom.
pub fn rref(t: &FieldTower, m: &Matrix) -> Matrix {
    let mut out = m.clone();
    rref_in_place(t, &mut out);
    out
}

pub fn rank(t: &FieldTower, m: &Matrix) -> usize {
    let mut w = m.clone();
    rref_in_place(t, &mut w).len()
}

/// `{x : M x^T = 0}`.
pub fn kernel(t: &FieldTower, m: &Matrix) -> Subspace {
    let mut w = m.clone();
    let pivots = rref_in_place(t, &mut w);
    let n = m.cols;
    let mut basis = Matrix::zeros(m.level, 0, n);
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for f in (0..n).filter(|&c| !is_pivot[c]) {
        let mut x = vec![ExtElem::ZERO; n];
        x[f] = ExtElem::ONE;
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = t.neg(w.get(i, f));
        }
        basis.push_row(&x);
    }
    Subspace::row_space(t, &basis)
}

/// `sum_i x_i y_i`.
pub fn dot(t: &FieldTower, x: &[ExtElem], y: &[ExtElem]) -> Result<ExtElem> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    Ok(x.iter()
        .zip(y)
        .fold(ExtElem::ZERO, |acc, (&a, &b)| t.add(acc, t.mul(a, b))))
}

/// `sum_i c_i rows_i`.
pub fn combine(t: &FieldTower, coeffs: &[ExtElem], rows: &Matrix) -> Vec<ExtElem> {
    let mut out = vec![ExtElem::ZERO; rows.cols];
    for (i, &c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (o, &v) in out.iter_mut().zip(rows.row(i)) {
            *o = t.add(*o, t.mul(c, v));
        }
    }
    out
}

/// `A · B`.
pub fn mat_mul(t: &FieldTower, a: &Matrix, b: &Matrix) -> Matrix {
    assert_eq!(a.cols, b.rows, "inner dimension");
    let mut out = Matrix::zeros(a.level.max(b.level), a.rows, b.cols);
    for i in 0..a.rows {
        let row = combine(t, a.row(i), b);
        out.data[i * b.cols..(i + 1) * b.cols].copy_from_slice(&row);
    }
    out
}

/// A subspace of `F^n` at one level of the tower, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
}

impl Subspace {
    /// Row space of `m`.
    pub fn row_space(t: &FieldTower, m: &Matrix) -> Subspace {
        let mut w = m.clone();
        let r = rref_in_place(t, &mut w).len();
        w.data.truncate(r * w.cols);
        w.rows = r;
        Subspace { basis: w }
    }

    pub fn from_rows(t: &FieldTower, level: Level, n: usize, rows: &[Vec<ExtElem>]) -> Result<Subspace> {
        Ok(Subspace::row_space(t, &Matrix::from_rows(t, level, n, rows)?))
    }

    /// Wraps a matrix already known to be in RREF without zero rows.
    pub(crate) fn from_rref_unchecked(basis: Matrix) -> Subspace {
        Subspace { basis }
    }

    pub fn zero(level: Level, n: usize) -> Subspace {
        Subspace {
            basis: Matrix::zeros(level, 0, n),
        }
    }

    pub fn full(level: Level, n: usize) -> Subspace {
        Subspace {
            basis: Matrix::identity(level, n),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols
    }

    pub fn level(&self) -> Level {
        self.basis.level
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.basis.rows)
            .map(|r| {
                self.basis
                    .row(r)
                    .iter()
                    .position(|a| !a.is_zero())
                    .expect("no zero rows")
            })
            .collect()
    }

    /// Same basis, re-tagged at another level (see [`Matrix::with_level`]).
    pub fn with_level(&self, t: &FieldTower, level: Level) -> Result<Subspace> {
        Ok(Subspace {
            basis: self.basis.clone().with_level(t, level)?,
        })
    }

    pub fn contains(&self, t: &FieldTower, x: &[ExtElem]) -> bool {
        assert_eq!(x.len(), self.ambient_dim(), "vector length");
        // Reduce x against the RREF basis.
        let mut v = x.to_vec();
        for (r, p) in self.pivots().into_iter().enumerate() {
            let f = v[p];
            if f.is_zero() {
                continue;
            }
            for (vj, &bj) in v.iter_mut().zip(self.basis.row(r)) {
                *vj = t.sub(*vj, t.mul(f, bj));
            }
        }
        v.iter().all(|a| a.is_zero())
    }

    pub fn is_subspace_of(&self, t: &FieldTower, other: &Subspace) -> bool {
        (0..self.dim()).all(|r| other.contains(t, self.basis.row(r)))
    }

    fn compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                got: other.ambient_dim(),
            });
        }
        if self.level() != other.level() {
            return Err(Error::LevelMismatch);
        }
        Ok(())
    }

    pub fn sum(&self, t: &FieldTower, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        Ok(Subspace::row_space(t, &self.basis.stack(&other.basis)))
    }

    /// `dim(U + V)` without materialising the sum.
    pub fn sum_dim(&self, t: &FieldTower, other: &Subspace) -> usize {
        rank(t, &self.basis.stack(&other.basis))
    }

    /// `U ∩ V = (U^⊥ + V^⊥)^⊥`.
    pub fn intersection(&self, t: &FieldTower, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        let s = self
            .orthogonal_complement(t)
            .sum(t, &other.orthogonal_complement(t))?;
        Ok(s.orthogonal_complement(t))
    }

    /// Complement with respect to `<x, y> = sum x_i y_i`.
    pub fn orthogonal_complement(&self, t: &FieldTower) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.level(), self.ambient_dim());
        }
        kernel(t, &self.basis)
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: ambient dimension, level, dimension, pivot columns
/// (lexicographic), then the row-major entries by index. This is exactly the
/// order in which [`enumerate_subspaces`] yields subspaces.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient_dim()
            .cmp(&other.ambient_dim())
            .then(self.level().cmp(&other.level()))
            .then(self.dim().cmp(&other.dim()))
            .then_with(|| self.pivots().cmp(&other.pivots()))
            .then_with(|| self.basis.data.cmp(&other.basis.data))
    }
}

/// `[n choose v]_Q`, or `None` if it does not fit in a `u128`.
pub fn gaussian_binomial(n: usize, v: usize, field_size: u64) -> Option<u128> {
    if v > n {
        return Some(0);
    }
    let q = field_size as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..v {
        num = num.checked_mul(q.checked_pow((n - i) as u32)?.checked_sub(1)?)?;
        den = den.checked_mul(q.checked_pow((i + 1) as u32)?.checked_sub(1)?)?;
    }
    Some(num / den)
}

/// Yields every `v`-dimensional subspace of `F^n` exactly once, in the
/// canonical order of [`Subspace`]: pivot sets in lexicographic order, and
/// within a pivot set the free entries counted in row-major odometer order.
#[derive(Clone, Debug)]
pub struct SubspaceIter {
    n: usize,
    level: Level,
    field_size: u32,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    counters: Vec<u32>,
    remaining: u128,
}

fn free_positions(n: usize, pivots: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (r, &p) in pivots.iter().enumerate() {
        for c in p + 1..n {
            if !pivots.contains(&c) {
                out.push((r, c));
            }
        }
    }
    out
}

impl SubspaceIter {
    fn advance(&mut self) {
        for i in (0..self.counters.len()).rev() {
            self.counters[i] += 1;
            if self.counters[i] < self.field_size {
                return;
            }
            self.counters[i] = 0;
        }
        // next pivot combination
        let v = self.pivots.len();
        let mut i = v;
        while i > 0 {
            i -= 1;
            if self.pivots[i] < self.n - v + i {
                self.pivots[i] += 1;
                for j in i + 1..v {
                    self.pivots[j] = self.pivots[j - 1] + 1;
                }
                self.free = free_positions(self.n, &self.pivots);
                self.counters = vec![0; self.free.len()];
                return;
            }
        }
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let mut m = Matrix::zeros(self.level, self.pivots.len(), self.n);
        for (r, &p) in self.pivots.iter().enumerate() {
            m.set(r, p, ExtElem::ONE);
        }
        for (&(r, c), &val) in self.free.iter().zip(&self.counters) {
            m.set(r, c, ExtElem::from_index(val));
        }
        if self.remaining > 0 {
            self.advance();
        }
        Some(Subspace::from_rref_unchecked(m))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, Some(r))
    }
}

/// All `v`-dimensional subspaces of `F^n` at `level`. Fails up front when
/// their number exceeds `budget`.
pub fn enumerate_subspaces(t: &FieldTower, level: Level, n: usize, v: usize, budget: u64) -> Result<SubspaceIter> {
    if v > n {
        return Err(Error::DimensionMismatch { expected: n, got: v });
    }
    let field_size = level.field_size(t);
    let count = gaussian_binomial(n, v, field_size as u64);
    match count {
        Some(c) if c <= budget as u128 => {}
        _ => {
            return Err(Error::BudgetExceeded {
                needed: count.map_or_else(|| "more than 2^128".to_string(), |c| c.to_string()),
                budget,
            })
        }
    }
    let pivots: Vec<usize> = (0..v).collect();
    let free = free_positions(n, &pivots);
    Ok(SubspaceIter {
        n,
        level,
        field_size,
        counters: vec![0; free.len()],
        free,
        pivots,
        remaining: count.unwrap(),
    })
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn f9() -> FieldTower {
        FieldTower::with_defaults(3, 1, 2).unwrap()
    }

    fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(0u32..9, rows * cols).prop_map(move |v| {
            let rows_v: Vec<Vec<ExtElem>> = v.chunks(cols).map(|c| c.iter().map(|&i| ExtElem::from_index(i)).collect()).collect();
            Matrix::from_rows(&f9(), Level::Ext, cols, &rows_v).unwrap()
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent_and_preserves_row_space(m in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| matrix(r, c))) {
            let t = f9();
            let r = rref(&t, &m);
            prop_assert_eq!(rref(&t, &r), r.clone());
            let s = Subspace::row_space(&t, &m);
            for i in 0..m.rows() {
                prop_assert!(s.contains(&t, m.row(i)));
            }
            prop_assert_eq!(s.dim(), rank(&t, &m));
            prop_assert_eq!(rank(&t, &m), rank(&t, &m.transpose()));
            prop_assert_eq!(rank(&t, &m) + kernel(&t, &m).dim(), m.cols());
        }

        #[test]
        fn dimension_formula(a in matrix(2, 4), b in matrix(3, 4)) {
            let t = f9();
            let u = Subspace::row_space(&t, &a);
            let v = Subspace::row_space(&t, &b);
            let s = u.sum(&t, &v).unwrap();
            let i = u.intersection(&t, &v).unwrap();
            prop_assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
            prop_assert!(i.is_subspace_of(&t, &u) && i.is_subspace_of(&t, &v));
            prop_assert!(u.is_subspace_of(&t, &s) && v.is_subspace_of(&t, &s));
            prop_assert_eq!(s.dim(), u.sum_dim(&t, &v));
        }
    }
}
