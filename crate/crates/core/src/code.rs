//! Linear codes over `F_{q^m}`, the expansion map to `n × m` matrices over
//! `F_q`, rank weight and the dual code.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::{ExtElem, FieldTower};
use crate::linalg::{self, Level, Matrix, Subspace};
use crate::{par, Settings};

/// An `[n, k]` code over `F_{q^m}` with `k >= 1`, held by its canonical
/// (RREF) generator matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    tower: FieldTower,
    generator: Subspace,
}

impl LinearCode {
    /// Code spanned by `rows`, which must be nonempty and independent.
    pub fn new(tower: &FieldTower, rows: &[Vec<ExtElem>]) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(Error::EmptyCode);
        };
        let m = Matrix::from_rows(tower, Level::Ext, first.len(), rows)?;
        let generator = Subspace::row_space(tower, &m);
        if generator.dim() < rows.len() {
            return Err(Error::DependentRows {
                rank: generator.dim(),
                rows: rows.len(),
            });
        }
        Ok(LinearCode {
            tower: tower.clone(),
            generator,
        })
    }

    pub fn from_subspace(tower: &FieldTower, space: Subspace) -> Result<Self> {
        if space.dim() == 0 {
            return Err(Error::EmptyCode);
        }
        let generator = space.with_level(tower, Level::Ext)?;
        Ok(LinearCode {
            tower: tower.clone(),
            generator,
        })
    }

    /// `F_{q^m}^n` itself.
    pub fn full(tower: &FieldTower, n: usize) -> Result<Self> {
        Self::from_subspace(tower, Subspace::full(Level::Ext, n))
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn n(&self) -> usize {
        self.generator.ambient_dim()
    }

    pub fn k(&self) -> usize {
        self.generator.dim()
    }

    pub fn generator(&self) -> &Subspace {
        &self.generator
    }

    /// `C^⊥`, or `None` when `C` is the whole space and its dual is `{0}`.
    pub fn dual(&self) -> Option<LinearCode> {
        let d = self.generator.orthogonal_complement(&self.tower);
        (d.dim() > 0).then(|| LinearCode {
            tower: self.tower.clone(),
            generator: d,
        })
    }

    /// Codeword with message `coeffs` (length `k`).
    pub fn encode(&self, coeffs: &[ExtElem]) -> Vec<ExtElem> {
        linalg::combine(&self.tower, coeffs, self.generator.basis())
    }

    /// `i`-th codeword in the order of base-`q^m` message digits.
    fn codeword_at(&self, mut i: u64) -> Vec<ExtElem> {
        let big = self.tower.order() as u64;
        let coeffs: Vec<ExtElem> = (0..self.k())
            .map(|_| {
                let d = (i % big) as u32;
                i /= big;
                ExtElem::from_index(d)
            })
            .collect();
        self.encode(&coeffs)
    }

    fn codeword_count(&self, settings: &Settings) -> Result<u64> {
        let n = (self.tower.order() as u128).checked_pow(self.k() as u32);
        Ok(settings.require(n)? as u64)
    }

    /// `min` of rank weight over all nonzero codewords, by full enumeration.
    pub fn min_rank_distance(&self, settings: &Settings) -> Result<usize> {
        let total = self.codeword_count(settings)?;
        let d = par::min_over(settings.exec, 1..total, |i| {
            Some(rank_weight_poly(&self.tower, &self.codeword_at(i)))
        });
        Ok(d.expect("k >= 1 so a nonzero codeword exists"))
    }

    /// `min` of Hamming weight over all nonzero codewords, by full enumeration.
    pub fn min_hamming_distance(&self, settings: &Settings) -> Result<usize> {
        let total = self.codeword_count(settings)?;
        let d = par::min_over(settings.exec, 1..total, |i| {
            Some(self.codeword_at(i).iter().filter(|a| !a.is_zero()).count())
        });
        Ok(d.expect("k >= 1 so a nonzero codeword exists"))
    }
}

impl PartialOrd for LinearCode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical code order: that of the generator subspaces (dimension first).
impl Ord for LinearCode {
    fn cmp(&self, other: &Self) -> Ordering {
        self.generator.cmp(&other.generator)
    }
}

/// An `F_q`-basis `(u_1, …, u_m)` of `F_{q^m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionBasis {
    u: Vec<ExtElem>,
    /// Maps polynomial-basis coordinates to coordinates in `u`.
    to_basis: Matrix,
}

impl ExpansionBasis {
    /// `(1, z, …, z^{m-1})`.
    pub fn polynomial(t: &FieldTower) -> Self {
        ExpansionBasis {
            u: (0..t.m()).map(|i| t.z_pow(i)).collect(),
            to_basis: Matrix::identity(Level::Base, t.m()),
        }
    }

    pub fn new(t: &FieldTower, u: Vec<ExtElem>) -> Result<Self> {
        let m = t.m();
        if u.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: u.len(),
            });
        }
        for &x in &u {
            t.check(x)?;
        }
        // [P | I] with column j of P the digits of u_j.
        let mut aug = Matrix::zeros(Level::Base, m, 2 * m);
        for (j, &x) in u.iter().enumerate() {
            for (i, d) in t.digits(x).into_iter().enumerate() {
                aug.set(i, j, d);
            }
        }
        for i in 0..m {
            aug.set(i, m + i, ExtElem::ONE);
        }
        let r = linalg::rref(t, &aug);
        if (0..m).any(|i| r.get(i, i) != ExtElem::ONE) {
            return Err(Error::Hypothesis(
                "expansion basis elements are not independent over F_q".into(),
            ));
        }
        let mut inv = Matrix::zeros(Level::Base, m, m);
        for i in 0..m {
            for j in 0..m {
                inv.set(i, j, r.get(i, m + j));
            }
        }
        Ok(ExpansionBasis { u, to_basis: inv })
    }

    pub fn elements(&self) -> &[ExtElem] {
        &self.u
    }

    /// `c ∈ F_q^m` with `x = sum_j c_j u_j`.
    pub fn coordinates(&self, t: &FieldTower, x: ExtElem) -> Vec<ExtElem> {
        let d = t.digits(x);
        (0..t.m())
            .map(|i| {
                (0..t.m()).fold(ExtElem::ZERO, |acc, j| {
                    t.add(acc, t.mul(self.to_basis.get(i, j), d[j]))
                })
            })
            .collect()
    }
}

/// `λ(x)`: row `i` holds the coordinates of `x_i` in the expansion basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionMatrix {
    entries: Matrix,
}

impl ExpansionMatrix {
    pub fn matrix(&self) -> &Matrix {
        &self.entries
    }

    /// Rebuilds `x` from its expansion: `x_i = sum_j λ_{ij} u_j`.
    pub fn reconstruct(&self, t: &FieldTower, basis: &ExpansionBasis) -> Vec<ExtElem> {
        (0..self.entries.rows())
            .map(|i| {
                self.entries
                    .row(i)
                    .iter()
                    .zip(basis.elements())
                    .fold(ExtElem::ZERO, |acc, (&c, &u)| t.add(acc, t.mul(c, u)))
            })
            .collect()
    }
}

pub fn lambda_expand(t: &FieldTower, x: &[ExtElem], basis: &ExpansionBasis) -> ExpansionMatrix {
    let mut entries = Matrix::zeros(Level::Base, x.len(), t.m());
    for (i, &xi) in x.iter().enumerate() {
        for (j, c) in basis.coordinates(t, xi).into_iter().enumerate() {
            entries.set(i, j, c);
        }
    }
    ExpansionMatrix { entries }
}

/// Rank of `λ(x)` over `F_q`.
pub fn rank_weight(t: &FieldTower, x: &[ExtElem], basis: &ExpansionBasis) -> usize {
    linalg::rank(t, lambda_expand(t, x, basis).matrix())
}

/// Rank weight in the polynomial basis, without building an [`ExpansionBasis`].
pub fn rank_weight_poly(t: &FieldTower, x: &[ExtElem]) -> usize {
    let mut m = Matrix::zeros(Level::Base, x.len(), t.m());
    for (i, &xi) in x.iter().enumerate() {
        for (j, d) in t.digits(xi).into_iter().enumerate() {
            m.set(i, j, d);
        }
    }
    linalg::rank(t, &m)
}

/// Coordinatewise `x ↦ x^{q^j}`.
pub fn frobenius_vec(t: &FieldTower, x: &[ExtElem], j: usize) -> Vec<ExtElem> {
    x.iter().map(|&a| t.frobenius(a, j)).collect()
}

pub fn hamming_weight(x: &[ExtElem]) -> usize {
    x.iter().filter(|a| !a.is_zero()).count()
}
