//! Frobenius action on subspaces of `F_{q^m}^n`: images `V^{q^j}`, the
//! closure `V* = sum_j V^{q^j}`, invariant (Galois-closed) subspaces and their
//! `F_q`-rational bases, and cyclic generators of invariant subspaces.

use crate::code::frobenius_vec;
use crate::error::{Error, Result};
use crate::field::{ExtElem, FieldTower};
use crate::linalg::{self, enumerate_subspaces, Level, Matrix, Subspace, SubspaceIter};

/// A subspace `V ⊆ F_{q^m}^n` with `V^q = V`, together with a basis of the
/// same space whose coordinates all lie in `F_q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaSubspace {
    space: Subspace,
    rational_basis: Subspace,
}

impl GammaSubspace {
    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn rational_basis(&self) -> &Subspace {
        &self.rational_basis
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// `V^{q^j}`: the span of the Frobenius images of a basis of `V`.
pub fn frob_subspace(t: &FieldTower, v: &Subspace, j: usize) -> Subspace {
    let b = v.basis();
    let mut m = Matrix::zeros(b.level(), 0, v.ambient_dim());
    for r in 0..b.rows() {
        m.push_row(&frobenius_vec(t, b.row(r), j));
    }
    Subspace::row_space(t, &m)
}

/// `V*` as a plain subspace.
pub fn star_closure_space(t: &FieldTower, v: &Subspace) -> Subspace {
    let b = v.basis();
    let mut m = Matrix::zeros(Level::Ext, 0, v.ambient_dim());
    for j in 0..t.m() {
        for r in 0..b.rows() {
            m.push_row(&frobenius_vec(t, b.row(r), j));
        }
    }
    Subspace::row_space(t, &m)
}

/// `V* = sum_{j<m} V^{q^j}`, the smallest invariant subspace containing `V`.
pub fn star_closure(t: &FieldTower, v: &Subspace) -> GammaSubspace {
    let space = star_closure_space(t, v);
    let rational_basis = fq_rational_basis(t, &space).expect("closure is invariant");
    GammaSubspace {
        space,
        rational_basis,
    }
}

pub fn is_frobenius_invariant(t: &FieldTower, v: &Subspace) -> bool {
    let v = v.with_level(t, Level::Ext).expect("raising a level never fails");
    frob_subspace(t, &v, 1) == v
}

/// A basis of `V ∩ F_q^n`, found by solving the `F_q`-linear system that
/// forces every non-constant polynomial coordinate of `sum_i c_i v_i` to
/// vanish. For invariant `V` its `F_q`-dimension equals `dim V`.
pub fn fq_rational_basis(t: &FieldTower, v: &Subspace) -> Result<Subspace> {
    let v = v.with_level(t, Level::Ext)?;
    if !is_frobenius_invariant(t, &v) {
        return Err(Error::NotFrobeniusInvariant);
    }
    let (l, n, m) = (v.dim(), v.ambient_dim(), t.m());
    // Unknown (i, s): F_q-coefficient of z^s in c_i.
    // Constraint (j, d), d >= 1: digit d of coordinate j of x vanishes.
    let images: Vec<Vec<ExtElem>> = (0..l * m)
        .map(|col| {
            let (i, s) = (col / m, col % m);
            let zs = t.z_pow(s);
            v.basis().row(i).iter().map(|&a| t.mul(zs, a)).collect()
        })
        .collect();
    let mut system = Matrix::zeros(Level::Base, n * (m - 1), l * m);
    for (col, img) in images.iter().enumerate() {
        for (j, &a) in img.iter().enumerate() {
            for d in 1..m {
                system.set(j * (m - 1) + d - 1, col, t.digit(a, d));
            }
        }
    }
    let sol = linalg::kernel(t, &system);
    let mut rows = Matrix::zeros(Level::Base, 0, n);
    for r in 0..sol.dim() {
        let c = sol.basis().row(r);
        let mut x = vec![ExtElem::ZERO; n];
        for (col, img) in images.iter().enumerate() {
            if c[col].is_zero() {
                continue;
            }
            for (xj, &a) in x.iter_mut().zip(img) {
                *xj = t.add(*xj, t.mul(c[col], t.digit(a, 0)));
            }
        }
        rows.push_row(&x);
    }
    let w = Subspace::row_space(t, &rows);
    if w.dim() != l {
        return Err(Error::Internal(format!(
            "rational basis has dimension {} but the space has dimension {l}",
            w.dim()
        )));
    }
    Ok(w)
}

/// `F_{q^m}`-span of an `F_q`-subspace.
pub fn extend_scalars(t: &FieldTower, w: &Subspace) -> Result<GammaSubspace> {
    let rational_basis = w.with_level(t, Level::Base)?;
    let space = w.with_level(t, Level::Ext)?;
    Ok(GammaSubspace {
        space,
        rational_basis,
    })
}

/// Packages an invariant subspace with its rational basis.
pub fn gamma(t: &FieldTower, v: &Subspace) -> Result<GammaSubspace> {
    let rational_basis = fq_rational_basis(t, v)?;
    Ok(GammaSubspace {
        space: v.with_level(t, Level::Ext)?,
        rational_basis,
    })
}

/// Every invariant subspace of dimension `v`, via the subspaces of `F_q^n`.
pub struct GammaIter<'a> {
    tower: &'a FieldTower,
    inner: SubspaceIter,
}

impl Iterator for GammaIter<'_> {
    type Item = GammaSubspace;

    fn next(&mut self) -> Option<GammaSubspace> {
        let w = self.inner.next()?;
        Some(extend_scalars(self.tower, &w).expect("base subspaces extend"))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.inner.size_hint()
    }
}

pub fn enumerate_gamma_subspaces(t: &FieldTower, n: usize, v: usize, budget: u64) -> Result<GammaIter<'_>> {
    Ok(GammaIter {
        tower: t,
        inner: enumerate_subspaces(t, Level::Base, n, v, budget)?,
    })
}

/// Slow reference: filter every subspace of `F_{q^m}^n` by invariance.
pub fn enumerate_gamma_by_filter(t: &FieldTower, n: usize, v: usize, budget: u64) -> Result<Vec<Subspace>> {
    Ok(enumerate_subspaces(t, Level::Ext, n, v, budget)?
        .filter(|s| is_frobenius_invariant(t, s))
        .collect())
}

/// `x ∈ V` with `⟨x⟩* = V`, built as `sum_i z^i e_i` over the rational basis
/// `(e_1, …, e_l)`. Needs `l <= m` so that the coefficients `z^i` are free
/// over `F_q`; the result is verified before being returned.
pub fn find_cyclic_generator(t: &FieldTower, v: &GammaSubspace) -> Result<Vec<ExtElem>> {
    let l = v.dim();
    if l > t.m() {
        return Err(Error::Hypothesis(format!(
            "cyclic generator needs dim V = {l} <= m = {}",
            t.m()
        )));
    }
    let n = v.space.ambient_dim();
    let b = v.rational_basis.basis();
    let mut x = vec![ExtElem::ZERO; n];
    for i in 0..l {
        let zi = t.z_pow(i);
        for (xj, &e) in x.iter_mut().zip(b.row(i)) {
            *xj = t.add(*xj, t.mul(zi, e));
        }
    }
    let line = Subspace::from_rows(t, Level::Ext, n, &[x.clone()])?;
    if star_closure_space(t, &line) != v.space {
        return Err(Error::Internal("cyclic generator does not generate V".into()));
    }
    Ok(x)
}
