//! Generalized rank weights.
//!
//! * [`grw_m`]: `M_r(C) = min { dim V : V^q = V, dim(C ∩ V) >= r }`, scanning
//!   invariant subspaces by increasing dimension.
//! * [`grw_d`]: `min over r-dim subcodes D of max { rk(x) : x ∈ D* }`.
//! * [`ghw`]: Wei's generalized Hamming weight, same shape as `M_r` but over
//!   coordinate subspaces only.

use serde::Serialize;

use crate::code::{rank_weight_poly, LinearCode};
use crate::error::{Error, Result};
use crate::field::ExtElem;
use crate::galois::{enumerate_gamma_subspaces, star_closure_space, GammaSubspace};
use crate::linalg::{self, enumerate_subspaces, gaussian_binomial, Level, Matrix, Subspace};
use crate::{par, Settings};

/// `(M_1, …, M_k)` with one minimal witness per entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightHierarchy {
    values: Vec<usize>,
    witnesses: Vec<GammaSubspace>,
}

impl WeightHierarchy {
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn witnesses(&self) -> &[GammaSubspace] {
        &self.witnesses
    }

    /// `M_r`, 1-based.
    pub fn get(&self, r: usize) -> usize {
        self.values[r - 1]
    }
}

/// How [`grw_d`] evaluates `max { rk(x) : x ∈ D* }`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InnerMax {
    /// Closure dimension when `n <= m`, element enumeration otherwise.
    Auto,
    /// `dim D*`; valid only when `n <= m`.
    ClosureDimension,
    /// Enumerate every element of `D*`.
    ElementEnumeration,
}

fn check_r(code: &LinearCode, r: usize) -> Result<()> {
    if r == 0 || r > code.k() {
        return Err(Error::RankOutOfRange { r, max: code.k() });
    }
    Ok(())
}

/// `dim(C ∩ V)` from the dimension formula.
fn meet_dim(code: &LinearCode, v: &Subspace) -> usize {
    code.k() + v.dim() - code.generator().sum_dim(code.tower(), v)
}

fn grw_m_from(code: &LinearCode, r: usize, start: usize, settings: &Settings) -> Result<(usize, GammaSubspace)> {
    let t = code.tower();
    for v in start..=code.n() {
        for g in enumerate_gamma_subspaces(t, code.n(), v, settings.budget)? {
            if meet_dim(code, g.space()) >= r {
                return Ok((v, g));
            }
        }
    }
    Err(Error::Internal("the full space always meets C in dimension k".into()))
}

/// `M_r(C)` and the first minimal witness in canonical order.
pub fn grw_m(code: &LinearCode, r: usize, settings: &Settings) -> Result<(usize, GammaSubspace)> {
    check_r(code, r)?;
    grw_m_from(code, r, r, settings)
}

/// `(M_1(C), …, M_k(C))`. Each search starts one above the previous value.
pub fn weight_hierarchy(code: &LinearCode, settings: &Settings) -> Result<WeightHierarchy> {
    let mut values = Vec::with_capacity(code.k());
    let mut witnesses = Vec::with_capacity(code.k());
    let mut start = 1;
    for r in 1..=code.k() {
        let (v, w) = grw_m_from(code, r, start.max(r), settings)?;
        values.push(v);
        witnesses.push(w);
        start = v + 1;
    }
    Ok(WeightHierarchy { values, witnesses })
}

/// Hierarchy values only, each `M_r` searched from scratch starting at `r`.
/// Slower than [`weight_hierarchy`] but assumes nothing about monotonicity.
pub fn weight_values_independent(code: &LinearCode, settings: &Settings) -> Result<Vec<usize>> {
    (1..=code.k()).map(|r| grw_m(code, r, settings).map(|(v, _)| v)).collect()
}

fn max_rank_in_closure(code: &LinearCode, d: &Subspace, path: InnerMax, settings: &Settings) -> Result<usize> {
    let t = code.tower();
    let (n, m) = (code.n(), t.m());
    let closure = star_closure_space(t, d);
    let path = match path {
        InnerMax::Auto if n <= m => InnerMax::ClosureDimension,
        InnerMax::Auto => InnerMax::ElementEnumeration,
        p => p,
    };
    match path {
        InnerMax::ClosureDimension => {
            if n > m {
                return Err(Error::Hypothesis(format!(
                    "closure dimension equals the largest rank weight only when n = {n} <= m = {m}"
                )));
            }
            Ok(closure.dim())
        }
        InnerMax::ElementEnumeration => {
            let big = t.order() as u64;
            let s = closure.dim();
            let total = settings.require((big as u128).checked_pow(s as u32))? as u64;
            let cap = n.min(m);
            let basis = closure.basis();
            let mut best = 0;
            for mut i in 1..total {
                let coeffs: Vec<ExtElem> = (0..s)
                    .map(|_| {
                        let c = (i % big) as u32;
                        i /= big;
                        ExtElem::from_index(c)
                    })
                    .collect();
                best = best.max(rank_weight_poly(t, &linalg::combine(t, &coeffs, basis)));
                if best == cap {
                    break;
                }
            }
            Ok(best)
        }
        InnerMax::Auto => unreachable!(),
    }
}

/// All `r`-dimensional subcodes of `code`, in the canonical order of their
/// message subspaces.
pub fn subcodes(code: &LinearCode, r: usize, settings: &Settings) -> Result<Vec<Subspace>> {
    let t = code.tower();
    let g = code.generator().basis();
    Ok(enumerate_subspaces(t, Level::Ext, code.k(), r, settings.budget)?
        .map(|a| Subspace::row_space(t, &linalg::mat_mul(t, a.basis(), g)))
        .collect())
}

/// `d_r(λ(C)) = min_{D ⊆ C, dim D = r} max_{x ∈ D*} rk(x)`.
pub fn grw_d(code: &LinearCode, r: usize, path: InnerMax, settings: &Settings) -> Result<usize> {
    check_r(code, r)?;
    if path == InnerMax::ClosureDimension && code.n() > code.tower().m() {
        return Err(Error::Hypothesis(format!(
            "closure dimension path needs n = {} <= m = {}",
            code.n(),
            code.tower().m()
        )));
    }
    let subs = subcodes(code, r, settings)?;
    let vals = par::map(settings.exec, &subs, |d| max_rank_in_closure(code, d, path, settings));
    let mut best = usize::MAX;
    for v in vals {
        best = best.min(v?);
    }
    Ok(best)
}

/// `(d_1, …, d_k)` via [`grw_d`].
pub fn d_hierarchy(code: &LinearCode, path: InnerMax, settings: &Settings) -> Result<Vec<usize>> {
    (1..=code.k()).map(|r| grw_d(code, r, path, settings)).collect()
}

/// Upper bound on the items [`grw_d`] with element enumeration would visit
/// for every `r`; used to decide whether that path is affordable.
pub fn element_enumeration_cost(code: &LinearCode) -> Option<u128> {
    let big = code.tower().order() as u128;
    let per = big.checked_pow(code.n().min(code.k() * code.tower().m()) as u32)?;
    let mut total: u128 = 0;
    for r in 1..=code.k() {
        total = total.checked_add(gaussian_binomial(code.k(), r, big as u64)?.checked_mul(per)?)?;
    }
    Some(total)
}

/// `d_r(C)`: smallest coordinate subspace meeting `C` in dimension `>= r`.
pub fn ghw(code: &LinearCode, r: usize) -> Result<usize> {
    check_r(code, r)?;
    let (n, t) = (code.n(), code.tower());
    for size in r..=n {
        let mut found = false;
        for_each_combination(n, size, |cols| {
            let mut e = Matrix::zeros(Level::Ext, 0, n);
            for &c in cols {
                let mut row = vec![ExtElem::ZERO; n];
                row[c] = ExtElem::ONE;
                e.push_row(&row);
            }
            let s = Subspace::row_space(t, &e);
            if meet_dim(code, &s) >= r {
                found = true;
            }
            found
        });
        if found {
            return Ok(size);
        }
    }
    Err(Error::Internal("the full support always works".into()))
}

/// Calls `f` on each `size`-subset of `0..n` in lexicographic order until it
/// returns `true`.
fn for_each_combination(n: usize, size: usize, mut f: impl FnMut(&[usize]) -> bool) {
    let mut c: Vec<usize> = (0..size).collect();
    loop {
        if f(&c) {
            return;
        }
        let mut i = size;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if c[i] < n - size + i {
                c[i] += 1;
                for j in i + 1..size {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
    }
}
