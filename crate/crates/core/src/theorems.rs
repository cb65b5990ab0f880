//! Structural facts about rank weights as executable checks.
//!
//! Each check recomputes everything it needs from the code (or tower) it is
//! given and returns a [`CheckReport`]. A check whose hypothesis does not hold
//! for the instance, or whose enumeration exceeds the budget, reports
//! [`Verdict::Skip`] with the reason; it never reports a vacuous pass. Fail
//! reports carry the exact `r`, values and witness that violate the claim.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::code::{rank_weight, ExpansionBasis, LinearCode};
use crate::error::{Error, Result};
use crate::field::{ExtElem, FieldTower};
use crate::galois::{
    enumerate_gamma_by_filter, enumerate_gamma_subspaces, find_cyclic_generator, is_frobenius_invariant,
    star_closure_space,
};
use crate::io;
use crate::linalg::{gaussian_binomial, Level, Subspace};
use crate::weights::{element_enumeration_cost, ghw, grw_d, grw_m, weight_values_independent, InnerMax};
use crate::Settings;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Skip,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Skip => "skip",
            Verdict::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: Value,
    pub verdict: Verdict,
    pub detail: Value,
}

/// Whether a check takes a code or only a tower and a length.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Code,
    Parameters,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckKind {
    /// `dim <x>* = rk(x)` for vectors of `F_{q^m}^n`.
    StarRank,
    /// `1 <= M_1 < … < M_k <= n`.
    Monotonicity,
    /// `(q^{mr} - 1) M_{r-1} <= (q^{mr} - q^m) M_r`.
    WeightRatio,
    /// `M_r <= n - k + r`.
    Singleton,
    /// `{M_r(C)}` and `{n + 1 - M_r(C^⊥)}` partition `{1, …, n}`.
    Duality,
    /// With `t = k + r - M_r(C^⊥)`: `M_t(C) <= n - M_r(C^⊥)` and
    /// `M_{t+Δ}(C) != n + 1 - M_r(C^⊥)` for `Δ > 0`.
    DualBounds,
    /// `C` is r-MRD iff `d(C^⊥) >= k - r + 2`.
    MrdDual,
    /// `d_r = M_r` when `n <= m`.
    Equivalence,
    /// `M_r <= d_r^{Hamming} <= n - k + r`.
    Hamming,
    /// `M_1` equals the minimum rank distance.
    MinDistance,
    /// Both ways of evaluating the inner maximum of `d_r` agree.
    InnerMaxPaths,
    /// `V^⊥` is invariant for every invariant `V`.
    DualClosure,
    /// Every invariant `V` with `dim V <= m` is `<x>*` for some `x`.
    CyclicGenerator,
    /// Invariant subspaces from rational bases equal the filtered set of all
    /// subspaces.
    GammaEnumeration,
}

impl CheckKind {
    pub const ALL: [CheckKind; 14] = [
        CheckKind::StarRank,
        CheckKind::Monotonicity,
        CheckKind::WeightRatio,
        CheckKind::Singleton,
        CheckKind::Duality,
        CheckKind::DualBounds,
        CheckKind::MrdDual,
        CheckKind::Equivalence,
        CheckKind::Hamming,
        CheckKind::MinDistance,
        CheckKind::InnerMaxPaths,
        CheckKind::DualClosure,
        CheckKind::CyclicGenerator,
        CheckKind::GammaEnumeration,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::StarRank => "star_rank",
            CheckKind::Monotonicity => "monotonicity",
            CheckKind::WeightRatio => "weight_ratio",
            CheckKind::Singleton => "singleton",
            CheckKind::Duality => "duality",
            CheckKind::DualBounds => "dual_bounds",
            CheckKind::MrdDual => "mrd_dual",
            CheckKind::Equivalence => "equivalence",
            CheckKind::Hamming => "hamming",
            CheckKind::MinDistance => "min_distance",
            CheckKind::InnerMaxPaths => "inner_max_paths",
            CheckKind::DualClosure => "dual_closure",
            CheckKind::CyclicGenerator => "cyclic_generator",
            CheckKind::GammaEnumeration => "gamma_enumeration",
        }
    }

    pub fn scope(self) -> Scope {
        match self {
            CheckKind::StarRank | CheckKind::DualClosure | CheckKind::CyclicGenerator | CheckKind::GammaEnumeration => {
                Scope::Parameters
            }
            _ => Scope::Code,
        }
    }

    /// Parses a comma-separated list; `all` selects every check.
    pub fn parse_list(s: &str) -> Result<Vec<CheckKind>> {
        let mut out = BTreeSet::new();
        for name in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            if name == "all" {
                out.extend(CheckKind::ALL);
            } else {
                out.insert(name.parse()?);
            }
        }
        if out.is_empty() {
            return Err(Error::Argument("empty check list".into()));
        }
        Ok(out.into_iter().collect())
    }
}

impl Serialize for CheckKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = CheckKind::ALL.iter().map(|c| c.name()).collect();
                Error::Argument(format!("unknown check {s:?}; known: {}", names.join(", ")))
            })
    }
}

/// How [`star_rank`] chooses its vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sample {
    Exhaustive,
    Random { seed: u64, count: u64 },
}

enum Outcome {
    Pass(Value),
    Skip(String),
    Fail(Value),
}

fn finish(kind: CheckKind, params: Value, res: Result<Outcome>) -> CheckReport {
    let (verdict, detail) = match res {
        Ok(Outcome::Pass(d)) => (Verdict::Pass, d),
        Ok(Outcome::Skip(why)) => (Verdict::Skip, json!({ "reason": why })),
        Ok(Outcome::Fail(d)) => (Verdict::Fail, d),
        Err(e) if e.is_gate() => (Verdict::Skip, json!({ "reason": e.to_string() })),
        Err(e) => (Verdict::Fail, json!({ "error": e.to_string() })),
    };
    CheckReport {
        check: kind.name().into(),
        params,
        verdict,
        detail,
    }
}

fn code_params(c: &LinearCode) -> Value {
    json!({ "code": io::code_to_json(c) })
}

fn tower_params(t: &FieldTower, n: usize) -> Value {
    json!({ "field": io::tower_to_json(t), "n": n })
}

/// Runs a code-level check.
pub fn run_code_check(kind: CheckKind, c: &LinearCode, s: &Settings) -> Result<CheckReport> {
    Ok(match kind {
        CheckKind::Monotonicity => monotonicity(c, s),
        CheckKind::WeightRatio => weight_ratio(c, s),
        CheckKind::Singleton => singleton(c, s),
        CheckKind::Duality => duality(c, s),
        CheckKind::DualBounds => dual_bounds(c, s),
        CheckKind::MrdDual => mrd_dual(c, s),
        CheckKind::Equivalence => equivalence(c, s),
        CheckKind::Hamming => hamming(c, s),
        CheckKind::MinDistance => min_distance(c, s),
        CheckKind::InnerMaxPaths => inner_max_paths(c, s),
        other => return Err(Error::Argument(format!("{other} is a parameter-level check"))),
    })
}

/// Runs a parameter-level check; `star_rank` is exhaustive.
pub fn run_parameter_check(kind: CheckKind, t: &FieldTower, n: usize, s: &Settings) -> Result<CheckReport> {
    Ok(match kind {
        CheckKind::StarRank => star_rank(t, n, Sample::Exhaustive, s),
        CheckKind::DualClosure => dual_closure(t, n, s),
        CheckKind::CyclicGenerator => cyclic_generator(t, n, s),
        CheckKind::GammaEnumeration => gamma_enumeration(t, n, s),
        other => return Err(Error::Argument(format!("{other} is a code-level check"))),
    })
}

pub fn star_rank(t: &FieldTower, n: usize, sample: Sample, s: &Settings) -> CheckReport {
    let mut params = tower_params(t, n);
    params["sample"] = match sample {
        Sample::Exhaustive => json!("exhaustive"),
        Sample::Random { seed, count } => json!({ "seed": seed, "count": count }),
    };
    let res = (|| {
        if n > t.m() {
            return Ok(Outcome::Skip(format!("needs n = {n} <= m = {}", t.m())));
        }
        let big = t.order() as u64;
        let basis = ExpansionBasis::polynomial(t);
        let check = |x: &[ExtElem]| -> Option<Outcome> {
            let line = Subspace::from_rows(t, Level::Ext, n, &[x.to_vec()]).expect("length n");
            let (lhs, rhs) = (star_closure_space(t, &line).dim(), rank_weight(t, x, &basis));
            (lhs != rhs).then(|| {
                Outcome::Fail(json!({
                    "x": io::vector_to_json(t, x),
                    "closure_dim": lhs,
                    "rank_weight": rhs,
                }))
            })
        };
        let vectors = match sample {
            Sample::Exhaustive => s.require((big as u128).checked_pow(n as u32))? as u64,
            Sample::Random { count, .. } => count,
        };
        let mut rng = match sample {
            Sample::Random { seed, .. } => Some(ChaCha8Rng::seed_from_u64(seed)),
            Sample::Exhaustive => None,
        };
        for i in 0..vectors {
            let x: Vec<ExtElem> = match rng.as_mut() {
                Some(rng) => (0..n).map(|_| ExtElem::from_index(rng.gen_range(0..t.order()))).collect(),
                None => {
                    let mut idx = i;
                    (0..n)
                        .map(|_| {
                            let d = (idx % big) as u32;
                            idx /= big;
                            ExtElem::from_index(d)
                        })
                        .collect()
                }
            };
            if let Some(fail) = check(&x) {
                return Ok(fail);
            }
        }
        Ok(Outcome::Pass(json!({ "vectors": vectors })))
    })();
    finish(CheckKind::StarRank, params, res)
}

pub fn monotonicity(c: &LinearCode, s: &Settings) -> CheckReport {
    let res = (|| {
        let h = weight_values_independent(c, s)?;
        if h[0] < 1 {
            return Ok(Outcome::Fail(json!({ "hierarchy": h, "violation": "M_1 < 1" })));
        }
        if h[c.k() - 1] > c.n() {
            return Ok(Outcome::Fail(json!({ "hierarchy": h, "violation": "M_k > n" })));
        }
        for r in 2..=c.k() {
            if h[r - 2] >= h[r - 1] {
                return Ok(Outcome::Fail(json!({
                    "hierarchy": h,
                    "r": r,
                    "violation": "M_{r-1} >= M_r",
                })));
            }
        }
        Ok(Outcome::Pass(json!({ "hierarchy": h })))
    })();
    finish(CheckKind::Monotonicity, code_params(c), res)
}

pub fn weight_ratio(c: &LinearCode, s: &Settings) -> CheckReport {
    let res = (|| {
        if c.k() < 2 {
            return Ok(Outcome::Skip("needs k >= 2".into()));
        }
        let h = weight_values_independent(c, s)?;
        let q = BigUint::from(c.tower().q());
        let qm = q.pow(c.tower().m() as u32);
        for r in 2..=c.k() {
            let qmr = q.pow((c.tower().m() * r) as u32);
            let lhs = (&qmr - 1u32) * h[r - 2];
            let rhs = (&qmr - &qm) * h[r - 1];
            if lhs > rhs {
                return Ok(Outcome::Fail(json!({
                    "hierarchy": h,
                    "r": r,
                    "lhs": lhs.to_string(),
                    "rhs": rhs.to_string(),
                })));
            }
        }
        Ok(Outcome::Pass(json!({ "hierarchy": h })))
    })();
    finish(CheckKind::WeightRatio, code_params(c), res)
}

/// `M_r(C) = n - k + r`.
pub fn is_r_mrd(c: &LinearCode, r: usize, s: &Settings) -> Result<bool> {
    Ok(grw_m(c, r, s)?.0 == c.n() - c.k() + r)
}

pub fn singleton(c: &LinearCode, s: &Settings) -> CheckReport {
    let res = (|| {
        let h = weight_values_independent(c, s)?;
        let (n, k) = (c.n(), c.k());
        let mrd: Vec<bool> = (1..=k).map(|r| h[r - 1] == n - k + r).collect();
        for r in 1..=k {
            if h[r - 1] > n - k + r {
                return Ok(Outcome::Fail(json!({
                    "hierarchy": h,
                    "r": r,
                    "bound": n - k + r,
                })));
            }
        }
        Ok(Outcome::Pass(json!({ "hierarchy": h, "r_mrd": mrd })))
    })();
    finish(CheckKind::Singleton, code_params(c), res)
}

pub fn duality(c: &LinearCode, s: &Settings) -> CheckReport {
    let res = (|| {
        let n = c.n();
        let h = weight_values_independent(c, s)?;
        let dual_h = match c.dual() {
            Some(d) => weight_values_independent(&d, s)?,
            None => Vec::new(),
        };
        let primal: BTreeSet<usize> = h.iter().copied().collect();
        let reflected: BTreeSet<usize> = dual_h.iter().map(|&v| n + 1 - v).collect();
        let overlap: Vec<usize> = primal.intersection(&reflected).copied().collect();
        let missing: Vec<usize> = (1..=n).filter(|i| !primal.contains(i) && !reflected.contains(i)).collect();
        let detail = json!({
            "hierarchy": h,
            "dual_hierarchy": dual_h,
            "overlap": overlap,
            "missing": missing,
        });
        let sizes_ok = primal.len() == h.len() && reflected.len() == dual_h.len();
        if overlap.is_empty() && missing.is_empty() && sizes_ok {
            Ok(Outcome::Pass(detail))
        } else {
            Ok(Outcome::Fail(detail))
        }
    })();
    finish(CheckKind::Duality, code_params(c), res)
}

pub fn dual_bounds(c: &LinearCode, s: &Settings) -> CheckReport {
    let res = (|| {
        let Some(dual) = c.dual() else {
            return Ok(Outcome::Skip("k = n leaves no r with 1 <= r <= n - k".into()));
        };
        let (n, k) = (c.n() as i64, c.k() as i64);
        let h = weight_values_independent(c, s)?;
        let m_at = |t: i64| h[(t - 1) as usize] as i64;
        let mut evaluated = 0;
        let mut cases = Vec::new();
        for r in 1..=dual.k() {
            let mr = grw_m(&dual, r, s)?.0 as i64;
            let t = k + r as i64 - mr;
            let first = if (1..=k).contains(&t) {
                evaluated += 1;
                let ok = m_at(t) <= n - mr;
                if !ok {
                    return Ok(Outcome::Fail(json!({
                        "r": r,
                        "dual_M_r": mr,
                        "t": t,
                        "M_t": m_at(t),
                        "bound": n - mr,
                        "violation": "M_t(C) > n - M_r(C^⊥)",
                    })));
                }
                Value::Bool(ok)
            } else {
                Value::Null
            };
            for delta in 1..=(k - t) {
                if t + delta < 1 {
                    continue;
                }
                evaluated += 1;
                if m_at(t + delta) == n - mr + 1 {
                    return Ok(Outcome::Fail(json!({
                        "r": r,
                        "dual_M_r": mr,
                        "t": t,
                        "delta": delta,
                        "M_t_plus_delta": m_at(t + delta),
                        "violation": "M_{t+delta}(C) = n + 1 - M_r(C^⊥)",
                    })));
                }
            }
            cases.push(json!({ "r": r, "dual_M_r": mr, "t": t, "first_bound": first }));
        }
        if evaluated == 0 {
            return Ok(Outcome::Skip("t lies outside 1..=k for every r and no Δ applies".into()));
        }
        Ok(Outcome::Pass(json!({ "hierarchy": h, "cases": cases })))
    })();
    finish(CheckKind::DualBounds, code_params(c), res)
}

pub fn mrd_dual(c: &LinearCode, s: &Settings) -> CheckReport {
    let res = (|| {
        let Some(dual) = c.dual() else {
            return Ok(Outcome::Skip("k = n: the dual is the zero space".into()));
        };
        let k = c.k() as i64;
        let d_dual = dual.min_rank_distance(s)? as i64;
        let mut cases = Vec::new();
        for r in 1..=c.k() {
            let mrd = is_r_mrd(c, r, s)?;
            let threshold = k - r as i64 + 2;
            let via_distance = d_dual >= threshold;
            let via_dual_m_r = if r <= dual.k() {
                let mr = grw_m(&dual, r, s)?.0 as i64;
                json!(mrd == (mr >= threshold))
            } else {
                Value::Null
            };
            let case = json!({
                "r": r,
                "r_mrd": mrd,
                "dual_min_rank_distance": d_dual,
                "threshold": threshold,
                "variant_with_dual_M_r_holds": via_dual_m_r,
            });
            if mrd != via_distance {
                return Ok(Outcome::Fail(case));
            }
            cases.push(case);
        }
        Ok(Outcome::Pass(json!({
            "rationale": "the biconditional is tested with d(C^⊥) = M_1(C^⊥); the form with M_r(C^⊥) is only recorded",
            "cases": cases,
        })))
    })();
    finish(CheckKind::MrdDual, code_params(c), res)
}

pub fn equivalence(c: &LinearCode, s: &Settings) -> CheckReport {
    let res = (|| {
        if c.n() > c.tower().m() {
            return Ok(Outcome::Skip(format!("needs n = {} <= m = {}", c.n(), c.tower().m())));
        }
        let mut d = Vec::new();
        let mut m = Vec::new();
        for r in 1..=c.k() {
            let dr = grw_d(c, r, InnerMax::Auto, s)?;
            let mr = grw_m(c, r, s)?.0;
            d.push(dr);
            m.push(mr);
            if dr != mr {
                return Ok(Outcome::Fail(json!({ "r": r, "subcode_value": dr, "gamma_value": mr })));
            }
        }
        Ok(Outcome::Pass(json!({ "hierarchy": m })))
    })();
    finish(CheckKind::Equivalence, code_params(c), res)
}

pub fn hamming(c: &LinearCode, s: &Settings) -> CheckReport {
    let res = (|| {
        let (n, k) = (c.n(), c.k());
        let mut pairs = Vec::new();
        for r in 1..=k {
            let mr = grw_m(c, r, s)?.0;
            let hr = ghw(c, r)?;
            if mr > hr || hr > n - k + r {
                return Ok(Outcome::Fail(json!({
                    "r": r,
                    "rank_weight": mr,
                    "hamming_weight": hr,
                    "singleton": n - k + r,
                })));
            }
            pairs.push([mr, hr]);
        }
        Ok(Outcome::Pass(json!({ "rank_and_hamming": pairs })))
    })();
    finish(CheckKind::Hamming, code_params(c), res)
}

pub fn min_distance(c: &LinearCode, s: &Settings) -> CheckReport {
    let res = (|| {
        let d = c.min_rank_distance(s)?;
        let (m1, w) = grw_m(c, 1, s)?;
        let detail = json!({
            "min_rank_distance": d,
            "M_1": m1,
            "witness": io::subspace_to_json(c.tower(), w.rational_basis()),
        });
        Ok(if d == m1 { Outcome::Pass(detail) } else { Outcome::Fail(detail) })
    })();
    finish(CheckKind::MinDistance, code_params(c), res)
}

pub fn inner_max_paths(c: &LinearCode, s: &Settings) -> CheckReport {
    let res = (|| {
        if c.n() > c.tower().m() {
            return Ok(Outcome::Skip(format!(
                "closure dimension path needs n = {} <= m = {}",
                c.n(),
                c.tower().m()
            )));
        }
        s.require(element_enumeration_cost(c))?;
        let mut values = Vec::new();
        for r in 1..=c.k() {
            let fast = grw_d(c, r, InnerMax::ClosureDimension, s)?;
            let slow = grw_d(c, r, InnerMax::ElementEnumeration, s)?;
            if fast != slow {
                return Ok(Outcome::Fail(json!({ "r": r, "closure_dimension": fast, "element_enumeration": slow })));
            }
            values.push(fast);
        }
        Ok(Outcome::Pass(json!({ "values": values })))
    })();
    finish(CheckKind::InnerMaxPaths, code_params(c), res)
}

pub fn dual_closure(t: &FieldTower, n: usize, s: &Settings) -> CheckReport {
    let res = (|| {
        let mut count = 0u64;
        for v in 0..=n {
            for g in enumerate_gamma_subspaces(t, n, v, s.budget)? {
                count += 1;
                let perp = g.space().orthogonal_complement(t);
                if perp.dim() != n - v || !is_frobenius_invariant(t, &perp) {
                    return Ok(Outcome::Fail(json!({
                        "v": io::subspace_to_json(t, g.space()),
                        "complement": io::subspace_to_json(t, &perp),
                    })));
                }
            }
        }
        Ok(Outcome::Pass(json!({ "subspaces": count })))
    })();
    finish(CheckKind::DualClosure, tower_params(t, n), res)
}

pub fn cyclic_generator(t: &FieldTower, n: usize, s: &Settings) -> CheckReport {
    let res = (|| {
        let mut count = 0u64;
        for v in 0..=n.min(t.m()) {
            for g in enumerate_gamma_subspaces(t, n, v, s.budget)? {
                count += 1;
                let x = find_cyclic_generator(t, &g)?;
                let line = Subspace::from_rows(t, Level::Ext, n, std::slice::from_ref(&x))?;
                if star_closure_space(t, &line) != *g.space() {
                    return Ok(Outcome::Fail(json!({
                        "v": io::subspace_to_json(t, g.space()),
                        "x": io::vector_to_json(t, &x),
                    })));
                }
            }
        }
        Ok(Outcome::Pass(json!({ "subspaces": count })))
    })();
    finish(CheckKind::CyclicGenerator, tower_params(t, n), res)
}

pub fn gamma_enumeration(t: &FieldTower, n: usize, s: &Settings) -> CheckReport {
    let res = (|| {
        let mut counts = Vec::new();
        for v in 0..=n {
            let fast: BTreeSet<Subspace> = enumerate_gamma_subspaces(t, n, v, s.budget)?
                .map(|g| g.space().clone())
                .collect();
            let slow: BTreeSet<Subspace> = enumerate_gamma_by_filter(t, n, v, s.budget)?.into_iter().collect();
            let expected = gaussian_binomial(n, v, t.q() as u64);
            if fast != slow || expected != Some(fast.len() as u128) {
                let extra: Vec<Value> = fast.difference(&slow).map(|x| io::subspace_to_json(t, x)).collect();
                let missed: Vec<Value> = slow.difference(&fast).map(|x| io::subspace_to_json(t, x)).collect();
                return Ok(Outcome::Fail(json!({
                    "dim": v,
                    "from_rational_bases": fast.len(),
                    "from_filter": slow.len(),
                    "gaussian_binomial": expected.map(|x| x.to_string()),
                    "only_from_rational_bases": extra,
                    "only_from_filter": missed,
                })));
            }
            counts.push(fast.len());
        }
        Ok(Outcome::Pass(json!({ "counts_by_dim": counts })))
    })();
    finish(CheckKind::GammaEnumeration, tower_params(t, n), res)
}
