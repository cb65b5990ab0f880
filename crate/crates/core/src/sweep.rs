//! Run the checks over every code of given parameters, or over seeded random
//! codes, and collect one row per code.
//!
//! Rows are computed in parallel (per code) and then sorted into canonical
//! code order, so output does not depend on scheduling. A leading row with
//! `code_id = "parameters"` carries the checks that depend only on the tower
//! and the length.

use std::fmt;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::field::FieldTower;
use crate::linalg::{enumerate_subspaces, gaussian_binomial, Level};
use crate::theorems::{run_code_check, run_parameter_check, CheckKind, CheckReport, Scope, Verdict};
use crate::weights::weight_hierarchy;
use crate::{par, zoo, Settings};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    /// `count` codes; each draw picks `k` (unless fixed) and a code seed from
    /// one ChaCha8 stream seeded with `seed`.
    Random { count: u64, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub tower: FieldTower,
    pub n: usize,
    /// `None` sweeps every `1 <= k <= n`.
    pub k: Option<usize>,
    pub mode: Mode,
    pub checks: Vec<CheckKind>,
    pub settings: Settings,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub q: u32,
    pub e: usize,
    pub p: u32,
    pub m: usize,
    pub n: usize,
    pub k: Option<usize>,
    pub code_id: String,
    /// Seed of the random draw that produced the code.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// `None` when the hierarchy could not be computed within budget.
    pub hierarchy: Option<Vec<usize>>,
    pub dual_hierarchy: Option<Vec<usize>>,
    pub checks: Vec<CheckReport>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: u64,
    pub skipped: u64,
    pub failed: u64,
}

impl Summary {
    pub fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Pass => self.passed += 1,
            Verdict::Skip => self.skipped += 1,
            Verdict::Fail => self.failed += 1,
        }
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} passed / {} skipped / {} failed", self.passed, self.skipped, self.failed)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub checks: Vec<CheckKind>,
    pub summary: Summary,
}

impl SweepResult {
    /// Number of code rows, excluding the parameter row.
    pub fn code_count(&self) -> usize {
        self.rows.iter().filter(|r| r.k.is_some()).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = (&SweepRow, &CheckReport)> {
        self.rows
            .iter()
            .flat_map(|r| r.checks.iter().map(move |c| (r, c)))
            .filter(|(_, c)| c.verdict == Verdict::Fail)
    }
}

/// Generator rows as element indices: entries joined by `,`, rows by `;`.
pub fn code_id(c: &LinearCode) -> String {
    let b = c.generator().basis();
    (0..b.rows())
        .map(|r| b.row(r).iter().map(|a| a.index().to_string()).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}

/// Every `[n, k]` code, in canonical order. The count is checked against the
/// Gaussian binomial.
pub fn all_codes(t: &FieldTower, n: usize, k: usize, settings: &Settings) -> Result<Vec<LinearCode>> {
    let codes: Vec<LinearCode> = enumerate_subspaces(t, Level::Ext, n, k, settings.budget)?
        .map(|s| LinearCode::from_subspace(t, s))
        .collect::<Result<_>>()?;
    let expected = gaussian_binomial(n, k, t.order() as u64);
    if expected != Some(codes.len() as u128) {
        return Err(Error::Internal(format!(
            "enumerated {} [{n}, {k}] codes, Gaussian binomial gives {expected:?}",
            codes.len()
        )));
    }
    Ok(codes)
}

fn ks(cfg: &SweepConfig) -> Result<Vec<usize>> {
    match cfg.k {
        Some(k) if k == 0 || k > cfg.n => Err(Error::RankOutOfRange { r: k, max: cfg.n }),
        Some(k) => Ok(vec![k]),
        None => Ok((1..=cfg.n).collect()),
    }
}

fn draw_codes(cfg: &SweepConfig) -> Result<Vec<(LinearCode, Option<u64>)>> {
    let t = &cfg.tower;
    let ks = ks(cfg)?;
    match cfg.mode {
        Mode::Exhaustive => {
            let mut out = Vec::new();
            for k in ks {
                out.extend(all_codes(t, cfg.n, k, &cfg.settings)?.into_iter().map(|c| (c, None)));
            }
            Ok(out)
        }
        Mode::Random { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| {
                    let k = ks[rng.gen_range(0..ks.len())];
                    let code_seed = rng.next_u64();
                    Ok((zoo::random_code(t, cfg.n, k, code_seed)?, Some(code_seed)))
                })
                .collect()
        }
    }
}

fn code_row(cfg: &SweepConfig, c: &LinearCode, seed: Option<u64>) -> SweepRow {
    let t = &cfg.tower;
    let s = &cfg.settings;
    let hierarchy = weight_hierarchy(c, s).ok().map(|h| h.values().to_vec());
    let dual_hierarchy = match c.dual() {
        Some(d) => weight_hierarchy(&d, s).ok().map(|h| h.values().to_vec()),
        None => Some(Vec::new()),
    };
    let checks = cfg
        .checks
        .iter()
        .filter(|k| k.scope() == Scope::Code)
        .map(|&k| run_code_check(k, c, s).expect("code-level check"))
        .collect();
    SweepRow {
        q: t.q(),
        e: t.e(),
        p: t.p(),
        m: t.m(),
        n: c.n(),
        k: Some(c.k()),
        code_id: code_id(c),
        seed,
        hierarchy,
        dual_hierarchy,
        checks,
    }
}

pub fn run(cfg: &SweepConfig) -> Result<SweepResult> {
    let t = &cfg.tower;
    if cfg.n == 0 {
        return Err(Error::Argument("code length n must be at least 1".into()));
    }
    let mut draws = draw_codes(cfg)?;
    draws.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut rows = Vec::with_capacity(draws.len() + 1);
    let param_checks: Vec<CheckReport> = cfg
        .checks
        .iter()
        .filter(|k| k.scope() == Scope::Parameters)
        .map(|&k| run_parameter_check(k, t, cfg.n, &cfg.settings).expect("parameter-level check"))
        .collect();
    if !param_checks.is_empty() {
        rows.push(SweepRow {
            q: t.q(),
            e: t.e(),
            p: t.p(),
            m: t.m(),
            n: cfg.n,
            k: None,
            code_id: "parameters".into(),
            seed: None,
            hierarchy: None,
            dual_hierarchy: None,
            checks: param_checks,
        });
    }
    rows.extend(par::map(cfg.settings.exec, &draws, |(c, seed)| code_row(cfg, c, *seed)));
    let mut summary = Summary::default();
    for r in &rows {
        for c in &r.checks {
            summary.add(c.verdict);
        }
    }
    Ok(SweepResult {
        rows,
        checks: cfg.checks.clone(),
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(mode: Mode) -> SweepConfig {
        SweepConfig {
            tower: FieldTower::with_defaults(2, 1, 2).unwrap(),
            n: 2,
            k: None,
            mode,
            checks: CheckKind::ALL.to_vec(),
            settings: Settings::default(),
        }
    }

    #[test]
    fn exhaustive_small_sweep() {
        let res = run(&cfg(Mode::Exhaustive)).unwrap();
        assert_eq!(res.code_count(), 6);
        assert_eq!(res.rows[0].code_id, "parameters");
        assert_eq!(res.summary.failed, 0, "{:?}", res.failures().next());
        let ids: Vec<_> = res.rows[1..].iter().map(|r| r.code_id.as_str()).collect();
        assert_eq!(ids[0], "1,0");
        let ones = res.rows.iter().find(|r| r.code_id == "1,1").unwrap();
        assert_eq!(ones.hierarchy, Some(vec![1]));
        let full = res.rows.iter().find(|r| r.k == Some(2)).unwrap();
        assert_eq!(full.dual_hierarchy, Some(vec![]));
    }

    #[test]
    fn random_sweep_is_deterministic_and_sorted() {
        let c = cfg(Mode::Random { count: 12, seed: 7 });
        let a = run(&c).unwrap();
        let b = run(&SweepConfig { settings: Settings::sequential(), ..c }).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.code_count(), 12);
        assert!(a.rows.iter().all(|r| r.k.is_none() || r.seed.is_some()));
    }

    #[test]
    fn fixed_k_and_bad_k() {
        let mut c = cfg(Mode::Exhaustive);
        c.k = Some(1);
        assert_eq!(run(&c).unwrap().code_count(), 5);
        c.k = Some(3);
        assert!(run(&c).is_err());
    }

    #[test]
    fn summary_format() {
        let s = Summary { passed: 3, skipped: 1, failed: 0 };
        assert_eq!(s.to_string(), "3 passed / 1 skipped / 0 failed");
    }
}
