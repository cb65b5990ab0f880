//! Reports for the command-line tool: weight hierarchies, duals and sweeps,
//! rendered as JSON, CSV or a plain table.
//!
//! Sweep CSV columns are fixed: `q,e,p,m,n,k,code_id`, then `M_1..M_n` and
//! `dual_M_1..dual_M_n` (short hierarchies leave trailing cells empty), then
//! one verdict column per selected check.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::io;
use crate::sweep::SweepResult;
use crate::theorems::{self, CheckReport, Verdict};
use crate::weights::{grw_d, grw_m, weight_values_independent, InnerMax};
use crate::Settings;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Emit {
    Json,
    Csv,
    Table,
}

/// Which definition of the weights to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// Invariant-subspace search.
    Gamma,
    /// Subcodes and the rank weights of their closures.
    Subspace,
    Both,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub r: usize,
    pub dim: usize,
    pub rational_basis: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeightsReport {
    pub field: Value,
    pub code: Value,
    pub n: usize,
    pub k: usize,
    pub algorithm: Algorithm,
    pub r: Vec<usize>,
    /// `M_r` for each requested `r`; the subcode values when only those were
    /// computed.
    pub hierarchy: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subcode_hierarchy: Option<Vec<usize>>,
    /// Whether both algorithms agree; absent when they were not compared.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl WeightsReport {
    pub fn compute(c: &LinearCode, rs: &[usize], algorithm: Algorithm, s: &Settings) -> Result<Self> {
        let t = c.tower();
        let mut gamma = Vec::new();
        let mut witnesses = Vec::new();
        if algorithm != Algorithm::Subspace {
            for &r in rs {
                let (v, w) = grw_m(c, r, s)?;
                gamma.push(v);
                witnesses.push(Witness {
                    r,
                    dim: v,
                    rational_basis: io::subspace_to_json(t, w.rational_basis()),
                });
            }
        }
        let subcode = if algorithm != Algorithm::Gamma {
            Some(rs.iter().map(|&r| grw_d(c, r, InnerMax::Auto, s)).collect::<Result<Vec<_>>>()?)
        } else {
            None
        };
        let comparable = c.n() <= t.m();
        let (hierarchy, subcode_hierarchy, agreement, note) = match algorithm {
            Algorithm::Gamma => (gamma, None, None, None),
            Algorithm::Subspace => (subcode.unwrap(), None, None, None),
            Algorithm::Both if comparable => {
                let agree = subcode.as_ref() == Some(&gamma);
                (gamma, subcode, Some(agree), None)
            }
            Algorithm::Both => (
                gamma,
                subcode,
                None,
                Some(format!(
                    "n = {} > m = {}: the two definitions are not claimed equal, so they are reported without comparison",
                    c.n(),
                    t.m()
                )),
            ),
        };
        Ok(WeightsReport {
            field: io::tower_to_json(t),
            code: io::code_to_json(c),
            n: c.n(),
            k: c.k(),
            algorithm,
            r: rs.to_vec(),
            hierarchy,
            witnesses,
            subcode_hierarchy,
            agreement,
            note,
        })
    }

    pub fn render(&self, emit: Emit) -> Result<String> {
        match emit {
            Emit::Json => json_line(self),
            Emit::Csv => {
                let mut header = vec!["r".to_string(), self.value_label().into()];
                if self.subcode_hierarchy.is_some() {
                    header.push("d_r".into());
                }
                let rows = self.r.iter().enumerate().map(|(i, r)| {
                    let mut row = vec![r.to_string(), self.hierarchy[i].to_string()];
                    if let Some(d) = &self.subcode_hierarchy {
                        row.push(d[i].to_string());
                    }
                    row
                });
                csv_string(header, rows)
            }
            Emit::Table => {
                let mut out = format!("[{}, {}] code, q = {}, m = {}\n", self.n, self.k, self.field["p"], self.field["m"]);
                if self.field["e"] != 1 {
                    out = format!(
                        "[{}, {}] code, p = {}, e = {}, m = {}\n",
                        self.n, self.k, self.field["p"], self.field["e"], self.field["m"]
                    );
                }
                let _ = write!(out, "{:>3}  {:>4}", "r", self.value_label());
                if self.subcode_hierarchy.is_some() {
                    out.push_str("   d_r");
                }
                out.push('\n');
                for (i, r) in self.r.iter().enumerate() {
                    let _ = write!(out, "{r:>3}  {:>4}", self.hierarchy[i]);
                    if let Some(d) = &self.subcode_hierarchy {
                        let _ = write!(out, "  {:>4}", d[i]);
                    }
                    out.push('\n');
                }
                match self.agreement {
                    Some(true) => out.push_str("both algorithms agree\n"),
                    Some(false) => out.push_str("ALGORITHMS DISAGREE\n"),
                    None => {}
                }
                if let Some(n) = &self.note {
                    let _ = writeln!(out, "note: {n}");
                }
                Ok(out)
            }
        }
    }

    fn value_label(&self) -> &'static str {
        match self.algorithm {
            Algorithm::Subspace => "d_r",
            _ => "M_r",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualReport {
    pub field: Value,
    pub code: Value,
    /// `null` when the dual is the zero space.
    pub dual: Value,
    pub hierarchy: Vec<usize>,
    pub dual_hierarchy: Vec<usize>,
    pub duality: CheckReport,
}

impl DualReport {
    pub fn compute(c: &LinearCode, s: &Settings) -> Result<Self> {
        let dual = c.dual();
        let hierarchy = weight_values_independent(c, s)?;
        let dual_hierarchy = match &dual {
            Some(d) => weight_values_independent(d, s)?,
            None => Vec::new(),
        };
        Ok(DualReport {
            field: io::tower_to_json(c.tower()),
            code: io::code_to_json(c),
            dual: dual.as_ref().map_or(Value::Null, io::code_to_json),
            hierarchy,
            dual_hierarchy,
            duality: theorems::duality(c, s),
        })
    }

    pub fn render(&self, emit: Emit) -> Result<String> {
        match emit {
            Emit::Json => json_line(self),
            Emit::Csv => csv_string(
                vec!["hierarchy".into(), "dual_hierarchy".into(), "duality".into()],
                std::iter::once(vec![
                    join(&self.hierarchy),
                    join(&self.dual_hierarchy),
                    self.duality.verdict.as_str().into(),
                ]),
            ),
            Emit::Table => {
                let dual = if self.dual.is_null() { " (zero space)" } else { "" };
                Ok(format!(
                    "hierarchy:       [{}]\ndual hierarchy:  [{}]{dual}\nduality:         {}\n",
                    join(&self.hierarchy),
                    join(&self.dual_hierarchy),
                    self.duality.verdict.as_str()
                ))
            }
        }
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn json_line<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Error::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn csv_string(header: Vec<String>, rows: impl Iterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Error::Internal(e.to_string());
    w.write_record(&header).map_err(err)?;
    for r in rows {
        w.write_record(&r).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}

pub fn check_reports(reports: &[CheckReport], emit: Emit) -> Result<String> {
    match emit {
        Emit::Json => json_line(&reports),
        Emit::Csv => csv_string(
            vec!["check".into(), "verdict".into(), "detail".into()],
            reports
                .iter()
                .map(|r| vec![r.check.clone(), r.verdict.as_str().into(), r.detail.to_string()]),
        ),
        Emit::Table => {
            let mut out = String::new();
            for r in reports {
                let _ = write!(out, "{:<18} {}", r.check, r.verdict.as_str());
                if r.verdict != Verdict::Pass {
                    let _ = write!(out, "  {}", r.detail);
                }
                out.push('\n');
            }
            Ok(out)
        }
    }
}

pub fn sweep_json(res: &SweepResult) -> Result<String> {
    json_line(&res.rows)
}

pub fn sweep_csv(res: &SweepResult) -> Result<String> {
    let n = res.rows.iter().map(|r| r.n).max().unwrap_or(0);
    let mut header: Vec<String> = ["q", "e", "p", "m", "n", "k", "code_id"].map(String::from).to_vec();
    header.extend((1..=n).map(|i| format!("M_{i}")));
    header.extend((1..=n).map(|i| format!("dual_M_{i}")));
    header.extend(res.checks.iter().map(|c| c.name().to_string()));
    let opt = |x: Option<usize>| x.map_or_else(String::new, |v| v.to_string());
    let padded = |h: &Option<Vec<usize>>| -> Vec<String> {
        (0..n).map(|i| opt(h.as_ref().and_then(|h| h.get(i).copied()))).collect()
    };
    let rows = res.rows.iter().map(|r| {
        let mut row = vec![
            r.q.to_string(),
            r.e.to_string(),
            r.p.to_string(),
            r.m.to_string(),
            r.n.to_string(),
            opt(r.k),
            r.code_id.clone(),
        ];
        row.extend(padded(&r.hierarchy));
        row.extend(padded(&r.dual_hierarchy));
        for kind in &res.checks {
            let v = r.checks.iter().find(|c| c.check == kind.name());
            row.push(v.map_or_else(String::new, |c| c.verdict.as_str().to_string()));
        }
        row
    });
    csv_string(header, rows)
}
