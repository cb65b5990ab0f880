//! Named code families and seeded random codes.
//!
//! Random codes are drawn with ChaCha8 (`rand_chacha`), seeded through
//! `SeedableRng::seed_from_u64`: rows are sampled uniformly from
//! `F_{q^m}^n` and dependent draws are rejected.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::code::{frobenius_vec, LinearCode};
use crate::error::{Error, Result};
use crate::field::{ExtElem, FieldTower};
use crate::io;
use crate::linalg::{self, Level, Matrix};

const MAX_RETRIES: u32 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Gabidulin,
    Repetition,
    Full,
    Coordinate,
    Random,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Gabidulin => "gabidulin",
            Family::Repetition => "repetition",
            Family::Full => "full",
            Family::Coordinate => "coordinate",
            Family::Random => "random",
        }
    }
}

/// Parsed form of strings like `gabidulin:n=4,k=2` or `random:n=3,k=2,seed=7`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeDescriptor {
    pub family: Family,
    pub n: usize,
    pub k: usize,
    pub seed: Option<u64>,
}

impl CodeDescriptor {
    pub fn build(&self, t: &FieldTower) -> Result<LinearCode> {
        match self.family {
            Family::Random => random_code(t, self.n, self.k, self.seed.unwrap_or(0)),
            f => named_code(t, f, self.n, self.k),
        }
    }
}

impl fmt::Display for CodeDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:n={},k={}", self.family.name(), self.n, self.k)?;
        if let Some(s) = self.seed {
            write!(f, ",seed={s}")?;
        }
        Ok(())
    }
}

impl FromStr for CodeDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::Descriptor(format!("{s:?}: {msg}"));
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let family = match name.trim() {
            "gabidulin" => Family::Gabidulin,
            "repetition" => Family::Repetition,
            "full" => Family::Full,
            "coordinate" => Family::Coordinate,
            "random" => Family::Random,
            other => return Err(bad(format!("unknown family {other:?}"))),
        };
        let (mut n, mut k, mut seed) = (None, None, None);
        for kv in rest.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (key, val) = kv
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key=value, got {kv:?}")))?;
            let num: u64 = val
                .trim()
                .parse()
                .map_err(|_| bad(format!("{key} must be a non-negative integer")))?;
            match key.trim() {
                "n" => n = Some(num as usize),
                "k" => k = Some(num as usize),
                "seed" => seed = Some(num),
                other => return Err(bad(format!("unknown parameter {other:?}"))),
            }
        }
        let n = n.ok_or_else(|| bad("missing n".into()))?;
        let k = match (family, k) {
            (Family::Full, None) => n,
            (Family::Repetition, None) => 1,
            (_, Some(k)) => k,
            (_, None) => return Err(bad("missing k".into())),
        };
        if n == 0 || k == 0 || k > n {
            return Err(bad(format!("need 1 <= k <= n, got n={n}, k={k}")));
        }
        if family == Family::Random && seed.is_none() {
            return Err(bad("random codes need a seed".into()));
        }
        if family != Family::Random && seed.is_some() {
            return Err(bad("only random codes take a seed".into()));
        }
        Ok(CodeDescriptor { family, n, k, seed })
    }
}

/// Rows `(g_1^{q^i}, …, g_n^{q^i})`, `i = 0..k`, with `g_j = z^{j}` the first
/// `n` polynomial basis vectors.
pub fn gabidulin_code(t: &FieldTower, n: usize, k: usize) -> Result<LinearCode> {
    if n > t.m() {
        return Err(Error::Hypothesis(format!(
            "Gabidulin code needs n = {n} <= m = {}",
            t.m()
        )));
    }
    if k == 0 || k > n {
        return Err(Error::RankOutOfRange { r: k, max: n });
    }
    let g: Vec<ExtElem> = (0..n).map(|j| t.z_pow(j)).collect();
    let rows: Vec<Vec<ExtElem>> = (0..k).map(|i| frobenius_vec(t, &g, i)).collect();
    LinearCode::new(t, &rows)
}

pub fn named_code(t: &FieldTower, family: Family, n: usize, k: usize) -> Result<LinearCode> {
    match family {
        Family::Gabidulin => gabidulin_code(t, n, k),
        Family::Repetition => {
            if k != 1 {
                return Err(Error::Descriptor(format!("repetition code has k = 1, got {k}")));
            }
            LinearCode::new(t, &[vec![ExtElem::ONE; n]])
        }
        Family::Full => {
            if k != n {
                return Err(Error::Descriptor(format!("full code has k = n, got k = {k}")));
            }
            LinearCode::full(t, n)
        }
        Family::Coordinate => {
            if k == 0 || k > n {
                return Err(Error::RankOutOfRange { r: k, max: n });
            }
            let rows: Vec<Vec<ExtElem>> = (0..k)
                .map(|i| {
                    let mut r = vec![ExtElem::ZERO; n];
                    r[i] = ExtElem::ONE;
                    r
                })
                .collect();
            LinearCode::new(t, &rows)
        }
        Family::Random => Err(Error::Descriptor("random codes need a seed".into())),
    }
}

/// Random `[n, k]` code; identical `(tower, n, k, seed)` give identical codes.
pub fn random_code(t: &FieldTower, n: usize, k: usize, seed: u64) -> Result<LinearCode> {
    if k == 0 || k > n {
        return Err(Error::RankOutOfRange { r: k, max: n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_code_with(t, n, k, &mut rng)
}

pub(crate) fn random_code_with(t: &FieldTower, n: usize, k: usize, rng: &mut impl Rng) -> Result<LinearCode> {
    for _ in 0..MAX_RETRIES {
        let mut m = Matrix::zeros(Level::Ext, 0, n);
        for _ in 0..k {
            let row: Vec<ExtElem> = (0..n)
                .map(|_| ExtElem::from_index(rng.gen_range(0..t.order())))
                .collect();
            m.push_row(&row);
        }
        if linalg::rank(t, &m) == k {
            return LinearCode::new(t, &m.row_vecs());
        }
    }
    Err(Error::RetriesExhausted(MAX_RETRIES))
}

/// Random codes pinned by `tests/golden/random_codes.json`. Written by
/// `grw golden`; a change here means the generator changed.
pub fn golden_fixtures() -> Result<Value> {
    let mut out = Vec::new();
    for (field, descriptor) in [
        ("q=2,m=2", "random:n=2,k=1,seed=0"),
        ("q=2,m=3", "random:n=3,k=2,seed=7"),
        ("q=2,m=4", "random:n=4,k=2,seed=42"),
        ("q=3,m=2", "random:n=2,k=1,seed=1"),
        ("q=5,m=2", "random:n=3,k=1,seed=123"),
    ] {
        let t = io::parse_field_shorthand(field)?;
        let d: CodeDescriptor = descriptor.parse()?;
        out.push(json!({
            "field": field,
            "descriptor": descriptor,
            "code": io::code_to_json(&d.build(&t)?),
        }));
    }
    Ok(Value::Array(out))
}
