//! JSON code files.
//!
//! ```json
//! {"field": {"p": 2, "e": 1, "m": 2, "base_modulus": [0, 1], "ext_modulus": [[1], [1], [1]]},
//!  "generator": [[[[1], [0]], [[0], [1]]]]}
//! ```
//!
//! An `F_{q^m}` element is `m` arrays of `e` integers in `0..p`, constant term
//! first at both levels. `base_modulus` (over `F_p`, `e + 1` integers) and
//! `ext_modulus` (over `F_q`, `m + 1` base elements) are optional; omitted
//! moduli take the tower defaults. Parse errors name the offending JSON path.

use serde_json::{json, Map, Value};

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::field::{ExtElem, FieldTower};
use crate::linalg::{Level, Subspace};

pub fn tower_to_json(t: &FieldTower) -> Value {
    json!({
        "p": t.p(),
        "e": t.e(),
        "m": t.m(),
        "base_modulus": t.base_modulus(),
        "ext_modulus": t.ext_modulus(),
    })
}

pub fn elem_to_json(t: &FieldTower, a: ExtElem) -> Value {
    json!(t.coeffs(a))
}

/// An `F_q` element as `e` integers.
pub fn base_elem_to_json(t: &FieldTower, a: ExtElem) -> Value {
    json!(t.coeffs(a)[0])
}

pub fn vector_to_json(t: &FieldTower, x: &[ExtElem]) -> Value {
    Value::Array(x.iter().map(|&a| elem_to_json(t, a)).collect())
}

/// Basis rows; base-level entries are written as `F_q` elements.
pub fn subspace_to_json(t: &FieldTower, s: &Subspace) -> Value {
    let b = s.basis();
    let rows = (0..b.rows()).map(|r| {
        Value::Array(
            b.row(r)
                .iter()
                .map(|&a| match s.level() {
                    Level::Base => base_elem_to_json(t, a),
                    Level::Ext => elem_to_json(t, a),
                })
                .collect(),
        )
    });
    Value::Array(rows.collect())
}

pub fn code_to_json(c: &LinearCode) -> Value {
    json!({
        "field": tower_to_json(c.tower()),
        "generator": subspace_to_json(c.tower(), c.generator()),
    })
}

pub fn parse_code_file(text: &str) -> Result<LinearCode> {
    let v: Value = serde_json::from_str(text).map_err(|e| {
        Error::parse(format!("$ (line {}, column {})", e.line(), e.column()), e.to_string())
    })?;
    parse_code_value(&v)
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::parse(path, "expected an object"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::parse(path, "expected an array"))
}

fn uint(v: &Value, path: &str) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| Error::parse(path, "expected a non-negative integer"))
}

fn int_list(v: &Value, path: &str) -> Result<Vec<u32>> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let p = format!("{path}[{i}]");
            let n = uint(x, &p)?;
            u32::try_from(n).map_err(|_| Error::parse(p, "integer too large"))
        })
        .collect()
}

pub fn parse_tower(v: &Value, path: &str) -> Result<FieldTower> {
    let obj = object(v, path)?;
    let get = |key: &str| -> Result<&Value> {
        obj.get(key)
            .ok_or_else(|| Error::parse(format!("{path}.{key}"), "missing field"))
    };
    let p = uint(get("p")?, &format!("{path}.p"))?;
    let e = uint(get("e")?, &format!("{path}.e"))?;
    let m = uint(get("m")?, &format!("{path}.m"))?;
    let p = u32::try_from(p).map_err(|_| Error::parse(format!("{path}.p"), "too large"))?;
    let base = match obj.get("base_modulus") {
        Some(b) => Some(int_list(b, &format!("{path}.base_modulus"))?),
        None => None,
    };
    let ext = match obj.get("ext_modulus") {
        Some(x) => {
            let xp = format!("{path}.ext_modulus");
            Some(
                array(x, &xp)?
                    .iter()
                    .enumerate()
                    .map(|(i, c)| int_list(c, &format!("{xp}[{i}]")))
                    .collect::<Result<Vec<_>>>()?,
            )
        }
        None => None,
    };
    FieldTower::new(p, e as usize, m as usize, base.as_deref(), ext.as_deref()).map_err(|err| {
        let key = match &err {
            Error::NotPrime(_) | Error::FieldTooLarge { .. } => "p",
            Error::ZeroDegree(_) => {
                if e == 0 {
                    "e"
                } else {
                    "m"
                }
            }
            Error::ReducibleModulus { which: "base" } => "base_modulus",
            Error::ReducibleModulus { .. } => "ext_modulus",
            Error::BadModulus(msg) if msg.contains("base") => "base_modulus",
            _ => "ext_modulus",
        };
        Error::parse(format!("{path}.{key}"), err.to_string())
    })
}

/// `--field` shorthand `q=2,m=3`: `q` must be prime (`p = q`, `e = 1`) and
/// both moduli take their defaults. Other towers need a code file.
pub fn parse_field_shorthand(s: &str) -> Result<FieldTower> {
    let bad = |msg: String| Error::Argument(format!("field {s:?}: {msg}"));
    let (mut q, mut m) = (None, None);
    for kv in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let (key, val) = kv
            .split_once('=')
            .ok_or_else(|| bad(format!("expected key=value, got {kv:?}")))?;
        let num: u32 = val
            .trim()
            .parse()
            .map_err(|_| bad(format!("{key} must be a non-negative integer")))?;
        match key.trim() {
            "q" => q = Some(num),
            "m" => m = Some(num),
            other => return Err(bad(format!("unknown key {other:?}; expected q and m"))),
        }
    }
    let q = q.ok_or_else(|| bad("missing q".into()))?;
    let m = m.ok_or_else(|| bad("missing m".into()))?;
    FieldTower::with_defaults(q, 1, m as usize).map_err(|e| match e {
        Error::NotPrime(_) => bad(format!("q = {q} is not prime; prime-power q needs a code file")),
        other => bad(other.to_string()),
    })
}

pub fn parse_elem(t: &FieldTower, v: &Value, path: &str) -> Result<ExtElem> {
    let outer = array(v, path)?;
    if outer.len() != t.m() {
        return Err(Error::parse(
            path,
            format!("expected {} base-field coefficients, got {}", t.m(), outer.len()),
        ));
    }
    let mut coeffs = Vec::with_capacity(t.m());
    for (i, b) in outer.iter().enumerate() {
        let bp = format!("{path}[{i}]");
        let c = int_list(b, &bp)?;
        if c.len() != t.e() {
            return Err(Error::parse(
                bp,
                format!("expected {} integers, got {}", t.e(), c.len()),
            ));
        }
        if let Some(j) = c.iter().position(|&x| x >= t.p()) {
            return Err(Error::parse(
                format!("{bp}[{j}]"),
                format!("coefficient must be below p = {}", t.p()),
            ));
        }
        coeffs.push(c);
    }
    t.from_coeffs(&coeffs).map_err(|e| Error::parse(path, e.to_string()))
}

pub fn parse_code_value(v: &Value) -> Result<LinearCode> {
    let obj = object(v, "$")?;
    let field = obj
        .get("field")
        .ok_or_else(|| Error::parse("$.field", "missing field"))?;
    let t = parse_tower(field, "$.field")?;
    let gen = obj
        .get("generator")
        .ok_or_else(|| Error::parse("$.generator", "missing field"))?;
    let rows_v = array(gen, "$.generator")?;
    if rows_v.is_empty() {
        return Err(Error::parse("$.generator", "a code needs at least one generator row"));
    }
    let mut rows = Vec::with_capacity(rows_v.len());
    let mut n = None;
    for (i, r) in rows_v.iter().enumerate() {
        let rp = format!("$.generator[{i}]");
        let entries = array(r, &rp)?;
        match n {
            None => n = Some(entries.len()),
            Some(n0) if n0 != entries.len() => {
                return Err(Error::parse(
                    rp,
                    format!("row has length {} but row 0 has length {n0}", entries.len()),
                ))
            }
            _ => {}
        }
        let row = entries
            .iter()
            .enumerate()
            .map(|(j, x)| parse_elem(&t, x, &format!("{rp}[{j}]")))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if n == Some(0) {
        return Err(Error::parse("$.generator[0]", "code length must be at least 1"));
    }
    LinearCode::new(&t, &rows).map_err(|e| Error::parse("$.generator", e.to_string()))
}
