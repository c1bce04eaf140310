//! Outcome records for individual identity checks.

use std::cmp::Ordering;
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::exact::{canonical, parse_rational, BigRational};

/// Significant digits used when printing floating results.
pub const FLOAT_DIGITS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Exact,
    Quad,
    Bigfloat,
    Montecarlo,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Exact => "exact",
            Engine::Quad => "quad",
            Engine::Bigfloat => "bigfloat",
            Engine::Montecarlo => "montecarlo",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unsupported,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Unsupported => "unsupported",
        })
    }
}

/// Ordered `name = value` pairs describing one grid point.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Params(Vec<(String, String)>);

impl Params {
    pub fn new() -> Self {
        Params(Vec::new())
    }

    pub fn with(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.0.push((key.to_string(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }
}

/// Format a list of rationals as `(a,b,c)`.
pub fn tuple_string(values: &[BigRational]) -> String {
    let inner: Vec<String> = values.iter().map(canonical).collect();
    format!("({})", inner.join(","))
}

fn numeric_list(s: &str) -> Option<Vec<BigRational>> {
    let inner = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
    if inner.is_empty() {
        return Some(Vec::new());
    }
    inner.split(',').map(|t| parse_rational(t).ok()).collect()
}

fn compare_values(a: &str, b: &str) -> Ordering {
    match (numeric_list(a), numeric_list(b)) {
        (Some(x), Some(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        _ => a.cmp(b),
    }
}

impl Ord for Params {
    /// Keys compare as strings, values numerically when they parse as
    /// rationals or rational tuples, so `n=10` sorts after `n=9`.
    fn cmp(&self, other: &Self) -> Ordering {
        for ((ka, va), (kb, vb)) in self.0.iter().zip(&other.0) {
            let ord = ka.cmp(kb).then_with(|| compare_values(va, vb));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Params {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub family: String,
    pub params: Params,
    pub engine: Engine,
    pub lhs: String,
    pub rhs: String,
    pub status: Status,
    pub abs_err: Option<String>,
    pub rel_err: Option<String>,
    pub elapsed_ms: f64,
    pub standard_error: Option<String>,
    pub z_score: Option<String>,
    pub note: Option<String>,
}

impl Verdict {
    pub fn new(family: &str, params: Params, engine: Engine, status: Status) -> Self {
        Verdict {
            family: family.to_string(),
            params,
            engine,
            lhs: String::new(),
            rhs: String::new(),
            status,
            abs_err: None,
            rel_err: None,
            elapsed_ms: 0.0,
            standard_error: None,
            z_score: None,
            note: None,
        }
    }

    /// Literal equality of two exact values.
    pub fn exact(family: &str, params: Params, engine: Engine, lhs: &BigRational, rhs: &BigRational) -> Self {
        let status = if lhs == rhs { Status::Pass } else { Status::Fail };
        let mut v = Verdict::new(family, params, engine, status);
        v.lhs = canonical(lhs);
        v.rhs = canonical(rhs);
        v
    }

    pub fn unsupported(family: &str, params: Params, engine: Engine, reason: impl Into<String>) -> Self {
        let mut v = Verdict::new(family, params, engine, Status::Unsupported);
        v.note = Some(reason.into());
        v
    }

    /// A failure caused by an error in the evaluation itself.
    pub fn errored(family: &str, params: Params, engine: Engine, err: impl fmt::Display) -> Self {
        let mut v = Verdict::new(family, params, engine, Status::Fail);
        v.note = Some(err.to_string());
        v
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Run `f` and stamp the wall time on its verdict.
    pub fn timed(f: impl FnOnce() -> Verdict) -> Verdict {
        let start = Instant::now();
        let mut v = f();
        v.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
        v
    }

    /// Deterministic report order: family, then parameters, then engine.
    pub fn report_order(&self, other: &Self) -> Ordering {
        self.family
            .cmp(&other.family)
            .then_with(|| self.params.cmp(&other.params))
            .then_with(|| self.engine.cmp(&other.engine))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {} {} ({})", self.status, self.family, self.params, self.engine)
    }
}

/// Scientific notation with `digits` significant digits, rounded half away
/// from zero.
pub fn format_scientific(r: &BigRational, digits: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let digits = digits.max(1);
    let sign = if r.is_negative() { "-" } else { "" };
    let num = r.numer().abs();
    let den = r.denom().clone();
    let ten = BigInt::from(10);
    // estimate the decimal exponent from digit counts, then correct
    let mut exp = num.to_string().len() as i64 - den.to_string().len() as i64;
    loop {
        let shift = digits as i64 - 1 - exp;
        let (n, d) = if shift >= 0 {
            (&num * num_traits::pow(ten.clone(), shift as usize), den.clone())
        } else {
            (num.clone(), &den * num_traits::pow(ten.clone(), (-shift) as usize))
        };
        let q: BigInt = (&n * 2 + &d) / (&d * 2);
        let s = q.to_string();
        if s.len() > digits {
            exp += 1;
            continue;
        }
        if s.len() < digits {
            exp -= 1;
            continue;
        }
        let (head, tail) = s.split_at(1);
        return if tail.is_empty() {
            format!("{sign}{head}e{exp}")
        } else {
            format!("{sign}{head}.{tail}e{exp}")
        };
    }
}

pub fn format_f64(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    match BigRational::from_float(x) {
        Some(r) => format_scientific(&r, FLOAT_DIGITS),
        None => x.to_string(),
    }
}
