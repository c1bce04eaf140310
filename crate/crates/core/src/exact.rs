//! Exact integer and rational primitives.
//!
//! Integer-valued results (factorials, binomials, multinomials) are returned
//! as [`BigInt`]; anything that can be fractional is a [`BigRational`], which
//! is always kept in lowest terms with a positive denominator.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use num_rational::BigRational;

use crate::error::{Error, Result};

/// Largest number of parts accepted by the composition enumerators.
pub const MAX_PARTS: usize = 8;

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `p/q` as a reduced rational. Panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn big(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

/// Canonical report form: `p/q`, or `p` when the denominator is one.
pub fn canonical(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `p/q` or `p`. Decimal and exponent notation are rejected so that
/// no value ever passes through a binary float.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let err = || Error::Parse(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let is_int = |t: &str| {
        let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !is_int(num) || !is_int(den) {
        return Err(err());
    }
    let n: BigInt = num.parse().map_err(|_| err())?;
    let d: BigInt = den.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(n, d))
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `C(n, k)`, zero when `k` lies outside `0..=n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc is C(n, i) here, so the division is exact
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn central_binomial(k: u64) -> BigInt {
    binomial(2 * k, k as i64)
}

/// Rising factorial `a (a+1) ... (a+n-1)`; `(a)_0 = 1`.
pub fn pochhammer(a: &BigRational, n: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut term = a.clone();
    for _ in 0..n {
        acc *= &term;
        term += BigInt::one();
    }
    acc
}

/// `(a)_k / k!` for `k = 0..len`, built incrementally.
pub fn pochhammer_over_factorial(a: &BigRational, len: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(len);
    let mut cur = BigRational::one();
    for k in 0..len {
        if k > 0 {
            cur = cur * (a + int(k as i64 - 1)) / int(k as i64);
        }
        out.push(cur.clone());
    }
    out
}

/// A vector of nonnegative parts `(k_1, ..., k_m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexVector(pub Vec<u64>);

impl IndexVector {
    pub fn new(parts: Vec<u64>) -> Self {
        IndexVector(parts)
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn parts(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for IndexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

/// `n! / (k_1! ... k_m!)`.
pub fn multinomial(n: u64, parts: &IndexVector) -> Result<BigInt> {
    let total = parts.total();
    if total != n {
        return Err(Error::CompositionMismatch { expected: n, got: total });
    }
    // product of binomials avoids the large n! intermediate
    let mut acc = BigInt::one();
    let mut used = 0u64;
    for &k in parts.parts() {
        used += k;
        acc *= binomial(used, k as i64);
    }
    Ok(acc)
}

/// Weak compositions of `n` into `m` parts in lexicographic order.
#[derive(Debug, Clone)]
pub struct Compositions {
    current: Option<Vec<u64>>,
    n: u64,
}

impl Compositions {
    pub fn new(n: u64, m: usize) -> Self {
        let current = match m {
            0 if n == 0 => Some(Vec::new()),
            0 => None,
            _ => {
                let mut v = vec![0; m];
                v[m - 1] = n;
                Some(v)
            }
        };
        Compositions { current, n }
    }
}

impl Iterator for Compositions {
    type Item = IndexVector;

    fn next(&mut self) -> Option<IndexVector> {
        let cur = self.current.take()?;
        let m = cur.len();
        let mut next = cur.clone();
        // lexicographic successor: bump the rightmost slot that has mass to
        // its right, then push all remaining mass into the last slot
        let mut suffix = 0u64;
        for j in (0..m.saturating_sub(1)).rev() {
            suffix += next[j + 1];
            if suffix > 0 {
                next[j] += 1;
                for x in &mut next[j + 1..] {
                    *x = 0;
                }
                next[m - 1] = suffix - 1;
                debug_assert_eq!(next.iter().sum::<u64>(), self.n);
                self.current = Some(next);
                break;
            }
        }
        Some(IndexVector(cur))
    }
}

fn check_parts(m: usize) -> Result<()> {
    if m > MAX_PARTS {
        return Err(Error::TooManyParts { parts: m, cap: MAX_PARTS });
    }
    Ok(())
}

/// `sum over k_1+...+k_m = n of w_1[k_1] ... w_m[k_m]`, enumerating every
/// composition explicitly. Each weight row must have at least `n + 1`
/// entries.
pub fn composition_sum(weights: &[Vec<BigInt>], n: usize) -> Result<BigInt> {
    check_parts(weights.len())?;
    for (i, w) in weights.iter().enumerate() {
        if w.len() <= n {
            return Err(Error::InvalidParameter(format!(
                "weight row {i} has {} entries, need {}",
                w.len(),
                n + 1
            )));
        }
    }
    if weights.is_empty() {
        return Ok(if n == 0 { BigInt::one() } else { BigInt::zero() });
    }
    let mut acc = BigInt::zero();
    let one = BigInt::one();
    walk(weights, 0, n, &one, &mut acc);
    Ok(acc)
}

fn walk(weights: &[Vec<BigInt>], depth: usize, rem: usize, prefix: &BigInt, acc: &mut BigInt) {
    let row = &weights[depth];
    if depth + 1 == weights.len() {
        if !row[rem].is_zero() {
            *acc += prefix * &row[rem];
        }
        return;
    }
    for (k, w) in row.iter().enumerate().take(rem + 1) {
        if w.is_zero() {
            continue;
        }
        let next = prefix * w;
        walk(weights, depth + 1, rem - k, &next, acc);
    }
}

/// Rational version of [`composition_sum`]: each row is scaled to integers
/// by the lcm of its denominators, summed exactly, and divided back.
pub fn composition_sum_rational(weights: &[Vec<BigRational>], n: usize) -> Result<BigRational> {
    check_parts(weights.len())?;
    let mut scale = BigInt::one();
    let mut rows = Vec::with_capacity(weights.len());
    for w in weights {
        let l = w
            .iter()
            .take(n + 1)
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        rows.push(
            w.iter()
                .take(n + 1)
                .map(|r| r.numer() * (&l / r.denom()))
                .collect::<Vec<_>>(),
        );
        scale *= l;
    }
    let total = composition_sum(&rows, n)?;
    Ok(BigRational::new(total, scale))
}

pub fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

pub fn pow_rational(base: &BigRational, e: u64) -> BigRational {
    num_traits::pow(base.clone(), e as usize)
}

pub fn is_positive(r: &BigRational) -> bool {
    r.is_positive()
}
