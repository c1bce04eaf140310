//! Legendre, Gegenbauer and Hermite polynomials with exact rational
//! coefficients, built by their three-term recurrences, plus the
//! gamma-moment representations that give an independent way to evaluate
//! them.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{big, binomial, canonical, factorial, int, pochhammer, rat, BigRational};
use crate::quadext::QuadExt;

/// Dense polynomial; `coeffs[i]` multiplies `x^i`. No trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

impl RationalPoly {
    pub fn zero() -> Self {
        RationalPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul_x(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigRational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        RationalPoly { coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation in the field of `x`.
    pub fn eval(&self, x: &QuadExt) -> Result<QuadExt> {
        let mut acc = QuadExt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x)?.add_rational(c);
        }
        Ok(acc)
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", canonical(c))?,
                1 => write!(f, "{}*x", canonical(c))?,
                _ => write!(f, "{}*x^{}", canonical(c), i)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyFamily {
    Legendre,
    Gegenbauer(BigRational),
    Hermite,
}

impl PolyFamily {
    pub fn polynomial(&self, n: usize) -> Result<RationalPoly> {
        match self {
            PolyFamily::Legendre => Ok(legendre(n)),
            PolyFamily::Gegenbauer(a) => gegenbauer(n, a),
            PolyFamily::Hermite => Ok(hermite(n)),
        }
    }

    /// Degrees `0..=n`.
    pub fn table(&self, n: usize) -> Result<Vec<RationalPoly>> {
        match self {
            PolyFamily::Legendre => Ok(legendre_table(n)),
            PolyFamily::Gegenbauer(a) => gegenbauer_table(n, a),
            PolyFamily::Hermite => Ok(hermite_table(n)),
        }
    }
}

fn x_poly() -> RationalPoly {
    RationalPoly::from_coeffs(vec![int(0), int(1)])
}

/// `P_0 ..= P_n` via `(k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}`.
pub fn legendre_table(n: usize) -> Vec<RationalPoly> {
    let mut out = vec![RationalPoly::constant(int(1))];
    if n >= 1 {
        out.push(x_poly());
    }
    for k in 1..n {
        let k_ = k as i64;
        let next = out[k]
            .mul_x()
            .scale(&rat(2 * k_ + 1, k_ + 1))
            .sub(&out[k - 1].scale(&rat(k_, k_ + 1)));
        out.push(next);
    }
    out
}

pub fn legendre(n: usize) -> RationalPoly {
    legendre_table(n).pop().expect("table is nonempty")
}

fn require_positive(a: &BigRational) -> Result<()> {
    if a.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("Gegenbauer parameter must be > 0, got {}", canonical(a))))
    }
}

/// `C_0^(a) ..= C_n^(a)` via `k C_k = 2x (k+a-1) C_{k-1} - (k+2a-2) C_{k-2}`.
pub fn gegenbauer_table(n: usize, a: &BigRational) -> Result<Vec<RationalPoly>> {
    require_positive(a)?;
    let mut out = vec![RationalPoly::constant(int(1))];
    if n >= 1 {
        out.push(x_poly().scale(&(a * int(2))));
    }
    for k in 2..=n {
        let kq = int(k as i64);
        let c1 = (a + int(k as i64 - 1)) * int(2) / &kq;
        let c2 = (a * int(2) + int(k as i64 - 2)) / &kq;
        let next = out[k - 1].mul_x().scale(&c1).sub(&out[k - 2].scale(&c2));
        out.push(next);
    }
    Ok(out)
}

pub fn gegenbauer(n: usize, a: &BigRational) -> Result<RationalPoly> {
    Ok(gegenbauer_table(n, a)?.pop().expect("table is nonempty"))
}

/// Physicists' `H_0 ..= H_n` via `H_{k+1} = 2x H_k - 2k H_{k-1}`.
pub fn hermite_table(n: usize) -> Vec<RationalPoly> {
    let mut out = vec![RationalPoly::constant(int(1))];
    if n >= 1 {
        out.push(x_poly().scale(&int(2)));
    }
    for k in 1..n {
        let next = out[k]
            .mul_x()
            .scale(&int(2))
            .sub(&out[k - 1].scale(&int(2 * k as i64)));
        out.push(next);
    }
    out
}

pub fn hermite(n: usize) -> RationalPoly {
    hermite_table(n).pop().expect("table is nonempty")
}

/// `(1/n!) E[(x+s) U + (x-s) V]^n` with `s = sqrt(x^2-1)` and `U, V` i.i.d.
/// with moments `E U^k = (a)_k`. Arithmetic runs in `Q(s)`.
fn gamma_moment_rep(n: usize, a: &BigRational, x: &BigRational) -> Result<QuadExt> {
    let s = QuadExt::sqrt(x * x - int(1));
    let up = s.add_rational(x);
    let down = s.neg().add_rational(x);
    let moments: Vec<BigRational> = (0..=n as u64).map(|k| pochhammer(a, k)).collect();
    let mut up_pow = vec![QuadExt::one()];
    let mut down_pow = vec![QuadExt::one()];
    for k in 1..=n {
        up_pow.push(up_pow[k - 1].mul(&up)?);
        down_pow.push(down_pow[k - 1].mul(&down)?);
    }
    let mut acc = QuadExt::zero();
    for k in 0..=n {
        let w = big(&binomial(n as u64, k as i64)) * &moments[k] * &moments[n - k];
        acc = acc.add(&up_pow[k].mul(&down_pow[n - k])?.scale(&w))?;
    }
    let acc = acc.scale(&BigRational::new(BigInt::one(), factorial(n as u64)));
    acc.rational_only()?;
    Ok(acc)
}

/// `P_n(x)` from two independent `Gamma(1/2, 1)` moments.
pub fn legendre_moment_rep(n: usize, x: &BigRational) -> Result<QuadExt> {
    gamma_moment_rep(n, &rat(1, 2), x)
}

/// `C_n^(a)(x)` from two independent `Gamma(a, 1)` moments.
pub fn gegenbauer_moment_rep(n: usize, a: &BigRational, x: &BigRational) -> Result<QuadExt> {
    require_positive(a)?;
    gamma_moment_rep(n, a, x)
}

/// Even moments of `N(0, 1/2)`: `E N^{2i} = (2i-1)!! / 2^i`.
fn half_variance_normal_moment(j: usize) -> BigRational {
    if j % 2 == 1 {
        return BigRational::zero();
    }
    let i = j / 2;
    let double_fact = (1..=i as i64).fold(BigInt::one(), |acc, t| acc * (2 * t - 1));
    BigRational::new(double_fact, BigInt::one() << i)
}

/// `H_n(x) = 2^n E(x + iN)^n`; `i^j` is folded to `(-1)^{j/2}` for even `j`.
pub fn hermite_moment_rep(n: usize, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for j in (0..=n).step_by(2) {
        let sign = if (j / 2) % 2 == 0 { int(1) } else { int(-1) };
        let xp = num_traits::pow(x.clone(), n - j);
        acc += sign * big(&binomial(n as u64, j as i64)) * xp * half_variance_normal_moment(j);
    }
    acc * big(&(BigInt::one() << n))
}
