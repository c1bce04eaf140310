//! Exact arithmetic in a single quadratic extension `Q(sqrt(d))`.
//!
//! Every value carries its own discriminant. Values whose surd part is zero
//! are plain rationals and combine with anything; two genuinely irrational
//! values combine only when their discriminants differ by a rational square.
//! Negative discriminants are accepted: the algebra is identical and the
//! moment representations need them for arguments inside `(-1, 1)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{canonical, int, rat, BigRational};

/// Square factors up to this bound are pulled out of the discriminant.
const SQUARE_STRIP_LIMIT: u32 = 1000;

/// `rational + surd * sqrt(disc)`.
#[derive(Debug, Clone)]
pub struct QuadExt {
    rational: BigRational,
    surd: BigRational,
    disc: BigInt,
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

impl QuadExt {
    pub fn from_rational(r: BigRational) -> Self {
        QuadExt { rational: r, surd: BigRational::zero(), disc: BigInt::zero() }
    }

    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    /// `a + b sqrt(d)`, normalized.
    pub fn new(a: BigRational, b: BigRational, d: BigRational) -> Self {
        // sqrt(p/q) = sqrt(pq)/q
        let surd = b / BigRational::from_integer(d.denom().clone());
        let disc = d.numer() * d.denom();
        Self::normalized(a, surd, disc)
    }

    /// `sqrt(d)` itself.
    pub fn sqrt(d: BigRational) -> Self {
        Self::new(BigRational::zero(), BigRational::one(), d)
    }

    /// Assemble from parts whose discriminant is already normalized.
    fn assemble(a: BigRational, b: BigRational, d: BigInt) -> Self {
        if b.is_zero() || d.is_zero() {
            Self::from_rational(a)
        } else {
            QuadExt { rational: a, surd: b, disc: d }
        }
    }

    fn normalized(mut a: BigRational, mut b: BigRational, mut d: BigInt) -> Self {
        if b.is_zero() || d.is_zero() {
            return Self::from_rational(a);
        }
        for f in 2..=SQUARE_STRIP_LIMIT {
            let sq = BigInt::from(f * f);
            if sq > d.abs() {
                break;
            }
            while (&d % &sq).is_zero() {
                d /= &sq;
                b *= BigInt::from(f);
            }
        }
        if let Some(s) = exact_sqrt(&d) {
            a += b * s;
            return Self::from_rational(a);
        }
        QuadExt { rational: a, surd: b, disc: d }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.surd
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    pub fn is_rational(&self) -> bool {
        self.surd.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.surd.is_zero()
    }

    /// The rational value, or `IrrationalResidue` if a surd survives.
    pub fn rational_only(&self) -> Result<BigRational> {
        if self.is_rational() {
            Ok(self.rational.clone())
        } else {
            Err(Error::IrrationalResidue(self.to_string()))
        }
    }

    /// Express both surd parts over one discriminant.
    fn align(&self, other: &Self) -> Result<(BigInt, BigRational, BigRational)> {
        if other.is_rational() {
            return Ok((self.disc.clone(), self.surd.clone(), BigRational::zero()));
        }
        if self.is_rational() {
            return Ok((other.disc.clone(), BigRational::zero(), other.surd.clone()));
        }
        if self.disc == other.disc {
            return Ok((self.disc.clone(), self.surd.clone(), other.surd.clone()));
        }
        // sqrt(d2) = sqrt(d1 d2) / sqrt(d1) = (s / d1) sqrt(d1)
        let prod = &self.disc * &other.disc;
        match exact_sqrt(&prod) {
            Some(s) if self.disc.is_positive() == other.disc.is_positive() => {
                let factor = BigRational::new(s, self.disc.clone());
                Ok((self.disc.clone(), self.surd.clone(), &other.surd * factor))
            }
            _ => Err(Error::DiscriminantMismatch {
                left: self.disc.to_string(),
                right: other.disc.to_string(),
            }),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (d, b1, b2) = self.align(other)?;
        Ok(Self::assemble(&self.rational + &other.rational, b1 + b2, d))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (d, b1, b2) = self.align(other)?;
        let dq = BigRational::from_integer(d.clone());
        let a = &self.rational * &other.rational + &b1 * &b2 * dq;
        let b = &self.rational * &b2 + &other.rational * &b1;
        Ok(Self::assemble(a, b, d))
    }

    pub fn neg(&self) -> Self {
        QuadExt { rational: -&self.rational, surd: -&self.surd, disc: self.disc.clone() }
    }

    pub fn conjugate(&self) -> Self {
        QuadExt { rational: self.rational.clone(), surd: -&self.surd, disc: self.disc.clone() }
    }

    /// Field norm `a^2 - d b^2`.
    pub fn norm(&self) -> BigRational {
        let d = BigRational::from_integer(self.disc.clone());
        &self.rational * &self.rational - d * &self.surd * &self.surd
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = self.conjugate();
        Ok(QuadExt { rational: c.rational / &n, surd: c.surd / &n, disc: c.disc })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inverse()?)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::assemble(&self.rational * r, &self.surd * r, self.disc.clone())
    }

    pub fn add_rational(&self, r: &BigRational) -> Self {
        QuadExt { rational: &self.rational + r, surd: self.surd.clone(), disc: self.disc.clone() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        // base stays in self's field, so align cannot fail
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            base = base.mul(&base).expect("same field");
            e >>= 1;
        }
        acc
    }
}

impl From<BigRational> for QuadExt {
    fn from(r: BigRational) -> Self {
        Self::from_rational(r)
    }
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        if self.rational != other.rational {
            return false;
        }
        match (self.surd.is_zero(), other.surd.is_zero()) {
            (true, true) => true,
            (false, false) => {
                // b1 sqrt(d1) == b2 sqrt(d2) iff same sign and b1^2 d1 == b2^2 d2
                self.surd.is_positive() == other.surd.is_positive()
                    && self.disc.is_positive() == other.disc.is_positive()
                    && &self.surd * &self.surd * BigRational::from_integer(self.disc.clone())
                        == &other.surd * &other.surd * BigRational::from_integer(other.disc.clone())
            }
            _ => false,
        }
    }
}

impl Eq for QuadExt {}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", canonical(&self.rational))
        } else {
            write!(
                f,
                "{} + {}*sqrt({})",
                canonical(&self.rational),
                canonical(&self.surd),
                self.disc
            )
        }
    }
}

/// Exact `cos(pi * l / p)` when the reduced angle has denominator 1, 2, 3, 4
/// or 6; `None` otherwise.
pub fn special_cosine(l: i64, p: u64) -> Option<QuadExt> {
    if p == 0 {
        return None;
    }
    // reduce l/p modulo 2 and fold into [0, 1] using cos(pi(2 - r)) = cos(pi r)
    let period = 2 * p as i64;
    let mut l = l.rem_euclid(period);
    if l > p as i64 {
        l = period - l;
    }
    let r = rat(l, p as i64);
    let (num, den) = (
        i64::try_from(r.numer()).ok()?,
        i64::try_from(r.denom()).ok()?,
    );
    let half = rat(1, 2);
    let value = match (num, den) {
        (0, 1) => QuadExt::one(),
        (1, 1) => QuadExt::from_rational(int(-1)),
        (1, 2) => QuadExt::zero(),
        (1, 3) => QuadExt::from_rational(half),
        (2, 3) => QuadExt::from_rational(-half),
        (1, 4) => QuadExt::new(int(0), half, int(2)),
        (3, 4) => QuadExt::new(int(0), -half, int(2)),
        (1, 6) => QuadExt::new(int(0), half, int(3)),
        (5, 6) => QuadExt::new(int(0), -half, int(3)),
        _ => return None,
    };
    Some(value)
}
