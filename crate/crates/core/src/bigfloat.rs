//! Arbitrary-precision real and complex floats for identities whose right
//! side involves roots of unity outside the exactly representable angles.
//!
//! Backed by `astro-float`; every value in one evaluation shares a single
//! precision and rounds to nearest-even.

use astro_float::{BigFloat, Consts, Exponent, RoundingMode, Sign, Word};
use num_bigint::{BigInt, Sign as BigSign};
use num_traits::{One, ToPrimitive, Zero};

use crate::exact::{int, BigRational};
use crate::verdict::{format_scientific, FLOAT_DIGITS};

pub const DEFAULT_PRECISION: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

/// Precision plus the constant cache needed for `pi` and trigonometry.
pub struct FloatContext {
    prec: usize,
    consts: Consts,
}

impl FloatContext {
    pub fn new(prec: usize) -> Self {
        FloatContext {
            prec: prec.max(64),
            consts: Consts::new().expect("constant cache allocation"),
        }
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    pub fn zero(&self) -> BigReal {
        BigReal { v: BigFloat::from_word(0, self.prec), p: self.prec }
    }

    pub fn from_i64(&self, n: i64) -> BigReal {
        self.integer(&BigInt::from(n))
    }

    pub fn integer(&self, n: &BigInt) -> BigReal {
        BigReal { v: integer_to_float(n, self.prec), p: self.prec }
    }

    pub fn rational(&self, r: &BigRational) -> BigReal {
        let n = integer_to_float(r.numer(), self.prec);
        if r.denom().is_one() {
            return BigReal { v: n, p: self.prec };
        }
        let d = integer_to_float(r.denom(), self.prec);
        BigReal { v: n.div(&d, self.prec, RM), p: self.prec }
    }

    pub fn pi(&mut self) -> BigReal {
        BigReal { v: self.consts.pi(self.prec, RM), p: self.prec }
    }

    /// `cos(pi r)` and `sin(pi r)`.
    pub fn cos_sin_pi(&mut self, r: &BigRational) -> (BigReal, BigReal) {
        let angle = self.pi().mul(&self.rational(r));
        let c = angle.v.cos(self.prec, RM, &mut self.consts);
        let s = angle.v.sin(self.prec, RM, &mut self.consts);
        (BigReal { v: c, p: self.prec }, BigReal { v: s, p: self.prec })
    }

    /// `e^{i pi r}`.
    pub fn unit_root(&mut self, r: &BigRational) -> BigComplex {
        let (c, s) = self.cos_sin_pi(r);
        BigComplex { re: c, im: s }
    }
}

fn integer_to_float(n: &BigInt, prec: usize) -> BigFloat {
    let (sign, digits) = n.to_u64_digits();
    if digits.is_empty() {
        return BigFloat::from_word(0, prec);
    }
    let words: Vec<Word> = digits.into_iter().map(|d| d as Word).collect();
    let s = if sign == BigSign::Minus { Sign::Neg } else { Sign::Pos };
    let e = (words.len() * Word::BITS as usize) as Exponent;
    // from_words is exact at its native width; round once to the target
    let exact = BigFloat::from_words(&words, s, e);
    exact.add(&BigFloat::from_word(0, prec), prec, RM)
}

#[derive(Debug, Clone)]
pub struct BigReal {
    v: BigFloat,
    p: usize,
}

impl BigReal {
    pub fn add(&self, o: &Self) -> Self {
        BigReal { v: self.v.add(&o.v, self.p, RM), p: self.p }
    }

    pub fn sub(&self, o: &Self) -> Self {
        BigReal { v: self.v.sub(&o.v, self.p, RM), p: self.p }
    }

    pub fn mul(&self, o: &Self) -> Self {
        BigReal { v: self.v.mul(&o.v, self.p, RM), p: self.p }
    }

    pub fn div(&self, o: &Self) -> Self {
        BigReal { v: self.v.div(&o.v, self.p, RM), p: self.p }
    }

    pub fn neg(&self) -> Self {
        BigReal { v: self.v.neg(), p: self.p }
    }

    pub fn abs(&self) -> Self {
        BigReal { v: self.v.abs(), p: self.p }
    }

    pub fn sqrt(&self) -> Self {
        BigReal { v: self.v.sqrt(self.p, RM), p: self.p }
    }

    pub fn powi(&self, n: usize) -> Self {
        BigReal { v: self.v.powi(n, self.p, RM), p: self.p }
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.v.is_nan() && !self.v.is_inf()
    }

    pub fn max(&self, o: &Self) -> Self {
        if self.gt(o) {
            self.clone()
        } else {
            o.clone()
        }
    }

    pub fn gt(&self, o: &Self) -> bool {
        self.v.cmp(&o.v).is_some_and(|c| c > 0)
    }

    pub fn le(&self, o: &Self) -> bool {
        self.v.cmp(&o.v).is_some_and(|c| c <= 0)
    }

    /// Exact binary value; `None` for NaN or infinity.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.v.is_zero() {
            return Some(BigRational::zero());
        }
        let (words, _bits, sign, e, _) = self.v.as_raw_parts()?;
        // Word is u32 on 32-bit targets
        #[allow(clippy::unnecessary_cast)]
        let digits: Vec<u64> = words.iter().map(|&w| w as u64).collect();
        let mag = BigInt::from_slice_native(&digits);
        let mag = if sign == Sign::Neg { -mag } else { mag };
        let shift = e as i64 - (words.len() * Word::BITS as usize) as i64;
        Some(if shift >= 0 {
            BigRational::from_integer(mag << shift as usize)
        } else {
            BigRational::new(mag, BigInt::one() << (-shift) as usize)
        })
    }

    pub fn to_f64(&self) -> f64 {
        self.to_rational().and_then(|r| r.to_f64()).unwrap_or(f64::NAN)
    }

    /// 40 significant decimal digits.
    pub fn to_decimal(&self) -> String {
        match self.to_rational() {
            Some(r) => format_scientific(&r, FLOAT_DIGITS),
            None => "NaN".to_string(),
        }
    }
}

trait FromNativeDigits {
    fn from_slice_native(d: &[u64]) -> BigInt;
}

impl FromNativeDigits for BigInt {
    fn from_slice_native(d: &[u64]) -> BigInt {
        let mut acc = BigInt::zero();
        for &w in d.iter().rev() {
            acc = (acc << 64) + BigInt::from(w);
        }
        acc
    }
}

#[derive(Debug, Clone)]
pub struct BigComplex {
    pub re: BigReal,
    pub im: BigReal,
}

impl BigComplex {
    pub fn real(re: BigReal) -> Self {
        let im = BigReal { v: BigFloat::from_word(0, re.p), p: re.p };
        BigComplex { re, im }
    }

    pub fn add(&self, o: &Self) -> Self {
        BigComplex { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        BigComplex { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        BigComplex {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn scale(&self, r: &BigReal) -> Self {
        BigComplex { re: self.re.mul(r), im: self.im.mul(r) }
    }

    pub fn neg(&self) -> Self {
        BigComplex { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn norm_sqr(&self) -> BigReal {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> BigReal {
        self.norm_sqr().sqrt()
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        BigComplex { re: self.re.div(&n), im: self.im.neg().div(&n) }
    }

    pub fn to_decimal(&self) -> String {
        format!("{} + {}i", self.re.to_decimal(), self.im.to_decimal())
    }
}

/// `C_n^(a)(x)` at a complex point by the three-term recurrence. With
/// `a = 1/2` this is `P_n(x)`.
pub fn gegenbauer_eval(ctx: &FloatContext, n: usize, a: &BigRational, x: &BigComplex) -> BigComplex {
    let one = BigComplex::real(ctx.from_i64(1));
    if n == 0 {
        return one;
    }
    let mut prev = one;
    let mut cur = x.scale(&ctx.rational(&(a * int(2))));
    for k in 2..=n {
        let kq = int(k as i64);
        let c1 = ctx.rational(&((a + int(k as i64 - 1)) * int(2) / &kq));
        let c2 = ctx.rational(&((a * int(2) + int(k as i64 - 2)) / &kq));
        let next = x.mul(&cur).scale(&c1).sub(&prev.scale(&c2));
        prev = cur;
        cur = next;
    }
    cur
}
