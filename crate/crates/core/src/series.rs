//! Truncated formal power series with exact coefficients.
//!
//! A series of order `N` knows the coefficients of `t^0 .. t^{N-1}`; nothing
//! is assumed about higher powers. Binary operations truncate to the
//! smaller order.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{canonical, int, pochhammer_over_factorial, BigRational};
use crate::orthopoly::{gegenbauer_table, RationalPoly};
use crate::quadext::QuadExt;
use crate::verdict::{Engine, Params, Status, Verdict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    /// The series whose known coefficients are exactly `coeffs`.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![BigRational::zero(); order])
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 0 {
            s.coeffs[0] = BigRational::one();
        }
        s
    }

    pub fn from_poly(p: &RationalPoly, order: usize) -> Self {
        Self::new((0..order).map(|i| p.coeff(i)).collect())
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> BigRational) -> Self {
        Self::new((0..order).map(f).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `None` at or beyond the truncation order.
    pub fn coeff(&self, i: usize) -> Option<&BigRational> {
        self.coeffs.get(i)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.iter().take(order).cloned().collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::new((0..n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// `f(c t)`.
    pub fn dilate(&self, c: &BigRational) -> Self {
        let mut p = BigRational::one();
        let mut out = Vec::with_capacity(self.order());
        for x in &self.coeffs {
            out.push(x * &p);
            p *= c;
        }
        Self::new(out)
    }

    /// Cauchy product.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `f^m` by repeated squaring; `m = 0` gives the unit series.
    pub fn pow(&self, m: u32) -> Self {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        let mut m = m;
        while m > 0 {
            if m & 1 == 1 {
                acc = acc.mul(&base);
            }
            m >>= 1;
            if m > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `sum_j f_j u^j` for a polynomial `u` with zero constant term, to the
    /// order of `self`.
    pub fn compose(&self, inner: &RationalPoly) -> Result<Self> {
        if !inner.coeff(0).is_zero() {
            return Err(Error::InvalidParameter(
                "inner polynomial must have zero constant term".into(),
            ));
        }
        let order = self.order();
        let u = Self::from_poly(inner, order);
        // Horner in u: f_0 + u (f_1 + u (f_2 + ...))
        let mut acc = Self::zero(order);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&u);
            if order > 0 {
                acc.coeffs[0] += c;
            }
        }
        Ok(acc)
    }
}

/// `(1 - scale t)^{-a} = sum_j (a)_j / j! scale^j t^j`.
pub fn binomial_series(a: &BigRational, scale: &BigRational, order: usize) -> TruncatedSeries {
    TruncatedSeries::new(pochhammer_over_factorial(a, order)).dilate(scale)
}

/// A truncated series over one quadratic field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadSeries {
    coeffs: Vec<QuadExt>,
}

impl QuadSeries {
    pub fn new(coeffs: Vec<QuadExt>) -> Self {
        QuadSeries { coeffs }
    }

    pub fn coeffs(&self) -> &[QuadExt] {
        &self.coeffs
    }

    /// `(1 - c t)^{-a}`.
    pub fn binomial(a: &BigRational, c: &QuadExt, order: usize) -> Result<Self> {
        let w = pochhammer_over_factorial(a, order);
        let mut out = Vec::with_capacity(order);
        let mut p = QuadExt::one();
        for wj in &w {
            out.push(p.scale(wj));
            p = p.mul(c)?;
        }
        Ok(Self::new(out))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut out = vec![QuadExt::zero(); n];
        for i in 0..n {
            for j in 0..n - i {
                out[i + j] = out[i + j].add(&self.coeffs[i].mul(&other.coeffs[j])?)?;
            }
        }
        Ok(Self::new(out))
    }
}

/// `(1 - 2tx + t^2)^{-a}` through composition with `2xt - t^2`.
pub fn gegenbauer_generating_series(a: &BigRational, x: &BigRational, order: usize) -> Result<TruncatedSeries> {
    let inner = RationalPoly::from_coeffs(vec![int(0), x * int(2), int(-1)]);
    binomial_series(a, &int(1), order).compose(&inner)
}

fn gf_params(a: &BigRational, x: &BigRational, order: usize) -> Params {
    Params::new()
        .with("a", canonical(a))
        .with("x", canonical(x))
        .with("order", order)
}

/// Coefficients of `(1 - 2tx + t^2)^{-a}` against `C_n^(a)(x)` from the
/// recurrence, for every `n < order`.
pub fn gegenbauer_gf_check(a: &BigRational, x: &BigRational, order: usize) -> Verdict {
    const FAMILY: &str = "series-gegenbauer-gf";
    Verdict::timed(|| {
        let params = gf_params(a, x, order);
        let table = match gegenbauer_table(order.saturating_sub(1), a) {
            Ok(t) => t,
            Err(e) => return Verdict::errored(FAMILY, params, Engine::Exact, e),
        };
        let series = match gegenbauer_generating_series(a, x, order) {
            Ok(s) => s,
            Err(e) => return Verdict::errored(FAMILY, params, Engine::Exact, e),
        };
        for (n, c) in series.coeffs().iter().enumerate() {
            let expect = table[n].eval_rational(x);
            if *c != expect {
                return Verdict::exact(FAMILY, params, Engine::Exact, c, &expect)
                    .with_note(format!("first mismatch at t^{n}"));
            }
        }
        let last = order.saturating_sub(1);
        match series.coeff(last) {
            Some(c) => Verdict::exact(FAMILY, params, Engine::Exact, c, &table[last].eval_rational(x))
                .with_note(format!("{order} coefficients agree")),
            None => Verdict::unsupported(FAMILY, params, Engine::Exact, "order must be >= 1"),
        }
    })
}

/// The product of two shifted gamma generating functions
/// `(1 - t(x+s))^{-a} (1 - t(x-s))^{-a}`, `s = sqrt(x^2-1)`, against
/// `(1 - 2tx + t^2)^{-a}`, coefficient by coefficient in `Q(s)`.
pub fn mgf_product_check(x: &BigRational, a: &BigRational, order: usize) -> Verdict {
    const FAMILY: &str = "series-mgf-product";
    Verdict::timed(|| {
        let params = gf_params(a, x, order);
        let s2 = x * x - int(1);
        if s2 < BigRational::zero() {
            return Verdict::unsupported(FAMILY, params, Engine::Quad, "x^2 - 1 < 0: sqrt(x^2-1) is not real");
        }
        if a <= &BigRational::zero() || order == 0 {
            return Verdict::unsupported(FAMILY, params, Engine::Quad, "need a > 0 and order >= 1");
        }
        let s = QuadExt::sqrt(s2);
        let up = s.add_rational(x);
        let down = s.neg().add_rational(x);
        let product = QuadSeries::binomial(a, &up, order)
            .and_then(|l| QuadSeries::binomial(a, &down, order).and_then(|r| l.mul(&r)));
        let product = match product {
            Ok(p) => p,
            Err(e) => return Verdict::errored(FAMILY, params, Engine::Quad, e),
        };
        let target = match gegenbauer_generating_series(a, x, order) {
            Ok(t) => t,
            Err(e) => return Verdict::errored(FAMILY, params, Engine::Quad, e),
        };
        for (n, (l, r)) in product.coeffs().iter().zip(target.coeffs()).enumerate() {
            if *l != QuadExt::from_rational(r.clone()) {
                let mut v = Verdict::new(FAMILY, params, Engine::Quad, Status::Fail);
                v.lhs = l.to_string();
                v.rhs = canonical(r);
                return v.with_note(format!("first mismatch at t^{n}"));
            }
        }
        let mut v = Verdict::new(FAMILY, params, Engine::Quad, Status::Pass);
        v.lhs = product.coeffs()[order - 1].to_string();
        v.rhs = canonical(&target.coeffs()[order - 1]);
        v.with_note(format!("{order} coefficients agree"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{big, binomial, central_binomial, factorial, pochhammer, rat};

    #[test]
    fn binomial_series_examples() {
        let s = binomial_series(&rat(1, 2), &int(4), 4);
        let expect: Vec<_> = [1, 2, 6, 20].iter().map(|&v| int(v)).collect();
        assert_eq!(s.coeffs(), expect.as_slice());
        assert!(binomial_series(&int(1), &int(1), 10).coeffs().iter().all(|c| *c == int(1)));
        for (j, c) in binomial_series(&int(2), &int(1), 10).coeffs().iter().enumerate() {
            assert_eq!(*c, int(j as i64 + 1));
        }
    }

    #[test]
    fn mul_examples() {
        let f = binomial_series(&rat(1, 3), &rat(5, 2), 8);
        assert_eq!(f.mul(&TruncatedSeries::one(8)), f);
        let a = TruncatedSeries::new(vec![int(1), int(1), int(0), int(0)]);
        let b = TruncatedSeries::new(vec![int(1), int(-1), int(0), int(0)]);
        assert_eq!(a.mul(&b).coeffs(), &[int(1), int(0), int(-1), int(0)]);
        let sq = binomial_series(&rat(1, 2), &int(4), 12).pow(2);
        for (n, c) in sq.coeffs().iter().enumerate() {
            assert_eq!(*c, big(&(num_bigint::BigInt::one() << (2 * n))));
        }
    }

    #[test]
    fn product_order_is_min() {
        let a = TruncatedSeries::one(5);
        let b = TruncatedSeries::one(3);
        assert_eq!(a.mul(&b).order(), 3);
        assert_eq!(a.add(&b).order(), 3);
    }

    #[test]
    fn pow_examples() {
        let f = binomial_series(&rat(1, 2), &int(4), 21);
        assert_eq!(f.pow(1), f);
        assert_eq!(f.pow(3).coeff(1), Some(&int(6)));
        // brute-force triple convolution for the first few coefficients
        for n in 0..6usize {
            let mut brute = num_bigint::BigInt::zero();
            for i in 0..=n {
                for j in 0..=n - i {
                    brute += central_binomial(i as u64) * central_binomial(j as u64) * central_binomial((n - i - j) as u64);
                }
            }
            assert_eq!(f.pow(3).coeff(n).unwrap(), &big(&brute));
        }
        for m in 1..=6u32 {
            let p = f.pow(m);
            for n in 0..=20u64 {
                let expect = big(&(num_bigint::BigInt::one() << (2 * n))) * pochhammer(&rat(m as i64, 2), n)
                    / big(&factorial(n));
                assert_eq!(p.coeff(n as usize).unwrap(), &expect, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn compose_requires_zero_constant() {
        let f = TruncatedSeries::one(4);
        let bad = RationalPoly::from_coeffs(vec![int(1), int(1)]);
        assert!(f.compose(&bad).is_err());
    }

    #[test]
    fn gf_check_examples() {
        let v = gegenbauer_gf_check(&rat(1, 2), &int(1), 12);
        assert!(v.passed(), "{v:?}");
        let s = gegenbauer_generating_series(&rat(1, 2), &int(1), 12).unwrap();
        assert!(s.coeffs().iter().all(|c| *c == int(1)));
        let s0 = gegenbauer_generating_series(&rat(1, 2), &int(0), 4).unwrap();
        assert_eq!(s0.coeff(2), Some(&rat(-1, 2)));
        assert!(gegenbauer_gf_check(&int(1), &rat(1, 2), 10).passed());
    }

    #[test]
    fn mgf_check_examples() {
        assert!(mgf_product_check(&int(1), &rat(1, 2), 8).passed());
        let v = mgf_product_check(&rat(3, 2), &rat(1, 2), 8);
        assert!(v.passed(), "{v:?}");
        assert_eq!(mgf_product_check(&int(0), &rat(1, 2), 8).status, Status::Unsupported);
    }

    #[test]
    fn binomial_coefficients_by_series() {
        // (1+t)^5 via composition of the geometric-type expansion (1 - u)^{-(-5)}
        let f = binomial_series(&int(-5), &int(1), 7);
        let g = f.compose(&RationalPoly::from_coeffs(vec![int(0), int(-1)])).unwrap();
        for k in 0..7 {
            assert_eq!(g.coeff(k).unwrap(), &big(&binomial(5, k as i64)));
        }
    }
}
