//! Left sides of the convolution identities recomputed as coefficients of
//! products of truncated generating functions. These share no code with the
//! composition enumerators and serve as a second route to the same numbers.

use num_traits::Zero;

use crate::error::Result;
use crate::exact::{factorial, int, rat, big, BigRational};
use crate::orthopoly::hermite_table;
use crate::series::{binomial_series, gegenbauer_generating_series, TruncatedSeries};

fn central_binomial_series(order: usize) -> TruncatedSeries {
    // (1 - 4t)^{-1/2} = sum C(2k,k) t^k
    binomial_series(&rat(1, 2), &int(4), order)
}

/// Keep only the coefficients of `t^{kp}`.
fn multisect(s: &TruncatedSeries, p: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(s.order(), |i| {
        if i % p == 0 {
            s.coeffs()[i].clone()
        } else {
            BigRational::zero()
        }
    })
}

fn product_coeff(factors: &[TruncatedSeries], n: usize) -> BigRational {
    let mut acc = TruncatedSeries::one(n + 1);
    for f in factors {
        acc = acc.mul(f);
    }
    acc.coeffs()[n].clone()
}

pub fn pair_convolution(n: usize) -> BigRational {
    central_binomial_series(n + 1).pow(2).coeffs()[n].clone()
}

pub fn multi_convolution(m: u32, n: usize) -> BigRational {
    central_binomial_series(n + 1).pow(m).coeffs()[n].clone()
}

/// Coefficient of `t^{2n}` in the square of the even part of `(1 - 4t)^{-1/2}`.
pub fn brychkov(n: usize) -> BigRational {
    let f = central_binomial_series(2 * n + 1);
    let even = f.add(&f.dilate(&int(-1))).scale(&rat(1, 2));
    even.mul(&even).coeffs()[2 * n].clone()
}

pub fn legendre_filter(n: usize, p: usize) -> BigRational {
    let e = multisect(&central_binomial_series(n * p + 1), p);
    e.mul(&e).coeffs()[n * p].clone()
}

pub fn multi_cv(a: &[BigRational], n: usize) -> BigRational {
    let factors: Vec<TruncatedSeries> = a.iter().map(|ai| binomial_series(ai, &int(1), n + 1)).collect();
    product_coeff(&factors, n)
}

/// Coefficient of `t^{np}` in `E(z^2 t) E(t)` with `E` the p-section of
/// `(1 - t)^{-a}`.
pub fn gegenbauer_filter(a: &BigRational, n: usize, p: usize, z: &BigRational) -> BigRational {
    let e = multisect(&binomial_series(a, &int(1), n * p + 1), p);
    e.dilate(&(z * z)).mul(&e).coeffs()[n * p].clone()
}

/// Product of `e^{2 x_i t - t^2}`, read at `t^n`.
pub fn hermite_multinomial(x: &[BigRational], n: usize) -> BigRational {
    let table = hermite_table(n);
    let factors: Vec<TruncatedSeries> = x
        .iter()
        .map(|xi| TruncatedSeries::from_fn(n + 1, |k| table[k].eval_rational(xi) / big(&factorial(k as u64))))
        .collect();
    product_coeff(&factors, n)
}

/// Product of `(1 - 2xt + t^2)^{-a_i}`, read at `t^n`.
pub fn gegenbauer_convolution(a: &[BigRational], n: usize, x: &BigRational) -> Result<BigRational> {
    let factors = a
        .iter()
        .map(|ai| gegenbauer_generating_series(ai, x, n + 1))
        .collect::<Result<Vec<_>>>()?;
    Ok(product_coeff(&factors, n))
}
