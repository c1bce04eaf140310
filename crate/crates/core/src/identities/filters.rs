//! Roots-of-unity filtered convolutions. The right sides average a
//! polynomial over the p points `cos(pi l / p)` (or their off-circle
//! Joukowsky images), so they are exact only when every cosine lies in a
//! quadratic field.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{require_positive, EngineChoice, FloatConfig, IdentityFamily};
use crate::bigfloat::{gegenbauer_eval, BigComplex, BigReal, FloatContext};
use crate::error::{Error, Result};
use crate::exact::{big, central_binomial, int, pochhammer_over_factorial, pow2, pow_rational, rat, BigRational};
use crate::orthopoly::{gegenbauer, legendre, RationalPoly};
use crate::quadext::{special_cosine, QuadExt};
use crate::verdict::{format_scientific, Engine, Params, Verdict, FLOAT_DIGITS};

/// Denominators whose cosines `cos(pi l / p)` are quadratic irrationals.
pub fn quad_cosine_available(p: u64) -> bool {
    matches!(p, 1 | 2 | 3 | 4 | 6)
}

fn require_p(p: u64) -> Result<()> {
    if p == 0 {
        return Err(Error::InvalidParameter("p must be >= 1".into()));
    }
    Ok(())
}

fn sign(l: u64, n: u64) -> i64 {
    if (l * n).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `sum_k C(2kp,kp) C(2(n-k)p,(n-k)p)`.
pub fn legendre_filter_lhs(n: u64, p: u64) -> BigInt {
    let row: Vec<BigInt> = (0..=n).map(|k| central_binomial(k * p)).collect();
    (0..=n as usize).map(|k| &row[k] * &row[n as usize - k]).sum()
}

/// `sum_k (a)_{kp}/(kp)! (a)_{(n-k)p}/((n-k)p)! z^{2kp}`.
pub fn gegenbauer_filter_lhs(a: &BigRational, n: u64, p: u64, z: &BigRational) -> BigRational {
    let w = pochhammer_over_factorial(a, (n * p) as usize + 1);
    let z2p = pow_rational(z, 2 * p);
    let mut zk = BigRational::one();
    let mut acc = BigRational::zero();
    for k in 0..=n {
        acc += &w[(k * p) as usize] * &w[((n - k) * p) as usize] * &zk;
        zk *= &z2p;
    }
    acc
}

/// `(1/p) sum_l (-1)^{ln} poly(cos(pi l / p))` in the quadratic field.
fn quad_cosine_average(poly: &RationalPoly, n: u64, p: u64) -> Result<BigRational> {
    let mut acc = QuadExt::zero();
    for l in 0..p {
        let c = special_cosine(l as i64, p)
            .ok_or_else(|| Error::InvalidParameter(format!("cos(pi*{l}/{p}) is not quadratic")))?;
        let term = poly.eval(&c)?.scale(&int(sign(l, n)));
        acc = acc.add(&term)?;
    }
    Ok(acc.rational_only()? / int(p as i64))
}

/// Big-float verdict with `rel_err = |Re(rhs) - lhs| / max(1, |lhs|)`. When
/// `im` is given it must also satisfy `|im| <= tol`.
fn float_verdict(
    family: IdentityFamily,
    params: Params,
    lhs: &BigRational,
    rhs: &BigComplex,
    check_imag: bool,
    cfg: &FloatConfig,
) -> Verdict {
    let (re, im) = match (rhs.re.to_rational(), rhs.im.to_rational()) {
        (Some(re), Some(im)) => (re, im),
        _ => return Verdict::errored(family.name(), params, Engine::Bigfloat, "non-finite float result"),
    };
    let abs_err = (&re - lhs).abs();
    let scale = lhs.abs().max(BigRational::one());
    let rel_err = &abs_err / scale;
    let real_ok = rel_err <= cfg.tolerance;
    let imag_ok = !check_imag || im.abs() <= cfg.tolerance;
    let status = if real_ok && imag_ok { crate::Status::Pass } else { crate::Status::Fail };
    let mut v = Verdict::new(family.name(), params, Engine::Bigfloat, status);
    v.lhs = crate::exact::canonical(lhs);
    v.rhs = if check_imag { rhs.to_decimal() } else { rhs.re.to_decimal() };
    v.abs_err = Some(format_scientific(&abs_err, FLOAT_DIGITS));
    v.rel_err = Some(format_scientific(&rel_err, FLOAT_DIGITS));
    if !imag_ok {
        v.note = Some(format!("imaginary part {} exceeds tolerance", rhs.im.to_decimal()));
    }
    v
}

fn quad_result(family: IdentityFamily, params: Params, lhs: &BigRational, rhs: Result<BigRational>) -> Verdict {
    match rhs {
        Ok(rhs) => Verdict::exact(family.name(), params, Engine::Quad, lhs, &rhs),
        Err(e) => {
            let mut v = Verdict::errored(family.name(), params, Engine::Quad, e);
            v.lhs = crate::exact::canonical(lhs);
            v
        }
    }
}

/// `LHS = 4^{np}/p sum_l (-1)^{ln} P_{np}(cos(pi l / p))`.
///
/// `Auto` uses the quadratic field for p in {1,2,3,4,6} and big floats
/// otherwise; an explicit `Quad` request on other p is unsupported.
pub fn check_legendre_filter(n: u64, p: u64, engine: EngineChoice, cfg: &FloatConfig) -> Result<Verdict> {
    require_p(p)?;
    let family = IdentityFamily::LegendreFilter;
    let params = Params::new().with("n", n).with("p", p);
    let use_quad = match engine {
        EngineChoice::Auto => quad_cosine_available(p),
        EngineChoice::Quad if !quad_cosine_available(p) => {
            return Ok(Verdict::unsupported(
                family.name(),
                params,
                Engine::Quad,
                format!("cos(pi l/{p}) is not a quadratic irrational"),
            ))
        }
        EngineChoice::Quad => true,
        EngineChoice::Bigfloat => false,
    };
    let scale = big(&pow2(2 * n * p));
    Ok(Verdict::timed(|| {
        let lhs = big(&legendre_filter_lhs(n, p));
        let degree = (n * p) as usize;
        if use_quad {
            let rhs = quad_cosine_average(&legendre(degree), n, p).map(|r| r * &scale);
            return quad_result(family, params, &lhs, rhs);
        }
        let mut ctx = FloatContext::new(cfg.precision);
        let half = rat(1, 2);
        let mut acc = BigComplex::real(ctx.zero());
        for l in 0..p {
            let (c, _) = ctx.cos_sin_pi(&rat(l as i64, p as i64));
            let term = gegenbauer_eval(&ctx, degree, &half, &BigComplex::real(c));
            acc = acc.add(&term.scale(&ctx.from_i64(sign(l, n))));
        }
        let rhs = acc.scale(&ctx.rational(&(scale / int(p as i64))));
        float_verdict(family, params, &lhs, &rhs, false, cfg)
    }))
}

/// Big-float right side `(1/p) sum_l (-1)^{ln} z^{np} C_{np}^{(a)}((z w^l + 1/(z w^l))/2)`
/// with `w = e^{i pi / p}`.
fn gegenbauer_filter_float(a: &BigRational, n: u64, p: u64, z: &BigRational, cfg: &FloatConfig) -> BigComplex {
    let mut ctx = FloatContext::new(cfg.precision);
    let degree = (n * p) as usize;
    let zf = ctx.rational(z);
    let zinv = ctx.rational(&z.recip());
    let half = ctx.rational(&rat(1, 2));
    let mut acc = BigComplex::real(ctx.zero());
    for l in 0..p {
        let u = ctx.unit_root(&rat(l as i64, p as i64));
        let arg = u.scale(&zf).add(&u.conj().scale(&zinv)).scale(&half);
        let term = gegenbauer_eval(&ctx, degree, a, &arg);
        acc = acc.add(&term.scale(&ctx.from_i64(sign(l, n))));
    }
    let factor: BigReal = zf.powi(degree).div(&ctx.from_i64(p as i64));
    acc.scale(&factor)
}

/// One verdict per engine run: big floats always (unless `Quad` is forced),
/// plus the quadratic field when `z = 1` and p allows exact cosines.
pub fn check_gegenbauer_filter(
    a: &BigRational,
    n: u64,
    p: u64,
    z: &BigRational,
    engine: EngineChoice,
    cfg: &FloatConfig,
) -> Result<Vec<Verdict>> {
    require_p(p)?;
    require_positive("a", std::slice::from_ref(a))?;
    require_positive("z", std::slice::from_ref(z))?;
    let family = IdentityFamily::GegenbauerFilter;
    let params = Params::new()
        .with("a", crate::exact::canonical(a))
        .with("n", n)
        .with("p", p)
        .with("z", crate::exact::canonical(z));
    let quad_ok = z.is_one() && quad_cosine_available(p);
    let (run_quad, run_float) = match engine {
        EngineChoice::Auto => (quad_ok, true),
        EngineChoice::Quad => (true, false),
        EngineChoice::Bigfloat => (false, true),
    };
    let lhs = gegenbauer_filter_lhs(a, n, p, z);
    let mut out = Vec::new();
    if run_quad {
        if quad_ok {
            out.push(Verdict::timed(|| {
                let rhs = gegenbauer((n * p) as usize, a).and_then(|poly| quad_cosine_average(&poly, n, p));
                quad_result(family, params.clone(), &lhs, rhs)
            }));
        } else {
            out.push(Verdict::unsupported(
                family.name(),
                params.clone(),
                Engine::Quad,
                "exact engine needs z = 1 and p in {1,2,3,4,6}",
            ));
        }
    }
    if run_float {
        out.push(Verdict::timed(|| {
            let rhs = gegenbauer_filter_float(a, n, p, z, cfg);
            float_verdict(family, params.clone(), &lhs, &rhs, true, cfg)
        }));
    }
    Ok(out)
}
