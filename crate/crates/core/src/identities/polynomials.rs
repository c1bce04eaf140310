use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{require_parts, require_positive, FloatConfig, IdentityFamily};
use crate::bigfloat::{gegenbauer_eval, BigComplex, FloatContext};
use crate::error::{Error, Result};
use crate::exact::{big, canonical, composition_sum_rational, factorial, int, BigRational};
use crate::orthopoly::{gegenbauer, gegenbauer_table, hermite, hermite_table};
use crate::quadext::QuadExt;
use crate::verdict::{format_scientific, tuple_string, Engine, Params, Status, Verdict, FLOAT_DIGITS};

/// Smallest decay exponent accepted for the Gegenbauer to Hermite limit.
pub const GH_MAX_EXPONENT: f64 = -0.9;

/// `sum over k_1+..+k_m = n of prod H_{k_i}(x_i) / k_i!`.
pub fn hermite_multinomial_rhs(x: &[BigRational], n: u64) -> Result<BigRational> {
    require_parts("x", x.len())?;
    let table = hermite_table(n as usize);
    let rows: Vec<Vec<BigRational>> = x
        .iter()
        .map(|xi| {
            table
                .iter()
                .enumerate()
                .map(|(k, h)| h.eval_rational(xi) / big(&factorial(k as u64)))
                .collect()
        })
        .collect();
    composition_sum_rational(&rows, n as usize)
}

/// `m^{n/2} H_n(S / sqrt m) / n!` evaluated in `Q(sqrt m)`.
fn hermite_multinomial_lhs(x: &[BigRational], n: u64) -> Result<BigRational> {
    let m = int(x.len() as i64);
    let s: BigRational = x.iter().sum();
    let arg = QuadExt::new(BigRational::zero(), &s / &m, m.clone());
    let h = hermite(n as usize).eval(&arg)?;
    let mut scale = QuadExt::from_rational(num_traits::pow(m.clone(), (n / 2) as usize));
    if n % 2 == 1 {
        scale = scale.mul(&QuadExt::sqrt(m))?;
    }
    Ok(h.mul(&scale)?.rational_only()? / big(&factorial(n)))
}

/// Both sides scaled by `m^{n/2}` so the comparison is between rationals.
pub fn check_hermite_multinomial(x: &[BigRational], n: u64) -> Result<Verdict> {
    require_parts("x", x.len())?;
    let family = IdentityFamily::HermiteMultinomial.name();
    let params = Params::new().with("m", x.len()).with("n", n).with("x", tuple_string(x));
    let start = std::time::Instant::now();
    let rhs = hermite_multinomial_rhs(x, n)?;
    let mut v = match hermite_multinomial_lhs(x, n) {
        Ok(lhs) => Verdict::exact(family, params, Engine::Quad, &lhs, &rhs),
        Err(e) => Verdict::errored(family, params, Engine::Quad, e),
    };
    v.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(v)
}

/// `sum over k_1+..+k_m = n of prod C_{k_i}^{(a_i)}(x)`.
pub fn gegenbauer_convolution_rhs(a: &[BigRational], n: u64, x: &BigRational) -> Result<BigRational> {
    require_parts("a", a.len())?;
    let rows = a
        .iter()
        .map(|ai| Ok(gegenbauer_table(n as usize, ai)?.iter().map(|c| c.eval_rational(x)).collect()))
        .collect::<Result<Vec<Vec<BigRational>>>>()?;
    composition_sum_rational(&rows, n as usize)
}

/// `C_n^{(a_1+..+a_m)}(x)` against the composition sum of single-parameter values.
pub fn check_gegenbauer_convolution(a: &[BigRational], n: u64, x: &BigRational) -> Result<Verdict> {
    require_parts("a", a.len())?;
    require_positive("a", a)?;
    let params = Params::new().with("a", tuple_string(a)).with("n", n).with("x", canonical(x));
    let start = std::time::Instant::now();
    let total: BigRational = a.iter().sum();
    let lhs = gegenbauer(n as usize, &total)?.eval_rational(x);
    let rhs = gegenbauer_convolution_rhs(a, n, x)?;
    let mut v = Verdict::exact(IdentityFamily::GegenbauerConvolution.name(), params, Engine::Exact, &lhs, &rhs);
    v.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(v)
}

fn validate_a_values(a_values: &[BigRational]) -> Result<()> {
    if a_values.len() < 3 {
        return Err(Error::InvalidParameter("need at least 3 values of a".into()));
    }
    require_positive("a", a_values)?;
    if a_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("values of a must be strictly increasing".into()));
    }
    Ok(())
}

/// `a^{-n/2} C_n^{(a)}(x / sqrt a)` in big floats, as an exact binary rational.
fn scaled_gegenbauer(ctx: &FloatContext, n: usize, x: &BigRational, a: &BigRational) -> Result<BigRational> {
    let root = ctx.rational(a).sqrt();
    let arg = ctx.rational(x).div(&root);
    let c = gegenbauer_eval(ctx, n, a, &BigComplex::real(arg));
    c.re.div(&root.powi(n))
        .to_rational()
        .ok_or_else(|| Error::InvalidParameter("non-finite float result".into()))
}

/// `|a^{-n/2} C_n^{(a)}(x / sqrt a) - H_n(x) / n!|` for each `a`.
pub fn gh_limit_errors(
    n: u64,
    x: &BigRational,
    a_values: &[BigRational],
    cfg: &FloatConfig,
) -> Result<Vec<BigRational>> {
    validate_a_values(a_values)?;
    let ctx = FloatContext::new(cfg.precision);
    let target = hermite(n as usize).eval_rational(x) / big(&factorial(n));
    a_values
        .iter()
        .map(|a| Ok((scaled_gegenbauer(&ctx, n as usize, x, a)? - &target).abs()))
        .collect()
}

/// Least-squares slope of `ln err` against `ln a`; `None` if any error is zero.
pub fn decay_exponent(a_values: &[BigRational], errs: &[BigRational]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = a_values
        .iter()
        .zip(errs)
        .map(|(a, e)| Some((a.to_f64()?.ln(), e.to_f64()?.ln())))
        .collect::<Option<_>>()?;
    let len = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / len;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / len;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    slope.is_finite().then_some(slope)
}

/// Passes when the error sits at rounding level for every `a`, or when it
/// decreases strictly with a fitted exponent `<= GH_MAX_EXPONENT`.
pub fn check_gh_limit(n: u64, x: &BigRational, a_values: &[BigRational], cfg: &FloatConfig) -> Result<Verdict> {
    validate_a_values(a_values)?;
    let params = Params::new().with("n", n).with("x", canonical(x)).with("a", tuple_string(a_values));
    let start = std::time::Instant::now();
    let errs = gh_limit_errors(n, x, a_values, cfg)?;
    let target = hermite(n as usize).eval_rational(x) / big(&factorial(n));
    let floor = &cfg.tolerance * target.abs().max(BigRational::one());
    let last = errs.last().expect("at least 3 errors").clone();
    let listed: Vec<String> = errs.iter().map(|e| format_scientific(e, 6)).collect();

    let (status, detail) = if errs.iter().all(|e| *e <= floor) {
        (Status::Pass, "error at rounding level for every a".to_string())
    } else {
        let decreasing = errs.windows(2).all(|w| w[1] < w[0]);
        match decay_exponent(a_values, &errs) {
            Some(slope) if decreasing && slope <= GH_MAX_EXPONENT => (Status::Pass, format!("exponent {slope:.4}")),
            Some(slope) => (Status::Fail, format!("exponent {slope:.4}, decreasing={decreasing}")),
            None => (Status::Fail, "exponent undefined (zero error mixed with nonzero)".to_string()),
        }
    };

    let ctx = FloatContext::new(cfg.precision);
    let last_a = a_values.last().expect("validated");
    let mut v = Verdict::new(IdentityFamily::GegenbauerHermiteLimit.name(), params, Engine::Bigfloat, status);
    v.lhs = scaled_gegenbauer(&ctx, n as usize, x, last_a).map(|r| format_scientific(&r, FLOAT_DIGITS))?;
    v.rhs = canonical(&target);
    v.abs_err = Some(format_scientific(&last, FLOAT_DIGITS));
    v.rel_err = Some(format_scientific(&(&last / target.abs().max(BigRational::one())), FLOAT_DIGITS));
    v.note = Some(format!("errors [{}]; {detail}", listed.join(", ")));
    v.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(v)
}
