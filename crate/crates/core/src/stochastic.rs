//! Seeded gamma, beta and symmetric-beta samplers and the Monte Carlo
//! checks built on them.
//!
//! Every estimate is compared with its exact target at
//! [`SE_THRESHOLD`] standard errors.

use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::exact::{big, canonical, central_binomial, factorial, pochhammer, pow2, rat, BigRational};
use crate::verdict::{format_f64, tuple_string, Engine, Params, Status, Verdict};

/// Pass band for Monte Carlo verdicts, in standard errors.
pub const SE_THRESHOLD: f64 = 4.0;
/// Correlation probe bound is `PROBE_SCALE / sqrt(count)`.
pub const PROBE_SCALE: f64 = 5.0;
pub const MIN_PROBE_COUNT: usize = 100;
pub const MAX_ADDITIVITY_ORDER: u32 = 6;
pub const MAX_DISSECTION_ORDER: u32 = 3;

/// `(master_seed, stream_index)` names one reproducible ChaCha8 stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngStream {
    pub master_seed: u64,
    pub stream_index: u64,
}

impl RngStream {
    pub fn new(master_seed: u64, stream_index: u64) -> Self {
        RngStream { master_seed, stream_index }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_index);
        rng
    }
}

#[derive(Debug, Clone, Copy)]
enum GammaPath {
    /// `N^2 / 2` for shape exactly 1/2.
    SquaredNormal,
    /// Marsaglia-Tsang squeeze for shape >= 1.
    Squeeze { d: f64, c: f64 },
    /// `Y U^{1/shape}` with `Y ~ Gamma(shape + 1)`.
    Boosted { d: f64, c: f64, inv_shape: f64 },
}

/// `Gamma(shape, 1)` sampler.
#[derive(Debug, Clone, Copy)]
pub struct GammaSampler {
    shape: f64,
    path: GammaPath,
}

impl GammaSampler {
    pub fn new(shape: f64) -> Result<Self> {
        if !(shape.is_finite() && shape > 0.0) {
            return Err(Error::InvalidShape(shape));
        }
        let squeeze = |s: f64| {
            let d = s - 1.0 / 3.0;
            (d, 1.0 / (9.0 * d).sqrt())
        };
        let path = if shape == 0.5 {
            GammaPath::SquaredNormal
        } else if shape >= 1.0 {
            let (d, c) = squeeze(shape);
            GammaPath::Squeeze { d, c }
        } else {
            let (d, c) = squeeze(shape + 1.0);
            GammaPath::Boosted { d, c, inv_shape: 1.0 / shape }
        };
        Ok(GammaSampler { shape, path })
    }

    pub fn shape(&self) -> f64 {
        self.shape
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self.path {
            GammaPath::SquaredNormal => {
                let z: f64 = rng.sample(StandardNormal);
                0.5 * z * z
            }
            GammaPath::Squeeze { d, c } => squeeze_sample(rng, d, c),
            GammaPath::Boosted { d, c, inv_shape } => {
                let y = squeeze_sample(rng, d, c);
                let u: f64 = rng.gen();
                y * u.powf(inv_shape)
            }
        }
    }
}

fn squeeze_sample<R: Rng + ?Sized>(rng: &mut R, d: f64, c: f64) -> f64 {
    loop {
        let x: f64 = rng.sample(StandardNormal);
        let v = 1.0 + c * x;
        if v <= 0.0 {
            continue;
        }
        let v = v * v * v;
        let u: f64 = rng.gen();
        let x2 = x * x;
        if u < 1.0 - 0.0331 * x2 * x2 || u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
            return d * v;
        }
    }
}

fn require_count(count: usize, min: usize) -> Result<()> {
    if count < min {
        return Err(Error::InvalidParameter(format!("sample count {count} < {min}")));
    }
    Ok(())
}

pub fn sample_gamma(shape: f64, stream: &RngStream, count: usize) -> Result<Vec<f64>> {
    let g = GammaSampler::new(shape)?;
    require_count(count, 1)?;
    let mut rng = stream.rng();
    Ok((0..count).map(|_| g.sample(&mut rng)).collect())
}

/// `Gamma_a / (Gamma_a + Gamma_b)`.
pub fn sample_beta(a: f64, b: f64, stream: &RngStream, count: usize) -> Result<Vec<f64>> {
    let (ga, gb) = (GammaSampler::new(a)?, GammaSampler::new(b)?);
    require_count(count, 1)?;
    let mut rng = stream.rng();
    Ok((0..count)
        .map(|_| {
            let x = ga.sample(&mut rng);
            let y = gb.sample(&mut rng);
            x / (x + y)
        })
        .collect())
}

/// `1 - 2 Gamma_c / (Gamma_c + Gamma'_c)`, supported on `[-1, 1]`.
pub fn sample_symmetric_beta(c: f64, stream: &RngStream, count: usize) -> Result<Vec<f64>> {
    let g = GammaSampler::new(c)?;
    require_count(count, 1)?;
    let mut rng = stream.rng();
    Ok((0..count)
        .map(|_| {
            let x = g.sample(&mut rng);
            let y = g.sample(&mut rng);
            1.0 - 2.0 * x / (x + y)
        })
        .collect())
}

/// Sample mean with `standard_error = sd / sqrt(count)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentEstimate {
    pub mean: f64,
    pub standard_error: f64,
    pub sample_count: usize,
}

impl MomentEstimate {
    /// Welford accumulation; needs at least two values.
    pub fn from_values(values: impl IntoIterator<Item = f64>) -> Result<Self> {
        let (mut n, mut mean, mut m2) = (0usize, 0.0f64, 0.0f64);
        for v in values {
            n += 1;
            let delta = v - mean;
            mean += delta / n as f64;
            m2 += delta * (v - mean);
        }
        require_count(n, 2)?;
        let var = m2 / (n - 1) as f64;
        Ok(MomentEstimate { mean, standard_error: (var / n as f64).sqrt(), sample_count: n })
    }

    /// `None` when the standard error is zero.
    pub fn z_score(&self, target: f64) -> Option<f64> {
        (self.standard_error > 0.0).then(|| (self.mean - target) / self.standard_error)
    }

    /// Within `k` standard errors; with zero spread the mean must be exact.
    pub fn within(&self, target: f64, k: f64) -> bool {
        match self.z_score(target) {
            Some(z) => z.abs() <= k,
            None => self.mean == target,
        }
    }
}

/// Pearson correlation of two equal-length samples.
pub fn correlation(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len().min(ys.len()) as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    sxy / (sxx * syy).sqrt()
}

fn stream_params(params: Params, stream: &RngStream, count: usize) -> Params {
    params
        .with("seed", stream.master_seed)
        .with("stream", stream.stream_index)
        .with("count", count)
}

fn moment_verdict(family: &str, params: Params, est: &MomentEstimate, target: &BigRational) -> Verdict {
    let t = target.to_f64().unwrap_or(f64::NAN);
    let status = if est.within(t, SE_THRESHOLD) { Status::Pass } else { Status::Fail };
    let mut v = Verdict::new(family, params, Engine::Montecarlo, status);
    let abs = (est.mean - t).abs();
    v.lhs = format_f64(est.mean);
    v.rhs = canonical(target);
    v.abs_err = Some(format_f64(abs));
    v.rel_err = Some(format_f64(abs / t.abs().max(1.0)));
    v.standard_error = Some(format_f64(est.standard_error));
    v.z_score = est.z_score(t).map(format_f64);
    v.note = Some(format!("statistical: pass within {SE_THRESHOLD} standard errors"));
    v
}

fn shape_f64(r: &BigRational) -> Result<f64> {
    r.to_f64().filter(|s| *s > 0.0).ok_or_else(|| Error::InvalidShape(r.to_f64().unwrap_or(f64::NAN)))
}

/// `E X^k` for `X ~ Gamma(shape, 1)` against `(shape)_k`.
pub fn mc_gamma_moment(shape: &BigRational, k: u32, stream: &RngStream, count: usize) -> Result<Verdict> {
    let s = shape_f64(shape)?;
    let params = stream_params(Params::new().with("shape", canonical(shape)).with("k", k), stream, count);
    let start = std::time::Instant::now();
    let xs = sample_gamma(s, stream, count)?;
    let est = MomentEstimate::from_values(xs.into_iter().map(|x| x.powi(k as i32)))?;
    let mut v = moment_verdict("mc-gamma-moment", params, &est, &pochhammer(shape, k as u64));
    v.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(v)
}

/// `E B_{a,b}` against `a / (a + b)`.
pub fn mc_beta_mean(a: &BigRational, b: &BigRational, stream: &RngStream, count: usize) -> Result<Verdict> {
    let (af, bf) = (shape_f64(a)?, shape_f64(b)?);
    let params = stream_params(Params::new().with("a", canonical(a)).with("b", canonical(b)), stream, count);
    let start = std::time::Instant::now();
    let xs = sample_beta(af, bf, stream, count)?;
    let est = MomentEstimate::from_values(xs)?;
    let mut v = moment_verdict("mc-beta-mean", params, &est, &(a / (a + b)));
    v.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(v)
}

/// `E Z_c^k`: zero for odd k, `(1/2)_j / (c + 1/2)_j` for `k = 2j` since
/// `Z_c^2 ~ Beta(1/2, c)`.
pub fn symmetric_beta_moment(c: &BigRational, k: u32) -> BigRational {
    if k % 2 == 1 {
        return BigRational::zero();
    }
    let j = (k / 2) as u64;
    pochhammer(&rat(1, 2), j) / pochhammer(&(c + rat(1, 2)), j)
}

pub fn mc_symmetric_beta_moment(c: &BigRational, k: u32, stream: &RngStream, count: usize) -> Result<Verdict> {
    let cf = shape_f64(c)?;
    let params = stream_params(Params::new().with("c", canonical(c)).with("k", k), stream, count);
    let start = std::time::Instant::now();
    let zs = sample_symmetric_beta(cf, stream, count)?;
    let est = MomentEstimate::from_values(zs.into_iter().map(|z| z.powi(k as i32)))?;
    let mut v = moment_verdict("mc-symmetric-beta-moment", params, &est, &symmetric_beta_moment(c, k));
    v.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(v)
}

/// `E (X_1 + .. + X_m)^n` for independent `X_i ~ Gamma(k_i, 1)` against
/// `(k_1 + .. + k_m)_n`.
pub fn mc_gamma_additivity(shapes: &[BigRational], n: u32, stream: &RngStream, count: usize) -> Result<Verdict> {
    if shapes.is_empty() {
        return Err(Error::InvalidParameter("need at least one shape".into()));
    }
    if n > MAX_ADDITIVITY_ORDER {
        return Err(Error::InvalidParameter(format!("moment order {n} > {MAX_ADDITIVITY_ORDER}")));
    }
    let samplers = shapes
        .iter()
        .map(|s| GammaSampler::new(shape_f64(s)?))
        .collect::<Result<Vec<_>>>()?;
    require_count(count, 2)?;
    let params = stream_params(Params::new().with("shapes", tuple_string(shapes)).with("n", n), stream, count);
    let total: BigRational = shapes.iter().sum();
    let start = std::time::Instant::now();
    let mut rng = stream.rng();
    let est = MomentEstimate::from_values((0..count).map(|_| {
        let s: f64 = samplers.iter().map(|g| g.sample(&mut rng)).sum();
        s.powi(n as i32)
    }))?;
    let mut v = moment_verdict("mc-gamma-additivity", params, &est, &pochhammer(&total, n as u64));
    v.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(v)
}

/// `(2n)! / 4^n C(2n, n)`, the `2n`-th moment of a difference of two
/// independent `Gamma(1/2, 1)` variables.
pub fn dissection_moment(n: u32) -> BigRational {
    let n = n as u64;
    big(&(factorial(2 * n) * central_binomial(n))) / big(&pow2(2 * n))
}

pub fn mc_dissection(n: u32, stream: &RngStream, count: usize) -> Result<Verdict> {
    if n > MAX_DISSECTION_ORDER {
        return Err(Error::InvalidParameter(format!("order {n} > {MAX_DISSECTION_ORDER}")));
    }
    require_count(count, 2)?;
    let g = GammaSampler::new(0.5)?;
    let params = stream_params(Params::new().with("n", n), stream, count);
    let start = std::time::Instant::now();
    let mut rng = stream.rng();
    let est = MomentEstimate::from_values((0..count).map(|_| {
        let d = g.sample(&mut rng) - g.sample(&mut rng);
        d.powi(2 * n as i32)
    }))?;
    let mut v = moment_verdict("mc-dissection", params, &est, &dissection_moment(n));
    v.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(v)
}

/// Correlation of `B_{a,b}^j` with `(Gamma_a + Gamma_b)^j` for `j = 1, 2`;
/// passes when both stay within `PROBE_SCALE / sqrt(count)`.
pub fn mc_independence_probe(a: &BigRational, b: &BigRational, stream: &RngStream, count: usize) -> Result<Verdict> {
    let (ga, gb) = (GammaSampler::new(shape_f64(a)?)?, GammaSampler::new(shape_f64(b)?)?);
    require_count(count, MIN_PROBE_COUNT)?;
    let params = stream_params(Params::new().with("a", canonical(a)).with("b", canonical(b)), stream, count);
    let start = std::time::Instant::now();
    let mut rng = stream.rng();
    let (mut ratio, mut total) = (Vec::with_capacity(count), Vec::with_capacity(count));
    for _ in 0..count {
        let x = ga.sample(&mut rng);
        let y = gb.sample(&mut rng);
        ratio.push(x / (x + y));
        total.push(x + y);
    }
    let sq = |v: &[f64]| v.iter().map(|t| t * t).collect::<Vec<_>>();
    let corrs = [correlation(&ratio, &total), correlation(&sq(&ratio), &sq(&total))];
    let bound = PROBE_SCALE / (count as f64).sqrt();
    let worst = corrs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let status = if worst <= bound { Status::Pass } else { Status::Fail };
    let mut v = Verdict::new("mc-independence", params, Engine::Montecarlo, status);
    v.lhs = format_f64(worst);
    v.rhs = format_f64(bound);
    v.abs_err = Some(format_f64(worst));
    v.note = Some(format!("statistical: corr(j=1) = {:.3e}, corr(j=2) = {:.3e}", corrs[0], corrs[1]));
    v.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(v)
}

/// One Monte Carlo check of the standard suite.
#[derive(Debug, Clone, PartialEq)]
pub enum McJob {
    GammaMoment { shape: BigRational, k: u32 },
    BetaMean { a: BigRational, b: BigRational },
    SymmetricBetaMoment { c: BigRational, k: u32 },
    Additivity { shapes: Vec<BigRational>, n: u32 },
    Dissection { n: u32 },
    Independence { a: BigRational, b: BigRational },
}

impl McJob {
    pub fn run(&self, stream: &RngStream, count: usize) -> Result<Verdict> {
        match self {
            McJob::GammaMoment { shape, k } => mc_gamma_moment(shape, *k, stream, count),
            McJob::BetaMean { a, b } => mc_beta_mean(a, b, stream, count),
            McJob::SymmetricBetaMoment { c, k } => mc_symmetric_beta_moment(c, *k, stream, count),
            McJob::Additivity { shapes, n } => mc_gamma_additivity(shapes, *n, stream, count),
            McJob::Dissection { n } => mc_dissection(*n, stream, count),
            McJob::Independence { a, b } => mc_independence_probe(a, b, stream, count),
        }
    }
}

/// The standard suite; job `i` runs on stream `i`.
pub fn standard_jobs() -> Vec<McJob> {
    let half = rat(1, 2);
    let one = rat(1, 1);
    let mut jobs: Vec<McJob> = (1..=4).map(|k| McJob::GammaMoment { shape: half.clone(), k }).collect();
    jobs.push(McJob::GammaMoment { shape: one.clone(), k: 1 });
    jobs.push(McJob::BetaMean { a: one.clone(), b: one.clone() });
    jobs.push(McJob::BetaMean { a: one.clone(), b: rat(2, 1) });
    jobs.push(McJob::SymmetricBetaMoment { c: half.clone(), k: 2 });
    jobs.push(McJob::SymmetricBetaMoment { c: half.clone(), k: 4 });
    for c in [half.clone(), one.clone(), rat(2, 1)] {
        for k in [1, 3] {
            jobs.push(McJob::SymmetricBetaMoment { c: c.clone(), k });
        }
    }
    jobs.push(McJob::Additivity { shapes: vec![half.clone(); 2], n: 0 });
    jobs.push(McJob::Additivity { shapes: vec![half.clone(); 2], n: 2 });
    jobs.push(McJob::Additivity { shapes: vec![half.clone(); 3], n: 3 });
    jobs.push(McJob::Additivity { shapes: vec![rat(1, 3), rat(5, 2)], n: 2 });
    for n in 0..=MAX_DISSECTION_ORDER {
        jobs.push(McJob::Dissection { n });
    }
    jobs.push(McJob::Independence { a: half.clone(), b: half });
    jobs.push(McJob::Independence { a: one.clone(), b: one });
    jobs
}

/// Run [`standard_jobs`] sequentially.
pub fn mc_suite(seed: u64, count: usize) -> Result<Vec<Verdict>> {
    standard_jobs()
        .iter()
        .enumerate()
        .map(|(i, job)| job.run(&RngStream::new(seed, i as u64), count))
        .collect()
}
