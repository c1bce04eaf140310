//! Expansion of a run configuration into independent grid points.

use binomid_core::exact::{int, BigRational};
use binomid_core::identities::{self as id, EngineChoice, FloatConfig, IdentityFamily};
use binomid_core::{Engine, Params, Verdict};

/// Parameter ranges shared by every family.
#[derive(Debug, Clone)]
pub struct Ranges {
    pub n_max: u64,
    pub m_max: usize,
    pub p_set: Vec<u64>,
    pub a_list: Vec<BigRational>,
    pub z_list: Vec<BigRational>,
    pub x_list: Vec<BigRational>,
}

impl Default for Ranges {
    fn default() -> Self {
        Ranges {
            n_max: 8,
            m_max: 3,
            p_set: vec![1, 2, 3],
            a_list: vec![BigRational::new(1.into(), 2.into()), int(1), BigRational::new(3.into(), 2.into())],
            z_list: vec![int(1), int(2)],
            x_list: vec![int(0), BigRational::new(2.into(), 3.into()), BigRational::new((-5).into(), 4.into())],
        }
    }
}

/// One grid point of one family.
#[derive(Debug, Clone)]
pub enum Job {
    PowerSum(u64),
    Pretty(u64),
    PairConvolution(u64),
    MultiConvolution(usize, u64),
    Brychkov(u64),
    LegendreFilter(u64, u64),
    ChuVandermonde(BigRational, BigRational, u64),
    MultiCv(Vec<BigRational>, u64),
    GegenbauerFilter(BigRational, u64, u64, BigRational),
    HermiteMultinomial(Vec<BigRational>, u64),
    GegenbauerConvolution(Vec<BigRational>, u64, BigRational),
    GhLimit(u64, BigRational),
}

/// Decades used for every limit check.
fn limit_a_values() -> Vec<BigRational> {
    vec![int(100), int(10_000), int(1_000_000)]
}

/// Non-decreasing selections of `size` entries from `values`.
fn multisets(values: &[BigRational], size: usize) -> Vec<Vec<BigRational>> {
    fn go(values: &[BigRational], size: usize, from: usize, cur: &mut Vec<BigRational>, out: &mut Vec<Vec<BigRational>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in from..values.len() {
            cur.push(values[i].clone());
            go(values, size, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(values, size, 0, &mut Vec::with_capacity(size), &mut out);
    out
}

pub fn jobs_for(family: IdentityFamily, r: &Ranges) -> Vec<Job> {
    let ns = 0..=r.n_max;
    let mut out = Vec::new();
    match family {
        IdentityFamily::PowerSum => out.extend(ns.map(Job::PowerSum)),
        IdentityFamily::Pretty => out.extend(ns.map(Job::Pretty)),
        IdentityFamily::PairConvolution => out.extend(ns.map(Job::PairConvolution)),
        IdentityFamily::Brychkov => out.extend(ns.map(Job::Brychkov)),
        IdentityFamily::MultiConvolution => {
            for m in 1..=r.m_max {
                out.extend(ns.clone().map(|n| Job::MultiConvolution(m, n)));
            }
        }
        IdentityFamily::LegendreFilter => {
            for &p in &r.p_set {
                out.extend(ns.clone().map(|n| Job::LegendreFilter(n, p)));
            }
        }
        IdentityFamily::ChuVandermonde => {
            for a1 in &r.a_list {
                for a2 in &r.a_list {
                    out.extend(ns.clone().map(|n| Job::ChuVandermonde(a1.clone(), a2.clone(), n)));
                }
            }
        }
        IdentityFamily::MultiChuVandermonde => {
            for m in 1..=r.m_max {
                for a in multisets(&r.a_list, m) {
                    out.extend(ns.clone().map(|n| Job::MultiCv(a.clone(), n)));
                }
            }
        }
        IdentityFamily::GegenbauerFilter => {
            for a in &r.a_list {
                for &p in &r.p_set {
                    for z in &r.z_list {
                        out.extend(ns.clone().map(|n| Job::GegenbauerFilter(a.clone(), n, p, z.clone())));
                    }
                }
            }
        }
        IdentityFamily::HermiteMultinomial => {
            for m in 1..=r.m_max {
                for x in multisets(&r.x_list, m) {
                    out.extend(ns.clone().map(|n| Job::HermiteMultinomial(x.clone(), n)));
                }
            }
        }
        IdentityFamily::GegenbauerConvolution => {
            for m in 1..=r.m_max {
                for a in multisets(&r.a_list, m) {
                    for x in &r.x_list {
                        out.extend(ns.clone().map(|n| Job::GegenbauerConvolution(a.clone(), n, x.clone())));
                    }
                }
            }
        }
        IdentityFamily::GegenbauerHermiteLimit => {
            for x in &r.x_list {
                out.extend(ns.clone().map(|n| Job::GhLimit(n, x.clone())));
            }
        }
    }
    out
}

impl Job {
    fn family(&self) -> IdentityFamily {
        match self {
            Job::PowerSum(_) => IdentityFamily::PowerSum,
            Job::Pretty(_) => IdentityFamily::Pretty,
            Job::PairConvolution(_) => IdentityFamily::PairConvolution,
            Job::MultiConvolution(..) => IdentityFamily::MultiConvolution,
            Job::Brychkov(_) => IdentityFamily::Brychkov,
            Job::LegendreFilter(..) => IdentityFamily::LegendreFilter,
            Job::ChuVandermonde(..) => IdentityFamily::ChuVandermonde,
            Job::MultiCv(..) => IdentityFamily::MultiChuVandermonde,
            Job::GegenbauerFilter(..) => IdentityFamily::GegenbauerFilter,
            Job::HermiteMultinomial(..) => IdentityFamily::HermiteMultinomial,
            Job::GegenbauerConvolution(..) => IdentityFamily::GegenbauerConvolution,
            Job::GhLimit(..) => IdentityFamily::GegenbauerHermiteLimit,
        }
    }

    /// The engine override reaches only the two filter families.
    pub fn run(&self, engine: EngineChoice, cfg: &FloatConfig) -> Vec<Verdict> {
        let one = |r: binomid_core::Result<Verdict>| r.map(|v| vec![v]);
        let result = match self {
            Job::PowerSum(n) => one(id::check_power_sum(*n)),
            Job::Pretty(m) => one(id::check_pretty(*m)),
            Job::PairConvolution(n) => one(id::check_pair_convolution(*n)),
            Job::MultiConvolution(m, n) => one(id::check_multi_convolution(*m, *n)),
            Job::Brychkov(n) => one(id::check_brychkov(*n)),
            Job::LegendreFilter(n, p) => one(id::check_legendre_filter(*n, *p, engine, cfg)),
            Job::ChuVandermonde(a1, a2, n) => one(id::check_chu_vandermonde(a1, a2, *n)),
            Job::MultiCv(a, n) => one(id::check_multi_cv(a, *n)),
            Job::GegenbauerFilter(a, n, p, z) => id::check_gegenbauer_filter(a, *n, *p, z, engine, cfg),
            Job::HermiteMultinomial(x, n) => one(id::check_hermite_multinomial(x, *n)),
            Job::GegenbauerConvolution(a, n, x) => one(id::check_gegenbauer_convolution(a, *n, x)),
            Job::GhLimit(n, x) => one(id::check_gh_limit(*n, x, &limit_a_values(), cfg)),
        };
        result.unwrap_or_else(|e| vec![Verdict::errored(self.family().name(), Params::new(), Engine::Exact, e)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_sizes() {
        let r = Ranges::default();
        assert_eq!(jobs_for(IdentityFamily::PairConvolution, &r).len(), 9);
        assert_eq!(jobs_for(IdentityFamily::MultiConvolution, &r).len(), 27);
        // 3 + 6 + 10 multisets of three values
        assert_eq!(jobs_for(IdentityFamily::MultiChuVandermonde, &r).len(), 19 * 9);
        assert_eq!(jobs_for(IdentityFamily::GegenbauerFilter, &r).len(), 3 * 3 * 2 * 9);
    }

    #[test]
    fn every_default_job_passes() {
        let cfg = FloatConfig::default();
        let r = Ranges { n_max: 3, ..Ranges::default() };
        for f in IdentityFamily::ALL {
            for job in jobs_for(f, &r) {
                for v in job.run(EngineChoice::Auto, &cfg) {
                    assert!(v.passed(), "{v:?}");
                }
            }
        }
    }
}
