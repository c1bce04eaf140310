use super::{require_parts, require_positive, IdentityFamily};
use crate::error::Result;
use crate::exact::{
    big, canonical, composition_sum_rational, factorial, pochhammer, pochhammer_over_factorial, BigRational,
};
use crate::verdict::{tuple_string, Engine, Params, Verdict};

/// `sum over k_1+..+k_m = n of prod (a_i)_{k_i} / k_i!`.
pub fn multi_cv_lhs(a: &[BigRational], n: u64) -> Result<BigRational> {
    require_parts("a", a.len())?;
    let rows: Vec<Vec<BigRational>> = a.iter().map(|ai| pochhammer_over_factorial(ai, n as usize + 1)).collect();
    composition_sum_rational(&rows, n as usize)
}

fn cv_rhs(a: &[BigRational], n: u64) -> BigRational {
    let total: BigRational = a.iter().sum();
    pochhammer(&total, n) / big(&factorial(n))
}

pub fn check_chu_vandermonde(a1: &BigRational, a2: &BigRational, n: u64) -> Result<Verdict> {
    let a = [a1.clone(), a2.clone()];
    require_positive("a", &a)?;
    let params = Params::new().with("a1", canonical(a1)).with("a2", canonical(a2)).with("n", n);
    Ok(Verdict::timed(|| {
        let w1 = pochhammer_over_factorial(a1, n as usize + 1);
        let w2 = pochhammer_over_factorial(a2, n as usize + 1);
        let lhs: BigRational = (0..=n as usize).map(|k| &w1[k] * &w2[n as usize - k]).sum();
        Verdict::exact(IdentityFamily::ChuVandermonde.name(), params, Engine::Exact, &lhs, &cv_rhs(&a, n))
    }))
}

pub fn check_multi_cv(a: &[BigRational], n: u64) -> Result<Verdict> {
    require_parts("a", a.len())?;
    require_positive("a", a)?;
    let params = Params::new().with("a", tuple_string(a)).with("n", n);
    let start = std::time::Instant::now();
    let lhs = multi_cv_lhs(a, n)?;
    let mut v = Verdict::exact(
        IdentityFamily::MultiChuVandermonde.name(),
        params,
        Engine::Exact,
        &lhs,
        &cv_rhs(a, n),
    );
    v.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(v)
}
