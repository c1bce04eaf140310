//! Acceptance gate. Runs every criterion at its pinned tolerance, prints one
//! PASS/FAIL line per criterion and exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use binomid_core::exact::{big, int, rat, BigRational};
use binomid_core::identities::{
    check_brychkov, check_chu_vandermonde, check_gegenbauer_convolution, check_gegenbauer_filter, check_gh_limit,
    check_hermite_multinomial, check_legendre_filter, check_multi_convolution, check_multi_cv,
    check_pair_convolution, check_power_sum, check_pretty, decay_exponent, gh_limit_errors, multi_convolution_lhs,
    EngineChoice, FloatConfig,
};
use binomid_core::orthopoly::{
    gegenbauer, gegenbauer_moment_rep, hermite, hermite_moment_rep, legendre, legendre_moment_rep,
};
use binomid_core::quadext::QuadExt;
use binomid_core::series::{binomial_series, gegenbauer_gf_check, mgf_product_check};
use binomid_core::stochastic::{mc_suite, SE_THRESHOLD};
use binomid_core::{Engine, Status, Verdict};

const FLOAT_PRECISION: usize = 256;
const DOUBLED_PRECISION: usize = 512;
/// Relative (and imaginary-part) tolerance of the big-float engine.
const FLOAT_TOLERANCE_EXP: i32 = -30;
const CRITERION_1_BUDGET: Duration = Duration::from_secs(30);
const CRITERION_11_BUDGET: Duration = Duration::from_secs(60);
const MC_SEED: u64 = 42;
const MC_SAMPLES: usize = 1_000_000;
const MC_STANDARD_ERRORS: f64 = 4.0;
const GH_MAX_EXPONENT: f64 = -0.9;
const SERIES_ORDER: usize = 16;

fn float_cfg(precision: usize) -> FloatConfig {
    let tol = BigRational::new(1.into(), num_bigint::BigInt::from(10).pow(-FLOAT_TOLERANCE_EXP as u32));
    FloatConfig::new(precision, tol).expect("valid float config")
}

/// Tally of verdicts with the first failure kept for the report.
#[derive(Default)]
struct Tally {
    total: usize,
    failed: usize,
    first_failure: Option<String>,
}

impl Tally {
    fn verdict(&mut self, v: &Verdict) {
        self.check(v.passed(), || format!("{v} lhs={} rhs={} note={:?}", v.lhs, v.rhs, v.note));
    }

    fn expect_engine(&mut self, v: &Verdict, engine: Engine) {
        self.check(v.passed() && v.engine == engine, || format!("{v} expected engine {engine}"));
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.total += 1;
        if !ok {
            self.failed += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    fn result(self) -> (bool, String) {
        let detail = match self.first_failure {
            None => format!("{} checks", self.total),
            Some(f) => format!("{}/{} failed, first: {f}", self.failed, self.total),
        };
        (self.failed == 0, detail)
    }
}

fn criterion_1() -> (bool, String) {
    let start = Instant::now();
    let mut t = Tally::default();
    for n in 0..=200 {
        t.verdict(&check_pair_convolution(n).unwrap());
    }
    for m in 2..=6 {
        for n in 0..=60 {
            t.verdict(&check_multi_convolution(m, n).unwrap());
        }
    }
    for m in 0..=40 {
        t.verdict(&check_pretty(m).unwrap());
    }
    for n in 0..=64 {
        t.verdict(&check_power_sum(n).unwrap());
    }
    let elapsed = start.elapsed();
    t.check(elapsed <= CRITERION_1_BUDGET, || format!("runtime {elapsed:?} over {CRITERION_1_BUDGET:?}"));
    let (ok, detail) = t.result();
    (ok, format!("{detail}, {:.1}s", elapsed.as_secs_f64()))
}

fn criterion_2() -> (bool, String) {
    let mut t = Tally::default();
    for n in 0..=100 {
        t.verdict(&check_brychkov(n).unwrap());
    }
    let one = check_brychkov(1).unwrap();
    t.check(one.lhs == "12" && one.rhs == "12", || format!("n=1 gave {} vs {}", one.lhs, one.rhs));
    let two = check_brychkov(2).unwrap();
    t.check(two.lhs == "176" && two.rhs == "176", || format!("n=2 gave {} vs {}", two.lhs, two.rhs));
    t.result()
}

fn legendre_float_grid(cfg: &FloatConfig) -> Vec<Verdict> {
    let mut out = Vec::new();
    for p in [5, 7, 8] {
        for n in 0..=10 {
            out.push(check_legendre_filter(n, p, EngineChoice::Auto, cfg).unwrap());
        }
    }
    out
}

fn criterion_3() -> (bool, String) {
    let cfg = float_cfg(FLOAT_PRECISION);
    let mut t = Tally::default();
    for p in [1, 2, 3, 4, 6] {
        for n in 0..=20 {
            t.expect_engine(&check_legendre_filter(n, p, EngineChoice::Auto, &cfg).unwrap(), Engine::Quad);
        }
    }
    for v in legendre_float_grid(&cfg) {
        t.expect_engine(&v, Engine::Bigfloat);
    }
    t.result()
}

fn cv_tuples() -> Vec<Vec<BigRational>> {
    let r = |p: i64, q: i64| rat(p, q);
    vec![
        vec![r(1, 2), r(1, 2)],
        vec![r(1, 3), r(2, 3)],
        vec![r(1, 1), r(2, 1)],
        vec![r(1, 2), r(3, 1)],
        vec![r(2, 3), r(5, 2)],
        vec![r(4, 1), r(1, 3)],
        vec![r(1, 2), r(1, 2), r(1, 2)],
        vec![r(1, 3), r(2, 3), r(5, 1)],
        vec![r(1, 1), r(1, 2), r(1, 3)],
        vec![r(3, 2), r(2, 1), r(2, 3)],
        vec![r(1, 3), r(1, 3), r(1, 3)],
        vec![r(1, 2), r(1, 2), r(1, 2), r(1, 2)],
        vec![r(1, 1), r(2, 1), r(3, 1), r(4, 1)],
        vec![r(1, 3), r(1, 2), r(2, 3), r(1, 1)],
        vec![r(5, 2), r(1, 3), r(4, 3), r(2, 1)],
        vec![r(1, 2), r(1, 2), r(1, 2), r(1, 2), r(1, 2)],
        vec![r(1, 3), r(2, 3), r(1, 1), r(4, 3), r(5, 3)],
        vec![r(1, 1), r(1, 1), r(1, 1), r(1, 1), r(1, 1)],
        vec![r(1, 2), r(1, 3), r(2, 1), r(3, 2), r(7, 3)],
        vec![r(2, 3), r(1, 2), r(1, 2), r(3, 1), r(1, 1)],
    ]
}

fn criterion_4() -> (bool, String) {
    let mut t = Tally::default();
    let tuples = cv_tuples();
    t.check(tuples.len() == 20, || format!("{} tuples", tuples.len()));
    for a in &tuples {
        for n in 0..=40 {
            if a.len() == 2 {
                t.verdict(&check_chu_vandermonde(&a[0], &a[1], n).unwrap());
            }
            t.verdict(&check_multi_cv(a, n).unwrap());
        }
    }
    t.result()
}

fn gegenbauer_float_grid(cfg: &FloatConfig) -> Vec<Verdict> {
    let mut out = Vec::new();
    for z in [rat(1, 2), int(2), rat(5, 3)] {
        for a in [rat(1, 2), int(1), rat(3, 2)] {
            for p in 1..=6 {
                for n in 0..=10 {
                    out.extend(check_gegenbauer_filter(&a, n, p, &z, EngineChoice::Auto, cfg).unwrap());
                }
            }
        }
    }
    out
}

fn criterion_5() -> (bool, String) {
    let cfg = float_cfg(FLOAT_PRECISION);
    let mut t = Tally::default();
    for p in [1, 2, 3, 4, 6] {
        for a in [rat(1, 2), int(1), rat(3, 2)] {
            for n in 0..=10 {
                let vs = check_gegenbauer_filter(&a, n, p, &int(1), EngineChoice::Auto, &cfg).unwrap();
                let quad = vs.iter().filter(|v| v.engine == Engine::Quad).count();
                t.check(quad == 1, || format!("a={a} n={n} p={p}: {quad} exact verdicts"));
                vs.iter().for_each(|v| t.verdict(v));
            }
        }
    }
    for v in gegenbauer_float_grid(&cfg) {
        t.expect_engine(&v, Engine::Bigfloat);
    }
    t.result()
}

fn hermite_vectors() -> Vec<Vec<BigRational>> {
    vec![
        vec![int(0), int(0), int(0), int(0)],
        vec![int(1), rat(-1, 2), int(2), int(-3)],
        vec![rat(1, 2), rat(1, 3), rat(1, 4), rat(1, 5)],
        vec![int(-2), rat(-5, 3), int(-1), rat(-7, 2)],
        vec![rat(3, 4), rat(-2, 3), int(0), rat(5, 2)],
    ]
}

fn criterion_6() -> (bool, String) {
    let mut t = Tally::default();
    for base in hermite_vectors() {
        for m in 1..=4 {
            for n in 0..=12 {
                t.verdict(&check_hermite_multinomial(&base[..m], n).unwrap());
            }
        }
    }
    t.result()
}

/// Non-decreasing index tuples of length `m` over `values`.
fn multisets(values: &[BigRational], m: usize) -> Vec<Vec<BigRational>> {
    fn go(values: &[BigRational], m: usize, from: usize, cur: &mut Vec<BigRational>, out: &mut Vec<Vec<BigRational>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in from..values.len() {
            cur.push(values[i].clone());
            go(values, m, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(values, m, 0, &mut Vec::new(), &mut out);
    out
}

fn criterion_7() -> (bool, String) {
    let values = [rat(1, 2), int(1), rat(3, 2), int(2)];
    let mut t = Tally::default();
    for m in 2..=4 {
        for a in multisets(&values, m) {
            for x in [int(0), rat(2, 3), rat(-5, 4)] {
                for n in 0..=12 {
                    t.verdict(&check_gegenbauer_convolution(&a, n, &x).unwrap());
                }
            }
        }
    }
    t.result()
}

fn criterion_8() -> (bool, String) {
    let xs = [int(0), rat(2, 3), int(1), rat(3, 2), int(2), int(7), rat(-5, 4)];
    let as_ = [rat(1, 2), int(1), rat(3, 2), int(2), rat(1, 3)];
    let mut t = Tally::default();
    for n in 0..=12usize {
        for x in &xs {
            let want = QuadExt::from_rational(legendre(n).eval_rational(x));
            let got = legendre_moment_rep(n, x);
            t.check(got.as_ref() == Ok(&want), || format!("legendre n={n} x={x}: {got:?}"));
            let h = hermite_moment_rep(n, x);
            t.check(h == hermite(n).eval_rational(x), || format!("hermite n={n} x={x}"));
            for a in &as_ {
                let want = QuadExt::from_rational(gegenbauer(n, a).unwrap().eval_rational(x));
                let got = gegenbauer_moment_rep(n, a, x);
                t.check(got.as_ref() == Ok(&want), || format!("gegenbauer n={n} a={a} x={x}: {got:?}"));
            }
        }
    }
    t.result()
}

fn criterion_9() -> (bool, String) {
    let mut t = Tally::default();
    for m in 1..=5u32 {
        let s = binomial_series(&rat(1, 2), &int(4), 31).pow(m);
        for n in 0..=30usize {
            let direct = big(&multi_convolution_lhs(m as usize, n as u64).unwrap());
            t.check(s.coeffs()[n] == direct, || format!("m={m} n={n}"));
        }
    }
    // closed form of the cube at t^1 (three compositions, each worth 2)
    let cube = binomial_series(&rat(1, 2), &int(4), 2).pow(3);
    t.check(cube.coeffs()[1] == int(6), || "cube coefficient".into());
    for a in [rat(1, 2), int(1), rat(3, 2), rat(1, 3)] {
        for x in [int(0), rat(1, 2), int(1), rat(3, 2), int(-2)] {
            t.verdict(&gegenbauer_gf_check(&a, &x, SERIES_ORDER));
        }
        for x in [int(1), rat(3, 2), int(2), rat(-5, 3), rat(5, 4)] {
            t.verdict(&mgf_product_check(&x, &a, SERIES_ORDER));
        }
    }
    t.result()
}

fn criterion_10() -> (bool, String) {
    let cfg = float_cfg(FLOAT_PRECISION);
    let a = [int(100), int(10_000), int(1_000_000)];
    let mut t = Tally::default();
    let mut exponents = Vec::new();
    t.check(binomid_core::identities::GH_MAX_EXPONENT == GH_MAX_EXPONENT, || "exponent bound drifted".into());
    for n in [2, 3, 4] {
        for x in [rat(1, 2), int(1), int(2)] {
            let v = check_gh_limit(n, &x, &a, &cfg).unwrap();
            let errs = gh_limit_errors(n, &x, &a, &cfg).unwrap();
            let decreasing = errs.windows(2).all(|w| w[1] < w[0]);
            t.check(decreasing, || format!("n={n} x={x}: error not strictly decreasing"));
            match decay_exponent(&a, &errs) {
                Some(e) => {
                    t.check(e <= GH_MAX_EXPONENT, || format!("n={n} x={x} exponent {e}"));
                    exponents.push(e);
                }
                None => t.check(false, || format!("n={n} x={x}: exponent undefined")),
            }
            t.verdict(&v);
        }
    }
    let worst = exponents.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let (ok, detail) = t.result();
    (ok, format!("{detail}, largest exponent {worst:.4}"))
}

fn criterion_11() -> (bool, String) {
    let start = Instant::now();
    let mut t = Tally::default();
    t.check(SE_THRESHOLD == MC_STANDARD_ERRORS, || "standard-error band drifted".into());
    let verdicts = mc_suite(MC_SEED, MC_SAMPLES).unwrap();
    for v in &verdicts {
        t.verdict(v);
    }
    let has = |family: &str, key: &str, value: &str, rhs: &str| {
        verdicts.iter().any(|v| v.family == family && v.params.get(key) == Some(value) && v.rhs == rhs)
    };
    t.check(has("mc-symmetric-beta-moment", "k", "2", "1/2"), || "E Z^2 = 1/2 missing".into());
    t.check(has("mc-symmetric-beta-moment", "k", "4", "3/8"), || "E Z^4 = 3/8 missing".into());
    t.check(has("mc-dissection", "n", "1", "1"), || "E(X1-X2)^2 = 1 missing".into());
    t.check(has("mc-dissection", "n", "2", "9"), || "E(X1-X2)^4 = 9 missing".into());
    t.check(verdicts.iter().any(|v| v.family == "mc-gamma-additivity"), || "additivity missing".into());
    t.check(verdicts.iter().any(|v| v.family == "mc-independence"), || "independence probe missing".into());
    let elapsed = start.elapsed();
    t.check(elapsed <= CRITERION_11_BUDGET, || format!("runtime {elapsed:?} over {CRITERION_11_BUDGET:?}"));
    let (ok, detail) = t.result();
    (ok, format!("{detail}, {:.1}s", elapsed.as_secs_f64()))
}

fn statuses(cfg: &FloatConfig) -> Vec<Status> {
    legendre_float_grid(cfg)
        .into_iter()
        .chain(gegenbauer_float_grid(cfg))
        .filter(|v| v.engine == Engine::Bigfloat)
        .map(|v| v.status)
        .collect()
}

fn criterion_12() -> (bool, String) {
    let base = statuses(&float_cfg(FLOAT_PRECISION));
    let doubled = statuses(&float_cfg(DOUBLED_PRECISION));
    let changed = base.iter().zip(&doubled).filter(|(a, b)| a != b).count();
    let ok = base.len() == doubled.len() && changed == 0;
    (ok, format!("{} big-float verdicts, {changed} status changes", base.len()))
}

type Criterion = fn() -> (bool, String);

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 12] = [
        ("exact convolution suite", criterion_1),
        ("Brychkov entry", criterion_2),
        ("Legendre filter", criterion_3),
        ("Chu-Vandermonde", criterion_4),
        ("Gegenbauer filter", criterion_5),
        ("Hermite multinomial", criterion_6),
        ("Gegenbauer convolution", criterion_7),
        ("moment representations", criterion_8),
        ("series oracle", criterion_9),
        ("Gegenbauer-Hermite limit", criterion_10),
        ("Monte Carlo", criterion_11),
        ("precision robustness", criterion_12),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = run();
        if !ok {
            failures += 1;
        }
        println!(
            "criterion {:>2} {:<26} {} ({detail}; {:.2}s)",
            i + 1,
            name,
            if ok { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
