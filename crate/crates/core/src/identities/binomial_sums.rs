use num_bigint::BigInt;
use num_traits::Zero;

use super::{require_parts, IdentityFamily};
use crate::error::Result;
use crate::exact::{
    big, binomial, central_binomial, composition_sum, factorial, pochhammer, pow2, rat, BigRational,
};
use crate::verdict::{Engine, Params, Verdict};

fn exact(family: IdentityFamily, params: Params, lhs: &BigRational, rhs: &BigRational) -> Verdict {
    Verdict::exact(family.name(), params, Engine::Exact, lhs, rhs)
}

/// `sum_k C(n,k) = 2^n`.
pub fn check_power_sum(n: u64) -> Result<Verdict> {
    Ok(Verdict::timed(|| {
        let lhs: BigInt = (0..=n as i64).map(|k| binomial(n, k)).sum();
        exact(IdentityFamily::PowerSum, Params::new().with("n", n), &big(&lhs), &big(&pow2(n)))
    }))
}

/// `sum_k 4^{-k} C(2k,k) C(2m-k,m) = sum_k 4^{-k} C(2k,k) C(2m+1,2k)`.
pub fn check_pretty(m: u64) -> Result<Verdict> {
    Ok(Verdict::timed(|| {
        let mut lhs = BigRational::zero();
        let mut rhs = BigRational::zero();
        for k in 0..=m {
            let w = BigRational::new(central_binomial(k), pow2(2 * k));
            lhs += &w * big(&binomial(2 * m - k, m as i64));
            rhs += &w * big(&binomial(2 * m + 1, 2 * k as i64));
        }
        exact(IdentityFamily::Pretty, Params::new().with("m", m), &lhs, &rhs)
    }))
}

pub fn pair_convolution_lhs(n: u64) -> BigInt {
    let cb: Vec<BigInt> = (0..=n).map(central_binomial).collect();
    (0..=n as usize).map(|i| &cb[i] * &cb[n as usize - i]).sum()
}

/// `sum_i C(2i,i) C(2n-2i,n-i) = 4^n`.
pub fn check_pair_convolution(n: u64) -> Result<Verdict> {
    Ok(Verdict::timed(|| {
        exact(
            IdentityFamily::PairConvolution,
            Params::new().with("n", n),
            &big(&pair_convolution_lhs(n)),
            &big(&pow2(2 * n)),
        )
    }))
}

/// `sum over k_1+..+k_m = n of prod C(2k_i, k_i)`, by enumerating every
/// composition.
pub fn multi_convolution_lhs(m: usize, n: u64) -> Result<BigInt> {
    require_parts("m", m)?;
    let row: Vec<BigInt> = (0..=n).map(central_binomial).collect();
    composition_sum(&vec![row; m], n as usize)
}

/// m-fold central-binomial convolution against `4^n (m/2)_n / n!`.
pub fn check_multi_convolution(m: usize, n: u64) -> Result<Verdict> {
    require_parts("m", m)?;
    let params = Params::new().with("m", m).with("n", n);
    let lhs = multi_convolution_lhs(m, n)?;
    Ok(Verdict::timed(|| {
        let rhs = big(&pow2(2 * n)) * pochhammer(&rat(m as i64, 2), n) / big(&factorial(n));
        exact(IdentityFamily::MultiConvolution, params, &big(&lhs), &rhs)
    }))
}

pub fn brychkov_lhs(n: u64) -> BigInt {
    let row: Vec<BigInt> = (0..=n).map(|k| central_binomial(2 * k)).collect();
    (0..=n as usize).map(|k| &row[k] * &row[n as usize - k]).sum()
}

/// `sum_k C(4k,2k) C(4n-4k,2n-2k) = 2^{4n-1} + 2^{2n-1} C(2n,n)`.
pub fn check_brychkov(n: u64) -> Result<Verdict> {
    Ok(Verdict::timed(|| {
        let lhs = big(&brychkov_lhs(n));
        let two = BigInt::from(2);
        let rhs = BigRational::new(pow2(4 * n) + pow2(2 * n) * central_binomial(n), two);
        exact(IdentityFamily::Brychkov, Params::new().with("n", n), &lhs, &rhs)
    }))
}

#[cfg(test)]
mod tests {
    use num_traits::One;

    use super::*;
    use crate::exact::{int, Compositions};
    use crate::verdict::Status;

    #[test]
    fn power_sum_examples() {
        let v = check_power_sum(0).unwrap();
        assert!(v.passed());
        assert_eq!(v.lhs, "1");
        assert_eq!(check_power_sum(10).unwrap().lhs, "1024");
        let v = check_power_sum(64).unwrap();
        assert!(v.passed());
        assert_eq!(v.rhs, "18446744073709551616");
    }

    #[test]
    fn pretty_examples() {
        let v = check_pretty(0).unwrap();
        assert_eq!((v.lhs.as_str(), v.rhs.as_str()), ("1", "1"));
        let v = check_pretty(1).unwrap();
        assert_eq!((v.lhs.as_str(), v.rhs.as_str()), ("5/2", "5/2"));
        for m in 2..=40 {
            assert!(check_pretty(m).unwrap().passed(), "m={m}");
        }
    }

    #[test]
    fn pair_convolution_examples() {
        assert_eq!(check_pair_convolution(0).unwrap().lhs, "1");
        assert_eq!(check_pair_convolution(1).unwrap().lhs, "4");
        let v = check_pair_convolution(100).unwrap();
        assert!(v.passed());
        assert_eq!(v.rhs, (BigInt::one() << 200usize).to_string());
    }

    #[test]
    fn multi_convolution_examples() {
        for n in 0..10 {
            assert_eq!(multi_convolution_lhs(2, n).unwrap(), pair_convolution_lhs(n));
        }
        let v = check_multi_convolution(3, 1).unwrap();
        assert_eq!((v.lhs.as_str(), v.rhs.as_str()), ("6", "6"));
        // independent oracle: iterate compositions and multiply directly
        let brute: BigInt = Compositions::new(4, 5)
            .map(|c| c.parts().iter().map(|&k| central_binomial(k)).product::<BigInt>())
            .sum();
        assert_eq!(multi_convolution_lhs(5, 4).unwrap(), brute);
        assert!(check_multi_convolution(5, 4).unwrap().passed());
        assert!(check_multi_convolution(9, 2).is_err());
        assert!(check_multi_convolution(0, 2).is_err());
    }

    #[test]
    fn brychkov_examples() {
        let v = check_brychkov(0).unwrap();
        assert_eq!((v.lhs.as_str(), v.rhs.as_str()), ("1", "1"));
        let v = check_brychkov(1).unwrap();
        assert_eq!((v.lhs.as_str(), v.rhs.as_str()), ("12", "12"));
        let v = check_brychkov(2).unwrap();
        assert_eq!(v.lhs, "176");
        assert_eq!(v.status, Status::Pass);
        assert_eq!(big(&brychkov_lhs(2)), int(70 + 36 + 70));
    }
}
