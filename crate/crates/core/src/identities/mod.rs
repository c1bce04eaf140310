//! One check per identity family. Each check evaluates both sides with the
//! strongest engine available (exact rational, then exact quadratic field,
//! then big floats) and returns a [`Verdict`].

mod binomial_sums;
mod filters;
mod polynomials;
pub mod series_oracle;
mod vandermonde;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;

pub use binomial_sums::{
    brychkov_lhs, check_brychkov, check_multi_convolution, check_pair_convolution, check_power_sum,
    check_pretty, multi_convolution_lhs, pair_convolution_lhs,
};
pub use filters::{
    check_gegenbauer_filter, check_legendre_filter, gegenbauer_filter_lhs, legendre_filter_lhs,
    quad_cosine_available,
};
pub use polynomials::{
    check_gegenbauer_convolution, check_gh_limit, check_hermite_multinomial, decay_exponent,
    gegenbauer_convolution_rhs, gh_limit_errors, hermite_multinomial_rhs, GH_MAX_EXPONENT,
};
pub use vandermonde::{check_chu_vandermonde, check_multi_cv, multi_cv_lhs};

use crate::bigfloat::DEFAULT_PRECISION;
use crate::error::{Error, Result};
use crate::exact::BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityFamily {
    PowerSum,
    Pretty,
    PairConvolution,
    MultiConvolution,
    Brychkov,
    LegendreFilter,
    ChuVandermonde,
    MultiChuVandermonde,
    GegenbauerFilter,
    HermiteMultinomial,
    GegenbauerConvolution,
    GegenbauerHermiteLimit,
}

impl IdentityFamily {
    pub const ALL: [IdentityFamily; 12] = [
        IdentityFamily::PowerSum,
        IdentityFamily::Pretty,
        IdentityFamily::PairConvolution,
        IdentityFamily::MultiConvolution,
        IdentityFamily::Brychkov,
        IdentityFamily::LegendreFilter,
        IdentityFamily::ChuVandermonde,
        IdentityFamily::MultiChuVandermonde,
        IdentityFamily::GegenbauerFilter,
        IdentityFamily::HermiteMultinomial,
        IdentityFamily::GegenbauerConvolution,
        IdentityFamily::GegenbauerHermiteLimit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityFamily::PowerSum => "power-sum",
            IdentityFamily::Pretty => "pretty",
            IdentityFamily::PairConvolution => "pair-convolution",
            IdentityFamily::MultiConvolution => "multi-convolution",
            IdentityFamily::Brychkov => "brychkov",
            IdentityFamily::LegendreFilter => "legendre-filter",
            IdentityFamily::ChuVandermonde => "chu-vandermonde",
            IdentityFamily::MultiChuVandermonde => "multi-chu-vandermonde",
            IdentityFamily::GegenbauerFilter => "gegenbauer-filter",
            IdentityFamily::HermiteMultinomial => "hermite-multinomial",
            IdentityFamily::GegenbauerConvolution => "gegenbauer-convolution",
            IdentityFamily::GegenbauerHermiteLimit => "gegenbauer-hermite-limit",
        }
    }

    /// Where the identity comes from, in words.
    pub fn anchor(self) -> &'static str {
        match self {
            IdentityFamily::PowerSum => "row sum of Pascal's triangle",
            IdentityFamily::Pretty => "two weighted central-binomial sums with equal value",
            IdentityFamily::PairConvolution => "self-convolution of central binomials",
            IdentityFamily::MultiConvolution => "m-fold convolution of central binomials via Gamma(1/2) sums",
            IdentityFamily::Brychkov => "Brychkov handbook entry 4.2.5.74, Simpson dissection",
            IdentityFamily::LegendreFilter => "roots-of-unity filtered convolution with Legendre values",
            IdentityFamily::ChuVandermonde => "Chu-Vandermonde via Gamma(a1)+Gamma(a2)",
            IdentityFamily::MultiChuVandermonde => "multivariable Chu-Vandermonde",
            IdentityFamily::GegenbauerFilter => "roots-of-unity filtered Gegenbauer convolution",
            IdentityFamily::HermiteMultinomial => "Hermite addition formula over m arguments",
            IdentityFamily::GegenbauerConvolution => "Gegenbauer parameter addition",
            IdentityFamily::GegenbauerHermiteLimit => "Gegenbauer to Hermite limit as a grows",
        }
    }

    pub fn schema(self) -> &'static str {
        match self {
            IdentityFamily::PowerSum => "n >= 0",
            IdentityFamily::Pretty => "m >= 0",
            IdentityFamily::PairConvolution => "n >= 0",
            IdentityFamily::MultiConvolution => "m in 1..=8, n >= 0",
            IdentityFamily::Brychkov => "n >= 0",
            IdentityFamily::LegendreFilter => "n >= 0, p >= 1",
            IdentityFamily::ChuVandermonde => "a1, a2 > 0 rational, n >= 0",
            IdentityFamily::MultiChuVandermonde => "a: 1..=8 rationals > 0, n >= 0",
            IdentityFamily::GegenbauerFilter => "a > 0, z > 0 rational, n >= 0, p >= 1",
            IdentityFamily::HermiteMultinomial => "x: 1..=8 rationals (m = len), n >= 0",
            IdentityFamily::GegenbauerConvolution => "a: 1..=8 rationals > 0, x rational, n >= 0",
            IdentityFamily::GegenbauerHermiteLimit => "n >= 0, x rational, a: >= 3 increasing rationals > 0",
        }
    }
}

impl fmt::Display for IdentityFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown family {s:?}")))
    }
}

/// Which engine evaluates the right side of the filter identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EngineChoice {
    /// Exact quadratic field where the angles allow it, big floats otherwise.
    #[default]
    Auto,
    Quad,
    Bigfloat,
}

impl FromStr for EngineChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(EngineChoice::Auto),
            "quad" | "exact" => Ok(EngineChoice::Quad),
            "bigfloat" => Ok(EngineChoice::Bigfloat),
            _ => Err(Error::InvalidParameter(format!("unknown engine {s:?}"))),
        }
    }
}

/// Working precision and acceptance tolerance of the big-float engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloatConfig {
    pub precision: usize,
    pub tolerance: BigRational,
}

impl Default for FloatConfig {
    fn default() -> Self {
        FloatConfig {
            precision: DEFAULT_PRECISION,
            tolerance: BigRational::new(BigInt::from(1), BigInt::from(10).pow(30)),
        }
    }
}

impl FloatConfig {
    pub fn new(precision: usize, tolerance: BigRational) -> Result<Self> {
        if precision < 64 {
            return Err(Error::InvalidParameter(format!("precision {precision} < 64 bits")));
        }
        if !tolerance.is_positive() {
            return Err(Error::InvalidParameter("tolerance must be > 0".into()));
        }
        Ok(FloatConfig { precision, tolerance })
    }
}

/// Parse a decimal such as `1e-30` or `0.25` exactly.
pub fn parse_tolerance(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let err = || Error::Parse(s.to_string());
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| err())?),
        None => (s, 0),
    };
    let (int_part, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits = format!("{int_part}{frac}");
    if digits.is_empty() || digits.trim_start_matches(['-', '+']).is_empty() {
        return Err(err());
    }
    let n: BigInt = digits.parse().map_err(|_| err())?;
    let e = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    Ok(if e >= 0 {
        BigRational::from_integer(n * ten.pow(e as u32))
    } else {
        BigRational::new(n, ten.pow((-e) as u32))
    })
}

fn require_positive(name: &str, values: &[BigRational]) -> Result<()> {
    for v in values {
        if !v.is_positive() {
            return Err(Error::InvalidParameter(format!(
                "{name} must be positive, got {}",
                crate::exact::canonical(v)
            )));
        }
    }
    Ok(())
}

fn require_parts(name: &str, m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidParameter(format!("{name} needs at least one entry")));
    }
    if m > crate::exact::MAX_PARTS {
        return Err(Error::TooManyParts { parts: m, cap: crate::exact::MAX_PARTS });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn family_names_round_trip() {
        for f in IdentityFamily::ALL {
            assert_eq!(f.name().parse::<IdentityFamily>().unwrap(), f);
        }
        assert!("nope".parse::<IdentityFamily>().is_err());
        assert!(IdentityFamily::Brychkov.anchor().contains("entry 4.2.5.74"));
    }

    #[test]
    fn tolerance_parsing() {
        assert_eq!(parse_tolerance("1e-30").unwrap(), FloatConfig::default().tolerance);
        assert_eq!(parse_tolerance("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_tolerance("2.5E2").unwrap(), rat(250, 1));
        assert!(parse_tolerance("abc").is_err());
        assert!(parse_tolerance("").is_err());
        assert!(FloatConfig::new(32, rat(1, 10)).is_err());
        assert!(FloatConfig::new(128, rat(0, 1)).is_err());
    }
}
