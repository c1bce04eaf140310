use proptest::prelude::*;

use binomid_core::exact::{
    big, composition_sum_rational, factorial, int, pochhammer, pochhammer_over_factorial, rat, BigRational,
    Compositions,
};
use binomid_core::identities::{check_chu_vandermonde, check_legendre_filter, EngineChoice, FloatConfig};
use binomid_core::orthopoly::{gegenbauer, legendre};
use binomid_core::quadext::QuadExt;
use binomid_core::series::TruncatedSeries;

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=9).prop_map(|(p, q)| rat(p, q))
}

fn positive_rational() -> impl Strategy<Value = BigRational> {
    (1i64..=20, 1i64..=6).prop_map(|(p, q)| rat(p, q))
}

fn quad(d: i64) -> impl Strategy<Value = QuadExt> {
    (small_rational(), small_rational()).prop_map(move |(a, b)| QuadExt::new(a, b, int(d)))
}

fn quad_triple() -> impl Strategy<Value = (QuadExt, QuadExt, QuadExt)> {
    prop_oneof![Just(2i64), Just(3), Just(5)].prop_flat_map(|d| (quad(d), quad(d), quad(d)))
}

fn series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    proptest::collection::vec(small_rational(), order).prop_map(TruncatedSeries::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pochhammer_splits(a in small_rational(), m in 0u64..10, n in 0u64..10) {
        // (a)_{m+n} = (a)_m (a+m)_n
        let lhs = pochhammer(&a, m + n);
        let rhs = pochhammer(&a, m) * pochhammer(&(&a + int(m as i64)), n);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn quad_field_axioms((x, y, z) in quad_triple()) {
        let xy = x.mul(&y).unwrap();
        prop_assert_eq!(&xy, &y.mul(&x).unwrap());
        prop_assert_eq!(xy.mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        let lhs = x.mul(&y.add(&z).unwrap()).unwrap();
        let rhs = xy.add(&x.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(x.add(&x.neg()).unwrap(), QuadExt::zero());
        if !x.is_zero() {
            prop_assert_eq!(x.mul(&x.inverse().unwrap()).unwrap(), QuadExt::one());
        }
    }

    #[test]
    fn norm_is_multiplicative((x, y, _) in quad_triple()) {
        prop_assert_eq!(x.mul(&y).unwrap().norm(), x.norm() * y.norm());
    }

    #[test]
    fn conjugation_is_a_ring_map((x, y, _) in quad_triple()) {
        prop_assert_eq!(x.mul(&y).unwrap().conjugate(), x.conjugate().mul(&y.conjugate()).unwrap());
        prop_assert_eq!(x.add(&y).unwrap().conjugate(), x.conjugate().add(&y.conjugate()).unwrap());
    }

    #[test]
    fn series_ring_laws(f in series(12), g in series(12), h in series(12)) {
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
    }

    #[test]
    fn series_pow_is_repeated_product(f in series(10), m in 0u32..=6) {
        let folded = (0..m).fold(TruncatedSeries::one(10), |acc, _| acc.mul(&f));
        prop_assert_eq!(f.pow(m), folded);
    }

    #[test]
    fn truncation_commutes_with_product(f in series(12), g in series(12), cut in 0usize..12) {
        prop_assert_eq!(f.mul(&g).truncate(cut), f.truncate(cut).mul(&g.truncate(cut)));
    }

    #[test]
    fn chu_vandermonde_holds(a1 in positive_rational(), a2 in positive_rational(), n in 0u64..25) {
        prop_assert!(check_chu_vandermonde(&a1, &a2, n).unwrap().passed());
    }

    #[test]
    fn composition_sum_matches_enumeration(
        a in proptest::collection::vec(positive_rational(), 1..=4),
        n in 0u64..7,
    ) {
        let rows: Vec<Vec<BigRational>> =
            a.iter().map(|ai| pochhammer_over_factorial(ai, n as usize + 1)).collect();
        let brute: BigRational = Compositions::new(n, a.len())
            .map(|c| c.parts().iter().zip(&rows).map(|(&k, r)| r[k as usize].clone()).product::<BigRational>())
            .sum();
        prop_assert_eq!(composition_sum_rational(&rows, n as usize).unwrap(), brute);
    }

    #[test]
    fn legendre_is_half_gegenbauer(n in 0usize..16, x in small_rational()) {
        prop_assert_eq!(
            legendre(n).eval_rational(&x),
            gegenbauer(n, &rat(1, 2)).unwrap().eval_rational(&x)
        );
    }

    #[test]
    fn exact_filter_engines_agree_with_floats(n in 0u64..8, p in prop_oneof![Just(2u64), Just(3), Just(4), Just(6)]) {
        let cfg = FloatConfig::default();
        prop_assert!(check_legendre_filter(n, p, EngineChoice::Quad, &cfg).unwrap().passed());
        prop_assert!(check_legendre_filter(n, p, EngineChoice::Bigfloat, &cfg).unwrap().passed());
    }
}

#[test]
fn pochhammer_of_one_is_factorial() {
    for n in 0..20 {
        assert_eq!(pochhammer(&int(1), n), big(&factorial(n)));
    }
}
