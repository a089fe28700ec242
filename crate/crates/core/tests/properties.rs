use aml_core::catalog::{build_monoid, is_compatible};
use aml_core::poly::{rat, LaurentPolynomial, Rational};
use aml_core::text::{parse_monoid, to_source};
use aml_core::{MonoidDescriptor, Quadruple};
use num_traits::Zero;
use proptest::prelude::*;

const ARITY: usize = 3;

fn poly() -> impl Strategy<Value = LaurentPolynomial> {
    prop::collection::vec((-6i64..=6, prop::collection::vec(-2i32..=3, ARITY)), 0..5).prop_map(|terms| {
        terms
            .into_iter()
            .fold(LaurentPolynomial::zero(ARITY), |acc, (c, e)| acc + LaurentPolynomial::term(rat(c), e))
    })
}

fn nonzero_point() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-9i64..=9, 1i64..=5), ARITY).prop_map(|v| {
        v.into_iter()
            .map(|(n, d)| Rational::new((if n == 0 { 1 } else { n }).into(), d.into()))
            .collect()
    })
}

fn quadruple(hi: u32) -> impl Strategy<Value = Quadruple> {
    (0..=hi, 0..=hi, 0..=hi, 0..=hi).prop_map(|(b, bp, c, cp)| Quadruple::new(b, bp, c, cp))
}

fn descriptor() -> impl Strategy<Value = MonoidDescriptor> {
    prop_oneof![
        Just(MonoidDescriptor::A1Add),
        Just(MonoidDescriptor::A1Mul),
        Just(MonoidDescriptor::A2Add),
        Just(MonoidDescriptor::A2Torus),
        (0u32..=4, 0u32..=4).prop_map(|(a, b)| MonoidDescriptor::A2Semidirect { a, b }),
        Just(MonoidDescriptor::ThreeA),
        Just(MonoidDescriptor::U3),
        Just(MonoidDescriptor::ThreeM),
        quadruple(4).prop_map(MonoidDescriptor::Maa),
        quadruple(4).prop_map(MonoidDescriptor::Mma),
        quadruple(5)
            .prop_filter("compatible", |p| p.as_array().iter().all(|&e| e > 0)
                && matches!(is_compatible(p), Ok(Some(_))))
            .prop_map(MonoidDescriptor::MaaQ),
    ]
}

fn small_point(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-20i64..=20, 1i64..=3), n)
        .prop_map(|v| v.into_iter().map(|(a, b)| Rational::new(a.into(), b.into())).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn addition_is_a_commutative_group(f in poly(), g in poly(), h in poly()) {
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f + &LaurentPolynomial::zero(ARITY), f.clone());
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn multiplication_is_associative_commutative_and_distributive(f in poly(), g in poly(), h in poly()) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f * &LaurentPolynomial::one(ARITY), f.clone());
    }

    #[test]
    fn no_zero_coefficients_survive(f in poly(), g in poly()) {
        for (_, c) in (&(&f * &g) - &g).terms() {
            prop_assert!(!c.is_zero());
        }
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(f in poly(), g in poly(), p in nonzero_point()) {
        let (ef, eg) = (f.evaluate(&p).unwrap(), g.evaluate(&p).unwrap());
        prop_assert_eq!((&f + &g).evaluate(&p).unwrap(), &ef + &eg);
        prop_assert_eq!((&f * &g).evaluate(&p).unwrap(), &ef * &eg);
    }

    #[test]
    fn power_matches_repeated_multiplication(f in poly(), k in 0u32..5) {
        let mut expected = LaurentPolynomial::one(ARITY);
        for _ in 0..k {
            expected = &expected * &f;
        }
        prop_assert_eq!(f.pow(k), expected);
    }

    #[test]
    fn substitution_commutes_with_evaluation(
        f in poly(),
        args in prop::collection::vec(
            (-3i64..=3, prop::collection::vec(-1i32..=2, ARITY)),
            ARITY,
        ),
        p in nonzero_point(),
    ) {
        // monomial arguments keep every Laurent substitution defined
        let args: Vec<LaurentPolynomial> = args
            .into_iter()
            .map(|(c, e)| LaurentPolynomial::term(rat(if c == 0 { 1 } else { c }), e))
            .collect();
        let composed = f.substitute(&args).unwrap();
        let inner: Vec<Rational> = args.iter().map(|a| a.evaluate(&p).unwrap()).collect();
        prop_assert_eq!(composed.evaluate(&p).unwrap(), f.evaluate(&inner).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn catalog_multiplications_compose_associatively(
        d in descriptor(),
        triples in prop::collection::vec((small_point(3), small_point(3), small_point(3)), 20),
    ) {
        let m = build_monoid(&d).unwrap();
        let n = m.dimension();
        for (x, y, z) in triples {
            let (x, y, z) = (&x[..n], &y[..n], &z[..n]);
            let left = m.multiply_points(&m.multiply_points(x, y).unwrap(), z).unwrap();
            let right = m.multiply_points(x, &m.multiply_points(y, z).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            let e = m.unit().unwrap();
            prop_assert_eq!(m.multiply_points(e, x).unwrap(), x.to_vec());
            prop_assert_eq!(m.multiply_points(x, e).unwrap(), x.to_vec());
        }
    }

    #[test]
    fn printed_monoids_parse_back(d in descriptor()) {
        let m = build_monoid(&d).unwrap();
        prop_assert_eq!(parse_monoid(&to_source(&m)).unwrap(), m);
    }

    #[test]
    fn descriptor_syntax_round_trips(d in descriptor()) {
        prop_assert_eq!(d.to_string().parse::<MonoidDescriptor>().unwrap(), d);
    }
}
