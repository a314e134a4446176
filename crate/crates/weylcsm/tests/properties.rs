//! Property tests for the exact-arithmetic layer: ring laws, operator
//! identities, and serialization round trips on generated inputs.

use std::sync::Arc;

use num::{BigInt, BigRational};
use proptest::prelude::*;

use weylcsm::cartan::CartanDatum;
use weylcsm::jsonio::{ratfunc_from_value, ratfunc_to_value};
use weylcsm::symfunc::{divided_difference, phi, reflect, tvee, Poly, RatFunc};

fn a2() -> Arc<CartanDatum> {
    Arc::new(CartanDatum::of_type("A2").unwrap())
}

fn arb_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(
        (
            prop::collection::vec(0u16..3, 2),
            -6i64..=6,
        ),
        0..5,
    )
    .prop_map(|terms| {
        Poly::from_terms(
            2,
            terms
                .into_iter()
                .map(|(exp, c)| (exp, BigRational::from_integer(BigInt::from(c)))),
        )
    })
}

fn arb_ratfunc() -> impl Strategy<Value = RatFunc> {
    (arb_poly(), 0usize..4, 0u8..3).prop_map(|(num, den_choice, mult)| {
        let mut f = RatFunc::from_poly(num);
        let factor: (i64, Vec<i64>) = match den_choice {
            0 => (1, vec![1, 0]),
            1 => (1, vec![0, 1]),
            2 => (1, vec![1, 1]),
            _ => (0, vec![1, 0]),
        };
        for _ in 0..mult {
            f = f.div_linear(factor.0, factor.1.clone());
        }
        f
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_division_inverts_multiplication(a in arb_poly(), b in arb_poly()) {
        prop_assume!(!b.is_zero());
        let product = &a * &b;
        let quotient = product.div_exact(&b).expect("product divides");
        prop_assert_eq!(quotient, a);
    }

    #[test]
    fn ratfunc_field_laws(f in arb_ratfunc(), g in arb_ratfunc(), h in arb_ratfunc()) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f - &f, RatFunc::zero(2));
    }

    #[test]
    fn operator_identities(f in arb_ratfunc(), i in 1usize..=2) {
        let datum = a2();
        prop_assert_eq!(reflect(&datum, i, &reflect(&datum, i, &f)), f.clone());
        prop_assert!(divided_difference(&datum, i, &divided_difference(&datum, i, &f)).is_zero());
        prop_assert_eq!(tvee(&datum, i, &tvee(&datum, i, &f)), f.clone());
        prop_assert_eq!(phi(&phi(&f)), f);
    }

    #[test]
    fn json_roundtrip(f in arb_ratfunc()) {
        let value = ratfunc_to_value(&f);
        let back = ratfunc_from_value(&value, 2).expect("well-formed");
        prop_assert_eq!(&back, &f);
        // and serialization is stable
        prop_assert_eq!(ratfunc_to_value(&back).to_string(), value.to_string());
    }
}
