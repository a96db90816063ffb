use proptest::prelude::*;
use rlab_cli::parse_poly_literal;
use rlab_core::polycore::{DynPoly, Poly, QuadScalar, Rational};

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..12).prop_map(|(a, b)| Rational::new(a.into(), b.into()))
}

fn quad_poly() -> impl Strategy<Value = Poly<QuadScalar>> {
    prop::collection::vec(
        (rational(), prop_oneof![Just(0i64), -3i64..3]).prop_map(|(a, b)| QuadScalar::new(a, Rational::from_integer(b.into()) / Rational::from_integer(2.into()))),
        0..9,
    )
    .prop_map(Poly::new)
}

proptest! {
    #[test]
    fn rational_polys_survive_print_and_parse(cs in prop::collection::vec(rational(), 0..12)) {
        let p = Poly::new(cs);
        let text = p.to_string();
        let back = parse_poly_literal(&text).unwrap();
        prop_assert_eq!(back, DynPoly::Rational(p), "{}", text);
    }

    #[test]
    fn quadratic_polys_survive_print_and_parse(p in quad_poly()) {
        let text = p.to_string();
        let back = parse_poly_literal(&text).unwrap();
        prop_assert_eq!(back.promote(), p, "{}", text);
    }

    #[test]
    fn parser_never_panics(s in "[0-9x^*/+ s2-]{0,24}") {
        let _ = parse_poly_literal(&s);
    }
}
