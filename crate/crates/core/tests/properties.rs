use grasspoly_core::configuration::{cross_ratio, Configuration};
use grasspoly_core::exact::determinant;
use grasspoly_core::grass::build_in;
use grasspoly_core::tensor::{Coeff, LinComb, MultSymbol, MultTensor};
use grasspoly_core::ExactScalar;
use proptest::prelude::*;

fn small_config() -> impl Strategy<Value = Vec<[i64; 2]>> {
    prop::collection::vec([-9i64..10, -9i64..10], 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transposition_negates_the_element(n in 2usize..=3, a in 1u8..=6, b in 1u8..=6) {
        prop_assume!(a != b && a <= 2 * n as u8 && b <= 2 * n as u8);
        let e = build_in(n).unwrap();
        let swapped = e.tensor().relabel(|l| if l == a { b } else if l == b { a } else { l });
        prop_assert_eq!(swapped, e.tensor().scaled(Coeff::from_integer(-1)));
    }

    #[test]
    fn tensor_json_round_trips(terms in prop::collection::vec((prop::collection::vec(prop::sample::subsequence(vec![1u8, 2, 3, 4, 5], 2), 2), -5i64..6, 1i64..4), 0..12)) {
        let mut lc = LinComb::new();
        for (slots, p, q) in terms {
            let term = slots.iter().map(|l| MultSymbol::bracket(l).unwrap()).collect();
            lc.add_term(term, Coeff::new(p, q));
        }
        let t = MultTensor::from_terms(2, lc).unwrap();
        prop_assert_eq!(MultTensor::from_json(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn cross_ratio_is_projectively_invariant(v in small_config(), g in [-4i64..5, -4i64..5, -4i64..5, -4i64..5], s in 1i64..5) {
        let rows: Vec<&[i64]> = v.iter().map(|r| &r[..]).collect();
        let config = Configuration::from_integers(2, &rows);
        prop_assume!(config.is_ok());
        let config = config.unwrap();
        let gm: Vec<Vec<ExactScalar>> = vec![vec![g[0].into(), g[1].into()], vec![g[2].into(), g[3].into()]];
        prop_assume!(!num_traits::Zero::is_zero(&determinant(&gm)));
        let moved = config.transform(&gm).unwrap().scale(2, &ExactScalar::from_integer(s)).unwrap();
        let cr = |c: &Configuration| {
            let p: Vec<&[ExactScalar]> = (1..=4).map(|i| c.vector(i).unwrap()).collect();
            cross_ratio([p[0], p[1], p[2], p[3]])
        };
        match (cr(&config), cr(&moved)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
        }
    }
}
