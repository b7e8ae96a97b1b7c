use hurwitz_core::chambers::{classify, on_resonance};
use hurwitz_core::*;
use proptest::prelude::*;

fn profile(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(prop_oneof![-4i64..=-1, 1i64..=4], n - 1).prop_filter_map("balanced", |mut v| {
        let s: i64 = v.iter().sum();
        (s != 0 && s.abs() <= 4).then(|| {
            v.push(-s);
            v
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn symmetric_in_ends(x in profile(4), k in 0usize..4) {
        let mut y = x.clone();
        y.rotate_left(k);
        prop_assert_eq!(hurwitz(0, &x).unwrap(), hurwitz(0, &y).unwrap());
    }

    #[test]
    fn invariant_under_negation(x in profile(3)) {
        let y: Vec<i64> = x.iter().map(|v| -v).collect();
        prop_assert_eq!(hurwitz(1, &x).unwrap(), hurwitz(1, &y).unwrap());
    }

    #[test]
    fn engine_matches_oracle(x in profile(3)) {
        let d: i64 = x.iter().filter(|&&v| v > 0).sum();
        prop_assume!(d <= 5);
        prop_assert_eq!(hurwitz_r(3, &x).unwrap(), oracle_connected(3, &x).unwrap());
    }

    #[test]
    fn classify_agrees_with_resonance(x in prop::collection::vec(-5i64..=5, 4)) {
        let mut x = x;
        let s: i64 = x.iter().sum();
        x.push(-s);
        prop_assert_eq!(classify(&x).is_err(), on_resonance(&x));
        if let Ok(c) = classify(&x) {
            let y: Vec<i64> = x.iter().map(|v| -v).collect();
            prop_assert_eq!(classify(&y).unwrap(), c.negated());
        }
    }
}
