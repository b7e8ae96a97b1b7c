use hurwitz_core::rational::int;
use hurwitz_core::wallcross::*;
use hurwitz_core::EndSubset;

#[test]
fn calibration_instance() {
    let i = EndSubset::from_labels(&[1]);
    assert_eq!(wc_lhs(1, 2, i, 0).unwrap().eval(&[-3, 3]), int(-4));
    assert_eq!(light_formula_sign().unwrap(), -1);
}

#[test]
fn genus_zero_walls() {
    for n in 3..=4 {
        for m in 1u32..(1 << n) - 1 {
            let rep = verify_wall(0, n, EndSubset(m), 0, 5).unwrap();
            assert!(rep.passed, "{rep:?}");
        }
    }
}

#[test]
fn genus_two_two_ends() {
    let rep = verify_wall(2, 2, EndSubset::from_labels(&[1]), 1, 5).unwrap();
    assert!(rep.passed);
    assert!(rep.cut_route_polynomial_matches);
}

#[test]
fn light_formula_needs_the_c1_side() {
    assert!(wc_rhs_light(2, &[3, -3], EndSubset::from_labels(&[1])).is_err());
}
