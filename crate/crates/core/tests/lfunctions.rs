use ffmoments_core::lfunc::{l_coeffs_charsum, l_coeffs_pointcount, l_value_half, LPolynomial};
use ffmoments_core::verify::{artin_suite, fe_suite, rh_suite, Sample};
use ffmoments_core::FieldParams;
use num_bigint::BigInt;

fn f5() -> FieldParams {
    FieldParams::new(5).unwrap()
}

#[test]
fn dual_oracles_agree() {
    let rep = artin_suite(
        f5(),
        &[
            Sample::All(3),
            Sample::All(5),
            Sample::Random {
                n: 7,
                count: 40,
                seed: 1,
            },
        ],
    )
    .unwrap();
    assert!(rep.passed(), "{rep:?}");
    assert_eq!(rep.checked, 100 + 2500 + 40);
}

#[test]
fn exact_functional_equation_for_powers() {
    let rep = fe_suite(f5(), &[3], &[1, 2, 3]).unwrap();
    assert!(rep.passed(), "{rep:?}");
    assert_eq!(rep.checked, 300);
}

#[test]
fn roots_on_the_critical_circle() {
    let rep = rh_suite(f5(), &[Sample::All(3)], 1e-8).unwrap();
    assert!(rep.passed(), "{rep:?}");
    let rep = rh_suite(
        FieldParams::new(13).unwrap(),
        &[Sample::Random {
            n: 5,
            count: 30,
            seed: 9,
        }],
        1e-8,
    )
    .unwrap();
    assert!(rep.passed(), "{rep:?}");
}

#[test]
fn central_value_of_symmetric_polynomial() {
    let c = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    let l = LPolynomial::new(13, c(&[1, 4, 13])).unwrap();
    // 1 + 4/√13 + 1
    let v = l_value_half(&l).to_f64();
    assert!((v - (2.0 + 4.0 / 13f64.sqrt())).abs() < 1e-14);
    assert!(LPolynomial::new(13, c(&[2, 0, 13])).is_err());
}

#[test]
fn both_routes_at_q13() {
    let f13 = FieldParams::new(13).unwrap();
    for s in ["x^3+1", "x^5+3x^2+7", "x^5+x+12"] {
        let d = ffmoments_core::FqPoly::parse(f13, s).unwrap();
        let a = l_coeffs_charsum(&d).unwrap();
        assert_eq!(a, l_coeffs_pointcount(&d).unwrap());
        assert!(a.satisfies_symmetry());
    }
}
