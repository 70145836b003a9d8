use ffmoments_asymptotics::constants::f_factor;
use ffmoments_asymptotics::funceq::functional_eq_suite;
use ffmoments_asymptotics::{Euler, Jet, Real};
use proptest::prelude::*;

fn jet(c: &[f64]) -> Jet {
    Jet::new(c.iter().map(|&v| Real::from_f64(v)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exp_inverts_ln(c0 in 0.1f64..10.0, c1 in -3.0f64..3.0, c2 in -3.0f64..3.0, c3 in -3.0f64..3.0) {
        let j = jet(&[c0, c1, c2, c3]);
        let back = j.ln().unwrap().exp();
        prop_assert!((&back - &j).norm().to_f64() < 1e-60);
    }

    #[test]
    fn division_undoes_multiplication(a in prop::collection::vec(-5.0f64..5.0, 4), b0 in 0.5f64..5.0, b in prop::collection::vec(-5.0f64..5.0, 3)) {
        let x = jet(&a);
        let mut bc = vec![b0];
        bc.extend(b);
        let y = jet(&bc);
        let back = (&x * &y).div(&y).unwrap();
        prop_assert!((&back - &x).norm().to_f64() < 1e-60);
    }

    #[test]
    fn integer_powers_compose(c0 in 0.5f64..2.0, c1 in -1.0f64..1.0, m in -4i64..5, n in -4i64..5) {
        let j = jet(&[c0, c1, 0.25]);
        let lhs = &j.powi(m).unwrap() * &j.powi(n).unwrap();
        let rhs = j.powi(m + n).unwrap();
        prop_assert!((&lhs - &rhs).norm().to_f64() < 1e-60 * (1.0 + rhs.norm().to_f64()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn reflection_at_random_points(z in 0.3f64..0.9) {
        let e = Euler::new(5).unwrap();
        let rep = functional_eq_suite(&e, &[z], 1e-9).unwrap();
        prop_assert!(rep.passed(), "{}", rep.detail);
    }

    #[test]
    fn local_factor_is_reflection_symmetric(z in 0.2f64..5.0, d in 1usize..8) {
        let q = Real::from_i64(13);
        let p = ffmoments_asymptotics::euler::Prime { d, norm: q.powi(d as i32), count: Real::one(), log_norm: q.ln() };
        let zr = Real::from_f64(z);
        let a = f_factor(&p, &Jet::constant(zr.clone(), 0)).unwrap();
        let b = f_factor(&p, &Jet::constant(zr.recip(), 0)).unwrap();
        prop_assert!(Real::rel_diff(a.value(), b.value()) < 1e-60);
    }
}
