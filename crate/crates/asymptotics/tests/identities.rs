use ffmoments_asymptotics::constants::{b_factor, f_factor};
use ffmoments_asymptotics::euler::Prime;
use ffmoments_asymptotics::funceq::{functional_eq_suite, DEFAULT_POINTS};
use ffmoments_asymptotics::genid::{genid_suite, verify_generating_identity};
use ffmoments_asymptotics::{Euler, Jet, Real};
use ffmoments_core::enumerate::count_irreducibles;
use ffmoments_core::factor::IrreducibleCache;
use ffmoments_core::poly::FqPoly;
use ffmoments_core::FieldParams;

#[test]
fn reflection_identities_hold() {
    for q in [5, 13] {
        let e = Euler::new(q).unwrap();
        let rep = functional_eq_suite(&e, &DEFAULT_POINTS, 1e-9).unwrap();
        assert!(rep.passed(), "q = {q}: {}", rep.detail);
        assert!(rep.max_deviation < 1e-10, "q = {q}: {:e}", rep.max_deviation);
    }
}

#[test]
fn reflection_rejects_bad_points() {
    let e = Euler::new(5).unwrap();
    assert!(functional_eq_suite(&e, &[1.0], 1e-9).is_err());
    assert!(functional_eq_suite(&e, &[0.1], 1e-9).is_err());
}

#[test]
fn generating_identities() {
    let field = FieldParams::new(5).unwrap();
    let x = FqPoly::parse(field, "x").unwrap();
    assert!(verify_generating_identity(&x, 2, 4, 0.5).unwrap().max_deviation < 1e-6);
    assert!(verify_generating_identity(&x, 3, 3, 0.5).unwrap().max_deviation < 1e-6);
    let one = verify_generating_identity(&FqPoly::one(field), 3, 4, 0.8).unwrap();
    assert_eq!((one.lhs[0], one.rhs[0]), (1.0, 1.0));
    assert!(verify_generating_identity(&x, 4, 2, 0.5).is_err());
    assert!(verify_generating_identity(&x, 2, 2, 0.01).is_err());

    let rep = genid_suite(field, 3, 4, 0.5, 1e-6).unwrap();
    assert!(rep.passed(), "{}", rep.detail);
    assert_eq!(rep.checked, 2 * (1 + 5 + 25 + 125));
}

/// Literal products over the enumerated irreducibles of degree ≤ 6 against
/// the degree-aggregated ones.
#[test]
fn degree_aggregation_matches_literal_product() {
    let q = 5u32;
    let field = FieldParams::new(q).unwrap();
    let cache = IrreducibleCache::new(field, 6);
    let qr = Real::from_i64(q as i64);
    let u = Jet::constant(qr.recip(), 0);
    let one = Jet::constant(Real::one(), 0);
    let prime = |d: usize, count: Real| Prime { d, norm: qr.powi(d as i32), count, log_norm: qr.ln() * Real::from_i64(d as i64) };

    let (mut lit_b, mut lit_f) = (Real::one(), Real::one());
    for p in cache.iter() {
        let pr = prime(p.deg(), Real::one());
        lit_b *= b_factor(&pr, &u).unwrap().value().clone();
        lit_f *= f_factor(&pr, &one).unwrap().value().clone();
    }
    let (mut agg_b, mut agg_f) = (Real::zero(), Real::zero());
    for d in 1..=6 {
        let pr = prime(d, Real::one());
        let n = Real::from_biguint(&count_irreducibles(q, d as i64).unwrap());
        agg_b += &n * b_factor(&pr, &u).unwrap().value().ln();
        agg_f += &n * f_factor(&pr, &one).unwrap().value().ln();
    }
    assert!(Real::rel_diff(&lit_b, &agg_b.exp()) < 1e-13);
    assert!(Real::rel_diff(&lit_f, &agg_f.exp()) < 1e-13);

    // log factors are −3/|P|² and −5/|P|² to leading order, so the tails
    // beyond degree 6 are about Σ_{d>6} c/(d q^d): 7e-6 and 1.1e-5
    let e = Euler::new(q).unwrap();
    let full_b = e.product_real("B(1/q)", |p| Ok(b_factor(p, &u)?.value().clone())).unwrap().value;
    let full_f = e.product_real("F(1)", |p| Ok(f_factor(p, &one)?.value().clone())).unwrap().value;
    assert!(Real::rel_diff(&lit_b, &full_b) < 1e-5);
    assert!(Real::rel_diff(&lit_f, &full_f) < 1.5e-5);
}
