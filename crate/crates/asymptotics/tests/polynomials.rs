#![allow(clippy::excessive_precision)] // oracle digits kept as printed

use ffmoments_asymptotics::constants::Constants;
use ffmoments_asymptotics::polys::{p2_residue, p_polynomials, r_conjecture_poly, second_moment_prediction};
use ffmoments_asymptotics::{Euler, Real};

// P(x) at q = 5 from mpmath: closed b-sums to degree 40, 50 digits.
const P_Q5: [f64; 4] = [0.3334213894340123094637, 0.6250863798754674082429, 0.2446079566161405365721, 0.02109239837771375902829];

fn constants(q: u32) -> (Euler, Constants) {
    let e = Euler::new(q).unwrap();
    let c = Constants::compute(&e).unwrap();
    (e, c)
}

#[test]
fn p_matches_conjectured_cubic() {
    for q in [5, 13, 17] {
        let (_, c) = constants(q);
        let polys = p_polynomials(&c);
        let r = r_conjecture_poly(&c);
        let dev = polys.p.max_rel_diff(&r);
        assert!(dev < 1e-8, "q = {q}: {dev:e}");
        assert_eq!(polys.p2.degree(), 1);
        assert_eq!(polys.p.degree(), 3);
        let lead = &c.a00 / Real::from_i64(24);
        assert!(Real::rel_diff(&polys.p.coeff(3), &lead) < 1e-10, "q = {q}: [x^3]P");
    }
}

#[test]
fn p_matches_oracle() {
    let (_, c) = constants(5);
    let p = p_polynomials(&c).p;
    for (i, want) in P_Q5.iter().enumerate() {
        let got = p.coeff(i).to_f64();
        assert!(((got - want) / want).abs() < 1e-9, "[x^{i}] {got} vs {want}");
    }
}

#[test]
fn p2_display_matches_residue() {
    for q in [5, 13, 17] {
        let (e, c) = constants(q);
        let display = p_polynomials(&c).p2;
        let residue = p2_residue(&e).unwrap();
        let dev = display.max_rel_diff(&residue);
        assert!(dev < 1e-9, "q = {q}: {dev:e}");
    }
}

#[test]
fn prediction_scales_with_genus() {
    let (_, c) = constants(5);
    let p = p_polynomials(&c).p;
    for g in 1..=4 {
        let x = Real::from_i64(2 * g as i64 + 1);
        let want = Real::from_i64(5).powi(2 * g as i32 + 1) * Real::ratio(4, 5) * p.eval(&x);
        assert!(Real::rel_diff(&second_moment_prediction(&c, g), &want) < 1e-30);
    }
}
