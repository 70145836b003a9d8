#![allow(clippy::excessive_precision)] // oracle digits kept as printed

use ffmoments_asymptotics::constants::{b_constants, Constants};
use ffmoments_asymptotics::{Euler, Real};

// Independent values: mpmath at 50 digits, literal prime sums to degree 70
// (q = 5) or 45 (q = 13, 17), 𝓑‴ by mpmath numerical differentiation.
struct Oracle {
    q: u32,
    b0: f64,
    b1: f64,
    b4: f64,
    b8: f64,
    b_third: f64,
}

const ORACLES: [Oracle; 3] = [
    Oracle { q: 5, b0: 0.632771951331412770848847, b1: 0.4328286920861613387795562, b4: 0.4655118641280227784691182, b8: 6.333786302857781798748658, b_third: -15.15529774460466146670868 },
    Oracle { q: 13, b0: 0.815544773559554394584835, b1: 0.1950802073256300205074324, b4: 0.159132315057722924771309, b8: 1.53938115113797178731255, b_third: -43.39950586608206933051733 },
    Oracle { q: 17, b0: 0.8520724778153182340674919, b1: 0.1542614528665462074300256, b4: 0.1277323116513449432530799, b8: 1.117694936943307031145612, b_third: -52.24002639138415817653383 },
];

fn close(a: &Real, b: f64, tol: f64) -> bool {
    ((a.to_f64() - b) / b).abs() < tol
}

#[test]
fn matches_independent_oracle() {
    for o in &ORACLES {
        let c = b_constants(o.q).unwrap();
        assert!(close(&c.b_value, o.b0, 1e-12), "q={} B(1/q) = {}", o.q, c.b_value);
        assert!(close(&c.b[0], o.b1, 1e-12), "q={} b1", o.q);
        assert!(close(&c.b[3], o.b4, 1e-11), "q={} b4", o.q);
        assert!(close(&c.b[7], o.b8, 1e-11), "q={} b8", o.q);
        assert!(close(&c.b_derivs[2].jet, o.b_third, 1e-11), "q={} B'''", o.q);
    }
}

fn check_dual_routes(c: &Constants) {
    for (i, d) in c.b_derivs.iter().enumerate() {
        assert!(d.rel_diff() < 1e-9, "q={} B^({}) {:?}", c.q, i + 1, d);
    }
    assert!(c.f_derivs[0].diff_against(&c.f_value) < 1e-10, "F'(1) = {:?}", c.f_derivs[0]);
    for d in &c.f_derivs[1..] {
        assert!(d.rel_diff() < 1e-9, "{d:?}");
    }
    for d in &c.alpha {
        assert!(d.rel_diff() < 1e-9, "alpha {d:?}");
    }
    for (name, d) in c.a_partials.all() {
        assert!(d.rel_diff() < 1e-9, "q={} {name} {d:?}", c.q);
    }
    for s in &c.sanity {
        assert!(s.rel_diff() < 1e-10, "q={} {}: {:?} vs {:?}", c.q, s.name, s.computed, s.expected);
    }
}

#[test]
fn dual_routes_agree() {
    for q in [5, 13, 17] {
        check_dual_routes(&b_constants(q).unwrap());
    }
}

#[test]
fn truncation_override() {
    // a deliberately long truncation still certifies and agrees
    let long = Constants::compute(&Euler::with_max_degree(13, 30).unwrap()).unwrap();
    let auto = b_constants(13).unwrap();
    assert!(Real::rel_diff(&long.b_value, &auto.b_value) < 1e-12);
    check_dual_routes(&long);
    assert!(Constants::compute(&Euler::with_max_degree(5, 6).unwrap()).is_err());
}
