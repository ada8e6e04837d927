use proptest::prelude::*;

use super::*;
use crate::certificate::{replay, Check, Verdict};
use crate::error::Error;
use crate::exactpoly::{int_poly, Ring};
use crate::numberfield::{NfElem, NumberField};
use crate::pcforbits::{exact_type, orbit_value, DEFAULT_BUDGET};

fn field(coeffs: &[i64]) -> NumberField {
    NumberField::new(&int_poly(coeffs)).unwrap()
}

/// `(d, field, α)` for the stability parameters.
fn acceptance_fields() -> Vec<(u64, NumberField, NfElem)> {
    let a = field(&[2, 1]);
    let b = field(&[1, 0, 1]);
    let c = field(&[1, 1]);
    let (x, y, z) = (a.from_i64(4), b.from_i64(3), c.from_i64(1));
    vec![(2, a, x), (3, b, y), (2, c, z)]
}

#[test]
fn disc_recursion_matches_oracle() {
    for (d, k, alpha) in acceptance_fields() {
        for x0 in [k.zero(), alpha] {
            let trace = disc_iterate(&k, d, &x0, 4).unwrap();
            assert!(trace.steps.iter().all(|s| s.oracle_checked));
            assert_eq!(k.elem_from_json(&trace.value).unwrap(), disc_recursion(&k, d, &x0, 4).unwrap());
        }
    }
}

#[test]
fn disc_of_cubic_binomial() {
    // Δ(x^3 + a) = -27 a^2 with a = c0 - x0
    for (c0_minus_x0, x0) in [(5i64, 0i64), (-7, 2), (1, -3)] {
        let c0 = c0_minus_x0 + x0;
        let k = field(&[-c0, 1]);
        let v = disc_recursion(&k, 3, &k.from_i64(x0), 1).unwrap();
        assert_eq!(v, k.from_i64(-27 * c0_minus_x0 * c0_minus_x0));
    }
}

#[test]
fn disc_quadratic_small() {
    // c0 = -1, x0 = 0: Δ(x^2 - 1) = 4, Δ(x^4 - 2x^2) = 0 since 0 is a double root
    let k = field(&[1, 1]);
    assert_eq!(disc_recursion(&k, 2, &k.zero(), 1).unwrap(), k.from_i64(4));
    assert!(disc_recursion(&k, 2, &k.zero(), 2).unwrap().is_zero());
}

#[test]
fn relative_norm_of_linear_and_quadratic() {
    let q = field(&[0, 1]);
    let qx = q.poly_ring();
    let h = qx.from_coeffs(vec![q.from_i64(-2), q.zero(), q.one()]);
    // N(β) = -2 for β^2 = 2, N(3 - β) = 7
    assert_eq!(relative_norm(&q, &h, &qx.x()), q.from_i64(-2));
    let p = qx.from_coeffs(vec![q.from_i64(3), q.from_i64(-1)]);
    assert_eq!(relative_norm(&q, &h, &p), q.from_i64(7));
    let lin = qx.from_coeffs(vec![q.from_i64(-5), q.one()]);
    assert_eq!(relative_norm(&q, &lin, &p), q.from_i64(-2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn relative_norm_is_multiplicative(a in -9i64..9, b in -9i64..9, u in -9i64..9, v in -9i64..9) {
        let k = field(&[1, 0, 1]);
        let kx = k.poly_ring();
        let h = kx.from_coeffs(vec![k.from_i64(3), k.generator(), k.zero(), k.one()]);
        let p = kx.from_coeffs(vec![k.from_i64(a), k.from_i64(b)]);
        let q = kx.from_coeffs(vec![k.from_i64(u), k.from_i64(v), k.generator()]);
        let lhs = relative_norm(&k, &h, &kx.mul(&p, &q));
        let rhs = k.mul(&relative_norm(&k, &h, &p), &relative_norm(&k, &h, &q));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn nonsquare_never_flags_a_square(a in -30i64..30, b in -30i64..30) {
        prop_assume!(a != 0 || b != 0);
        let k = field(&[1, 0, 1]);
        let x = k.add(&k.from_i64(a), &k.mul(&k.from_i64(b), &k.generator()));
        let cert = nonsquare_certificate(&k, 2, &k.mul(&x, &x)).unwrap();
        prop_assert_eq!(cert.verdict, Verdict::Inconclusive);
    }
}

#[test]
fn nonsquare_examples() {
    let k = field(&[1, 0, 1]);
    // 1 + i has valuation 1 above 2; 3 is inert with valuation 1
    for x in [k.add(&k.one(), &k.generator()), k.from_i64(3), k.from_i64(6)] {
        let cert = nonsquare_certificate(&k, 2, &x).unwrap();
        assert_eq!(cert.verdict, Verdict::Verified);
        assert!(replay(&cert).unwrap());
    }
    // -1 = i^2 and 2i = (1 + i)^2 are squares
    let two_i = k.mul(&k.from_i64(2), &k.generator());
    for x in [k.from_i64(-1), two_i, k.from_i64(4)] {
        assert_eq!(nonsquare_certificate(&k, 2, &x).unwrap().verdict, Verdict::Inconclusive);
    }
}

#[test]
fn audit_examples() {
    let cases: [(u64, &[i64], usize, u64, &str); 3] = [
        (2, &[2, 1], 1, 1, "n∤m-1"),
        (2, &[1, 0, 1], 2, 2, "n|m-1"),
        (3, &[3, 0, 3, 0, 1], 1, 4, "n∤m-1"),
    ];
    for (d, g, i, a_emp, branch) in cases {
        let k = field(g);
        let ty = exact_type(&k, d, 16).unwrap();
        let audit = ideal_power_audit(&k, d, &ty, i).unwrap();
        assert_eq!(audit.a_emp, Some(a_emp), "{g:?}");
        assert_eq!(audit.norm_check, Some(true));
        assert_eq!(audit.matching_branches, vec![branch.to_string()]);
        assert_eq!(audit.printed_branch_matches, Some(false));
    }
}

#[test]
fn audit_unit_on_cubic_gleason_field() {
    let k = field(&[1, 1, 2, 1]);
    let ty = exact_type(&k, 2, 16).unwrap();
    let audit = ideal_power_audit(&k, 2, &ty, 1).unwrap();
    assert_eq!(audit.unit, Some(true));
    assert_eq!(audit.norm_a_i, "-1");
    assert!(matches!(ideal_power_audit(&k, 2, &ty, 3), Err(Error::HypothesisUnmet(_))));
}

fn odd_witness_values(cert: &crate::certificate::Certificate) -> Vec<i64> {
    cert.witnesses
        .iter()
        .filter(|w| w.step == "nonsquare")
        .filter_map(|w| w.valuation)
        .collect()
}

#[test]
fn nonabelian_periodic_quadratic() {
    let k = field(&[1, 1, 2, 1]);
    let cert = nonabelian_certificate(NonabelianCase::PeriodicQuadratic, &k, 2, &k.from_i64(2), DEFAULT_BUDGET).unwrap();
    assert_eq!(cert.verdict, Verdict::Verified, "{:?}", cert.diagnostics);
    assert_eq!(odd_witness_values(&cert)[0], 1);
    assert!(replay(&cert).unwrap());
    // f^3(0) - α = -2
    assert_eq!(orbit_value(&k, 2, 3), k.zero());
}

#[test]
fn nonabelian_periodic_quadratic_zero() {
    let k = field(&[1, 1, 2, 1]);
    let cert = nonabelian_certificate(NonabelianCase::PeriodicQuadraticZero, &k, 2, &k.zero(), DEFAULT_BUDGET).unwrap();
    assert_eq!(cert.verdict, Verdict::Verified, "{:?}", cert.diagnostics);
    assert_eq!(odd_witness_values(&cert), vec![1, 3]);
    assert!(replay(&cert).unwrap());
}

#[test]
fn nonabelian_periodic_odd() {
    let k = field(&[1, 0, 1]);
    let cert = nonabelian_certificate(NonabelianCase::PeriodicOdd, &k, 3, &k.from_i64(3), DEFAULT_BUDGET).unwrap();
    assert_eq!(cert.verdict, Verdict::Verified, "{:?}", cert.diagnostics);
    assert_eq!(odd_witness_values(&cert), vec![27]);
    assert!(cert.witnesses.iter().any(|w| matches!(w.check, Check::DiscRatio { k: 3, .. })));
    assert!(replay(&cert).unwrap());
}

#[test]
fn nonabelian_periodic_odd_zero_reports_route_mismatch() {
    let k = field(&[1, 0, 1]);
    let cert = nonabelian_certificate(NonabelianCase::PeriodicOddZero, &k, 3, &k.zero(), DEFAULT_BUDGET).unwrap();
    assert_eq!(cert.verdict, Verdict::Inconclusive);
    assert!(cert.diagnostics.iter().any(|d| d.starts_with("PaperRouteMismatch")));
    assert!(replay(&cert).unwrap());
}

#[test]
fn nonabelian_preperiodic_odd_runs() {
    let k = field(&[3, 0, 3, 0, 1]);
    let cert = nonabelian_certificate(NonabelianCase::PreperiodicOdd, &k, 3, &k.from_i64(3), DEFAULT_BUDGET).unwrap();
    match cert.verdict {
        Verdict::Verified => assert!(replay(&cert).unwrap()),
        Verdict::Inconclusive => assert!(cert.diagnostics.iter().any(|d| d.starts_with("PaperRouteMismatch"))),
        v => panic!("unexpected verdict {v}"),
    }
}

#[test]
fn nonabelian_preperiodic_quadratic_on_sextic_is_unsupported() {
    let k = field(&[1, 0, 1, 2, 2, 2, 1]);
    let ty = exact_type(&k, 2, 64).unwrap();
    assert!(matches!(ty.kind, crate::pcforbits::ExactKind::Preperiodic { n, .. } if n >= 3), "{}", ty.kind);
    let alpha = k.from_i64(4);
    let err = nonabelian_certificate(NonabelianCase::PreperiodicQuadratic, &k, 2, &alpha, DEFAULT_BUDGET).unwrap_err();
    assert!(matches!(err, Error::Unsupported(_)), "{err:?}");
}

#[test]
fn nonabelian_hypotheses_are_checked() {
    let k = field(&[1, 1]);
    let err = nonabelian_certificate(NonabelianCase::PeriodicQuadratic, &k, 2, &k.from_i64(2), DEFAULT_BUDGET).unwrap_err();
    assert!(matches!(err, Error::HypothesisUnmet(_)));
    let k = field(&[1, 1, 2, 1]);
    let err = nonabelian_certificate(NonabelianCase::PeriodicQuadraticZero, &k, 2, &k.one(), DEFAULT_BUDGET).unwrap_err();
    assert!(matches!(err, Error::HypothesisUnmet(_)));
    assert_eq!("periodic-odd".parse::<NonabelianCase>().unwrap(), NonabelianCase::PeriodicOdd);
    assert!("case-3".parse::<NonabelianCase>().is_err());
}
