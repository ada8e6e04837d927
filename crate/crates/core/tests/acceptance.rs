//! Acceptance gate: one pass/fail line per criterion, then a single assertion.

use std::time::Instant;

use pcfcert::certificate::{replay, Certificate, Check, Verdict};
use pcfcert::cli::{run, EXIT_UNSUPPORTED};
use pcfcert::exactpoly::{int_poly, Ring};
use pcfcert::factorengine::{stability_certificate, FactorEngine, FactorLabel};
use pcfcert::numberfield::{is_eisenstein, NumberField};
use pcfcert::obstructions::{disc_iterate, disc_recursion, ideal_power_audit, nonabelian_certificate, NonabelianCase};
use pcfcert::pcforbits::{exact_type, format_cyc_poly, gleason, misiurewicz, DEFAULT_BUDGET};
use pcfcert::Error;

type Outcome = Result<String, String>;

fn field(coeffs: &[i64]) -> NumberField {
    NumberField::new(&int_poly(coeffs)).expect("acceptance field")
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: pcfcert::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn gleason_table() -> Outcome {
    let cases: [(u64, usize, &[i64]); 4] =
        [(2, 1, &[0, 1]), (2, 2, &[1, 1]), (2, 3, &[1, 1, 2, 1]), (3, 2, &[1, 0, 1])];
    for (d, n, want) in cases {
        let g = lib(gleason(d, n, DEFAULT_BUDGET))?;
        check(g == int_poly(want), || format!("gleason({d},{n}) = {g:?}"))?;
    }
    let deg = lib(gleason(2, 4, DEFAULT_BUDGET))?.degree();
    check(deg == Some(6), || format!("deg gleason(2,4) = {deg:?}"))?;
    Ok("4 polynomials and deg gleason(2,4) = 6".into())
}

fn misiurewicz_table() -> Outcome {
    let cases: [(u64, usize, usize, &[i64]); 3] =
        [(2, 2, 1, &[2, 1]), (2, 3, 1, &[2, 2, 2, 1]), (2, 2, 2, &[1, 0, 1])];
    for (d, m, n, want) in cases {
        let mis = lib(misiurewicz(d, m, n, DEFAULT_BUDGET))?;
        check(mis.norm_form == int_poly(want), || format!("misiurewicz({d},{m},{n}) = {:?}", mis.norm_form))?;
    }
    let mis = lib(misiurewicz(3, 2, 1, DEFAULT_BUDGET))?;
    let text = format_cyc_poly(&mis.ring, &mis.poly);
    check(text == "c^2 + (-z + 1)", || format!("misiurewicz(3,2,1) = {text}"))?;
    check(mis.norm_form == int_poly(&[3, 0, 3, 0, 1]), || format!("norm form {:?}", mis.norm_form))?;
    check(is_eisenstein(&mis.norm_form, 3), || "norm form not Eisenstein at 3".into())?;
    Ok("4 parameters; c^2 + 1 - zeta has norm form c^4 + 3c^2 + 3, Eisenstein at 3".into())
}

/// `(d, n, field, k_max)` for the factorization identity.
fn factorization_cases() -> Vec<(u64, usize, NumberField, usize)> {
    vec![
        (2, 2, field(&[1, 1]), 10),
        (2, 3, field(&[1, 1, 2, 1]), 10),
        (3, 2, field(&[1, 0, 1]), 5),
    ]
}

fn factorization_identity() -> Outcome {
    let mut runs = 0;
    for (d, n, k, kmax) in factorization_cases() {
        let mut engine = lib(FactorEngine::new(&k, d, n, DEFAULT_BUDGET))?;
        for j in 1..=kmax {
            let product = lib(engine.closed_form_factorization(j))?;
            let want = j - j / n + 1;
            check(product.count() == want, || format!("(d,n,k)=({d},{n},{j}): {} factors, want {want}", product.count()))?;
            let cert = lib(engine.verify_factorization(&product, j))?;
            check(cert.verdict == Verdict::Verified, || format!("({d},{n},{j}): {:?}", cert.diagnostics))?;
            let pairs = cert.witnesses.iter().filter(|w| matches!(w.check, Check::FactorCoprime { .. })).count();
            check(pairs == want * (want - 1) / 2, || format!("({d},{n},{j}): {pairs} coprime witnesses"))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} factorizations expand exactly, counts match, factors pairwise coprime"))
}

fn irreducibility_certificates() -> Outcome {
    let (mut verified, mut fallback) = (0, 0);
    for (d, n, k, kmax) in factorization_cases() {
        let mut engine = lib(FactorEngine::new(&k, d, n, DEFAULT_BUDGET))?;
        let mut labels: Vec<FactorLabel> = Vec::new();
        for j in 1..=kmax {
            labels.extend(engine.closed_form_labels(j).into_iter().map(|(l, _)| l));
        }
        labels.sort();
        labels.dedup();
        for label in labels {
            let cert = lib(engine.factor_certificate(label))?;
            check(cert.verdict == Verdict::Verified, || format!("({d},{n}) {label}: {:?}", cert.diagnostics))?;
            if cert.diagnostics.iter().any(|m| m.contains("mod-prime fallback")) {
                fallback += 1;
            }
            verified += 1;
        }
    }
    Ok(format!("{verified} distinct factors Verified, {fallback} through the flagged mod-prime fallback"))
}

fn eisenstein_witness(cert: &Certificate, k: usize, p: u64) -> bool {
    cert.witnesses.iter().any(|w| matches!(w.check, Check::IterateEisenstein { k: kk, p: pp, .. } if kk == k && pp == p))
}

fn stability() -> Outcome {
    let k = field(&[2, 1]);
    let cert = lib(stability_certificate(&k, 2, &k.from_i64(4), 12, DEFAULT_BUDGET))?;
    check(cert.verdict == Verdict::Verified && eisenstein_witness(&cert, 12, 2), || "c0 = -2, alpha = 4".into())?;
    check(lib(replay(&cert))?, || "replay failed for c0 = -2".into())?;

    let k = field(&[1, 0, 1]);
    let cert = lib(stability_certificate(&k, 3, &k.from_i64(3), 6, DEFAULT_BUDGET))?;
    check(cert.verdict == Verdict::Verified && eisenstein_witness(&cert, 6, 3), || "c^2 + 1, alpha = 3".into())?;
    let inert = cert.witnesses.iter().filter_map(|w| w.prime.as_ref()).all(|p| p.f == 2 && p.e == 1);
    check(inert, || "prime above 3 is not inert in Q(i)".into())?;
    check(lib(replay(&cert))?, || "replay failed for c^2 + 1".into())?;

    let k = field(&[1, 1]);
    let unmet = stability_certificate(&k, 2, &k.one(), 4, DEFAULT_BUDGET);
    check(matches!(unmet, Err(Error::HypothesisUnmet(_))), || format!("c + 1, alpha = 1 gave {unmet:?}"))?;
    Ok("N = 12 at 2, N = 6 at the inert 3, HypothesisUnmet for c + 1".into())
}

fn discriminant_recursion() -> Outcome {
    let fields = [field(&[2, 1]), field(&[1, 0, 1]), field(&[1, 1]), field(&[1, 1, 2, 1]), field(&[3, 0, 3, 0, 1])];
    let mut checked = 0;
    for k in &fields {
        for d in [2u64, 3] {
            for x0 in [0i64, 4, 3, 1] {
                let x0 = k.from_i64(x0);
                let trace = lib(disc_iterate(k, d, &x0, 4))?;
                check(trace.steps.iter().all(|s| s.oracle_checked), || "oracle skipped".into())?;
                checked += trace.steps.len();
            }
        }
    }
    // Δ(x^3 + a) = -27 a^2 forces the critical exponent d - 1
    for a in [-5i64, 2, 7] {
        let k = field(&[-a, 1]);
        let v = lib(disc_recursion(&k, 3, &k.zero(), 1))?;
        check(v == k.from_i64(-27 * a * a), || format!("disc(x^3 + {a}) = {v}"))?;
    }
    Ok(format!("{checked} recursion steps agree with the resultant oracle; disc(x^3 + a) = -27a^2"))
}

fn ideal_audit() -> Outcome {
    let cases: [(u64, &[i64], usize, u64); 3] = [(2, &[2, 1], 1, 1), (2, &[1, 0, 1], 2, 2), (3, &[3, 0, 3, 0, 1], 1, 4)];
    let mut lines = Vec::new();
    for (d, g, i, a_emp) in cases {
        let k = field(g);
        let ty = lib(exact_type(&k, d, 64))?;
        let audit = lib(ideal_power_audit(&k, d, &ty, i))?;
        check(audit.a_emp == Some(a_emp), || format!("{g:?}: A_emp = {:?}", audit.a_emp))?;
        check(audit.printed_branch_matches.is_some() && !audit.matching_branches.is_empty(), || format!("{g:?}: no branch flag"))?;
        lines.push(format!("A={a_emp} matches {}", audit.matching_branches.join("/")));
    }
    let k = field(&[1, 1, 2, 1]);
    let ty = lib(exact_type(&k, 2, 64))?;
    let audit = lib(ideal_power_audit(&k, 2, &ty, 1))?;
    check(audit.norm_a_i == "-1" && audit.unit == Some(true), || format!("cubic a_1 norm {}", audit.norm_a_i))?;
    Ok(format!("{}; cubic a_1 has norm -1", lines.join(", ")))
}

fn odd_valuations(cert: &Certificate) -> Vec<i64> {
    cert.witnesses.iter().filter(|w| w.step == "nonsquare").filter_map(|w| w.valuation).collect()
}

fn nonabelian() -> Outcome {
    let cubic = field(&[1, 1, 2, 1]);
    let gauss = field(&[1, 0, 1]);
    let quartic = field(&[3, 0, 3, 0, 1]);

    let c1 = lib(nonabelian_certificate(NonabelianCase::PeriodicQuadratic, &cubic, 2, &cubic.from_i64(2), DEFAULT_BUDGET))?;
    let first = c1.witnesses.iter().find(|w| w.step == "nonsquare");
    let on_a3 = first.is_some_and(|w| matches!(&w.check, Check::Valuation { elem, .. } if cubic.elem_from_json(elem).ok() == Some(cubic.from_i64(-2))));
    check(c1.verdict == Verdict::Verified && on_a3 && odd_valuations(&c1).first() == Some(&1), || format!("case 1: {:?}", c1.diagnostics))?;

    let c2 = lib(nonabelian_certificate(NonabelianCase::PeriodicQuadraticZero, &cubic, 2, &cubic.zero(), DEFAULT_BUDGET))?;
    check(c2.verdict == Verdict::Verified && odd_valuations(&c2).last() == Some(&3), || format!("case 2: {:?}", c2.diagnostics))?;

    let c3 = lib(nonabelian_certificate(NonabelianCase::PeriodicOdd, &gauss, 3, &gauss.from_i64(3), DEFAULT_BUDGET))?;
    check(c3.verdict == Verdict::Verified && odd_valuations(&c3) == vec![27], || format!("case 3: {:?}", c3.diagnostics))?;

    for c in [&c1, &c2, &c3] {
        check(lib(replay(c))?, || format!("replay failed: {}", c.claim))?;
    }

    let mismatch = |c: &Certificate| c.diagnostics.iter().any(|m| m.starts_with("PaperRouteMismatch"));
    let c4 = lib(nonabelian_certificate(NonabelianCase::PeriodicOddZero, &gauss, 3, &gauss.zero(), DEFAULT_BUDGET))?;
    check(c4.verdict == Verdict::Verified || mismatch(&c4), || "case 4 gave neither".into())?;
    let alpha = lib(quartic.parse_elem("c^2"))?;
    let p2 = lib(nonabelian_certificate(NonabelianCase::PreperiodicOdd, &quartic, 3, &alpha, DEFAULT_BUDGET))?;
    check(p2.verdict == Verdict::Verified || mismatch(&p2), || "preperiodic odd gave neither".into())?;

    let out = run(["pcfcert", "nonabelian-cert", "--d", "2", "--g", "c^6+2*c^5+2*c^4+2*c^3+c^2+1", "--case", "preperiodic-quadratic", "--alpha", "4"]);
    check(out.code == EXIT_UNSUPPORTED && out.stdout.is_empty() && out.stderr.contains("unsupported"), || format!("sextic: {out:?}"))?;

    Ok(format!(
        "valuations 1, 3, 27; odd zero case {}; preperiodic odd {}; sextic exit 4",
        c4.verdict, p2.verdict
    ))
}

fn determinism() -> Outcome {
    let commands: [&[&str]; 4] = [
        &["factor", "--d", "2", "--gleason-n", "3", "--k", "6", "--verify", "--format", "json"],
        &["stability-cert", "--d", "2", "--misiurewicz", "2,1", "--alpha", "4", "--kmax", "12"],
        &["nonabelian-cert", "--d", "3", "--g", "c^2+1", "--case", "periodic-odd", "--alpha", "3"],
        &["ideal-audit", "--d", "3", "--misiurewicz", "2,1", "--i", "1", "--format", "json"],
    ];
    for args in commands {
        for seed in ["1", "20251018"] {
            let argv = || std::iter::once("pcfcert").chain(args.iter().copied()).chain(["--seed", seed]);
            let (a, b) = (run(argv()), run(argv()));
            check(a == b && !a.stdout.is_empty(), || format!("{args:?} differs between runs"))?;
        }
    }
    Ok(format!("{} commands byte-identical across repeated runs", commands.len()))
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("Gleason table", gleason_table),
        ("Misiurewicz table", misiurewicz_table),
        ("factorization identity", factorization_identity),
        ("irreducibility certificates", irreducibility_certificates),
        ("stability", stability),
        ("discriminant recursion", discriminant_recursion),
        ("ideal-power audit", ideal_audit),
        ("non-abelian certificates", nonabelian),
        ("determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let secs = start.elapsed().as_secs_f64();
        match &result {
            Ok(detail) => println!("criterion {}: PASS {name} ({secs:.1}s) {detail}", i + 1),
            Err(why) => {
                println!("criterion {}: FAIL {name} ({secs:.1}s) {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
