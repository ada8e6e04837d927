//! Human-readable reports; polynomials print in descending degree.

use std::fmt::Write;

use crate::certificate::Certificate;
use crate::error::Result;
use crate::exactpoly::json::IntPolyJson;
use crate::exactpoly::IntPoly;
use crate::factorengine::FactorProduct;
use crate::numberfield::{NfPoly, NumberField};
use crate::obstructions::{DiscTrace, IdealAudit};

pub fn int_poly_json(p: &IntPoly) -> IntPolyJson {
    IntPolyJson::from_poly(p, "c")
}

/// `x^4 + (2*c)*x^2 + ...` with every non-rational coefficient parenthesized.
pub fn nf_poly_text(p: &NfPoly) -> String {
    let mut terms: Vec<String> = Vec::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let coef = c.to_string();
        let simple = c.num().len() <= 1 && !coef.contains('/');
        let coef = if simple { coef } else { format!("({coef})") };
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        terms.push(match (mono.is_empty(), coef.as_str()) {
            (true, _) => coef,
            (false, "1") => mono,
            (false, "-1") => format!("-{mono}"),
            (false, _) => format!("{coef}*{mono}"),
        });
    }
    let Some(first) = terms.first() else { return "0".into() };
    let mut out = first.clone();
    for t in &terms[1..] {
        match t.strip_prefix('-') {
            Some(rest) => {
                let _ = write!(out, " - {rest}");
            }
            None => {
                let _ = write!(out, " + {t}");
            }
        }
    }
    out
}

pub fn factor_product_text(_field: &NumberField, product: &FactorProduct) -> String {
    let mut s = String::new();
    for t in &product.terms {
        let _ = writeln!(s, "{} ^ {}: {}", t.label, t.exp, nf_poly_text(&t.poly));
    }
    let _ = writeln!(s, "count: {}", product.count());
    s
}

pub fn certificate_text(cert: &Certificate) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "claim: {}", cert.claim);
    let _ = writeln!(s, "verdict: {}", cert.verdict);
    if cert.taint {
        let _ = writeln!(s, "taint: field irreducibility assumed");
    }
    for w in &cert.witnesses {
        let at = match (&w.prime, w.valuation) {
            (Some(p), Some(v)) => format!(" [{} v={v}]", p.p),
            (Some(p), None) => format!(" [{}]", p.p),
            _ => String::new(),
        };
        let _ = writeln!(s, "  {}{at}: {}", w.step, w.identity);
    }
    for d in &cert.diagnostics {
        let _ = writeln!(s, "  note: {d}");
    }
    s
}

pub fn disc_text(field: &NumberField, trace: &DiscTrace) -> Result<String> {
    let mut s = String::new();
    for step in &trace.steps {
        let value = field.elem_from_json(&step.value)?;
        let checked = if step.oracle_checked { "resultant agrees" } else { "recursion only" };
        let _ = writeln!(s, "k = {}: {value} ({checked})", step.k);
    }
    Ok(s)
}

pub fn audit_text(audit: &IdealAudit) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "i = {}, type ({}, {}), N(a_i) = {}", audit.i, audit.m, audit.n, audit.norm_a_i);
    if let Some(u) = audit.unit {
        let _ = writeln!(s, "a_i is a unit: {u}");
    }
    for v in &audit.valuations {
        let _ = writeln!(s, "prime over {}: v(a_i) = {}, v(d) = {}", v.prime.p, v.v_a, v.v_d);
    }
    if let Some(a) = audit.a_emp {
        let _ = writeln!(s, "A_emp = {a}");
    }
    if let Some(p) = &audit.printed {
        let _ = writeln!(
            s,
            "printed: n|m-1 -> {}, n∤m-1 -> {} (condition n|m-1 is {})",
            p.n_divides_m_minus_1, p.n_not_divides_m_minus_1, p.condition_holds
        );
    }
    if !audit.matching_branches.is_empty() {
        let _ = writeln!(s, "matching branches: {}", audit.matching_branches.join(", "));
    }
    if let Some(m) = audit.printed_branch_matches {
        let _ = writeln!(s, "printed branch matches: {m}");
    }
    s
}
