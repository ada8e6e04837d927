use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::Ring;
use crate::modarith::DEFAULT_PRECISION;
use crate::numberfield::{primes_above, ElemJson, NumberField, PrimeJson};
use crate::pcforbits::{orbit_value, ExactKind, ExactType};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeValuations {
    pub prime: PrimeJson,
    pub v_a: i64,
    pub v_d: i64,
}

/// The two printed exponents `A`, keyed by the branch condition on `m - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrintedBranches {
    /// `d^{m-1} (d - 1)`, printed for `n | m - 1`.
    pub n_divides_m_minus_1: u64,
    /// `(d^{m-1} - 1)(d - 1)`, printed for `n ∤ m - 1`.
    pub n_not_divides_m_minus_1: u64,
    /// Whether `n | m - 1` holds for this parameter.
    pub condition_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealAudit {
    pub i: usize,
    /// Preperiod; `0` for a periodic parameter.
    pub m: usize,
    pub n: usize,
    pub a_i: ElemJson,
    pub norm_a_i: String,
    /// `n ∤ i`: whether `a_i(c_0)` is a unit.
    pub unit: Option<bool>,
    pub valuations: Vec<PrimeValuations>,
    /// Least `A` with `A v_P(a_i) = v_P(d)` at every prime above `d`.
    pub a_emp: Option<u64>,
    /// `|N(a_i)|^A = d^{deg g}` for the empirical `A`.
    pub norm_check: Option<bool>,
    /// Only defined for a preperiodic parameter.
    pub printed: Option<PrintedBranches>,
    /// Branches whose value equals `A_emp`: `"n|m-1"`, `"n∤m-1"`.
    pub matching_branches: Vec<String>,
    /// Whether the branch selected by the printed condition gives `A_emp`.
    pub printed_branch_matches: Option<bool>,
}

/// Compare `<a_i(c_0)>^A = <d>` against both printed branch exponents.
pub fn ideal_power_audit(field: &NumberField, d: u64, ty: &ExactType, i: usize) -> Result<IdealAudit> {
    let (m, n) = match ty.kind {
        ExactKind::Preperiodic { m, n } => (m, n),
        ExactKind::Periodic { n } => (0, n),
    };
    if i == 0 {
        return Err(Error::InvalidInput("audit index starts at 1".into()));
    }
    let a_i = orbit_value(field, d, i);
    let norm = field.norm(&a_i);
    let printed = (m >= 1).then(|| {
        let base = d.pow(m as u32 - 1);
        PrintedBranches {
            n_divides_m_minus_1: base * (d - 1),
            n_not_divides_m_minus_1: (base - 1) * (d - 1),
            condition_holds: (m - 1) % n == 0,
        }
    });
    let mut audit = IdealAudit {
        i,
        m,
        n,
        a_i: field.elem_to_json(&a_i),
        norm_a_i: norm.to_string(),
        unit: None,
        valuations: Vec::new(),
        a_emp: None,
        norm_check: None,
        printed: printed.clone(),
        matching_branches: Vec::new(),
        printed_branch_matches: None,
    };
    if i % n != 0 {
        audit.unit = Some(field.is_unit(&a_i)?);
        return Ok(audit);
    }
    let Some(p) = printed else {
        return Err(Error::HypothesisUnmet(format!("a_{i}(c0) = 0 for a periodic parameter with n | i")));
    };
    let primes = primes_above(field, d, DEFAULT_PRECISION)?;
    let d_elem = field.from_i64(d as i64);
    for p in &primes {
        audit.valuations.push(PrimeValuations {
            prime: p.to_json(),
            v_a: p.valuation(field, &a_i).finite()?,
            v_d: p.valuation(field, &d_elem).finite()?,
        });
    }
    // A v_P(a_i) = v_P(d) at every P, with one common A
    let ratios: Option<Vec<i64>> = audit
        .valuations
        .iter()
        .map(|v| (v.v_a > 0 && v.v_d % v.v_a == 0).then(|| v.v_d / v.v_a))
        .collect();
    if let Some(r) = ratios.filter(|r| !r.is_empty() && r.iter().all(|&x| x == r[0])) {
        let a = r[0] as u64;
        audit.a_emp = Some(a);
        let lhs = num_traits::pow(norm.abs(), a as usize);
        let rhs = num_traits::pow(BigInt::from(d), field.degree());
        audit.norm_check = Some(lhs.denom() == &BigInt::from(1) && lhs.numer() == &rhs && !rhs.is_zero());
        if p.n_divides_m_minus_1 == a {
            audit.matching_branches.push("n|m-1".into());
        }
        if p.n_not_divides_m_minus_1 == a {
            audit.matching_branches.push("n∤m-1".into());
        }
        let selected = if p.condition_holds { p.n_divides_m_minus_1 } else { p.n_not_divides_m_minus_1 };
        audit.printed_branch_matches = Some(selected == a);
    }
    Ok(audit)
}
