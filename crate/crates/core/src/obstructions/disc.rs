use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::Ring;
use crate::factorengine::IterateCache;
use crate::numberfield::{discriminant_multimodular, ElemJson, NfElem, NfPoly, NumberField};
use crate::pcforbits::orbit_values;

/// Largest `d^k` cross-checked against the resultant oracle.
pub const ORACLE_MAX_DEGREE: u128 = 81;

/// One step `Δ_k = sign · d^{d^k} · Δ_{k-1}^d · (f^k(0) - x_0)^{d-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscStep {
    pub k: usize,
    pub sign: i8,
    /// The exponent `d^k` on `d`.
    pub d_exponent: String,
    /// The exponent `d` on the previous discriminant.
    pub previous_exponent: u64,
    /// `f^k(0) - x_0`.
    pub critical_factor: ElemJson,
    /// Multiplicity `d - 1` of the critical point `0`.
    pub critical_exponent: u64,
    pub value: ElemJson,
    /// Whether the resultant oracle was run and agreed.
    pub oracle_checked: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscTrace {
    pub k: usize,
    pub steps: Vec<DiscStep>,
    pub value: ElemJson,
}

fn step_sign(d: u64, k: usize) -> i8 {
    // (-1)^{d^k (d-1) / 2}; d^k is odd unless d = 2
    let odd = if d == 2 { k == 1 } else { ((d - 1) / 2) % 2 == 1 };
    if odd {
        -1
    } else {
        1
    }
}

/// `Δ(f^k - x_0)` by the iterate recursion alone; `Δ(f^0 - x_0) = 1`.
pub fn disc_recursion(field: &NumberField, d: u64, x0: &NfElem, k: usize) -> Result<NfElem> {
    let orbit = orbit_values(field, d, k);
    let mut delta = field.one();
    for (j, a_j) in orbit.iter().enumerate().skip(1) {
        delta = recursion_step(field, d, j, &delta, a_j, x0);
    }
    Ok(delta)
}

fn recursion_step(field: &NumberField, d: u64, k: usize, prev: &NfElem, a_k: &NfElem, x0: &NfElem) -> NfElem {
    let dk = d.pow(k as u32);
    let power_of_d = field.pow(&field.from_i64(d as i64), dk);
    let crit = field.pow(&field.sub(a_k, x0), d - 1);
    let v = field.mul(&field.mul(&power_of_d, &field.pow(prev, d)), &crit);
    if step_sign(d, k) < 0 {
        field.neg(&v)
    } else {
        v
    }
}

/// `Δ(f^k - x_0)` with each step checked against the multimodular resultant while
/// `d^k <= ORACLE_MAX_DEGREE`.
pub fn disc_iterate(field: &NumberField, d: u64, x0: &NfElem, k: usize) -> Result<DiscTrace> {
    let orbit = orbit_values(field, d, k);
    let mut cache = IterateCache::new(field, d, u128::MAX)?;
    let kx = field.poly_ring();
    let mut delta = field.one();
    let mut steps = Vec::with_capacity(k);
    for j in 1..=k {
        delta = recursion_step(field, d, j, &delta, &orbit[j], x0);
        let degree = (d as u128).pow(j as u32);
        let oracle_checked = degree <= ORACLE_MAX_DEGREE;
        if oracle_checked {
            let h: NfPoly = kx.sub_constant(cache.get(j)?, x0);
            let oracle = discriminant_multimodular(field, &h)?;
            if oracle != delta {
                return Err(Error::OracleMismatch(format!(
                    "disc(f^{j} - x0): recursion gives {delta}, resultant gives {oracle}"
                )));
            }
        }
        steps.push(DiscStep {
            k: j,
            sign: step_sign(d, j),
            d_exponent: degree.to_string(),
            previous_exponent: d,
            critical_factor: field.elem_to_json(&field.sub(&orbit[j], x0)),
            critical_exponent: d - 1,
            value: field.elem_to_json(&delta),
            oracle_checked,
        });
    }
    Ok(DiscTrace { k, steps, value: field.elem_to_json(&delta) })
}

/// `N_{K(β)/K}(P(β)) = Res_x(h, P)` for `β` a root of the monic `h`.
pub fn relative_norm(field: &NumberField, h: &NfPoly, p: &NfPoly) -> NfElem {
    let kx = field.poly_ring();
    if h.degree() == Some(1) {
        // h = x - u
        let u = field.neg(h.coeff(0).unwrap_or(&field.zero()));
        return kx.eval(p, &u);
    }
    kx.resultant(h, p)
}
