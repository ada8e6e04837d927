//! Critical-orbit polynomials `a_i(c)`, Gleason and Misiurewicz polynomials, and the exact
//! preperiodic type of a parameter.

mod cyclotomic;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use cyclotomic::{format_cyc_poly, CycElem, CycPoly, CycPolyJson, CycRing};

use crate::error::{Error, Result};
use crate::exactpoly::{divisors, mobius, zx, IntPoly, Ring};
use crate::numberfield::{NfElem, NumberField};

/// Default bound on `deg a_i = d^{i-1}`.
pub const DEFAULT_BUDGET: u128 = 4096;

/// Check `d^e <= budget`.
pub fn check_budget(d: u64, e: u32, budget: u128) -> Result<()> {
    let degree = (d as u128).checked_pow(e).unwrap_or(u128::MAX);
    if degree > budget {
        return Err(Error::BudgetExceeded { degree, budget });
    }
    Ok(())
}

/// Cache of `a_1 = c`, `a_{i+1} = a_i^d + c`.
#[derive(Clone, Debug)]
pub struct OrbitSeq {
    d: u64,
    budget: u128,
    cache: Vec<IntPoly>,
}

impl OrbitSeq {
    pub fn new(d: u64, budget: u128) -> Result<Self> {
        if !crate::modarith::is_prime(d) {
            return Err(Error::InvalidInput(format!("d = {d} must be prime")));
        }
        Ok(OrbitSeq { d, budget, cache: vec![zx().x()] })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// `a_i(c)` for `i >= 1`.
    pub fn get(&mut self, i: usize) -> Result<&IntPoly> {
        if i == 0 {
            return Err(Error::InvalidInput("orbit index starts at 1".into()));
        }
        check_budget(self.d, (i - 1) as u32, self.budget)?;
        let zx = zx();
        while self.cache.len() < i {
            let last = self.cache.last().unwrap();
            let next = zx.add(&zx.pow(last, self.d), &zx.x());
            self.cache.push(next);
        }
        Ok(&self.cache[i - 1])
    }
}

/// `a_i(c)`.
pub fn orbit_poly(d: u64, i: usize, budget: u128) -> Result<IntPoly> {
    OrbitSeq::new(d, budget)?.get(i).cloned()
}

/// `∏_{k | n} a_k^{μ(n/k)}` by exact division.
pub fn gleason(d: u64, n: usize, budget: u128) -> Result<IntPoly> {
    if n == 0 {
        return Err(Error::InvalidInput("period must be positive".into()));
    }
    let mut seq = OrbitSeq::new(d, budget)?;
    let zx = zx();
    let mut num = zx.one();
    let mut den = zx.one();
    for k in divisors(n as u64) {
        let a = seq.get(k as usize)?.clone();
        match mobius(n as u64 / k) {
            1 => num = zx.mul(&num, &a),
            -1 => den = zx.mul(&den, &a),
            _ => {}
        }
    }
    let g = zx
        .exact_div(&num, &den)
        .map_err(|_| Error::NotDivisible(format!("Gleason product for d = {d}, n = {n}")))?;
    // re-verify the assembled identity
    debug_assert_eq!(zx.mul(&g, &den), num);
    Ok(g)
}

/// Expected degree `Σ_{k|n} μ(n/k) d^{k-1}`.
pub fn gleason_degree(d: u64, n: usize) -> i128 {
    divisors(n as u64)
        .into_iter()
        .map(|k| mobius(n as u64 / k) as i128 * (d as i128).pow(k as u32 - 1))
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Misiurewicz {
    pub ring: CycRing,
    /// `G^ζ_{d,m,n}` with `ζ` the class of `z`.
    pub poly: CycPoly,
    /// `Res_z(Φ_d(z), G^ζ_{d,m,n})`.
    pub norm_form: IntPoly,
}

/// `G^ζ_{d,m,n}` and its rational norm form.
pub fn misiurewicz(d: u64, m: usize, n: usize, budget: u128) -> Result<Misiurewicz> {
    if m < 2 || n == 0 {
        return Err(Error::InvalidInput(format!("Misiurewicz type needs m >= 2 and n >= 1, got ({m}, {n})")));
    }
    let mut seq = OrbitSeq::new(d, budget)?;
    check_budget(d, (m + n - 2) as u32, budget)?;
    let ring = CycRing::new(d);
    let r = ring.poly_ring();
    let zeta = ring.zeta();
    let mut num = r.one();
    let mut den = r.one();
    let prev = ring.from_int_poly(seq.get(m - 1)?);
    let shifted_prev = r.scale(&prev, &zeta);
    for k in divisors(n as u64) {
        let k = k as usize;
        let term = r.sub(&ring.from_int_poly(seq.get(m + k - 1)?), &shifted_prev);
        match mobius((n / k) as u64) {
            1 => num = r.mul(&num, &term),
            -1 => den = r.mul(&den, &term),
            _ => {}
        }
        if (m - 1) % n == 0 {
            // the Gleason factor enters with the opposite exponent
            let a = ring.from_int_poly(seq.get(k)?);
            match mobius((n / k) as u64) {
                1 => den = r.mul(&den, &a),
                -1 => num = r.mul(&num, &a),
                _ => {}
            }
        }
    }
    let poly = r
        .exact_div(&num, &den)
        .map_err(|e| Error::NotDivisible(format!("Misiurewicz product for d = {d}, (m, n) = ({m}, {n}): {e}")))?;
    let norm_form = ring.norm_form(&poly);
    Ok(Misiurewicz { ring, poly, norm_form })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ExactKind {
    Periodic { n: usize },
    Preperiodic { m: usize, n: usize },
}

impl fmt::Display for ExactKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactKind::Periodic { n } => write!(f, "Periodic({n})"),
            ExactKind::Preperiodic { m, n } => write!(f, "Preperiodic({m}, {n})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactType {
    pub kind: ExactKind,
    /// `orbit[i] = a_i(c_0)`, with `orbit[0] = 0`, through the first repetition.
    pub orbit: Vec<NfElem>,
}

/// `[0, a_1(c_0), ..., a_len(c_0)]`.
pub fn orbit_values(field: &NumberField, d: u64, len: usize) -> Vec<NfElem> {
    let c0 = field.generator();
    let mut out = vec![field.zero()];
    for _ in 0..len {
        let next = field.add(&field.pow(out.last().unwrap(), d), &c0);
        out.push(next);
    }
    out
}

/// Classify `c_0` by the first repetition in its critical orbit within `bound` steps.
pub fn exact_type(field: &NumberField, d: u64, bound: usize) -> Result<ExactType> {
    let c0 = field.generator();
    let mut seen: HashMap<NfElem, usize> = HashMap::new();
    let mut orbit = vec![field.zero()];
    seen.insert(field.zero(), 0);
    for j in 1..=bound {
        let next = field.add(&field.pow(&orbit[j - 1], d), &c0);
        orbit.push(next.clone());
        if let Some(&i) = seen.get(&next) {
            let kind = if i == 0 { ExactKind::Periodic { n: j } } else { ExactKind::Preperiodic { m: i, n: j - i } };
            let t = ExactType { kind, orbit };
            t.verify(field)?;
            return Ok(t);
        }
        seen.insert(next, j);
    }
    Err(Error::BoundExceeded(bound))
}

impl ExactType {
    /// Re-check the minimality conditions on the stored orbit.
    pub fn verify(&self, field: &NumberField) -> Result<()> {
        let o = &self.orbit;
        let bad = |why: &str| Err(Error::ShapeViolation(format!("{}: {why}", self.kind)));
        match self.kind {
            ExactKind::Periodic { n } => {
                if !field.is_zero(&o[n]) {
                    return bad("a_n(c0) != 0");
                }
                if (1..n).any(|k| field.is_zero(&o[k])) {
                    return bad("smaller period");
                }
            }
            ExactKind::Preperiodic { m, n } => {
                if m < 2 {
                    return bad("preperiod below 2");
                }
                if o[m + n] != o[m] {
                    return bad("a_{m+n} != a_m");
                }
                if o[m + n - 1] == o[m - 1] {
                    return bad("preperiod not minimal");
                }
                if (1..n).any(|k| o[m + k] == o[m]) {
                    return bad("period not minimal");
                }
            }
        }
        Ok(())
    }

    pub fn period(&self) -> usize {
        match self.kind {
            ExactKind::Periodic { n } | ExactKind::Preperiodic { n, .. } => n,
        }
    }
}

/// `a_i(c_0)` in the field.
pub fn orbit_value(field: &NumberField, d: u64, i: usize) -> NfElem {
    orbit_values(field, d, i).pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use crate::exactpoly::{int_poly, Poly};
    use crate::numberfield::{irreducibility_certificate, IrreducibilityCertificate};

    #[test]
    fn orbit_examples() {
        assert_eq!(orbit_poly(2, 2, DEFAULT_BUDGET).unwrap(), int_poly(&[0, 1, 1]));
        assert_eq!(orbit_poly(2, 3, DEFAULT_BUDGET).unwrap(), int_poly(&[0, 1, 1, 2, 1]));
        assert_eq!(orbit_poly(3, 2, DEFAULT_BUDGET).unwrap(), int_poly(&[0, 1, 0, 1]));
        assert!(matches!(orbit_poly(2, 14, DEFAULT_BUDGET), Err(Error::BudgetExceeded { degree: 8192, .. })));
        let mut seq = OrbitSeq::new(3, DEFAULT_BUDGET).unwrap();
        for i in 1..=6 {
            assert_eq!(seq.get(i).unwrap().degree(), Some(3usize.pow(i as u32 - 1)));
        }
    }

    #[test]
    fn gleason_examples() {
        assert_eq!(gleason(2, 1, DEFAULT_BUDGET).unwrap(), int_poly(&[0, 1]));
        assert_eq!(gleason(2, 2, DEFAULT_BUDGET).unwrap(), int_poly(&[1, 1]));
        assert_eq!(gleason(2, 3, DEFAULT_BUDGET).unwrap(), int_poly(&[1, 1, 2, 1]));
        assert_eq!(gleason(3, 2, DEFAULT_BUDGET).unwrap(), int_poly(&[1, 0, 1]));
        assert_eq!(gleason(2, 4, DEFAULT_BUDGET).unwrap().degree(), Some(6));
        for (d, n) in [(2, 6), (3, 4), (5, 2), (2, 8)] {
            assert_eq!(gleason(d, n, DEFAULT_BUDGET).unwrap().degree().unwrap() as i128, gleason_degree(d, n));
        }
    }

    fn cyc(ring: &CycRing, coeffs: &[&[i64]]) -> CycPoly {
        ring.poly_ring().from_coeffs(coeffs.iter().map(|c| c.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    #[test]
    fn misiurewicz_examples() {
        let m = misiurewicz(2, 2, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(m.norm_form, int_poly(&[2, 1]));
        assert_eq!(m.ring.to_int_poly(&m.poly).unwrap(), m.norm_form);
        assert_eq!(misiurewicz(2, 3, 1, DEFAULT_BUDGET).unwrap().norm_form, int_poly(&[2, 2, 2, 1]));
        assert_eq!(misiurewicz(2, 2, 2, DEFAULT_BUDGET).unwrap().norm_form, int_poly(&[1, 0, 1]));
        let m = misiurewicz(3, 2, 1, DEFAULT_BUDGET).unwrap();
        // c^2 + 1 - ζ
        assert_eq!(m.poly, cyc(&m.ring, &[&[1, -1], &[0, 0], &[1, 0]]));
        assert_eq!(m.norm_form, int_poly(&[3, 0, 3, 0, 1]));
        assert_eq!(format_cyc_poly(&m.ring, &m.poly), "c^2 + (-z + 1)");
    }

    #[test]
    fn cyclotomic_ring_identities() {
        for d in [2u64, 3, 5, 7] {
            let ring = CycRing::new(d);
            let z = ring.zeta();
            assert!(ring.is_one(&ring.pow(&z, d)));
            let sum = (0..d).fold(ring.zero(), |acc, j| ring.add(&acc, &ring.pow(&z, j)));
            assert!(ring.is_zero(&sum));
            // ∏_{j=1}^{d-1} (1 - ζ^j) = d
            let prod = (1..d).fold(ring.one(), |acc, j| ring.mul(&acc, &ring.sub(&ring.one(), &ring.pow(&z, j))));
            assert_eq!(ring.as_integer(&prod), Some(BigInt::from(d)));
        }
    }

    #[test]
    fn norm_form_of_d2_is_the_polynomial_itself() {
        for (m, n) in [(2, 1), (2, 2), (3, 1), (3, 2), (4, 1)] {
            let mis = misiurewicz(2, m, n, DEFAULT_BUDGET).unwrap();
            assert_eq!(Some(mis.norm_form.clone()), mis.ring.to_int_poly(&mis.poly));
        }
    }

    #[test]
    fn exact_type_examples() {
        let k = NumberField::new(&int_poly(&[1, 1])).unwrap();
        assert_eq!(exact_type(&k, 2, 10).unwrap().kind, ExactKind::Periodic { n: 2 });
        let k = NumberField::new(&int_poly(&[2, 1])).unwrap();
        assert_eq!(exact_type(&k, 2, 10).unwrap().kind, ExactKind::Preperiodic { m: 2, n: 1 });
        let k = NumberField::new(&int_poly(&[3, 0, 3, 0, 1])).unwrap();
        assert_eq!(exact_type(&k, 3, 10).unwrap().kind, ExactKind::Preperiodic { m: 2, n: 1 });
        // c = 1 escapes
        let k = NumberField::new(&int_poly(&[-1, 1])).unwrap();
        assert_eq!(exact_type(&k, 2, 6), Err(Error::BoundExceeded(6)));
    }

    #[test]
    fn root_fields_have_the_intended_type() {
        for (d, n) in [(2u64, 2usize), (2, 3), (3, 2), (2, 4), (5, 2)] {
            let g = gleason(d, n, DEFAULT_BUDGET).unwrap();
            let k = NumberField::new(&g).unwrap();
            assert_eq!(exact_type(&k, d, 3 * n + 2).unwrap().kind, ExactKind::Periodic { n });
        }
        for (d, m, n) in [(2u64, 2usize, 1usize), (2, 3, 1), (2, 2, 2), (3, 2, 1), (2, 3, 2), (2, 4, 1)] {
            let norm = misiurewicz(d, m, n, DEFAULT_BUDGET).unwrap().norm_form;
            if !matches!(irreducibility_certificate(&norm), IrreducibilityCertificate::Certified(_)) {
                continue;
            }
            let k = NumberField::new(&norm).unwrap();
            assert_eq!(exact_type(&k, d, m + n + 4).unwrap().kind, ExactKind::Preperiodic { m, n }, "{d} {m} {n}");
        }
    }

    #[test]
    fn gleason_identity_reverified() {
        let zx = zx();
        for (d, n) in [(2u64, 6usize), (3, 4), (2, 5)] {
            let g = gleason(d, n, DEFAULT_BUDGET).unwrap();
            let mut seq = OrbitSeq::new(d, DEFAULT_BUDGET).unwrap();
            let (mut lhs, mut rhs): (Poly<BigInt>, Poly<BigInt>) = (g, zx.one());
            for k in divisors(n as u64) {
                let a = seq.get(k as usize).unwrap().clone();
                match mobius(n as u64 / k) {
                    -1 => lhs = zx.mul(&lhs, &a),
                    1 => rhs = zx.mul(&rhs, &a),
                    _ => {}
                }
            }
            assert_eq!(lhs, rhs);
        }
    }
}
