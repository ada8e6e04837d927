use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactpoly::{Field, Ring};
use crate::numberfield::{NfElem, NfPoly, NumberField};
use crate::pcforbits::{check_budget, ExactKind, ExactType};

/// `f^0 = x, f^1, f^2, ...` for `f = x^d + c_0` over `K`, computed on demand.
pub struct IterateCache<'f> {
    field: &'f NumberField,
    d: u64,
    budget: u128,
    iterates: Vec<NfPoly>,
}

impl<'f> IterateCache<'f> {
    pub fn new(field: &'f NumberField, d: u64, budget: u128) -> Result<Self> {
        if !crate::modarith::is_prime(d) {
            return Err(Error::InvalidInput(format!("d = {d} must be prime")));
        }
        Ok(IterateCache { field, d, budget, iterates: vec![field.poly_ring().x()] })
    }

    pub fn field(&self) -> &'f NumberField {
        self.field
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn budget(&self) -> u128 {
        self.budget
    }

    /// `f^k`.
    pub fn get(&mut self, k: usize) -> Result<&NfPoly> {
        check_budget(self.d, k as u32, self.budget)?;
        while self.iterates.len() <= k {
            let next = self.step(self.iterates.last().unwrap());
            self.iterates.push(next);
        }
        Ok(&self.iterates[k])
    }

    /// `f^{k+1} = (f^k)^d + c_0`; for `k >= 1` the power is taken in `y = x^d`.
    fn step(&self, prev: &NfPoly) -> NfPoly {
        let kx = self.field.poly_ring();
        let d = self.d as usize;
        let c0 = self.field.generator();
        if prev.degree() == Some(1) {
            return kx.add_constant(&kx.pow(prev, self.d), &c0);
        }
        let compressed = kx.from_coeffs(prev.coeffs().iter().step_by(d).cloned().collect());
        let powered = kx.add_constant(&kx.pow(&compressed, self.d), &c0);
        let mut out = vec![self.field.zero(); (powered.len() - 1) * d + 1];
        for (i, c) in powered.coeffs().iter().enumerate() {
            out[i * d] = c.clone();
        }
        kx.from_coeffs(out)
    }
}

/// `f^k = x^{d^k} + middle + constant`, with the shape invariants checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterateForm {
    pub k: usize,
    pub poly: NfPoly,
    /// Terms of degree `d..d^k - 1`, every coefficient divisible by `d`.
    pub middle: NfPoly,
    pub constant: NfElem,
    /// `a_k(c_0) / a_{gcd(k, n)}(c_0)` for a preperiodic parameter; a unit.
    pub unit_residual: Option<NfElem>,
}

/// Whether `x / d` has an integral representative.
pub(crate) fn divisible_by(x: &NfElem, d: u64) -> bool {
    let bd = BigInt::from(d);
    x.den() == &BigInt::from(1) && x.num().iter().all(|a| a.is_multiple_of(&bd))
}

/// Split `f^k` and check the shape `x^{d^k} + d x^d F(x) + a_k(c_0)`.
pub fn structural_form(cache: &mut IterateCache<'_>, k: usize, ty: &ExactType) -> Result<IterateForm> {
    if k == 0 {
        return Err(Error::InvalidInput("structural form needs k >= 1".into()));
    }
    let field = cache.field();
    let d = cache.d();
    let poly = cache.get(k)?.clone();
    let bad = |why: String| Err(Error::ShapeViolation(format!("f^{k}: {why}")));
    let constant = match super::check_shape(field, d, &poly, k) {
        Ok(c) => c,
        Err(why) => return bad(why),
    };
    let top = poly.degree().unwrap();
    let mut middle = poly.coeffs()[..top].to_vec();
    middle[0] = field.zero();
    let middle = field.poly_ring().from_coeffs(middle);

    let orbit_at = |i: usize| -> NfElem { crate::pcforbits::orbit_value(field, d, i) };
    let a_k = orbit_at(k);
    if constant != a_k {
        return bad(format!("constant {constant} differs from a_{k}(c0) = {a_k}"));
    }
    let unit_residual = match ty.kind {
        ExactKind::Periodic { n } => {
            let i = k % n;
            if constant != ty.orbit[i] {
                return bad(format!("constant is not a_{i}(c0)"));
            }
            None
        }
        ExactKind::Preperiodic { n, .. } => {
            let i = k.gcd(&n);
            let u = field.div(&a_k, &orbit_at(i)).ok_or_else(|| Error::NotUnit(format!("a_{i}(c0) = 0")))?;
            if !field.is_unit(&u)? {
                return Err(Error::NotUnit(format!("a_{k}(c0) / a_{i}(c0) = {u}")));
            }
            Some(u)
        }
    };
    Ok(IterateForm { k, poly, middle, constant, unit_residual })
}
