use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exactpoly::{zx, IntPoly, Poly, PolyRing, Ring};

/// `Z[z]/Φ_d(z)` for prime `d`, elements in the power basis `1, z, ..., z^{d-2}`.
///
/// Every element is stored with exactly `d - 1` coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CycRing {
    d: usize,
}

pub type CycElem = Vec<BigInt>;
pub type CycPoly = Poly<CycElem>;

impl CycRing {
    pub fn new(d: u64) -> Self {
        assert!(crate::modarith::is_prime(d), "cyclotomic ring needs a prime, got {d}");
        CycRing { d: d as usize }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// The class `ζ` of `z`; equals `-1` when `d = 2`.
    pub fn zeta(&self) -> CycElem {
        self.reduce_cyclic(&{
            let mut v = vec![BigInt::zero(); self.d];
            v[1] = BigInt::one();
            v
        })
    }

    /// Reduce a vector indexed mod `d` (coefficients of `z^0..z^{d-1}`).
    fn reduce_cyclic(&self, v: &[BigInt]) -> CycElem {
        let top = &v[self.d - 1];
        v[..self.d - 1].iter().map(|a| a - top).collect()
    }

    /// The automorphism `z -> z^j`.
    pub fn conjugate(&self, a: &CycElem, j: usize) -> CycElem {
        let mut v = vec![BigInt::zero(); self.d];
        for (i, x) in a.iter().enumerate() {
            v[(i * j) % self.d] += x;
        }
        self.reduce_cyclic(&v)
    }

    /// The rational integer represented by `a`, if `a ∈ Z`.
    pub fn as_integer(&self, a: &CycElem) -> Option<BigInt> {
        a[1..].iter().all(Zero::is_zero).then(|| a[0].clone())
    }

    pub fn poly_ring(&self) -> PolyRing<'_, CycRing> {
        PolyRing::new(self)
    }

    /// Embed an integer polynomial in `c`.
    pub fn from_int_poly(&self, p: &IntPoly) -> CycPoly {
        zx().map(self, p, |c| self.from_int(c))
    }

    /// Coefficientwise conversion to `Z[c]`, when every coefficient is rational.
    pub fn to_int_poly(&self, p: &CycPoly) -> Option<IntPoly> {
        let v = p.coeffs().iter().map(|c| self.as_integer(c)).collect::<Option<Vec<_>>>()?;
        Some(zx().from_coeffs(v))
    }

    /// `Res_z(Φ_d(z), p)` as a polynomial in `c`: the product of the `d - 1` conjugates.
    pub fn norm_form(&self, p: &CycPoly) -> IntPoly {
        let r = self.poly_ring();
        let conjugates: Vec<CycPoly> = (1..self.d)
            .map(|j| r.from_coeffs(p.coeffs().iter().map(|c| self.conjugate(c, j)).collect()))
            .collect();
        let prod = r.product(conjugates.iter());
        self.to_int_poly(&prod).expect("norm of a cyclotomic polynomial is rational")
    }
}

impl Ring for CycRing {
    type Elem = CycElem;

    fn zero(&self) -> CycElem {
        vec![BigInt::zero(); self.d - 1]
    }

    fn one(&self) -> CycElem {
        let mut v = self.zero();
        v[0] = BigInt::one();
        v
    }

    fn is_zero(&self, a: &CycElem) -> bool {
        a.iter().all(Zero::is_zero)
    }

    fn add(&self, a: &CycElem, b: &CycElem) -> CycElem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn sub(&self, a: &CycElem, b: &CycElem) -> CycElem {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    fn neg(&self, a: &CycElem) -> CycElem {
        a.iter().map(|x| -x).collect()
    }

    fn mul(&self, a: &CycElem, b: &CycElem) -> CycElem {
        let mut v = vec![BigInt::zero(); self.d];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                v[(i + j) % self.d] += x * y;
            }
        }
        self.reduce_cyclic(&v)
    }

    fn from_int(&self, n: &BigInt) -> CycElem {
        let mut v = self.zero();
        v[0] = n.clone();
        v
    }

    /// Exact division by a rational integer; general divisors are not needed.
    fn div_exact(&self, a: &CycElem, b: &CycElem) -> Option<CycElem> {
        let n = self.as_integer(b)?;
        if n.is_zero() {
            return None;
        }
        a.iter()
            .map(|x| {
                let (q, r) = x.div_rem(&n);
                r.is_zero().then_some(q)
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycPolyJson {
    pub d: u64,
    pub coeffs: Vec<Vec<String>>,
}

impl CycPolyJson {
    pub fn from_poly(ring: &CycRing, p: &CycPoly) -> Self {
        CycPolyJson {
            d: ring.d() as u64,
            coeffs: p.coeffs().iter().map(|c| c.iter().map(|x| x.to_string()).collect()).collect(),
        }
    }
}

/// Render with `z` for `ζ`, descending degree in `c`.
pub fn format_cyc_poly(ring: &CycRing, p: &CycPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms = Vec::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if ring.is_zero(c) {
            continue;
        }
        let inner = crate::exactpoly::format_int_poly(&zx().from_coeffs(c.clone()), "z");
        let nonconstant = c[1..].iter().any(|x| !x.is_zero());
        let coef = if nonconstant { format!("({inner})") } else { inner };
        terms.push(match (i, coef.as_str()) {
            (0, _) => coef.clone(),
            (_, "1") => monomial(i),
            (_, "-1") => format!("-{}", monomial(i)),
            _ => format!("{coef}*{}", monomial(i)),
        });
    }
    let mut out = terms[0].clone();
    for t in &terms[1..] {
        match t.strip_prefix('-') {
            Some(rest) => out += &format!(" - {rest}"),
            None => out += &format!(" + {t}"),
        }
    }
    out
}

fn monomial(i: usize) -> String {
    if i == 1 {
        "c".into()
    } else {
        format!("c^{i}")
    }
}
