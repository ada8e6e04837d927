use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::irred::{irreducibility_certificate_seeded, IrreducibilityCertificate};
use crate::error::{Error, Result};
use crate::modarith::DEFAULT_SEED;
use crate::exactpoly::json::{parse_rat_poly, IntPolyJson};
use crate::exactpoly::{
    int_discriminant, int_resultant, intpoly::is_monic_int, qx, to_rat, zx, Field, IntPoly, Poly, PolyRing, RatPoly, Ring,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IrreducibilityStatus {
    Certified,
    AssumedByUser,
}

/// `K = Q[c]/(g)` for monic integral `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    g: IntPoly,
    degree: usize,
    disc: BigInt,
    status: IrreducibilityStatus,
    certificate: IrreducibilityCertificate,
    /// `power_sums[j] = Tr(c^j)` for `j < degree`.
    power_sums: Vec<BigInt>,
    /// Seed for randomized factorization modulo primes.
    seed: u64,
}

/// `num(c) / den` with `deg num < deg g`, `den > 0`, `gcd(content(num), den) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NfElem {
    num: Vec<BigInt>,
    den: BigInt,
}

impl NfElem {
    pub fn num(&self) -> &[BigInt] {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn num_poly(&self) -> IntPoly {
        zx().from_coeffs(self.num.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_integral_rep(&self) -> bool {
        self.den.is_one()
    }

    /// The rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.num.len() {
            0 => Some(BigRational::zero()),
            1 => Some(BigRational::new(self.num[0].clone(), self.den.clone())),
            _ => None,
        }
    }

    fn normalized(mut num: Vec<BigInt>, mut den: BigInt) -> NfElem {
        while num.last().is_some_and(Zero::is_zero) {
            num.pop();
        }
        if num.is_empty() {
            return NfElem { num, den: BigInt::one() };
        }
        if den.is_negative() {
            den = -den;
            num.iter_mut().for_each(|c| *c = -&*c);
        }
        if !den.is_one() {
            let g = num.iter().fold(den.clone(), |acc, c| acc.gcd(c));
            if !g.is_one() {
                num.iter_mut().for_each(|c| *c /= &g);
                den /= &g;
            }
        }
        NfElem { num, den }
    }
}

impl fmt::Display for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = crate::exactpoly::format_int_poly(&self.num_poly(), "c");
        if self.den.is_one() {
            write!(f, "{body}")
        } else if self.num.len() <= 1 {
            write!(f, "{body}/{}", self.den)
        } else {
            write!(f, "({body})/{}", self.den)
        }
    }
}

impl NumberField {
    /// Build `K`, certifying irreducibility of `g` when possible.
    pub fn new(g: &IntPoly) -> Result<Self> {
        Self::new_seeded(g, DEFAULT_SEED)
    }

    /// As [`NumberField::new`], with `seed` driving every modular factorization.
    pub fn new_seeded(g: &IntPoly, seed: u64) -> Result<Self> {
        Self::check_defining(g)?;
        let cert = irreducibility_certificate_seeded(g, seed);
        let status = match &cert {
            IrreducibilityCertificate::Certified(_) => IrreducibilityStatus::Certified,
            IrreducibilityCertificate::Refuted(why) => return Err(Error::Reducible(why.to_string())),
            IrreducibilityCertificate::Inconclusive(_) => IrreducibilityStatus::AssumedByUser,
        };
        Ok(Self::build(g, status, cert).with_seed(seed))
    }

    /// Build `K` without running the irreducibility certificate; the field is tainted.
    pub fn assume_irreducible(g: &IntPoly) -> Result<Self> {
        Self::check_defining(g)?;
        let cert = IrreducibilityCertificate::Inconclusive("assumed by caller".into());
        Ok(Self::build(g, IrreducibilityStatus::AssumedByUser, cert))
    }

    fn check_defining(g: &IntPoly) -> Result<()> {
        if g.degree().unwrap_or(0) == 0 || !is_monic_int(g) {
            return Err(Error::InvalidInput("defining polynomial must be monic and nonconstant".into()));
        }
        Ok(())
    }

    fn build(g: &IntPoly, status: IrreducibilityStatus, certificate: IrreducibilityCertificate) -> Self {
        let degree = g.degree().unwrap();
        let disc = if degree == 1 { BigInt::one() } else { int_discriminant(g) };
        let power_sums = newton_power_sums(g, degree);
        NumberField { g: g.clone(), degree, disc, status, certificate, power_sums, seed: DEFAULT_SEED }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn g(&self) -> &IntPoly {
        &self.g
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    pub fn status(&self) -> IrreducibilityStatus {
        self.status
    }

    pub fn certificate(&self) -> &IrreducibilityCertificate {
        &self.certificate
    }

    /// True when irreducibility of `g` was assumed rather than certified.
    pub fn tainted(&self) -> bool {
        self.status == IrreducibilityStatus::AssumedByUser
    }

    /// The class `c_0` of `c`.
    pub fn generator(&self) -> NfElem {
        self.from_int_poly(&zx().x())
    }

    pub fn poly_ring(&self) -> PolyRing<'_, NumberField> {
        PolyRing::new(self)
    }

    /// Reduce an integer polynomial in `c` modulo `g`.
    pub fn from_int_poly(&self, p: &IntPoly) -> NfElem {
        let r = zx().rem(p, &self.g).unwrap();
        NfElem::normalized(r.into_coeffs(), BigInt::one())
    }

    pub fn from_rat_poly(&self, p: &RatPoly) -> NfElem {
        let (den, num) = crate::exactpoly::clear_denominators(p);
        let r = zx().rem(&num, &self.g).unwrap();
        NfElem::normalized(r.into_coeffs(), den)
    }

    pub fn from_rational(&self, q: &BigRational) -> NfElem {
        NfElem::normalized(vec![q.numer().clone()], q.denom().clone())
    }

    pub fn to_rat_poly(&self, x: &NfElem) -> RatPoly {
        qx().from_coeffs(x.num.iter().map(|c| BigRational::new(c.clone(), x.den.clone())).collect())
    }

    /// Build an element from raw parts, normalizing.
    pub fn elem(&self, num: Vec<BigInt>, den: BigInt) -> Result<NfElem> {
        if den.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Ok(self.from_rat_poly(&qx().from_coeffs(
            num.into_iter().map(|c| BigRational::new(c, den.clone())).collect(),
        )))
    }

    /// Parse a literal such as `4`, `-3/2`, or `c^2 + 1` (in `c_0`).
    pub fn parse_elem(&self, s: &str) -> Result<NfElem> {
        Ok(self.from_rat_poly(&parse_rat_poly(s, 'c')?))
    }

    /// Reduce a length `<= 2 deg g - 1` integer vector modulo monic `g`, in place.
    fn reduce_vec(&self, v: &mut Vec<BigInt>) {
        let n = self.degree;
        let g = self.g.coeffs();
        while v.len() > n {
            let top = v.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = v.len() - n;
            for (j, gj) in g[..n].iter().enumerate() {
                if !gj.is_zero() {
                    v[shift + j] -= &top * gj;
                }
            }
        }
    }

    /// `N_{K/Q}(x) = Res(g, num) / den^{deg g}`.
    pub fn norm(&self, x: &NfElem) -> BigRational {
        if x.is_zero() {
            return BigRational::zero();
        }
        let r = if self.degree == 1 {
            // Res(c - r, num) = num(r) for the constant representative
            x.num[0].clone()
        } else if x.num.len() == 1 {
            num_traits::pow(x.num[0].clone(), self.degree)
        } else {
            int_resultant(&self.g, &x.num_poly())
        };
        BigRational::new(r, num_traits::pow(x.den.clone(), self.degree))
    }

    pub fn trace(&self, x: &NfElem) -> BigRational {
        let s: BigInt = x.num.iter().zip(&self.power_sums).map(|(a, p)| a * p).sum();
        BigRational::new(s, x.den.clone())
    }

    /// Whether an algebraic integer is a unit; errors on non-integral input.
    pub fn is_unit(&self, x: &NfElem) -> Result<bool> {
        if !x.den.is_one() {
            return Err(Error::NotIntegral(format!("{x} has denominator {}", x.den)));
        }
        Ok(self.norm(x).abs().is_one())
    }

    pub fn to_json(&self) -> FieldJson {
        FieldJson { g: IntPolyJson::from_poly(&self.g, "c") }
    }

    pub fn elem_to_json(&self, x: &NfElem) -> ElemJson {
        ElemJson { num: IntPolyJson::from_poly(&x.num_poly(), "c"), den: x.den.to_string() }
    }

    pub fn elem_from_json(&self, j: &ElemJson) -> Result<NfElem> {
        let num = j.num.to_poly()?;
        let den = crate::exactpoly::json::parse_bigint(&j.den)?;
        if !den.is_positive() {
            return Err(Error::InvalidInput("element denominator must be positive".into()));
        }
        self.elem(num.into_coeffs(), den)
    }
}

/// `Tr(c^j)` for `j < n` by Newton's identities on monic `g`.
fn newton_power_sums(g: &IntPoly, n: usize) -> Vec<BigInt> {
    // g = c^n + e_1 c^{n-1} + ... with e_i = g[n - i]
    let e = |i: usize| g.coeffs()[n - i].clone();
    let mut p = vec![BigInt::from(n)];
    for k in 1..n {
        let mut s = -(BigInt::from(k) * e(k));
        for i in 1..k {
            s -= e(i) * &p[k - i];
        }
        p.push(s);
    }
    p
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub g: IntPolyJson,
}

impl FieldJson {
    pub fn to_field(&self) -> Result<NumberField> {
        NumberField::new(&self.g.to_poly()?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElemJson {
    pub num: IntPolyJson,
    pub den: String,
}

/// A polynomial over `K`, ascending coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NfPolyJson {
    pub var: String,
    pub coeffs: Vec<ElemJson>,
}

impl NfPolyJson {
    pub fn from_poly(field: &NumberField, p: &Poly<NfElem>) -> Self {
        NfPolyJson { var: "x".into(), coeffs: p.coeffs().iter().map(|c| field.elem_to_json(c)).collect() }
    }

    pub fn to_poly(&self, field: &NumberField) -> Result<Poly<NfElem>> {
        let v = self.coeffs.iter().map(|c| field.elem_from_json(c)).collect::<Result<Vec<_>>>()?;
        Ok(field.poly_ring().from_coeffs(v))
    }
}

impl Ring for NumberField {
    type Elem = NfElem;

    fn zero(&self) -> NfElem {
        NfElem { num: Vec::new(), den: BigInt::one() }
    }

    fn one(&self) -> NfElem {
        NfElem { num: vec![BigInt::one()], den: BigInt::one() }
    }

    fn is_zero(&self, a: &NfElem) -> bool {
        a.num.is_empty()
    }

    fn is_one(&self, a: &NfElem) -> bool {
        a.num.len() == 1 && a.num[0].is_one() && a.den.is_one()
    }

    fn add(&self, a: &NfElem, b: &NfElem) -> NfElem {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        if a.den == b.den {
            let n = a.num.len().max(b.num.len());
            let v = (0..n)
                .map(|i| match (a.num.get(i), b.num.get(i)) {
                    (Some(x), Some(y)) => x + y,
                    (Some(x), None) | (None, Some(x)) => x.clone(),
                    _ => unreachable!(),
                })
                .collect();
            return NfElem::normalized(v, a.den.clone());
        }
        let l = a.den.lcm(&b.den);
        let fa = &l / &a.den;
        let fb = &l / &b.den;
        let n = a.num.len().max(b.num.len());
        let v = (0..n)
            .map(|i| {
                let x = a.num.get(i).map(|x| x * &fa).unwrap_or_default();
                let y = b.num.get(i).map(|y| y * &fb).unwrap_or_default();
                x + y
            })
            .collect();
        NfElem::normalized(v, l)
    }

    fn neg(&self, a: &NfElem) -> NfElem {
        NfElem { num: a.num.iter().map(|c| -c).collect(), den: a.den.clone() }
    }

    fn sub(&self, a: &NfElem, b: &NfElem) -> NfElem {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &NfElem, b: &NfElem) -> NfElem {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut v = vec![BigInt::zero(); a.num.len() + b.num.len() - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                v[i + j] += x * y;
            }
        }
        self.reduce_vec(&mut v);
        if a.den.is_one() && b.den.is_one() {
            NfElem::normalized(v, BigInt::one())
        } else {
            NfElem::normalized(v, &a.den * &b.den)
        }
    }

    fn from_int(&self, n: &BigInt) -> NfElem {
        NfElem::normalized(vec![n.clone()], BigInt::one())
    }

    fn div_exact(&self, a: &NfElem, b: &NfElem) -> Option<NfElem> {
        self.div(a, b)
    }
}

impl Field for NumberField {
    fn inv(&self, a: &NfElem) -> Option<NfElem> {
        if a.is_zero() {
            return None;
        }
        if a.num.len() == 1 {
            return Some(NfElem::normalized(vec![a.den.clone()], a.num[0].clone()));
        }
        let q = qx();
        let (h, s, _) = q.xgcd(&to_rat(&a.num_poly()), &to_rat(&self.g));
        if h.degree() != Some(0) {
            // g reducible and sharing a factor with the element
            return None;
        }
        let s = q.scale(&s, &BigRational::from_integer(a.den.clone()));
        Some(self.from_rat_poly(&s))
    }
}
