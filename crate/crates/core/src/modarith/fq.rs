use num_bigint::{BigInt, BigUint};

use super::factor::{is_irreducible, FiniteField};
use super::fp::{FpPoly, PrimeField};
use crate::error::{Error, Result};
use crate::exactpoly::{Field, Poly, PolyRing, Ring};

/// `F_p[t]/(h)` for an irreducible monic `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqContext {
    fp: PrimeField,
    h: FpPoly,
}

impl FqContext {
    pub fn new(p: u64, h: FpPoly) -> Result<Self> {
        let fp = PrimeField::new(p);
        let px = PolyRing::new(&fp);
        if h.degree().unwrap_or(0) == 0 {
            return Err(Error::InvalidInput("defining polynomial must be nonconstant".into()));
        }
        let h = px.monic(&h);
        if !is_irreducible(&fp, &h) {
            return Err(Error::Reducible(format!("defining polynomial {:?} mod {p}", h.coeffs())));
        }
        Ok(FqContext { fp, h })
    }

    /// The trivial extension `F_p` presented as `F_p[t]/(t)`.
    pub fn prime(p: u64) -> Self {
        let fp = PrimeField::new(p);
        let h = PolyRing::new(&fp).x();
        FqContext { fp, h }
    }

    pub fn prime_field(&self) -> &PrimeField {
        &self.fp
    }

    pub fn modulus(&self) -> &FpPoly {
        &self.h
    }

    pub fn p(&self) -> u64 {
        self.fp.p()
    }

    fn px(&self) -> PolyRing<'_, PrimeField> {
        PolyRing::new(&self.fp)
    }

    /// Reduce a polynomial in `t` with integer coefficients into the field.
    pub fn from_int_poly(&self, p: &Poly<BigInt>) -> FpPoly {
        self.embed(&self.fp.reduce_poly(p))
    }

    /// Reduce an `F_p[t]` polynomial mod `h`.
    pub fn embed(&self, a: &FpPoly) -> FpPoly {
        self.px().rem(a, &self.h).unwrap()
    }

    /// The class of `t`.
    pub fn generator(&self) -> FpPoly {
        self.embed(&self.px().x())
    }
}

impl Ring for FqContext {
    type Elem = FpPoly;

    fn zero(&self) -> FpPoly {
        Poly::zero()
    }
    fn one(&self) -> FpPoly {
        self.px().one()
    }
    fn is_zero(&self, a: &FpPoly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        self.px().add(a, b)
    }
    fn sub(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        self.px().sub(a, b)
    }
    fn neg(&self, a: &FpPoly) -> FpPoly {
        self.px().neg(a)
    }
    fn mul(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let prod = self.px().mul(a, b);
        if prod.len() <= self.h.degree().unwrap() {
            prod
        } else {
            self.px().rem(&prod, &self.h).unwrap()
        }
    }
    fn from_int(&self, n: &BigInt) -> FpPoly {
        self.px().constant(self.fp.reduce_int(n))
    }
    fn div_exact(&self, a: &FpPoly, b: &FpPoly) -> Option<FpPoly> {
        self.div(a, b)
    }
}

impl Field for FqContext {
    fn inv(&self, a: &FpPoly) -> Option<FpPoly> {
        if a.is_zero() {
            return None;
        }
        let (g, s, _) = self.px().xgcd(a, &self.h);
        debug_assert!(self.px().is_one(&g));
        Some(self.embed(&s))
    }
}

impl FiniteField for FqContext {
    fn characteristic(&self) -> u64 {
        self.fp.p()
    }

    fn extension_degree(&self) -> usize {
        self.h.degree().unwrap()
    }

    fn random_element<G: rand::Rng + ?Sized>(&self, rng: &mut G) -> FpPoly {
        let p = self.fp.p();
        let v = (0..self.extension_degree()).map(|_| rng.gen_range(0..p)).collect();
        self.px().from_coeffs(v)
    }
}

impl FiniteField for PrimeField {
    fn characteristic(&self) -> u64 {
        self.p()
    }

    fn extension_degree(&self) -> usize {
        1
    }

    fn random_element<G: rand::Rng + ?Sized>(&self, rng: &mut G) -> u64 {
        rng.gen_range(0..self.p())
    }
}

/// `p^f` as an arbitrary-precision integer.
pub fn field_order(p: u64, f: usize) -> BigUint {
    num_traits::pow(BigUint::from(p), f)
}
