//! Linear Hensel lifting of a coprime factorization mod p to mod p^T.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::fp::{FpPoly, PrimeField};
use crate::error::{Error, Result};
use crate::exactpoly::{zx, IntPoly, IntegersMod, Poly, PolyRing};

/// Default lifting precision.
pub const DEFAULT_PRECISION: u32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedFactorization {
    pub p: u64,
    pub precision: u32,
    pub modulus: BigInt,
    /// Monic lifts with coefficients in `[0, p^T)`, in seed order.
    pub factors: Vec<IntPoly>,
    pub seeds: Vec<FpPoly>,
    /// Bezout pairs `(s, t)` mod p for each split `f_i * (f_{i+1} ... f_r)`.
    pub bezout: Vec<(FpPoly, FpPoly)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub poly: crate::exactpoly::json::IntPolyJson,
    pub multiplicity: usize,
}

/// Serialize a factorization mod p as a JSON list.
pub fn factorization_json(factors: &[(FpPoly, usize)], fp: &PrimeField, var: &str) -> Vec<FactorJson> {
    factors
        .iter()
        .map(|(f, m)| FactorJson {
            poly: crate::exactpoly::json::IntPolyJson::from_poly(&fp.lift_poly(f), var),
            multiplicity: *m,
        })
        .collect()
}

/// Expand `(factor, multiplicity)` pairs into a seed list.
pub fn seeds_from_factorization(factors: &[(FpPoly, usize)]) -> Vec<FpPoly> {
    factors.iter().flat_map(|(f, m)| std::iter::repeat_n(f.clone(), *m)).collect()
}

fn to_fp(fp: &PrimeField, p: &IntPoly) -> FpPoly {
    fp.reduce_poly(p)
}

/// One factor pair `g = a * b mod p^T` lifted from `a, b mod p`.
fn lift_pair(
    g: &IntPoly,
    a0: &FpPoly,
    b0: &FpPoly,
    fp: &PrimeField,
    precision: u32,
) -> Result<(IntPoly, IntPoly, (FpPoly, FpPoly))> {
    let p = fp.p();
    let px = PolyRing::new(fp);
    let (gcd, s, t) = px.xgcd(a0, b0);
    if !px.is_one(&gcd) {
        return Err(Error::NotSquarefree(p));
    }
    let big_p = BigInt::from(p);
    let full = IntegersMod::new(num_traits::pow(big_p.clone(), precision as usize));
    let zx_full = PolyRing::new(&full);
    let mut a = fp.lift_poly(a0);
    let mut b = fp.lift_poly(b0);
    let mut pj = big_p.clone();
    for _ in 1..precision {
        // e = (g - a b) / p^j mod p
        let diff = zx_full.sub(&zx_full.from_coeffs(g.coeffs().to_vec()), &zx_full.mul(&a, &b));
        let e = zx().from_coeffs(
            diff.coeffs()
                .iter()
                .map(|c| {
                    debug_assert!(c.is_multiple_of(&pj));
                    c / &pj
                })
                .collect(),
        );
        let e = to_fp(fp, &e);
        if !e.is_zero() {
            let te = px.mul(&t, &e);
            let (_, da) = px.divrem(&te, a0).unwrap();
            let rest = px.sub(&e, &px.mul(b0, &da));
            let db = px.exact_div(&rest, a0).map_err(|_| Error::NotSquarefree(p))?;
            let da_l = fp.lift_poly(&da);
            let db_l = fp.lift_poly(&db);
            a = zx_full.add(&a, &zx().scale(&da_l, &pj));
            b = zx_full.add(&b, &zx().scale(&db_l, &pj));
        }
        pj *= &big_p;
    }
    Ok((a, b, (s, t)))
}

/// Lift a squarefree factorization of monic `g` mod p to mod `p^precision`.
pub fn hensel_lift(g: &IntPoly, seeds: &[FpPoly], p: u64, precision: u32) -> Result<LiftedFactorization> {
    if precision == 0 {
        return Err(Error::InvalidInput("precision must be at least 1".into()));
    }
    if !crate::exactpoly::intpoly::is_monic_int(g) {
        return Err(Error::InvalidInput("hensel_lift needs a monic polynomial".into()));
    }
    let fp = PrimeField::new(p);
    let px = PolyRing::new(&fp);
    let seeds: Vec<FpPoly> = seeds.iter().map(|s| px.monic(s)).collect();
    for i in 0..seeds.len() {
        for j in i + 1..seeds.len() {
            if !px.is_one(&px.gcd(&seeds[i], &seeds[j])) {
                return Err(Error::NotSquarefree(p));
            }
        }
    }
    let prod = px.product(seeds.iter());
    if prod != to_fp(&fp, g) {
        return Err(Error::InvalidInput(format!("seed factors do not multiply to g mod {p}")));
    }
    let modulus = num_traits::pow(BigInt::from(p), precision as usize);
    let full = IntegersMod::new(modulus.clone());
    let mut rest = PolyRing::new(&full).from_coeffs(g.coeffs().iter().map(|c| full.reduce(c)).collect());
    let mut factors = Vec::with_capacity(seeds.len());
    let mut bezout = Vec::new();
    for i in 0..seeds.len() {
        if i + 1 == seeds.len() {
            factors.push(rest.clone());
            break;
        }
        let tail = px.product(seeds[i + 1..].iter());
        let (a, b, st) = lift_pair(&rest, &seeds[i], &tail, &fp, precision)?;
        factors.push(a);
        bezout.push(st);
        rest = b;
    }
    Ok(LiftedFactorization { p, precision, modulus, factors, seeds, bezout })
}

impl LiftedFactorization {
    /// Re-verify `prod factors = g mod p^T`.
    pub fn verify(&self, g: &IntPoly) -> bool {
        let full = IntegersMod::new(self.modulus.clone());
        let r = PolyRing::new(&full);
        let prod = r.product(self.factors.iter());
        prod == r.from_coeffs(g.coeffs().iter().map(|c| full.reduce(c)).collect())
    }
}

impl From<&LiftedFactorization> for Vec<Poly<BigInt>> {
    fn from(l: &LiftedFactorization) -> Self {
        l.factors.clone()
    }
}
