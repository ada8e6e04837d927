//! Reduction of `K`-polynomials modulo primes of `Z[c_0]`: coprimality certificates and
//! a multimodular resultant.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::field::{NfElem, NumberField};
use crate::error::{Error, Result};
use crate::exactpoly::{Field, Poly, PolyRing, Ring};
use crate::modarith::{fp_factor_int, is_prime, FpPoly, FqContext, PrimeField};

/// First prime tried by the coprimality certificate.
const COPRIME_PRIME_START: u64 = 1_000_003;
const COPRIME_ATTEMPTS: usize = 8;
/// Primes for the multimodular resultant start just below `2^31`.
const CRT_PRIME_START: u64 = (1 << 31) - 1;
/// Consecutive unchanged reconstructions required before accepting.
const STABLE_ROUNDS: usize = 3;
const CRT_MAX_PRIMES: usize = 4096;

/// The residue map `Z_(p)[c_0] -> F_p[t]/(G)` for an irreducible factor `G` of `g mod p`.
#[derive(Clone, Debug)]
pub struct ResidueMap {
    pub p: u64,
    pub ctx: FqContext,
}

impl ResidueMap {
    /// One map per irreducible factor of `g mod p`, for `p` not dividing `disc g`.
    pub fn all(field: &NumberField, p: u64) -> Option<Vec<ResidueMap>> {
        if !is_prime(p) || field.disc().is_multiple_of(&BigInt::from(p)) {
            return None;
        }
        let fac = fp_factor_int(field.g(), p, field.seed());
        Some(fac.into_iter().map(|(h, _)| ResidueMap { p, ctx: FqContext::new(p, h).unwrap() }).collect())
    }

    /// Image of a `p`-integral element.
    pub fn map(&self, x: &NfElem) -> Option<FpPoly> {
        let fp = self.ctx.prime_field();
        let d = fp.reduce_int(x.den());
        let dinv = fp.inv(&d)?;
        let num = self.ctx.from_int_poly(&x.num_poly());
        Some(self.ctx.mul(&num, &self.ctx.from_int(&BigInt::from(dinv))))
    }

    pub fn map_poly(&self, a: &Poly<NfElem>) -> Option<Poly<FpPoly>> {
        let v = a.coeffs().iter().map(|c| self.map(c)).collect::<Option<Vec<_>>>()?;
        Some(PolyRing::new(&self.ctx).from_coeffs(v))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoprimeWitness {
    pub p: u64,
    /// The residue factor `G`, ascending coefficients mod `p`.
    pub factor: Vec<u64>,
}

/// Certify `gcd(a, b) = 1` over `K` by a residue field where both leading coefficients
/// survive and the images are coprime; `Res(a, b)` then reduces to a nonzero value.
pub fn coprime_certificate(field: &NumberField, a: &Poly<NfElem>, b: &Poly<NfElem>) -> Option<CoprimeWitness> {
    let mut p = COPRIME_PRIME_START;
    let mut tried = 0;
    while tried < COPRIME_ATTEMPTS {
        p += 1;
        if !is_prime(p) {
            continue;
        }
        let Some(maps) = ResidueMap::all(field, p) else { continue };
        tried += 1;
        // smallest residue field is cheapest
        let map = maps.iter().min_by_key(|m| m.ctx.modulus().degree()).unwrap();
        if let Some(w) = check_coprime_at(map, a, b) {
            return Some(w);
        }
    }
    None
}

fn check_coprime_at(map: &ResidueMap, a: &Poly<NfElem>, b: &Poly<NfElem>) -> Option<CoprimeWitness> {
    let ra = map.map_poly(a)?;
    let rb = map.map_poly(b)?;
    if ra.degree() != a.degree() || rb.degree() != b.degree() {
        return None;
    }
    let rx = PolyRing::new(&map.ctx);
    rx.is_one(&rx.gcd(&ra, &rb)).then(|| CoprimeWitness { p: map.p, factor: map.ctx.modulus().coeffs().to_vec() })
}

/// Replay a coprimality witness.
pub fn replay_coprime(field: &NumberField, a: &Poly<NfElem>, b: &Poly<NfElem>, w: &CoprimeWitness) -> bool {
    let fp = PrimeField::new(w.p);
    let h = fp.poly_ring().from_coeffs(w.factor.clone());
    if !fp.poly_ring().divides(&h, &fp.reduce_poly(field.g())) {
        return false;
    }
    match FqContext::new(w.p, h) {
        Ok(ctx) => check_coprime_at(&ResidueMap { p: w.p, ctx }, a, b).is_some(),
        Err(_) => false,
    }
}

/// Exact gcd over `K` by the monic Euclidean algorithm.
pub fn exact_gcd(field: &NumberField, a: &Poly<NfElem>, b: &Poly<NfElem>) -> Poly<NfElem> {
    field.poly_ring().gcd(a, b)
}

/// Least common denominator of the coefficients.
fn common_den(a: &Poly<NfElem>) -> BigInt {
    a.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.den()))
}

/// CRT data for reconstructing `F_p[t]/(g)` from its factors.
struct SplitContext {
    maps: Vec<ResidueMap>,
    /// `e_i` with `e_i = 1 mod G_i`, `e_i = 0 mod G_j`.
    idempotents: Vec<FpPoly>,
    g_mod_p: FpPoly,
}

impl SplitContext {
    fn new(field: &NumberField, p: u64) -> Option<Self> {
        let maps = ResidueMap::all(field, p)?;
        let fp = PrimeField::new(p);
        let px = fp.poly_ring();
        let g_mod_p = fp.reduce_poly(field.g());
        let idempotents = maps
            .iter()
            .map(|m| {
                let gi = m.ctx.modulus();
                let cof = px.exact_div(&g_mod_p, gi).unwrap();
                let (_, s, _) = px.xgcd(&cof, gi);
                px.rem(&px.mul(&s, &cof), &g_mod_p).unwrap()
            })
            .collect();
        Some(SplitContext { maps, idempotents, g_mod_p })
    }

    fn combine(&self, parts: &[FpPoly]) -> FpPoly {
        let fp = *self.maps[0].ctx.prime_field();
        let px = fp.poly_ring();
        let sum = parts.iter().zip(&self.idempotents).fold(px.from_coeffs(vec![]), |acc, (r, e)| {
            px.add(&acc, &px.mul(r, e))
        });
        px.rem(&sum, &self.g_mod_p).unwrap()
    }
}

fn crt_step(acc: &mut [BigInt], modulus: &BigInt, residues: &[u64], p: u64) {
    let bp = BigInt::from(p);
    let minv = {
        let e = (modulus % &bp).extended_gcd(&bp);
        e.x.mod_floor(&bp)
    };
    for (a, &r) in acc.iter_mut().zip(residues) {
        let diff = (BigInt::from(r) - &*a).mod_floor(&bp);
        let t = (diff * &minv).mod_floor(&bp);
        *a += modulus * t;
    }
}

fn symmetric(acc: &[BigInt], modulus: &BigInt) -> Vec<BigInt> {
    let half: BigInt = modulus >> 1;
    acc.iter().map(|a| if a > &half { a - modulus } else { a.clone() }).collect()
}

/// `Res(a, b)` over `K` by reduction modulo many primes and CRT, accepted once the
/// symmetric reconstruction is unchanged for several consecutive primes.
pub fn resultant_multimodular(field: &NumberField, a: &Poly<NfElem>, b: &Poly<NfElem>) -> Result<NfElem> {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return Ok(field.zero());
    };
    // clear denominators: Res(Da a, Db b) = Da^{deg b} Db^{deg a} Res(a, b)
    let den_a = common_den(a);
    let den_b = common_den(b);
    let kx = field.poly_ring();
    let ai = kx.scale(a, &field.from_int(&den_a));
    let bi = kx.scale(b, &field.from_int(&den_b));
    let n = field.degree();
    let mut acc = vec![BigInt::zero(); n];
    let mut modulus = BigInt::one();
    let mut last: Option<Vec<BigInt>> = None;
    let mut stable = 0;
    let mut used = 0;
    let mut p = CRT_PRIME_START;
    while used < CRT_MAX_PRIMES {
        p -= 1;
        if !is_prime(p) {
            continue;
        }
        let Some(split) = SplitContext::new(field, p) else { continue };
        let mut parts = Vec::with_capacity(split.maps.len());
        let mut ok = true;
        for m in &split.maps {
            let (Some(ra), Some(rb)) = (m.map_poly(&ai), m.map_poly(&bi)) else {
                ok = false;
                break;
            };
            if ra.degree() != Some(da) || rb.degree() != Some(db) {
                ok = false;
                break;
            }
            parts.push(PolyRing::new(&m.ctx).resultant(&ra, &rb));
        }
        if !ok {
            continue;
        }
        let r = split.combine(&parts);
        let residues: Vec<u64> = (0..n).map(|i| r.coeff(i).copied().unwrap_or(0)).collect();
        crt_step(&mut acc, &modulus, &residues, p);
        modulus *= p;
        used += 1;
        let cur = symmetric(&acc, &modulus);
        if last.as_ref() == Some(&cur) {
            stable += 1;
            if stable >= STABLE_ROUNDS {
                let res = field.elem(cur, BigInt::one())?;
                let scale = field.mul(
                    &field.pow(&field.from_int(&den_a), db as u64),
                    &field.pow(&field.from_int(&den_b), da as u64),
                );
                return Ok(field.div(&res, &scale).unwrap());
            }
        } else {
            stable = 0;
        }
        last = Some(cur);
    }
    Err(Error::OracleMismatch(format!("multimodular resultant did not stabilize after {used} primes")))
}

/// `disc(a) = (-1)^{n(n-1)/2} Res(a, a') / lc(a)`, by the multimodular resultant.
pub fn discriminant_multimodular(field: &NumberField, a: &Poly<NfElem>) -> Result<NfElem> {
    let n = a.degree().ok_or_else(|| Error::InvalidInput("discriminant of zero".into()))?;
    if n == 0 {
        return Err(Error::InvalidInput("discriminant of a constant".into()));
    }
    let kx = field.poly_ring();
    let r = resultant_multimodular(field, a, &kx.derivative(a))?;
    let r = field.div(&r, a.lead().unwrap()).unwrap();
    Ok(if (n * (n - 1) / 2) % 2 == 1 { field.neg(&r) } else { r })
}
