//! Irreducibility certificates for a monic integer polynomial.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exactpoly::{format_int_poly, int_gcd, zx, IntPoly, IntegersMod, PolyRing};
use crate::modarith::{
    achievable_degrees, fp_factor_int, hensel_lift, primes, seeds_from_factorization, small_prime_factors,
    DEFAULT_SEED,
};

/// Primes tried for factor-degree evidence.
const PRIME_TRIALS: usize = 40;
/// Largest degree for the exhaustive recombination search.
const RECOMBINATION_MAX_DEGREE: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IrreducibilityWitness {
    Linear,
    /// `g` is irreducible modulo `p`.
    InertPrime { p: u64 },
    /// Factor degrees modulo each listed prime; the common subset sums are only `0` and `deg g`.
    DegreeSets { primes: Vec<(u64, Vec<usize>)> },
    /// No product of lifted factors modulo `p^precision` divides `g` over Z.
    Recombination { p: u64, precision: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RefutationWitness {
    RationalRoot { root: String },
    RepeatedFactor { factor: String },
    Factor { factor: String },
}

impl fmt::Display for RefutationWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RefutationWitness::RationalRoot { root } => write!(f, "rational root {root}"),
            RefutationWitness::RepeatedFactor { factor } => write!(f, "repeated factor {factor}"),
            RefutationWitness::Factor { factor } => write!(f, "factor {factor}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "witness")]
pub enum IrreducibilityCertificate {
    Certified(IrreducibilityWitness),
    Refuted(RefutationWitness),
    Inconclusive(String),
}

fn rational_root(g: &IntPoly) -> Option<BigInt> {
    let zx = zx();
    let c0 = g.coeff(0).cloned().unwrap_or_default();
    if c0.is_zero() {
        return Some(BigInt::zero());
    }
    let (ps, rest) = small_prime_factors(&c0, 100_000);
    if !rest.is_one() {
        return None;
    }
    // divisors of |g(0)|
    let mut divs = vec![BigInt::one()];
    for p in ps {
        let bp = BigInt::from(p);
        let mut n = c0.abs();
        let mut k = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            k += 1;
        }
        let mut next = Vec::new();
        for d in &divs {
            let mut m = d.clone();
            for _ in 0..=k {
                next.push(m.clone());
                m *= &bp;
            }
        }
        divs = next;
    }
    divs.sort();
    divs.into_iter().flat_map(|d| [d.clone(), -d]).find(|r| zx.eval(g, r).is_zero())
}

fn mignotte_modulus_exponent(g: &IntPoly, p: u64) -> u32 {
    let norm2: BigInt = g.coeffs().iter().map(|c| c * c).sum();
    let bound = (BigInt::one() << g.degree().unwrap()) * (norm2.sqrt() + 1u32);
    let target = bound * 2u32;
    let bp = BigInt::from(p);
    let mut t = 1;
    let mut m = bp.clone();
    while m <= target {
        m *= &bp;
        t += 1;
    }
    t
}

/// Exhaustive recombination of lifted modular factors; `Some(None)` proves irreducibility.
fn recombine(g: &IntPoly, p: u64, seed: u64) -> Option<Option<IntPoly>> {
    let seeds = seeds_from_factorization(&fp_factor_int(g, p, seed));
    let t = mignotte_modulus_exponent(g, p);
    let lifted = hensel_lift(g, &seeds, p, t).ok()?;
    let full = IntegersMod::new(lifted.modulus.clone());
    let ring = PolyRing::new(&full);
    let r = lifted.factors.len();
    for mask in 1u32..(1 << r) {
        if mask.count_ones() as usize * 2 > r {
            continue;
        }
        let prod = ring.product(
            (0..r).filter(|i| mask >> i & 1 == 1).map(|i| &lifted.factors[i]),
        );
        let cand = zx().from_coeffs(prod.coeffs().iter().map(|c| full.symmetric(c)).collect());
        if zx().divides(&cand, g) {
            return Some(Some(cand));
        }
    }
    Some(None)
}

/// Certify or refute irreducibility of monic `g` over Q.
pub fn irreducibility_certificate(g: &IntPoly) -> IrreducibilityCertificate {
    irreducibility_certificate_seeded(g, DEFAULT_SEED)
}

/// As [`irreducibility_certificate`], with an explicit factorization seed.
pub fn irreducibility_certificate_seeded(g: &IntPoly, seed: u64) -> IrreducibilityCertificate {
    use IrreducibilityCertificate::*;
    let n = match g.degree() {
        Some(n) if n >= 1 => n,
        _ => return Inconclusive("constant polynomial".into()),
    };
    if n == 1 {
        return Certified(IrreducibilityWitness::Linear);
    }
    if let Some(r) = rational_root(g) {
        return Refuted(RefutationWitness::RationalRoot { root: r.to_string() });
    }
    let zx = zx();
    let sq = int_gcd(g, &zx.derivative(g));
    if sq.degree().unwrap_or(0) > 0 {
        return Refuted(RefutationWitness::RepeatedFactor { factor: format_int_poly(&sq, "c") });
    }
    let disc = crate::exactpoly::int_discriminant(g);
    let mut common = vec![true; n + 1];
    let mut evidence = Vec::new();
    let mut best: Option<(usize, u64)> = None;
    for p in primes().filter(|&p| !(&disc % p).is_zero()).take(PRIME_TRIALS) {
        let fac = fp_factor_int(g, p, seed);
        let degrees: Vec<usize> = fac.iter().map(|(h, _)| h.degree().unwrap()).collect();
        if degrees.len() == 1 {
            return Certified(IrreducibilityWitness::InertPrime { p });
        }
        if best.is_none_or(|(r, _)| degrees.len() < r) {
            best = Some((degrees.len(), p));
        }
        let reach = achievable_degrees(&degrees);
        for (c, r) in common.iter_mut().zip(&reach) {
            *c &= *r;
        }
        evidence.push((p, degrees));
        if common.iter().filter(|&&c| c).count() == 2 {
            return Certified(IrreducibilityWitness::DegreeSets { primes: evidence });
        }
    }
    if n <= RECOMBINATION_MAX_DEGREE {
        if let Some((_, p)) = best {
            match recombine(g, p, seed) {
                Some(None) => {
                    let precision = mignotte_modulus_exponent(g, p);
                    return Certified(IrreducibilityWitness::Recombination { p, precision });
                }
                Some(Some(h)) => {
                    return Refuted(RefutationWitness::Factor { factor: format_int_poly(&h, "c") });
                }
                None => {}
            }
        }
    }
    let sizes: Vec<usize> = common.iter().enumerate().filter(|(_, &c)| c).map(|(i, _)| i).collect();
    Inconclusive(format!("possible factor degrees {sizes:?} after {} primes", evidence.len()))
}

impl IrreducibilityCertificate {
    /// Re-run the recorded check.
    pub fn replay(&self, g: &IntPoly) -> bool {
        match self {
            IrreducibilityCertificate::Certified(w) => match w {
                IrreducibilityWitness::Linear => g.degree() == Some(1),
                IrreducibilityWitness::InertPrime { p } => {
                    let fac = fp_factor_int(g, *p, DEFAULT_SEED);
                    fac.len() == 1 && fac[0].1 == 1
                }
                IrreducibilityWitness::DegreeSets { primes } => {
                    let n = g.degree().unwrap_or(0);
                    let mut common = vec![true; n + 1];
                    for (p, degs) in primes {
                        let fac = fp_factor_int(g, *p, DEFAULT_SEED);
                        let got: Vec<usize> = fac.iter().map(|(h, _)| h.degree().unwrap()).collect();
                        if &got != degs || fac.iter().any(|(_, m)| *m != 1) {
                            return false;
                        }
                        for (c, r) in common.iter_mut().zip(achievable_degrees(degs)) {
                            *c &= r;
                        }
                    }
                    common.iter().filter(|&&c| c).count() == 2
                }
                IrreducibilityWitness::Recombination { p, .. } => matches!(recombine(g, *p, DEFAULT_SEED), Some(None)),
            },
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::int_poly;

    #[test]
    fn examples() {
        let c = irreducibility_certificate(&int_poly(&[1, 1, 2, 1]));
        assert_eq!(c, IrreducibilityCertificate::Certified(IrreducibilityWitness::InertPrime { p: 2 }));
        let c = irreducibility_certificate(&int_poly(&[1, 0, 1]));
        assert_eq!(c, IrreducibilityCertificate::Certified(IrreducibilityWitness::InertPrime { p: 3 }));
        let c = irreducibility_certificate(&int_poly(&[2, 3, 1]));
        assert_eq!(c, IrreducibilityCertificate::Refuted(RefutationWitness::RationalRoot { root: "-1".into() }));
    }

    #[test]
    fn swinnerton_dyer_needs_recombination() {
        // x^4 - 10x^2 + 1 splits into factors of degree <= 2 modulo every prime
        let g = int_poly(&[1, 0, -10, 0, 1]);
        let c = irreducibility_certificate(&g);
        assert!(matches!(c, IrreducibilityCertificate::Certified(IrreducibilityWitness::Recombination { .. })));
        assert!(c.replay(&g));
    }

    #[test]
    fn product_of_quadratics_is_refuted() {
        // (x^2 + 1)(x^2 + x + 3)
        let g = zx().mul(&int_poly(&[1, 0, 1]), &int_poly(&[3, 1, 1]));
        let c = irreducibility_certificate(&g);
        assert!(matches!(c, IrreducibilityCertificate::Refuted(RefutationWitness::Factor { .. })), "{c:?}");
        let sq = zx().mul(&int_poly(&[1, 0, 1]), &int_poly(&[1, 0, 1]));
        assert!(matches!(
            irreducibility_certificate(&sq),
            IrreducibilityCertificate::Refuted(RefutationWitness::RepeatedFactor { .. })
        ));
    }

    #[test]
    fn replay_accepts_recorded_witnesses() {
        for g in [int_poly(&[1, 1, 2, 1]), int_poly(&[3, 0, 3, 0, 1]), int_poly(&[1, 0, 1, 2, 2, 2, 1])] {
            let c = irreducibility_certificate(&g);
            assert!(matches!(c, IrreducibilityCertificate::Certified(_)), "{c:?}");
            assert!(c.replay(&g));
        }
    }
}
