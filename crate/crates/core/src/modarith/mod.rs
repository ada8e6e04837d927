//! Arithmetic and factorization over prime fields and their extensions; Hensel lifting.

pub mod factor;
pub mod fp;
pub mod fq;
pub mod hensel;

pub use factor::{achievable_degrees, is_irreducible, FiniteField, DEFAULT_SEED};
pub use fp::{is_prime, primes, small_prime_factors, FpPoly, PrimeField};
pub use fq::FqContext;
pub use hensel::{hensel_lift, seeds_from_factorization, LiftedFactorization, DEFAULT_PRECISION};

use crate::exactpoly::{IntPoly, Poly};

/// Factor `g` over `F_p`.
pub fn fp_factor(g: &FpPoly, p: u64, seed: u64) -> Vec<(FpPoly, usize)> {
    factor::factor(&PrimeField::new(p), g, seed)
}

/// Factor an integer polynomial reduced mod p.
pub fn fp_factor_int(g: &IntPoly, p: u64, seed: u64) -> Vec<(FpPoly, usize)> {
    let fp = PrimeField::new(p);
    factor::factor(&fp, &fp.reduce_poly(g), seed)
}

/// Factor a polynomial over an extension field.
pub fn fq_factor(ctx: &FqContext, g: &Poly<FpPoly>, seed: u64) -> Vec<(Poly<FpPoly>, usize)> {
    factor::factor(ctx, g, seed)
}
