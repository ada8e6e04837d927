//! Arithmetic in `K = Q[c]/(g)`: norms, traces, units, primes above a rational prime
//! with their valuations, and modular helpers for polynomials over `K`.

mod field;
pub mod irred;
pub mod modular;
mod primes;

pub use field::{ElemJson, FieldJson, IrreducibilityStatus, NfElem, NfPolyJson, NumberField};
pub use irred::{irreducibility_certificate, irreducibility_certificate_seeded, IrreducibilityCertificate, IrreducibilityWitness, RefutationWitness};
pub use modular::{
    coprime_certificate, discriminant_multimodular, replay_coprime, resultant_multimodular, CoprimeWitness,
    ResidueMap,
};
pub use primes::{
    eisenstein_shift, is_eisenstein, eisenstein_valuation_formula, primes_above, rational_valuation, Backend, PrimeAbove,
    PrimeJson, Valuation,
};

/// A polynomial over `K`.
pub type NfPoly = crate::exactpoly::Poly<NfElem>;
