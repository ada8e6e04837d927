//! Certificates with a replayable witness trail.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::Ring;
use crate::factorengine::FactorLabel;
use crate::numberfield::{
    primes_above, CoprimeWitness, ElemJson, FieldJson, NfPolyJson, NumberField, PrimeJson, Valuation,
};
use crate::pcforbits::ExactKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Verified,
    Refuted,
    Inconclusive,
    Unsupported,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A recorded step that can be re-run from the certificate alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Check {
    /// Descriptive only.
    Note,
    /// The defining polynomial carries an irreducibility certificate.
    FieldIrreducible,
    /// `p ∤ disc(g)`.
    PrimeNotDividingDisc { p: u64 },
    /// Exact type of `c_0` found within `bound` steps.
    OrbitType { kind: ExactKind, bound: usize },
    /// `a_index(c_0) = value`.
    OrbitValue { index: usize, value: ElemJson },
    /// `v_P(elem) = value` for the prime at `index` in `primes_above(p)`.
    Valuation { p: u64, index: usize, elem: ElemJson, value: i64 },
    /// `elem` is an algebraic unit.
    Unit { elem: ElemJson },
    /// `N_{K/Q}(elem) = value`.
    Norm { elem: ElemJson, value: String },
    /// `value = ∏ factors`.
    Product { factors: Vec<ElemJson>, value: ElemJson },
    /// `Res_x(h, poly) = value`.
    RelativeNorm { h: NfPolyJson, poly: NfPolyJson, value: ElemJson },
    /// `f^k` has the shape `x^{d^k} + d x^d F(x) + constant`.
    IterateShape { k: usize, constant: ElemJson },
    /// `f^k - alpha` is Eisenstein at the prime at `index` above `p`.
    IterateEisenstein { k: usize, alpha: ElemJson, p: u64, index: usize },
    /// The closed-form product for period `n` expands to `f^k`.
    FactorExpansion { n: usize, k: usize },
    /// Two closed-form factors are coprime: by a residue-field witness, else by exact gcd.
    FactorCoprime { n: usize, a: FactorLabel, b: FactorLabel, witness: Option<CoprimeWitness> },
    /// A closed-form factor stays irreducible modulo the residue factor of `g mod p`.
    FactorResidueIrreducible { n: usize, label: FactorLabel, p: u64, factor: Vec<u64> },
    /// `Δ(f^k - x0) = value` by the iterate recursion.
    DiscIterate { k: usize, x0: ElemJson, value: ElemJson },
    /// `Δ(f^k - x0) / Δ(f^{k-1} - x0)^d = value`.
    DiscRatio { k: usize, x0: ElemJson, value: ElemJson },
    Sub { certificate: Box<Certificate> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub step: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<PrimeJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub valuation: Option<i64>,
    pub identity: String,
    pub check: Check,
}

impl Witness {
    pub fn new(step: impl Into<String>, identity: impl Into<String>, check: Check) -> Self {
        Witness { step: step.into(), prime: None, valuation: None, identity: identity.into(), check }
    }

    pub fn at(mut self, prime: PrimeJson, valuation: Option<i64>) -> Self {
        self.prime = Some(prime);
        self.valuation = valuation;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim: String,
    pub verdict: Verdict,
    pub field: FieldJson,
    pub d: u64,
    pub witnesses: Vec<Witness>,
    pub diagnostics: Vec<String>,
    /// Inherited from a field whose irreducibility was assumed.
    pub taint: bool,
}

impl Certificate {
    pub fn new(claim: impl Into<String>, field: &NumberField, d: u64) -> Self {
        Certificate {
            claim: claim.into(),
            verdict: Verdict::Inconclusive,
            field: field.to_json(),
            d,
            witnesses: Vec::new(),
            diagnostics: Vec::new(),
            taint: field.tainted(),
        }
    }

    pub fn push(&mut self, w: Witness) {
        self.witnesses.push(w);
    }

    pub fn note(&mut self, msg: impl Into<String>) {
        self.diagnostics.push(msg.into());
    }

    pub fn with_verdict(mut self, v: Verdict) -> Self {
        self.verdict = v;
        self
    }

    pub fn is_verified(&self) -> bool {
        self.verdict == Verdict::Verified
    }

    /// Rebuild the field named in the certificate, honoring the taint flag.
    pub fn rebuild_field(&self) -> Result<NumberField> {
        let g = self.field.g.to_poly()?;
        if self.taint {
            NumberField::assume_irreducible(&g)
        } else {
            NumberField::new(&g)
        }
    }
}

/// Re-run every recorded check of a certificate; `Ok(false)` on the first failing step.
pub fn replay(cert: &Certificate) -> Result<bool> {
    let field = cert.rebuild_field()?;
    for w in &cert.witnesses {
        if !replay_check(&field, cert.d, &w.check)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn replay_check(field: &NumberField, d: u64, check: &Check) -> Result<bool> {
    use crate::factorengine as fe;
    let elem = |j: &ElemJson| field.elem_from_json(j);
    Ok(match check {
        Check::Note => true,
        Check::FieldIrreducible => field.certificate().replay(field.g()),
        Check::PrimeNotDividingDisc { p } => !field.disc().is_multiple_of(&BigInt::from(*p)),
        Check::OrbitType { kind, bound } => crate::pcforbits::exact_type(field, d, *bound)?.kind == *kind,
        Check::OrbitValue { index, value } => crate::pcforbits::orbit_value(field, d, *index) == elem(value)?,
        Check::Valuation { p, index, elem: x, value } => {
            let primes = primes_above(field, *p, crate::modarith::DEFAULT_PRECISION)?;
            let prime = primes.get(*index).ok_or_else(|| Error::InvalidInput("prime index out of range".into()))?;
            prime.valuation(field, &elem(x)?) == Valuation::Finite(*value)
        }
        Check::Unit { elem: x } => field.is_unit(&elem(x)?)?,
        Check::Norm { elem: x, value } => {
            field.norm(&elem(x)?) == crate::exactpoly::json::parse_rational(value)?
        }
        Check::Product { factors, value } => {
            let mut acc = field.one();
            for f in factors {
                acc = field.mul(&acc, &elem(f)?);
            }
            acc == elem(value)?
        }
        Check::RelativeNorm { h, poly, value } => {
            crate::obstructions::relative_norm(field, &h.to_poly(field)?, &poly.to_poly(field)?) == elem(value)?
        }
        Check::IterateShape { k, constant } => {
            let mut cache = fe::IterateCache::new(field, d, u128::MAX)?;
            fe::shape_constant(&mut cache, *k)? == Some(elem(constant)?)
        }
        Check::IterateEisenstein { k, alpha, p, index } => {
            let primes = primes_above(field, *p, crate::modarith::DEFAULT_PRECISION)?;
            let prime = primes.get(*index).ok_or_else(|| Error::InvalidInput("prime index out of range".into()))?;
            let mut cache = fe::IterateCache::new(field, d, u128::MAX)?;
            let kx = field.poly_ring();
            let h = kx.sub_constant(cache.get(*k)?, &elem(alpha)?);
            fe::eisenstein_status(field, &h, prime)?.is_ok()
        }
        Check::FactorExpansion { n, k } => {
            let mut engine = fe::FactorEngine::new(field, d, *n, u128::MAX)?;
            let product = engine.closed_form_factorization(*k)?;
            let kx = field.poly_ring();
            let powers: Vec<_> = product.terms.iter().map(|t| kx.pow(&t.poly, t.exp)).collect();
            &kx.product(powers.iter()) == engine.iterate(*k)?
        }
        Check::FactorCoprime { n, a, b, witness } => {
            let mut engine = fe::FactorEngine::new(field, d, *n, u128::MAX)?;
            let (pa, pb) = (engine.term_poly(*a)?, engine.term_poly(*b)?);
            match witness {
                Some(w) => crate::numberfield::replay_coprime(field, &pa, &pb, w),
                None => field.poly_ring().is_one(&crate::numberfield::modular::exact_gcd(field, &pa, &pb)),
            }
        }
        Check::FactorResidueIrreducible { n, label, p, factor } => {
            let mut engine = fe::FactorEngine::new(field, d, *n, u128::MAX)?;
            fe::replay_residue_irreducible(field, &engine.term_poly(*label)?, *p, factor)?
        }
        Check::DiscIterate { k, x0, value } => {
            crate::obstructions::disc_recursion(field, d, &elem(x0)?, *k)? == elem(value)?
        }
        Check::DiscRatio { k, x0, value } => {
            let x0 = elem(x0)?;
            let num = crate::obstructions::disc_recursion(field, d, &x0, *k)?;
            let den = field.pow(&crate::obstructions::disc_recursion(field, d, &x0, k - 1)?, d);
            field.mul(&den, &elem(value)?) == num
        }
        Check::Sub { certificate } => certificate.is_verified() && replay(certificate)?,
    })
}
