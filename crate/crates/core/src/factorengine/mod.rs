//! Iterates of `f = x^d + c_0` over `K`, the factors `F_{k,i}`, the closed-form
//! factorization of `f^k` at a Gleason parameter, and Eisenstein-based certificates.

mod iterate;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

pub use iterate::{structural_form, IterateCache, IterateForm};

use crate::certificate::{Certificate, Check, Verdict, Witness};
use crate::error::{Error, Result};
use crate::exactpoly::Ring;
use crate::modarith::{is_irreducible, primes, FqContext, PrimeField, DEFAULT_PRECISION};
use crate::numberfield::{
    coprime_certificate, modular::exact_gcd, primes_above, NfElem, NfPoly, NfPolyJson, NumberField, PrimeAbove,
    ResidueMap, Valuation,
};
use crate::pcforbits::{exact_type, ExactKind, ExactType};

/// Residue characteristics tried by the mod-prime irreducibility fallback.
const FALLBACK_PRIMES: usize = 30;

/// Leading term, absence of monomials of degree `1..d-1`, and `d`-divisibility of the
/// middle; returns the constant term when the shape holds.
pub(crate) fn check_shape(field: &NumberField, d: u64, poly: &NfPoly, k: usize) -> std::result::Result<NfElem, String> {
    let top = poly.degree().unwrap_or(0);
    if top != (d as usize).pow(k as u32) || !field.is_one(poly.lead().unwrap()) {
        return Err("leading term is not x^(d^k)".into());
    }
    for (j, c) in poly.coeffs()[..top].iter().enumerate().skip(1) {
        if c.is_zero() {
            continue;
        }
        if j < d as usize {
            return Err(format!("monomial of degree {j} below d"));
        }
        if !iterate::divisible_by(c, d) {
            return Err(format!("coefficient of x^{j} is not divisible by {d}"));
        }
    }
    Ok(poly.coeff(0).cloned().unwrap_or_else(|| field.zero()))
}

/// The constant of `f^k` if the shape invariants hold.
pub fn shape_constant(cache: &mut IterateCache<'_>, k: usize) -> Result<Option<NfElem>> {
    let field = cache.field();
    let d = cache.d();
    Ok(check_shape(field, d, cache.get(k)?, k).ok())
}

/// `p(x) = q(x^d)` when every exponent is a multiple of `d`.
fn compress(field: &NumberField, p: &NfPoly, d: usize) -> Option<NfPoly> {
    let ok = p.coeffs().iter().enumerate().all(|(j, c)| j % d == 0 || c.is_zero());
    ok.then(|| field.poly_ring().from_coeffs(p.coeffs().iter().step_by(d).cloned().collect()))
}

fn expand(field: &NumberField, q: &NfPoly, d: usize) -> NfPoly {
    if q.is_zero() {
        return q.clone();
    }
    let mut out = vec![field.zero(); (q.len() - 1) * d + 1];
    for (i, c) in q.coeffs().iter().enumerate() {
        out[i * d] = c.clone();
    }
    field.poly_ring().from_coeffs(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FactorLabel {
    /// `F_{k,i}`.
    F { k: usize, i: usize },
    /// `x - a_index(c_0)`.
    Linear { index: usize },
}

impl fmt::Display for FactorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorLabel::F { k, i } => write!(f, "F({k},{i})"),
            FactorLabel::Linear { .. } => write!(f, "linear"),
        }
    }
}

impl FactorLabel {
    /// Parse `F(k,i)`; `linear` carries no index and is resolved by the caller.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("factor label {s:?}"));
        let inner = s.strip_prefix("F(").and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
        let (k, i) = inner.split_once(',').ok_or_else(bad)?;
        Ok(FactorLabel::F { k: k.trim().parse().map_err(|_| bad())?, i: i.trim().parse().map_err(|_| bad())? })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorTerm {
    pub label: FactorLabel,
    pub poly: NfPoly,
    pub exp: u64,
}

/// Labeled factors with `d`-power multiplicities; labels are distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorProduct {
    pub terms: Vec<FactorTerm>,
}

impl FactorProduct {
    pub fn count(&self) -> usize {
        self.terms.len()
    }

    /// `Σ exp · deg`.
    pub fn total_degree(&self) -> u128 {
        self.terms.iter().map(|t| t.exp as u128 * t.poly.degree().unwrap_or(0) as u128).sum()
    }

    pub fn to_json(&self, field: &NumberField) -> FactorProductJson {
        FactorProductJson {
            factors: self
                .terms
                .iter()
                .map(|t| FactorJson {
                    label: t.label.to_string(),
                    poly: NfPolyJson::from_poly(field, &t.poly),
                    exp: t.exp,
                })
                .collect(),
            count: self.count(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub label: String,
    pub poly: NfPolyJson,
    pub exp: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorProductJson {
    pub factors: Vec<FactorJson>,
    pub count: usize,
}

/// Factorization machinery for a Gleason parameter of period `n >= 2`.
pub struct FactorEngine<'f> {
    cache: IterateCache<'f>,
    n: usize,
    ty: ExactType,
    factors: HashMap<(usize, usize), NfPoly>,
}

impl<'f> FactorEngine<'f> {
    pub fn new(field: &'f NumberField, d: u64, n: usize, budget: u128) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("period must be at least 2, got {n}")));
        }
        let cache = IterateCache::new(field, d, budget)?;
        let ty = match exact_type(field, d, n) {
            Ok(t) if t.kind == (ExactKind::Periodic { n }) => t,
            Ok(t) => return Err(Error::HypothesisUnmet(format!("c0 has exact type {}, not Periodic({n})", t.kind))),
            Err(Error::BoundExceeded(_)) => {
                return Err(Error::HypothesisUnmet(format!("c0 is not periodic of period {n}")))
            }
            Err(e) => return Err(e),
        };
        Ok(FactorEngine { cache, n, ty, factors: HashMap::new() })
    }

    pub fn field(&self) -> &'f NumberField {
        self.cache.field()
    }

    pub fn d(&self) -> u64 {
        self.cache.d()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn exact_type(&self) -> &ExactType {
        &self.ty
    }

    pub fn iterate(&mut self, k: usize) -> Result<&NfPoly> {
        self.cache.get(k)
    }

    /// `a_i(c_0)` with indices read mod `n`.
    pub fn orbit(&self, i: usize) -> &NfElem {
        &self.ty.orbit[i % self.n]
    }

    /// `F_{k,i} = (f^{k+1} - a_{i+1}) / (f^k - a_i)`.
    pub fn f_factor(&mut self, k: usize, i: usize) -> Result<NfPoly> {
        if i == 0 || i >= self.n {
            return Err(Error::InvalidInput(format!("F index i = {i} outside 1..{}", self.n - 1)));
        }
        if let Some(p) = self.factors.get(&(k, i)) {
            return Ok(p.clone());
        }
        let field = self.field();
        let kx = field.poly_ring();
        let d = self.d() as usize;
        let (top, bottom) = (self.orbit(i + 1).clone(), self.orbit(i).clone());
        let num = kx.sub_constant(self.cache.get(k + 1)?, &top);
        let den = kx.sub_constant(self.cache.get(k)?, &bottom);
        // both sides are polynomials in x^d once k >= 1
        let quotient = match (k >= 1).then(|| (compress(field, &num, d), compress(field, &den, d))) {
            Some((Some(a), Some(b))) => kx.exact_div(&a, &b).map(|q| expand(field, &q, d)),
            _ => kx.exact_div(&num, &den),
        }
        .map_err(|e| Error::NotDivisible(format!("F({k},{i}): {e}")))?;
        self.factors.insert((k, i), quotient.clone());
        Ok(quotient)
    }

    pub fn term_poly(&mut self, label: FactorLabel) -> Result<NfPoly> {
        match label {
            FactorLabel::F { k, i } => self.f_factor(k, i),
            FactorLabel::Linear { index } => {
                let kx = self.field().poly_ring();
                Ok(kx.sub_constant(&kx.x(), &self.orbit(index).clone()))
            }
        }
    }

    /// The labels and exponents of the closed form for `f^k`, `k = nq + r`.
    pub fn closed_form_labels(&self, k: usize) -> Vec<(FactorLabel, u64)> {
        let (n, d) = (self.n, self.d());
        let (q, r) = k.div_rem(&n);
        let mut out = Vec::new();
        for j in 0..q {
            for i in 1..n {
                out.push((FactorLabel::F { k: k - n * j - i, i: n - i }, d.pow(j as u32)));
            }
        }
        let tail = d.pow(q as u32);
        out.push((FactorLabel::Linear { index: n - r }, tail));
        for i in 1..=r {
            out.push((FactorLabel::F { k: r - i, i: n - i }, tail));
        }
        out
    }

    pub fn closed_form_factorization(&mut self, k: usize) -> Result<FactorProduct> {
        if k == 0 {
            return Err(Error::InvalidInput("factorization needs k >= 1".into()));
        }
        crate::pcforbits::check_budget(self.d(), k as u32, self.cache.budget())?;
        let terms = self
            .closed_form_labels(k)
            .into_iter()
            .map(|(label, exp)| Ok(FactorTerm { label, poly: self.term_poly(label)?, exp }))
            .collect::<Result<Vec<_>>>()?;
        Ok(FactorProduct { terms })
    }

    /// Check the expansion, pairwise coprimality, and the distinct-factor count.
    pub fn verify_factorization(&mut self, product: &FactorProduct, k: usize) -> Result<Certificate> {
        let field = self.field();
        let (d, n) = (self.d(), self.n);
        let kx = field.poly_ring();
        let mut cert = Certificate::new(format!("closed-form factorization of f^{k} (d = {d}, n = {n})"), field, d);
        cert.push(Witness::new(
            "type",
            format!("c0 has exact type Periodic({n})"),
            Check::OrbitType { kind: self.ty.kind.clone(), bound: n },
        ));

        let powers: Vec<NfPoly> = product.terms.iter().map(|t| kx.pow(&t.poly, t.exp)).collect();
        let expanded = kx.product(powers.iter());
        if &expanded != self.cache.get(k)? {
            cert.note(format!("expanded product differs from f^{k}"));
            return Ok(cert.with_verdict(Verdict::Refuted));
        }
        cert.push(Witness::new("expansion", format!("product of factors equals f^{k}"), Check::FactorExpansion { n, k }));

        for (a_idx, a) in product.terms.iter().enumerate() {
            for b in &product.terms[a_idx + 1..] {
                let identity = format!("gcd({}, {}) = 1", a.label, b.label);
                let witness = coprime_certificate(field, &a.poly, &b.poly);
                if witness.is_none() && !kx.is_one(&exact_gcd(field, &a.poly, &b.poly)) {
                    cert.note(format!("{} and {} share a factor", a.label, b.label));
                    return Ok(cert.with_verdict(Verdict::Refuted));
                }
                cert.push(Witness::new(
                    "coprime",
                    identity,
                    Check::FactorCoprime { n, a: a.label, b: b.label, witness },
                ));
            }
        }

        let expected = k - k / n + 1;
        if product.count() != expected {
            cert.note(format!("{} distinct factors, expected {expected}", product.count()));
            return Ok(cert.with_verdict(Verdict::Refuted));
        }
        cert.push(Witness::new(
            "count",
            format!("{} distinct factors = k - floor(k/n) + 1", product.count()),
            Check::Note,
        ));
        Ok(cert.with_verdict(Verdict::Verified))
    }

    /// Irreducibility of a factor of the closed form over `K`.
    pub fn factor_certificate(&mut self, label: FactorLabel) -> Result<Certificate> {
        match label {
            FactorLabel::F { k, i } => self.f_irreducibility_certificate(k, i),
            FactorLabel::Linear { index } => {
                let field = self.field();
                let mut cert = Certificate::new(format!("x - a_{index}(c0) is irreducible over K"), field, self.d());
                cert.push(Witness::new("degree", "polynomial of degree one", Check::Note));
                Ok(cert.with_verdict(Verdict::Verified))
            }
        }
    }

    /// Irreducibility of `F_{k,i}` over `K` through its `f^m`-composite, which is a
    /// product of Eisenstein polynomials over `K(ζ)`; falls back to a residue field.
    pub fn f_irreducibility_certificate(&mut self, k: usize, i: usize) -> Result<Certificate> {
        let field = self.field();
        let (d, n) = (self.d(), self.n);
        let mut cert = Certificate::new(format!("F({k},{i}) is irreducible over K (d = {d}, n = {n})"), field, d);
        if i == 0 || i >= n {
            return Err(Error::InvalidInput(format!("F index i = {i} outside 1..{}", n - 1)));
        }
        cert.push(Witness::new("type", format!("c0 has exact type Periodic({n})"), Check::OrbitType {
            kind: self.ty.kind.clone(),
            bound: n,
        }));
        if field.tainted() {
            cert.note("field irreducibility assumed by caller");
        } else {
            cert.push(Witness::new("field", "g is irreducible over Q", Check::FieldIrreducible));
        }

        let m = (i + n - k % n) % n;
        let a_i = self.orbit(i).clone();
        let mut failures = Vec::new();
        if field.disc().is_multiple_of(&BigInt::from(d)) {
            failures.push(format!("{d} divides disc(g)"));
        }
        if !field.is_unit(&a_i).unwrap_or(false) {
            failures.push(format!("a_{i}(c0) is not a unit"));
        }
        match check_shape(field, d, self.cache.get(m + k)?, m + k) {
            Ok(c) if c == a_i => {}
            Ok(_) => failures.push(format!("constant of f^{} is not a_{i}(c0)", m + k)),
            Err(why) => failures.push(format!("f^{}: {why}", m + k)),
        }

        if failures.is_empty() {
            cert.push(Witness::new(
                "unramified",
                format!("{d} does not divide disc(g), so K and Q(zeta) are disjoint and (1 - zeta) stays unramified in K(zeta)"),
                Check::PrimeNotDividingDisc { p: d },
            ));
            cert.push(Witness::new(
                "unit",
                format!("a_{i}(c0) is a unit, so (1 - zeta^l) a_{i}(c0) has valuation 1 above (1 - zeta)"),
                Check::Unit { elem: field.elem_to_json(&a_i) },
            ));
            cert.push(Witness::new(
                "shape",
                format!(
                    "f^{} = x^{} + d x^d F(x) + a_{i}(c0) with m = {m}; middle coefficients have valuation >= d - 1",
                    m + k,
                    (d as u128).pow((m + k) as u32)
                ),
                Check::IterateShape { k: m + k, constant: field.elem_to_json(&a_i) },
            ));
            cert.push(Witness::new(
                "eisenstein",
                format!(
                    "F({k},{i}) o f^{m} = F({},{i}) is a product of Eisenstein polynomials over K(zeta) permuted by Gal(K(zeta)/K)",
                    m + k
                ),
                Check::Note,
            ));
            return Ok(cert.with_verdict(Verdict::Verified));
        }
        for f in failures {
            cert.note(format!("cyclotomic Eisenstein route: {f}"));
        }

        let poly = self.f_factor(k, i)?;
        match residue_irreducible(field, &poly) {
            Some((p, factor)) => {
                cert.note("mod-prime fallback route");
                cert.push(Witness::new(
                    "residue",
                    format!("F({k},{i}) stays irreducible modulo a prime above {p}"),
                    Check::FactorResidueIrreducible { n, label: FactorLabel::F { k, i }, p, factor },
                ));
                Ok(cert.with_verdict(Verdict::Verified))
            }
            None => {
                cert.note("mod-prime fallback found no inert residue field");
                Ok(cert.with_verdict(Verdict::Inconclusive))
            }
        }
    }
}

/// A residue field of `K` in which the monic `poly` keeps its degree and stays irreducible.
fn residue_irreducible(field: &NumberField, poly: &NfPoly) -> Option<(u64, Vec<u64>)> {
    for p in primes().skip(1).take(FALLBACK_PRIMES) {
        let Some(maps) = ResidueMap::all(field, p) else { continue };
        for map in maps {
            let Some(image) = map.map_poly(poly) else { continue };
            if image.degree() == poly.degree() && is_irreducible(&map.ctx, &image) {
                return Some((p, map.ctx.modulus().coeffs().to_vec()));
            }
        }
    }
    None
}

/// Replay a residue-field irreducibility witness.
pub fn replay_residue_irreducible(field: &NumberField, poly: &NfPoly, p: u64, factor: &[u64]) -> Result<bool> {
    let fp = PrimeField::new(p);
    let h = fp.poly_ring().from_coeffs(factor.to_vec());
    if field.disc().is_multiple_of(&BigInt::from(p)) || !fp.poly_ring().divides(&h, &fp.reduce_poly(field.g())) {
        return Ok(false);
    }
    let map = ResidueMap { p, ctx: FqContext::new(p, h)? };
    Ok(match map.map_poly(poly) {
        Some(image) => image.degree() == poly.degree() && is_irreducible(&map.ctx, &image),
        None => false,
    })
}

/// Why `h` fails to be Eisenstein at `prime`, or `Ok(())`.
pub fn eisenstein_status(
    field: &NumberField,
    h: &NfPoly,
    prime: &PrimeAbove,
) -> Result<std::result::Result<(), String>> {
    let Some(n) = h.degree().filter(|&n| n >= 1) else {
        return Ok(Err("constant polynomial".into()));
    };
    if !field.is_one(h.lead().unwrap()) {
        return Ok(Err("not monic".into()));
    }
    for (j, c) in h.coeffs()[1..n].iter().enumerate().map(|(j, c)| (j + 1, c)) {
        // divisibility by p already gives valuation >= e >= 1
        if c.is_zero() || iterate::divisible_by(c, prime.p) {
            continue;
        }
        if !prime.valuation(field, c).at_least(1) {
            return Ok(Err(format!("coefficient of x^{j} is a unit at the prime")));
        }
    }
    let c0 = h.coeff(0).cloned().unwrap_or_else(|| field.zero());
    match prime.valuation(field, &c0) {
        Valuation::Finite(1) => Ok(Ok(())),
        v => Ok(Err(format!("constant term has valuation {v}"))),
    }
}

/// Eisenstein test of a monic `h` at `prime`.
pub fn eisenstein_certificate(field: &NumberField, h: &NfPoly, prime: &PrimeAbove, d: u64) -> Result<Certificate> {
    let mut cert = Certificate::new(format!("polynomial of degree {} is Eisenstein", h.degree().unwrap_or(0)), field, d);
    match eisenstein_status(field, h, prime)? {
        Ok(()) => {
            cert.push(
                Witness::new(
                    "eisenstein",
                    "non-leading coefficients have valuation >= 1 and the constant has valuation 1",
                    Check::Note,
                )
                .at(prime.to_json(), Some(1)),
            );
            Ok(cert.with_verdict(Verdict::Verified))
        }
        Err(why) => {
            cert.note(why);
            Ok(cert.with_verdict(Verdict::Refuted))
        }
    }
}

/// Stability of `(f, α)` at a parameter of exact type `ty`: an Eisenstein iterate
/// `f^N - α` with `N` the least multiple of the period `>= k_max`.
pub fn stability_certificate(field: &NumberField, d: u64, alpha: &NfElem, k_max: usize, budget: u128) -> Result<Certificate> {
    if k_max == 0 {
        return Err(Error::InvalidInput("k_max must be at least 1".into()));
    }
    let ty = exact_type(field, d, 64)?;
    let n = ty.period();
    let periodic = matches!(ty.kind, ExactKind::Periodic { .. });
    let want = |v: Valuation| if periodic { v == Valuation::Finite(1) } else { v.at_least(2) };
    let hypothesis = if periodic { "v_P(alpha) = 1" } else { "v_P(alpha) >= 2" };
    let primes = primes_above(field, d, DEFAULT_PRECISION)?;
    let Some((index, prime, v_alpha)) = primes
        .iter()
        .enumerate()
        .map(|(i, p)| (i, p, p.valuation(field, alpha)))
        .find(|(_, _, v)| want(*v))
    else {
        return Err(Error::HypothesisUnmet(format!("no prime above {d} with {hypothesis}")));
    };
    let big_n = k_max.div_ceil(n) * n;
    crate::pcforbits::check_budget(d, big_n as u32, budget)?;

    let mut cert = Certificate::new(format!("f^k - alpha is irreducible over K for all k <= {big_n}"), field, d);
    cert.push(Witness::new("type", format!("c0 has exact type {}", ty.kind), Check::OrbitType {
        kind: ty.kind.clone(),
        bound: 64,
    }));
    let alpha_json = field.elem_to_json(alpha);
    match v_alpha {
        Valuation::Finite(v) => cert.push(
            Witness::new("hypothesis", hypothesis, Check::Valuation { p: d, index, elem: alpha_json.clone(), value: v })
                .at(prime.to_json(), Some(v)),
        ),
        _ => cert.push(Witness::new("hypothesis", "alpha = 0", Check::Note).at(prime.to_json(), None)),
    }

    let mut cache = IterateCache::new(field, d, budget)?;
    let kx = field.poly_ring();
    let h = kx.sub_constant(cache.get(big_n)?, alpha);
    let constant = h.coeff(0).cloned().unwrap_or_else(|| field.zero());
    match eisenstein_status(field, &h, prime)? {
        Ok(()) => {
            cert.push(
                Witness::new(
                    "constant",
                    format!("constant of f^{big_n} - alpha has valuation 1"),
                    Check::Valuation { p: d, index, elem: field.elem_to_json(&constant), value: 1 },
                )
                .at(prime.to_json(), Some(1)),
            );
            cert.push(
                Witness::new(
                    "eisenstein",
                    format!("f^{big_n} - alpha is Eisenstein at the prime"),
                    Check::IterateEisenstein { k: big_n, alpha: alpha_json, p: d, index },
                )
                .at(prime.to_json(), Some(1)),
            );
            cert.push(Witness::new(
                "composition",
                format!("f^{big_n} - alpha = (f^k - alpha) o f^({big_n} - k), so every f^k - alpha with k <= {big_n} is irreducible"),
                Check::Note,
            ));
            Ok(cert.with_verdict(Verdict::Verified))
        }
        Err(why) => {
            cert.note(format!("f^{big_n} - alpha: {why}"));
            Ok(cert.with_verdict(Verdict::Refuted))
        }
    }
}

#[cfg(test)]
mod tests;
