//! Primes of `K` above a rational prime and their valuations.
//!
//! Backend A covers `p ∤ disc g`: `Z[c_0]` is maximal at `p`, each irreducible factor
//! `G_i` of `g mod p` gives one unramified prime, and `Z[c]/(p^T, G~_i)` models the
//! completion to precision `T`. Backend B covers `g(c + t)` Eisenstein at `p`: a single
//! totally ramified prime with uniformizer `c_0 - t`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::field::{NfElem, NumberField};
use crate::error::{Error, Result};
use crate::exactpoly::json::IntPolyJson;
use crate::exactpoly::{content, int_resultant, int_valuation, zx, Field, IntPoly, IntegersMod, PolyRing, Ring};
use crate::modarith::{fp_factor_int, hensel_lift, FpPoly, PrimeField, DEFAULT_SEED};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Valuation {
    Finite(i64),
    /// Only a lower bound is known at the available precision.
    AtLeast(i64),
    Infinite,
}

impl Valuation {
    /// The exact value; errors when only a lower bound is known.
    pub fn finite(self) -> Result<i64> {
        match self {
            Valuation::Finite(v) => Ok(v),
            Valuation::AtLeast(v) => Err(Error::PrecisionExceeded(v)),
            Valuation::Infinite => Err(Error::InvalidInput("valuation of zero".into())),
        }
    }

    /// Whether the valuation is known to be at least `bound`.
    pub fn at_least(self, bound: i64) -> bool {
        match self {
            Valuation::Finite(v) | Valuation::AtLeast(v) => v >= bound,
            Valuation::Infinite => true,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">={v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Backend {
    /// `p ∤ disc g`; the prime `(p, G_i)` with residue degree `deg G_i`.
    Unramified {
        /// All irreducible factors of `g mod p`, sorted; `index` selects this prime.
        seeds: Vec<FpPoly>,
        index: usize,
        /// `G~_i` lifted modulo `p^T`.
        lifted: IntPoly,
    },
    /// `g(c + shift)` is Eisenstein at `p`; uniformizer `c_0 - shift`.
    Eisenstein { shift: BigInt },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeAbove {
    pub p: u64,
    pub backend: Backend,
    /// Working precision for the lifted factor.
    pub precision: u32,
    pub ramification: usize,
    pub residue_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeJson {
    pub p: String,
    pub backend: String,
    pub factor: IntPolyJson,
    #[serde(rename = "T")]
    pub precision: u32,
    pub e: usize,
    pub f: usize,
}

/// Taylor shift `q(y + t)`.
pub(crate) fn taylor_shift(q: &IntPoly, t: &BigInt) -> IntPoly {
    let zx = zx();
    zx.compose(q, &zx.from_coeffs(vec![t.clone(), BigInt::one()]))
}

/// Eisenstein criterion at `p` for a monic integer polynomial.
pub fn is_eisenstein(h: &IntPoly, p: u64) -> bool {
    let bp = BigInt::from(p);
    let n = h.degree().unwrap_or(0);
    n >= 1
        && h.coeffs()[..n].iter().all(|c| c.is_multiple_of(&bp))
        && !h.coeffs()[0].is_multiple_of(&(&bp * &bp))
}

/// The primes above `p`, or `Unsupported` when neither backend applies.
pub fn primes_above(field: &NumberField, p: u64, precision: u32) -> Result<Vec<PrimeAbove>> {
    if !crate::modarith::is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let precision = precision.max(1);
    let g = field.g();
    if !field.disc().is_multiple_of(&BigInt::from(p)) {
        let fac = fp_factor_int(g, p, field.seed());
        let seeds: Vec<FpPoly> = fac.into_iter().map(|(h, _)| h).collect();
        let lift = hensel_lift(g, &seeds, p, precision)?;
        return Ok(seeds
            .iter()
            .enumerate()
            .map(|(index, s)| PrimeAbove {
                p,
                precision,
                ramification: 1,
                residue_degree: s.degree().unwrap(),
                backend: Backend::Unramified { seeds: seeds.clone(), index, lifted: lift.factors[index].clone() },
            })
            .collect());
    }
    if let Some(shift) = eisenstein_shift(g, p) {
        return Ok(vec![PrimeAbove {
            p,
            precision,
            ramification: field.degree(),
            residue_degree: 1,
            backend: Backend::Eisenstein { shift },
        }]);
    }
    Err(Error::Unsupported(format!(
        "ramification of {p} undetermined: {p} divides disc(g) = {} and g is not Eisenstein at {p} after any shift",
        field.disc()
    )))
}

/// `t` with `g(c + t)` Eisenstein at `p`, if any.
pub fn eisenstein_shift(g: &IntPoly, p: u64) -> Option<BigInt> {
    let fac = fp_factor_int(g, p, DEFAULT_SEED);
    if fac.len() != 1 || fac[0].0.degree() != Some(1) {
        return None;
    }
    let fp = PrimeField::new(p);
    // g = (c - r)^n mod p; v_p(g(t)) is constant on the class of r
    let r = fp.neg(&fac[0].0.coeffs()[0]);
    let t = BigInt::from(fp.lift_symmetric(r));
    is_eisenstein(&taylor_shift(g, &t), p).then_some(t)
}

/// Strip the largest power of `p` from the content; returns `(s, num / p^s)`.
fn strip_content(num: &IntPoly, p: u64) -> (i64, IntPoly) {
    let s = int_valuation(&content(num), p).unwrap_or(0);
    let ps = num_traits::pow(BigInt::from(p), s as usize);
    (s as i64, zx().from_coeffs(num.coeffs().iter().map(|c| c / &ps).collect()))
}

impl PrimeAbove {
    pub fn label(&self) -> &'static str {
        match self.backend {
            Backend::Unramified { .. } => "A",
            Backend::Eisenstein { .. } => "B",
        }
    }

    /// The residue factor `G_i` (backend A) or `c - t` (backend B).
    pub fn factor(&self) -> IntPoly {
        match &self.backend {
            Backend::Unramified { seeds, index, .. } => PrimeField::new(self.p).lift_poly(&seeds[*index]),
            Backend::Eisenstein { shift } => zx().from_coeffs(vec![-shift, BigInt::one()]),
        }
    }

    pub fn to_json(&self) -> PrimeJson {
        PrimeJson {
            p: self.p.to_string(),
            backend: self.label().into(),
            factor: IntPolyJson::from_poly(&self.factor(), "c"),
            precision: self.precision,
            e: self.ramification,
            f: self.residue_degree,
        }
    }

    /// `v_P(p)`.
    pub fn valuation_of_p(&self) -> i64 {
        self.ramification as i64
    }

    /// `|O_K / P| = p^f`.
    pub fn residue_size(&self) -> BigInt {
        num_traits::pow(BigInt::from(self.p), self.residue_degree)
    }

    /// Why `Z[c_0]` suffices for valuations at this prime.
    pub fn maximality_reason(&self) -> String {
        match &self.backend {
            Backend::Unramified { .. } => format!("{} does not divide disc(g), so Z[c0] is maximal at {}", self.p, self.p),
            Backend::Eisenstein { shift } => {
                format!("g(c + {shift}) is Eisenstein at {}, so Z[c0] is maximal at {}", self.p, self.p)
            }
        }
    }

    /// Exact valuation, normalized so a uniformizer has valuation 1.
    pub fn valuation(&self, field: &NumberField, x: &NfElem) -> Valuation {
        if x.is_zero() {
            return Valuation::Infinite;
        }
        let den_v = int_valuation(x.den(), self.p).unwrap() as i64 * self.ramification as i64;
        let (s, num) = strip_content(&x.num_poly(), self.p);
        let w = match &self.backend {
            Backend::Unramified { .. } => self.unramified_unit_part(field, &num, None),
            Backend::Eisenstein { shift } => self.eisenstein_unit_part(field, &num, shift),
        };
        match w {
            Valuation::Finite(w) => Valuation::Finite(s * self.ramification as i64 + w - den_v),
            other => other,
        }
    }

    /// Valuation computed at the stored precision only; `AtLeast(T e)` when the
    /// reduction vanishes.
    pub fn valuation_at_precision(&self, field: &NumberField, x: &NfElem) -> Valuation {
        if x.is_zero() {
            return Valuation::Infinite;
        }
        let e = self.ramification as i64;
        let den_v = int_valuation(x.den(), self.p).unwrap() as i64 * e;
        let (s, num) = strip_content(&x.num_poly(), self.p);
        let cap = self.precision as i64 * e;
        let w = match &self.backend {
            Backend::Unramified { .. } => self.unramified_unit_part(field, &num, Some(self.precision)),
            Backend::Eisenstein { shift } => self.eisenstein_unit_part(field, &num, shift),
        };
        match w {
            Valuation::Finite(w) if s * e + w < cap => Valuation::Finite(s * e + w - den_v),
            Valuation::Infinite => Valuation::Infinite,
            _ => Valuation::AtLeast(cap - den_v),
        }
    }

    /// Valuation of an integral `num` with content prime to `p`, backend A.
    fn unramified_unit_part(&self, field: &NumberField, num: &IntPoly, fixed: Option<u32>) -> Valuation {
        let Backend::Unramified { seeds, index, lifted } = &self.backend else { unreachable!() };
        let precision = match fixed {
            Some(t) => t,
            None => {
                // v_P(num) <= v_p(N(num)) / f bounds the needed precision
                let norm = if field.degree() == 1 {
                    num.coeff(0).cloned().unwrap_or_default()
                } else {
                    int_resultant(field.g(), num)
                };
                match int_valuation(&norm, self.p) {
                    None => return Valuation::Infinite,
                    Some(v) => (v as usize / self.residue_degree) as u32 + 1,
                }
            }
        };
        let factor = if precision == self.precision {
            lifted.clone()
        } else {
            hensel_lift(field.g(), seeds, self.p, precision).expect("seeds lift at p not dividing disc").factors
                [*index]
                .clone()
        };
        let ring = IntegersMod::new(num_traits::pow(BigInt::from(self.p), precision as usize));
        let rx = PolyRing::new(&ring);
        let reduced = rx.rem(&rx.from_coeffs(num.coeffs().iter().map(|c| ring.reduce(c)).collect()), &factor).unwrap();
        match reduced.coeffs().iter().filter_map(|c| int_valuation(c, self.p)).min() {
            Some(v) => Valuation::Finite(v as i64),
            None => Valuation::AtLeast(precision as i64),
        }
    }

    /// Valuation of an integral `num` with content prime to `p`, backend B: count exact
    /// divisions by the uniformizer while the quotient stays `p`-integral.
    fn eisenstein_unit_part(&self, field: &NumberField, num: &IntPoly, shift: &BigInt) -> Valuation {
        let pi = field.from_int_poly(&zx().from_coeffs(vec![-shift, BigInt::one()]));
        let pi_inv = field.inv(&pi).expect("uniformizer is nonzero");
        let bp = BigInt::from(self.p);
        let mut cur = field.from_int_poly(num);
        let mut w = 0;
        // the content of num is prime to p, so w < e
        while w < self.ramification {
            let q = field.mul(&cur, &pi_inv);
            if q.den().is_multiple_of(&bp) {
                break;
            }
            cur = q;
            w += 1;
        }
        Valuation::Finite(w as i64)
    }
}

/// Closed-form backend B valuation: `min_j (e v_p(y_j) + j)` where `num(π + t) = Σ y_j π^j`.
pub fn eisenstein_valuation_formula(field: &NumberField, x: &NfElem, p: u64, shift: &BigInt) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let e = field.degree() as i64;
    let y = taylor_shift(&x.num_poly(), shift);
    let w = y
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(j, c)| int_valuation(c, p).map(|v| e * v as i64 + j as i64))
        .min()
        .unwrap();
    Valuation::Finite(w - e * int_valuation(x.den(), p).unwrap() as i64)
}

/// Sign-free `p`-adic valuation of a nonzero rational.
pub fn rational_valuation(q: &num_rational::BigRational, p: u64) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    Some(int_valuation(q.numer(), p).unwrap() as i64 - int_valuation(q.denom(), p).unwrap() as i64)
}
