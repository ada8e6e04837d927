//! Factorization over finite fields: squarefree decomposition, distinct-degree and
//! equal-degree splitting (Cantor-Zassenhaus; trace map in characteristic 2).

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactpoly::{Field, Poly, PolyRing, Ring};

pub const DEFAULT_SEED: u64 = 0x5eed_2025;

pub trait FiniteField: Field {
    fn characteristic(&self) -> u64;
    fn extension_degree(&self) -> usize;
    fn random_element<G: rand::Rng + ?Sized>(&self, rng: &mut G) -> Self::Elem;

    fn order(&self) -> BigUint {
        num_traits::pow(BigUint::from(self.characteristic()), self.extension_degree())
    }

    /// The unique `b` with `b^p = a`.
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        let e = self.order() / BigUint::from(self.characteristic());
        pow_big(self, a, &e)
    }
}

pub fn pow_big<R: Ring + ?Sized>(r: &R, a: &R::Elem, e: &BigUint) -> R::Elem {
    let mut acc = r.one();
    for i in (0..e.bits()).rev() {
        acc = r.mul(&acc, &acc);
        if e.bit(i) {
            acc = r.mul(&acc, a);
        }
    }
    acc
}

/// `base^e mod m`.
pub fn pow_mod_poly<F: Field>(
    px: &PolyRing<'_, F>,
    base: &Poly<F::Elem>,
    e: &BigUint,
    m: &Poly<F::Elem>,
) -> Poly<F::Elem> {
    let base = px.rem(base, m).unwrap();
    let mut acc = px.rem(&px.one(), m).unwrap();
    for i in (0..e.bits()).rev() {
        acc = px.rem(&px.square(&acc), m).unwrap();
        if e.bit(i) {
            acc = px.rem(&px.mul(&acc, &base), m).unwrap();
        }
    }
    acc
}

fn poly_pth_root<F: FiniteField>(field: &F, f: &Poly<F::Elem>) -> Poly<F::Elem> {
    let p = field.characteristic() as usize;
    let px = PolyRing::new(field);
    let v = f.coeffs().iter().step_by(p).map(|c| field.pth_root(c)).collect();
    debug_assert!(f.coeffs().iter().enumerate().all(|(i, c)| i % p == 0 || field.is_zero(c)));
    px.from_coeffs(v)
}

/// Squarefree decomposition of a monic polynomial: pairs `(g_i, i)` with `f = prod g_i^i`.
pub fn squarefree_decomposition<F: FiniteField>(field: &F, f: &Poly<F::Elem>) -> Vec<(Poly<F::Elem>, usize)> {
    let px = PolyRing::new(field);
    let p = field.characteristic() as usize;
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = px.derivative(f);
    if df.is_zero() {
        for (g, m) in squarefree_decomposition(field, &poly_pth_root(field, f)) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = px.gcd(f, &df);
    let mut w = px.exact_div(f, &c).unwrap();
    let mut i = 1;
    while !px.is_one(&w) {
        let y = px.gcd(&w, &c);
        let z = px.exact_div(&w, &y).unwrap();
        if z.degree().unwrap() > 0 {
            out.push((z, i));
        }
        i += 1;
        c = px.exact_div(&c, &y).unwrap();
        w = y;
    }
    if c.degree().unwrap() > 0 {
        for (g, m) in squarefree_decomposition(field, &poly_pth_root(field, &c)) {
            out.push((g, m * p));
        }
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial.
pub fn distinct_degree<F: FiniteField>(field: &F, f: &Poly<F::Elem>) -> Vec<(Poly<F::Elem>, usize)> {
    let px = PolyRing::new(field);
    let q = field.order();
    let mut out = Vec::new();
    let mut f = f.clone();
    let x = px.x();
    let mut h = px.rem(&x, &f).unwrap();
    let mut i = 0;
    while f.degree().unwrap_or(0) >= 2 * (i + 1) {
        i += 1;
        h = pow_mod_poly(&px, &h, &q, &f);
        let g = px.gcd(&px.sub(&h, &x), &f);
        if g.degree().unwrap() > 0 {
            f = px.exact_div(&f, &g).unwrap();
            h = px.rem(&h, &f).unwrap();
            out.push((g, i));
        }
    }
    if f.degree().unwrap_or(0) > 0 {
        let d = f.degree().unwrap();
        out.push((f, d));
    }
    out
}

/// Split a monic squarefree product of irreducibles of common degree `d`.
pub fn equal_degree<F: FiniteField, G: rand::Rng>(
    field: &F,
    f: &Poly<F::Elem>,
    d: usize,
    rng: &mut G,
) -> Vec<Poly<F::Elem>> {
    let px = PolyRing::new(field);
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.clone()];
    }
    let q = field.order();
    let p = field.characteristic();
    loop {
        let a = px.from_coeffs((0..n).map(|_| field.random_element(rng)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace to F_2: a + a^2 + ... + a^{2^{k d - 1}}, q = 2^k
            let k = field.extension_degree();
            let mut t = px.rem(&a, f).unwrap();
            let mut acc = t.clone();
            for _ in 1..k * d {
                t = px.rem(&px.square(&t), f).unwrap();
                acc = px.add(&acc, &t);
            }
            acc
        } else {
            let e = (num_traits::pow(q.clone(), d) - BigUint::one()) / BigUint::from(2u32);
            px.sub(&pow_mod_poly(&px, &a, &e, f), &px.one())
        };
        let g = px.gcd(&b, f);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = px.exact_div(f, &g).unwrap();
            let mut out = equal_degree(field, &g, d, rng);
            out.extend(equal_degree(field, &h, d, rng));
            return out;
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicities, sorted by
/// (degree, coefficients). The leading coefficient is dropped.
pub fn factor<F: FiniteField>(field: &F, f: &Poly<F::Elem>, seed: u64) -> Vec<(Poly<F::Elem>, usize)>
where
    F::Elem: Ord,
{
    assert!(!f.is_zero(), "factor of the zero polynomial");
    let px = PolyRing::new(field);
    let f = px.monic(f);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (sf, mult) in squarefree_decomposition(field, &f) {
        for (block, d) in distinct_degree(field, &sf) {
            for g in equal_degree(field, &block, d, &mut rng) {
                out.push((g, mult));
            }
        }
    }
    out.sort_by(|(a, ma), (b, mb)| (a.degree(), a, ma).cmp(&(b.degree(), b, mb)));
    out
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: `x^{q^n} = x mod f` and `gcd(x^{q^{n/l}} - x, f) = 1` for primes `l | n`.
pub fn is_irreducible<F: FiniteField>(field: &F, f: &Poly<F::Elem>) -> bool {
    let px = PolyRing::new(field);
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let f = px.monic(f);
    let q = field.order();
    let x = px.x();
    let frob = |k: usize| {
        let mut h = px.rem(&x, &f).unwrap();
        for _ in 0..k {
            h = pow_mod_poly(&px, &h, &q, &f);
        }
        h
    };
    if px.sub(&frob(n), &px.rem(&x, &f).unwrap()) != Poly::zero() {
        return false;
    }
    prime_divisors(n).into_iter().all(|l| {
        let h = frob(n / l);
        px.is_one(&px.gcd(&px.sub(&h, &x), &f))
    })
}

/// Degrees reachable as sums of sub-multisets of factor degrees.
pub fn achievable_degrees(factor_degrees: &[usize]) -> Vec<bool> {
    let total: usize = factor_degrees.iter().sum();
    let mut reach = vec![false; total + 1];
    reach[0] = true;
    for &d in factor_degrees {
        for s in (d..=total).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}
