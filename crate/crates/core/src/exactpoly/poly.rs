use super::ring::{Field, Ring};
use crate::error::{Error, Result};

/// Below this many coefficients (in the shorter operand) multiplication is schoolbook.
pub const KARATSUBA_THRESHOLD: usize = 32;

/// Dense univariate polynomial, ascending degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E> Poly<E> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn lead(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }
}

/// Polynomial operations over a coefficient ring context.
#[derive(Clone, Copy, Debug)]
pub struct PolyRing<'a, R: Ring> {
    base: &'a R,
}

impl<'a, R: Ring> PolyRing<'a, R> {
    pub fn new(base: &'a R) -> Self {
        PolyRing { base }
    }

    pub fn base(&self) -> &'a R {
        self.base
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<R::Elem>) -> Poly<R::Elem> {
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(&self, c: R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(vec![c])
    }

    pub fn one(&self) -> Poly<R::Elem> {
        self.constant(self.base.one())
    }

    /// The variable `x`.
    pub fn x(&self) -> Poly<R::Elem> {
        self.monomial(self.base.one(), 1)
    }

    pub fn monomial(&self, c: R::Elem, n: usize) -> Poly<R::Elem> {
        let mut v = vec![self.base.zero(); n];
        v.push(c);
        self.from_coeffs(v)
    }

    pub fn is_one(&self, p: &Poly<R::Elem>) -> bool {
        p.len() == 1 && self.base.is_one(&p.coeffs[0])
    }

    pub fn is_monic(&self, p: &Poly<R::Elem>) -> bool {
        p.lead().is_some_and(|c| self.base.is_one(c))
    }

    pub fn map<S: Ring>(&self, target: &S, p: &Poly<R::Elem>, f: impl Fn(&R::Elem) -> S::Elem) -> Poly<S::Elem> {
        PolyRing::new(target).from_coeffs(p.coeffs.iter().map(f).collect())
    }

    pub fn add(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
        let r = self.base;
        let n = a.len().max(b.len());
        let v = (0..n)
            .map(|i| match (a.coeffs.get(i), b.coeffs.get(i)) {
                (Some(x), Some(y)) => r.add(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        self.from_coeffs(v)
    }

    pub fn neg(&self, a: &Poly<R::Elem>) -> Poly<R::Elem> {
        Poly { coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect() }
    }

    pub fn sub(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
        let r = self.base;
        let n = a.len().max(b.len());
        let v = (0..n)
            .map(|i| match (a.coeffs.get(i), b.coeffs.get(i)) {
                (Some(x), Some(y)) => r.sub(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => r.neg(y),
                (None, None) => unreachable!(),
            })
            .collect();
        self.from_coeffs(v)
    }

    /// `a - c` for a constant `c`.
    pub fn sub_constant(&self, a: &Poly<R::Elem>, c: &R::Elem) -> Poly<R::Elem> {
        self.sub(a, &self.constant(c.clone()))
    }

    pub fn add_constant(&self, a: &Poly<R::Elem>, c: &R::Elem) -> Poly<R::Elem> {
        self.add(a, &self.constant(c.clone()))
    }

    pub fn scale(&self, a: &Poly<R::Elem>, c: &R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(a.coeffs.iter().map(|x| self.base.mul(x, c)).collect())
    }

    /// Multiply by `x^n`.
    pub fn shift(&self, a: &Poly<R::Elem>, n: usize) -> Poly<R::Elem> {
        if a.is_zero() {
            return a.clone();
        }
        let mut v = vec![self.base.zero(); n];
        v.extend(a.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    pub fn mul(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        self.from_coeffs(self.mul_slices(&a.coeffs, &b.coeffs))
    }

    pub fn square(&self, a: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &Poly<R::Elem>, mut e: u64) -> Poly<R::Elem> {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.square(&base);
            }
        }
        acc
    }

    pub fn product<'p>(&self, items: impl IntoIterator<Item = &'p Poly<R::Elem>>) -> Poly<R::Elem>
    where
        R::Elem: 'p,
    {
        // balanced product keeps operand sizes comparable for Karatsuba
        let mut level: Vec<Poly<R::Elem>> = items.into_iter().cloned().collect();
        if level.is_empty() {
            return self.one();
        }
        while level.len() > 1 {
            let mut next = Vec::with_capacity(level.len().div_ceil(2));
            let mut it = level.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => next.push(self.mul(&a, &b)),
                    None => next.push(a),
                }
            }
            level = next;
        }
        level.pop().unwrap()
    }

    fn schoolbook(&self, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        let r = self.base;
        let mut out = vec![r.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if r.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let t = r.mul(x, y);
                out[i + j] = r.add(&out[i + j], &t);
            }
        }
        out
    }

    fn add_into(&self, out: &mut [R::Elem], src: &[R::Elem], offset: usize) {
        for (i, s) in src.iter().enumerate() {
            out[offset + i] = self.base.add(&out[offset + i], s);
        }
    }

    fn add_slices(&self, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        let n = a.len().max(b.len());
        (0..n)
            .map(|i| match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => self.base.add(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => unreachable!(),
            })
            .collect()
    }

    fn mul_slices(&self, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        if b.is_empty() {
            return Vec::new();
        }
        if b.len() < KARATSUBA_THRESHOLD {
            return self.schoolbook(a, b);
        }
        let r = self.base;
        if 2 * b.len() <= a.len() {
            // unbalanced: split the long operand into chunks of the short one's size
            let mut out = vec![r.zero(); a.len() + b.len() - 1];
            for (k, chunk) in a.chunks(b.len()).enumerate() {
                let part = self.mul_slices(chunk, b);
                self.add_into(&mut out, &part, k * b.len());
            }
            return out;
        }
        let m = a.len() / 2;
        let (a0, a1) = a.split_at(m);
        let (b0, b1) = b.split_at(m.min(b.len()));
        let z0 = self.mul_slices(a0, b0);
        let z2 = self.mul_slices(a1, b1);
        let z1_full = self.mul_slices(&self.add_slices(a0, a1), &self.add_slices(b0, b1));
        let mut z1 = z1_full;
        for (i, v) in z0.iter().enumerate() {
            z1[i] = r.sub(&z1[i], v);
        }
        for (i, v) in z2.iter().enumerate() {
            z1[i] = r.sub(&z1[i], v);
        }
        let mut out = vec![r.zero(); a.len() + b.len() - 1];
        self.add_into(&mut out, &z0, 0);
        let z1_len = z1.iter().rposition(|c| !r.is_zero(c)).map_or(0, |p| p + 1);
        self.add_into(&mut out, &z1[..z1_len], m);
        self.add_into(&mut out, &z2, 2 * m);
        out
    }

    pub fn eval(&self, p: &Poly<R::Elem>, at: &R::Elem) -> R::Elem {
        let r = self.base;
        p.coeffs.iter().rev().fold(r.zero(), |acc, c| r.add(&r.mul(&acc, at), c))
    }

    /// `p(q(x))`.
    pub fn compose(&self, p: &Poly<R::Elem>, q: &Poly<R::Elem>) -> Poly<R::Elem> {
        p.coeffs.iter().rev().fold(Poly::zero(), |acc, c| self.add_constant(&self.mul(&acc, q), c))
    }

    pub fn derivative(&self, p: &Poly<R::Elem>) -> Poly<R::Elem> {
        let r = self.base;
        self.from_coeffs(
            p.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| r.mul(&r.from_i64(i as i64), c))
                .collect(),
        )
    }

    /// Division with remainder; requires the leading coefficient of `b` to divide every
    /// leading coefficient met along the way (always true over a field or for monic `b`).
    pub fn divrem(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Option<(Poly<R::Elem>, Poly<R::Elem>)> {
        let r = self.base;
        let db = b.degree()?;
        if a.len() <= db {
            return Some((Poly::zero(), a.clone()));
        }
        let lb = b.lead().unwrap();
        let monic = r.is_one(lb);
        let mut rem = a.coeffs.clone();
        let mut quot = vec![r.zero(); a.len() - db];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + db];
            if r.is_zero(top) {
                continue;
            }
            let q = if monic { top.clone() } else { r.div_exact(top, lb)? };
            for (j, bc) in b.coeffs.iter().enumerate() {
                let t = r.mul(&q, bc);
                rem[i + j] = r.sub(&rem[i + j], &t);
            }
            quot[i] = q;
        }
        rem.truncate(db);
        Some((self.from_coeffs(quot), self.from_coeffs(rem)))
    }

    pub fn rem(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Option<Poly<R::Elem>> {
        self.divrem(a, b).map(|(_, r)| r)
    }

    /// The `q` with `a = q * b`; a nonzero remainder is an error.
    pub fn exact_div(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Result<Poly<R::Elem>> {
        if b.is_zero() {
            return Err(Error::NotDivisible("division by the zero polynomial".into()));
        }
        match self.divrem(a, b) {
            Some((q, r)) if r.is_zero() => Ok(q),
            Some((_, r)) => Err(Error::NotDivisible(format!(
                "remainder of degree {} is nonzero",
                r.degree().unwrap_or(0)
            ))),
            None => Err(Error::NotDivisible("leading coefficient does not divide".into())),
        }
    }

    pub fn divides(&self, b: &Poly<R::Elem>, a: &Poly<R::Elem>) -> bool {
        self.rem(a, b).is_some_and(|r| r.is_zero())
    }
}

impl<'a, F: Field> PolyRing<'a, F> {
    pub fn monic(&self, p: &Poly<F::Elem>) -> Poly<F::Elem> {
        match p.lead() {
            None => Poly::zero(),
            Some(l) => {
                let li = self.base.inv(l).expect("nonzero leading coefficient is invertible");
                self.scale(p, &li)
            }
        }
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b).expect("field division");
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn xgcd(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> (Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1).expect("field division");
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.lead() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = self.base.inv(l).unwrap();
                (self.scale(&r0, &li), self.scale(&s0, &li), self.scale(&t0, &li))
            }
        }
    }

    /// Resultant by the Euclidean remainder sequence.
    pub fn resultant(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> F::Elem {
        let f = self.base;
        let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
            return f.zero();
        };
        if da == 0 {
            return f.pow(a.lead().unwrap(), db as u64);
        }
        let (mut a, mut b) = (a.clone(), b.clone());
        let mut acc = f.one();
        loop {
            let da = a.degree().unwrap();
            let db = b.degree().unwrap();
            if db == 0 {
                return f.mul(&acc, &f.pow(b.lead().unwrap(), da as u64));
            }
            let r = self.rem(&a, &b).expect("field division");
            let Some(dr) = r.degree() else {
                return f.zero();
            };
            if da % 2 == 1 && db % 2 == 1 {
                acc = f.neg(&acc);
            }
            acc = f.mul(&acc, &f.pow(b.lead().unwrap(), (da - dr) as u64));
            a = b;
            b = r;
        }
    }

    /// `(-1)^{n(n-1)/2} res(p, p') / lead(p)`.
    pub fn discriminant(&self, p: &Poly<F::Elem>) -> F::Elem {
        let f = self.base;
        let n = p.degree().expect("discriminant of the zero polynomial");
        if n == 0 {
            return f.one();
        }
        let res = self.resultant(p, &self.derivative(p));
        let r = f.div(&res, p.lead().unwrap()).unwrap();
        if (n * (n - 1) / 2) % 2 == 1 {
            f.neg(&r)
        } else {
            r
        }
    }
}
