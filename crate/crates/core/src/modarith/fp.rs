use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::exactpoly::{Field, Poly, PolyRing, Ring};

pub type FpPoly = Poly<u64>;

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Primes in increasing order starting at 2.
pub fn primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&n| is_prime(n))
}

/// Prime factors of `n` found by trial division up to `limit`; the second component is
/// the unfactored cofactor (1 when fully factored).
pub fn small_prime_factors(n: &BigInt, limit: u64) -> (Vec<u64>, BigInt) {
    let mut n = num_traits::Signed::abs(n);
    let mut out = Vec::new();
    if num_traits::Zero::is_zero(&n) {
        return (out, n);
    }
    let mut p = 2u64;
    while p <= limit {
        let bp = BigInt::from(p);
        if (&bp * &bp) > n {
            break;
        }
        if n.is_multiple_of(&bp) {
            out.push(p);
            while n.is_multiple_of(&bp) {
                n /= &bp;
            }
        }
        p += 1;
    }
    if let Some(small) = n.to_u64() {
        if small > 1 && small <= limit.saturating_mul(limit) {
            out.push(small);
            return (out, BigInt::from(1));
        }
    }
    (out, n)
}

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(is_prime(p), "{p} is not prime");
        PrimeField { p }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn reduce_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    pub fn poly_ring(&self) -> PolyRing<'_, PrimeField> {
        PolyRing::new(self)
    }

    /// Reduce an integer polynomial coefficientwise.
    pub fn reduce_poly(&self, p: &Poly<BigInt>) -> FpPoly {
        self.poly_ring().from_coeffs(p.coeffs().iter().map(|c| self.reduce_int(c)).collect())
    }

    pub fn lift_poly(&self, p: &FpPoly) -> Poly<BigInt> {
        crate::exactpoly::zx().from_coeffs(p.coeffs().iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Coefficients as symmetric integers in `(-p/2, p/2]`.
    pub fn lift_symmetric(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = *a as u128 + *b as u128;
        (s % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn from_int(&self, n: &BigInt) -> u64 {
        self.reduce_int(n)
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn div_exact(&self, a: &u64, b: &u64) -> Option<u64> {
        self.div(a, b)
    }
    fn pow(&self, a: &u64, e: u64) -> u64 {
        pow_mod(*a, e, self.p)
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a % self.p == 0 {
            return None;
        }
        Some(pow_mod(*a, self.p - 2, self.p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let small: Vec<u64> = primes().take(10).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(2_147_483_649));
        assert!(is_prime(18_446_744_073_709_551_557));
    }

    #[test]
    fn trial_division() {
        let (ps, rest) = small_prime_factors(&BigInt::from(2 * 2 * 3 * 5 * 101), 1000);
        assert_eq!(ps, vec![2, 3, 5, 101]);
        assert_eq!(rest, BigInt::from(1));
    }

    #[test]
    fn field_axioms_spot_check() {
        let f = PrimeField::new(13);
        for a in 1..13u64 {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
            assert_eq!(f.add(&a, &f.neg(&a)), 0);
        }
        assert_eq!(f.from_i64(-1), 12);
    }
}
