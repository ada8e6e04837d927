//! Integer and rational polynomials: content, primitive gcd, resultants over Z.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{Poly, PolyRing};
use super::ring::{Integers, Rationals};

pub type IntPoly = Poly<BigInt>;
pub type RatPoly = Poly<BigRational>;

pub fn zx() -> PolyRing<'static, Integers> {
    PolyRing::new(&Integers)
}

pub fn qx() -> PolyRing<'static, Rationals> {
    PolyRing::new(&Rationals)
}

pub fn int_poly(coeffs: &[i64]) -> IntPoly {
    zx().from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
}

pub fn to_rat(p: &IntPoly) -> RatPoly {
    zx().map(&Rationals, p, |c| BigRational::from_integer(c.clone()))
}

/// `(d, q)` with `p = q / d`, `q` integral and `d > 0` minimal.
pub fn clear_denominators(p: &RatPoly) -> (BigInt, IntPoly) {
    let den = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let q = qx().map(&Integers, p, |c| (c * BigRational::from_integer(den.clone())).to_integer());
    (den, q)
}

pub fn content(p: &IntPoly) -> BigInt {
    p.coeffs().iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub fn primitive_part(p: &IntPoly) -> IntPoly {
    if p.is_zero() {
        return p.clone();
    }
    let mut c = content(p);
    if p.lead().unwrap().is_negative() {
        c = -c;
    }
    zx().from_coeffs(p.coeffs().iter().map(|x| x / &c).collect())
}

/// Pseudo-remainder `prem(a, b)`: `lc(b)^{deg a - deg b + 1} a mod b`.
pub fn pseudo_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let db = b.degree().expect("pseudo-remainder by zero");
    let Some(da) = a.degree() else { return a.clone() };
    if da < db {
        return a.clone();
    }
    let lb = b.lead().unwrap();
    let mut r: Vec<BigInt> = a.coeffs().to_vec();
    for i in (db..=da).rev() {
        let top = r[i].clone();
        for c in r.iter_mut().take(i + 1) {
            *c *= lb;
        }
        if !top.is_zero() {
            for (j, bc) in b.coeffs().iter().enumerate() {
                r[i - db + j] -= &top * bc;
            }
        }
    }
    r.truncate(db);
    zx().from_coeffs(r)
}

/// Primitive gcd over Z (positive leading coefficient); content-times-primitive-part of
/// the true gcd.
pub fn int_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() {
        return primitive_part(b) * &content(b);
    }
    if b.is_zero() {
        return primitive_part(a) * &content(a);
    }
    let c = content(a).gcd(&content(b));
    let (mut x, mut y) = (primitive_part(a), primitive_part(b));
    if x.degree() < y.degree() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_zero() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = if r.is_zero() { r } else { primitive_part(&r) };
    }
    primitive_part(&x) * &c
}

/// Monic gcd over Q.
pub fn rat_gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let (_, ai) = clear_denominators(a);
    let (_, bi) = clear_denominators(b);
    qx().monic(&to_rat(&int_gcd(&ai, &bi)))
}

impl std::ops::Mul<&BigInt> for IntPoly {
    type Output = IntPoly;
    fn mul(self, c: &BigInt) -> IntPoly {
        zx().scale(&self, c)
    }
}

pub fn int_resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
    let r = qx().resultant(&to_rat(a), &to_rat(b));
    debug_assert!(r.is_integer());
    r.to_integer()
}

pub fn int_discriminant(p: &IntPoly) -> BigInt {
    let r = qx().discriminant(&to_rat(p));
    debug_assert!(r.is_integer());
    r.to_integer()
}

pub fn is_monic_int(p: &IntPoly) -> bool {
    p.lead().is_some_and(|c| c.is_one())
}

/// Möbius function.
pub fn mobius(n: u64) -> i8 {
    assert!(n >= 1, "mobius is defined for n >= 1");
    let mut n = n;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|k| n % k == 0).collect()
}

/// Human-readable rendering, descending degree.
pub fn format_int_poly(p: &IntPoly, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_small_values() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(4), 0);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(2), -1);
        assert_eq!(mobius(30), -1);
    }

    #[test]
    fn mobius_divisor_sum_vanishes() {
        for n in 1..=100u64 {
            let s: i64 = divisors(n).into_iter().map(|k| mobius(k) as i64).sum();
            assert_eq!(s, i64::from(n == 1), "n = {n}");
        }
    }

    #[test]
    fn discriminant_examples() {
        // x^2 + c0 -> -4 c0
        for c0 in [-3i64, -1, 2, 5] {
            assert_eq!(int_discriminant(&int_poly(&[c0, 0, 1])), BigInt::from(-4 * c0));
        }
        // x^3 + a -> -27 a^2
        for a in [-2i64, 1, 3] {
            assert_eq!(int_discriminant(&int_poly(&[a, 0, 0, 1])), BigInt::from(-27 * a * a));
        }
    }

    #[test]
    fn resultant_of_linears() {
        for (u, v) in [(3i64, 5i64), (-2, 7), (0, 0)] {
            let r = int_resultant(&int_poly(&[-u, 1]), &int_poly(&[-v, 1]));
            assert_eq!(r, BigInt::from(u - v));
        }
    }

    #[test]
    fn gcd_examples() {
        let a = int_poly(&[-1, 0, 1]);
        let b = int_poly(&[-1, 1]);
        assert_eq!(int_gcd(&a, &b), b);
        let c = int_poly(&[-1, 0, -2, 0, 1]);
        assert_eq!(int_gcd(&c, &a), int_poly(&[1]));
        assert_eq!(rat_gcd(&to_rat(&c), &to_rat(&a)), qx().one());
        let p = int_poly(&[4, 0, 2]);
        assert_eq!(rat_gcd(&to_rat(&p), &to_rat(&p)), qx().monic(&to_rat(&p)));
    }

    #[test]
    fn formatting() {
        assert_eq!(format_int_poly(&int_poly(&[1, 1, 2, 1]), "c"), "c^3 + 2*c^2 + c + 1");
        assert_eq!(format_int_poly(&int_poly(&[-1, 0, -2]), "x"), "-2*x^2 - 1");
    }
}
