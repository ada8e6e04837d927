//! Exact dense univariate polynomial arithmetic over a supplied coefficient ring.

pub mod intpoly;
pub mod json;
mod poly;
mod ring;

pub use intpoly::{
    clear_denominators, content, divisors, format_int_poly, int_discriminant, int_gcd, int_poly,
    int_resultant, mobius, primitive_part, qx, rat_gcd, to_rat, zx, IntPoly, RatPoly,
};
pub use poly::{Poly, PolyRing, KARATSUBA_THRESHOLD};
pub use ring::{int_valuation, Field, Integers, IntegersMod, Rationals, Ring};

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn arb_int_poly(max_len: usize) -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-20i64..20, 0..max_len).prop_map(|v| int_poly(&v))
    }

    #[test]
    fn arithmetic_examples() {
        let z = zx();
        assert_eq!(z.mul(&int_poly(&[1, 1]), &int_poly(&[-1, 1])), int_poly(&[-1, 0, 1]));
        let f = int_poly(&[-1, 0, 1]);
        assert_eq!(z.compose(&f, &f), int_poly(&[0, 0, -2, 0, 1]));
        assert_eq!(z.eval(&int_poly(&[0, 1, 1]), &BigInt::from(0)), BigInt::from(0));
    }

    #[test]
    fn exact_division_examples() {
        let z = zx();
        let c = int_poly(&[0, 1]);
        assert_eq!(z.exact_div(&int_poly(&[0, 1, 1]), &c).unwrap(), int_poly(&[1, 1]));
        assert_eq!(z.exact_div(&int_poly(&[0, 1, 1, 2, 1]), &c).unwrap(), int_poly(&[1, 1, 2, 1]));
        let err = z.exact_div(&int_poly(&[-1, 0, 1]), &int_poly(&[2, 1]));
        assert!(matches!(err, Err(crate::Error::NotDivisible(_))));
    }

    #[test]
    fn karatsuba_matches_schoolbook_on_large_inputs() {
        let z = zx();
        let a = int_poly(&(0..150).map(|i| (i * 7919 % 23) - 11).collect::<Vec<_>>());
        let b = int_poly(&(0..97).map(|i| (i * 104729 % 31) - 15).collect::<Vec<_>>());
        let fast = z.mul(&a, &b);
        let mut slow = vec![BigInt::from(0); a.len() + b.len() - 1];
        for (i, x) in a.coeffs().iter().enumerate() {
            for (j, y) in b.coeffs().iter().enumerate() {
                slow[i + j] += x * y;
            }
        }
        assert_eq!(fast, z.from_coeffs(slow));
    }

    #[test]
    fn discriminant_matches_root_product() {
        // monic with integer roots: disc = prod_{i<j} (r_i - r_j)^2
        let roots_sets: [&[i64]; 4] = [&[1, 2], &[0, -3, 5], &[2, 7, -1, 4], &[-6, 1, 3]];
        for roots in roots_sets {
            let z = zx();
            let p = roots.iter().fold(z.one(), |acc, &r| z.mul(&acc, &int_poly(&[-r, 1])));
            let mut expect = BigInt::from(1);
            for i in 0..roots.len() {
                for j in i + 1..roots.len() {
                    let d = BigInt::from(roots[i] - roots[j]);
                    expect *= &d * &d;
                }
            }
            assert_eq!(int_discriminant(&p), expect);
        }
    }

    #[test]
    fn field_resultant_over_rationals() {
        let q = qx();
        let a = to_rat(&int_poly(&[-2, 0, 1]));
        let b = to_rat(&int_poly(&[0, 1]));
        assert_eq!(q.resultant(&a, &b), BigRational::from_integer(BigInt::from(-2)));
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_int_poly(8), q in arb_int_poly(8), r in arb_int_poly(8)) {
            let z = zx();
            prop_assert_eq!(z.mul(&z.add(&p, &q), &r), z.add(&z.mul(&p, &r), &z.mul(&q, &r)));
            prop_assert_eq!(z.mul(&z.mul(&p, &q), &r), z.mul(&p, &z.mul(&q, &r)));
            prop_assert_eq!(z.compose(&z.compose(&p, &q), &r), z.compose(&p, &z.compose(&q, &r)));
        }

        #[test]
        fn exact_div_round_trip(p in arb_int_poly(10), q in arb_int_poly(6)) {
            prop_assume!(!q.is_zero());
            let z = zx();
            let qm = z.add(&z.monomial(BigInt::from(1), q.len()), &q);
            let prod = z.mul(&p, &qm);
            prop_assert_eq!(z.exact_div(&prod, &qm).unwrap(), p.clone());
            // over Q any nonzero divisor works
            let qq = qx();
            prop_assert_eq!(qq.exact_div(&to_rat(&z.mul(&p, &q)), &to_rat(&q)).unwrap(), to_rat(&p));
        }

        #[test]
        fn resultant_vanishes_iff_common_factor(p in arb_int_poly(5), q in arb_int_poly(5), s in -3i64..3) {
            prop_assume!(p.degree().unwrap_or(0) >= 1 && q.degree().unwrap_or(0) >= 1);
            let z = zx();
            // force a shared root half of the time
            let (p, q) = if s >= 0 {
                let lin = int_poly(&[-s, 1]);
                (z.mul(&p, &lin), z.mul(&q, &lin))
            } else { (p, q) };
            let res = int_resultant(&p, &q);
            let g = int_gcd(&p, &q);
            prop_assert_eq!(res == BigInt::from(0), g.degree().unwrap_or(0) > 0);
        }
    }
}
