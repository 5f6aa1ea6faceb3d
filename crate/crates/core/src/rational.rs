//! Arbitrary-precision rational scalars and a few exact integer-arithmetic
//! helpers used by the orbit machinery.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// The coefficient field: reduced fractions of arbitrary-precision integers.
/// `num_rational` maintains the invariants (gcd 1, positive denominator).
pub type Rational = num_rational::BigRational;

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `base^exp` for any integer `exp`; `base` must be nonzero when `exp < 0`.
pub fn pow_i(base: &Rational, exp: i64) -> Rational {
    if exp == 0 {
        return Rational::one();
    }
    let mut result = Rational::one();
    let positive = if exp > 0 {
        base.clone()
    } else {
        assert!(!base.is_zero(), "zero base with negative exponent");
        base.recip()
    };
    let mut b = positive;
    let mut e = exp.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            result *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    result
}

/// Exponent of the prime `p` in `n` (requires `n != 0`).
fn int_valuation(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.abs();
    let mut v = 0;
    while (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

/// Valuation of a nonzero rational at the prime `p`.
fn valuation(r: &Rational, p: &BigInt) -> i64 {
    int_valuation(r.numer(), p) - int_valuation(r.denom(), p)
}

/// Smallest prime dividing numerator or denominator of `r` (|r| != 1).
fn smallest_prime_of(r: &Rational) -> Option<BigInt> {
    let n = r.numer().abs() * r.denom().abs();
    if n.is_one() {
        return None;
    }
    let two = BigInt::from(2);
    if (&n % &two).is_zero() {
        return Some(two);
    }
    let mut p = BigInt::from(3);
    while (&p * &p) <= n {
        if (&n % &p).is_zero() {
            return Some(p);
        }
        p += 2;
    }
    Some(n)
}

/// Exact integer logarithm: the unique `j` with `base^j = value`, if any.
/// Requires `base` not in {0, 1, -1}.
pub fn int_log(base: &Rational, value: &Rational) -> Option<i64> {
    if value.is_zero() {
        return None;
    }
    if value.is_one() {
        return Some(0);
    }
    let p = smallest_prime_of(base).expect("base must not be a unit");
    let vb = valuation(base, &p);
    debug_assert!(vb != 0);
    let vv = valuation(value, &p);
    if vv % vb != 0 {
        return None;
    }
    let j = vv / vb;
    if &pow_i(base, j) == value {
        Some(j)
    } else {
        None
    }
}

/// Floor of a rational as an i64 (desk-scale values only).
pub fn floor_i64(r: &Rational) -> i64 {
    use num_traits::ToPrimitive;
    r.floor()
        .to_integer()
        .to_i64()
        .expect("floor out of i64 range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_i_negative() {
        let q = rat(2, 3);
        assert_eq!(pow_i(&q, -2), rat(9, 4));
        assert_eq!(pow_i(&q, 0), rat_int(1));
        assert_eq!(pow_i(&q, 3), rat(8, 27));
    }

    #[test]
    fn int_log_basic() {
        let q = rat(2, 3);
        assert_eq!(int_log(&q, &rat(4, 9)), Some(2));
        assert_eq!(int_log(&q, &rat(27, 8)), Some(-3));
        assert_eq!(int_log(&q, &rat_int(1)), Some(0));
        // 2 is not an integer power of 2/3
        assert_eq!(int_log(&q, &rat_int(2)), None);
        // sign mismatch
        assert_eq!(int_log(&rat_int(-2), &rat_int(8)), None);
        assert_eq!(int_log(&rat_int(-2), &rat_int(-8)), Some(3));
    }

    #[test]
    fn floor_values() {
        assert_eq!(floor_i64(&rat(7, 2)), 3);
        assert_eq!(floor_i64(&rat(-3, 2)), -2);
        assert_eq!(floor_i64(&rat_int(5)), 5);
    }
}
