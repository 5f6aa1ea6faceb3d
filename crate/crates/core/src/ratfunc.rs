//! Reduced bivariate rational functions — the field K(x, y).

use num_traits::{One, Zero};
use std::fmt;

use crate::bipoly::{BiPoly, Var};
use crate::error::{Error, Result};
use crate::gcd::{div_exact, poly_gcd};
use crate::poly::{Coef, UPoly};
use crate::rational::Rational;

/// Invariants: `gcd(num, den) = 1`, `den` nonzero and unit-normal
/// (graded-lex leading coefficient 1).  Zero is `0/1`.
#[derive(Clone, PartialEq)]
pub struct RatFunc {
    num: BiPoly,
    den: BiPoly,
}

impl RatFunc {
    pub fn new(num: BiPoly, den: BiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: BiPoly, den: BiPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFunc {
                num,
                den: BiPoly::one(),
            };
        }
        if den.is_one() {
            return RatFunc { num, den };
        }
        if let Some(c) = den.as_constant() {
            return RatFunc {
                num: num.scale(&c.recip()),
                den: BiPoly::one(),
            };
        }
        let (mut num, mut den) = if num.is_constant() {
            (num, den)
        } else {
            let g = poly_gcd(&num, &den);
            if g.is_constant() {
                (num, den)
            } else {
                (
                    div_exact(&num, &g).expect("gcd divides numerator"),
                    div_exact(&den, &g).expect("gcd divides denominator"),
                )
            }
        };
        let lc = den.leading_coeff().unwrap();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn from_poly(p: BiPoly) -> Self {
        RatFunc {
            num: p,
            den: BiPoly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(BiPoly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Self::constant(crate::rational::rat_int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(BiPoly::var(v))
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn den(&self) -> &BiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&BiPoly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn depends_on(&self, v: Var) -> bool {
        self.num.depends_on(v) || self.den.depends_on(v)
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::reduced(num, den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::reduced(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        ))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one_rf().div(self)
    }

    fn one_rf() -> Self {
        Self::from_poly(BiPoly::one())
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e == 0 {
            return Ok(Self::one_rf());
        }
        let base = if e > 0 { self.clone() } else { self.recip()? };
        let mut out = Self::one_rf();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        Ok(out)
    }

    /// Formal partial derivative by the quotient rule.
    pub fn derivative(&self, v: Var) -> Self {
        let num = self
            .num
            .derivative(v)
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative(v)));
        let den = self.den.mul(&self.den);
        Self::reduced(num, den)
    }

    /// Substitute `v -> v + amount`.
    pub fn shift(&self, v: Var, amount: &Rational) -> Self {
        Self::reduced(self.num.shift(v, amount), self.den.shift(v, amount))
    }

    /// Substitute `v -> factor * v` (`factor` nonzero).
    pub fn scale_var(&self, v: Var, factor: &Rational) -> Self {
        assert!(!factor.is_zero());
        Self::reduced(
            self.num.scale_var(v, factor),
            self.den.scale_var(v, factor),
        )
    }

    pub fn swap_vars(&self) -> Self {
        Self::reduced(self.num.swap_vars(), self.den.swap_vars())
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        Self::from_poly(BiPoly::zero())
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
}

impl One for RatFunc {
    fn one() -> Self {
        Self::one_rf()
    }
}

impl std::ops::Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        RatFunc::add(&self, &rhs)
    }
}

impl std::ops::Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        RatFunc::sub(&self, &rhs)
    }
}

impl std::ops::Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        RatFunc::mul(&self, &rhs)
    }
}

impl std::ops::Div for RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: RatFunc) -> RatFunc {
        RatFunc::div(&self, &rhs).expect("division by zero rational function")
    }
}

impl std::ops::Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(&self)
    }
}

impl Coef for RatFunc {
    fn from_rational(r: &Rational) -> Self {
        RatFunc::constant(r.clone())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            if self.num.num_terms() > 1 {
                write!(f, "{}", self.num)
            } else {
                write!(f, "{}", self.num)
            }
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({})", self)
    }
}

/// Evaluate a univariate polynomial at a rational-function argument.
pub fn eval_upoly_at(p: &UPoly, arg: &RatFunc) -> RatFunc {
    let mut acc = RatFunc::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(arg).add(&RatFunc::constant(c.clone()));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn x() -> BiPoly {
        BiPoly::var(Var::X)
    }
    fn y() -> BiPoly {
        BiPoly::var(Var::Y)
    }

    #[test]
    fn additive_inverse() {
        let f = RatFunc::new(BiPoly::one(), x().add(&y())).unwrap();
        assert!(f.add(&f.neg()).is_zero());
    }

    #[test]
    fn gcd_cancellation_on_construction() {
        // (y^2 - x^2)/(x + y) -> y - x
        let f = RatFunc::new(y().pow(2).sub(&x().pow(2)), x().add(&y())).unwrap();
        assert!(f.is_poly());
        assert_eq!(f.num(), &y().sub(&x()));
        // re-multiplying recovers the original fraction
        let back = f.mul(&RatFunc::from_poly(x().add(&y())));
        assert_eq!(back.num(), &y().pow(2).sub(&x().pow(2)));
    }

    #[test]
    fn mul_expansion() {
        let a = RatFunc::from_poly(y().sub(&x()));
        let b = RatFunc::from_poly(y().add(&x()));
        assert_eq!(a.mul(&b).num(), &y().pow(2).sub(&x().pow(2)));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let f = RatFunc::var(Var::X);
        assert_eq!(f.div(&RatFunc::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn derivative_quotient_rule() {
        // D_x of x/(x^2+1) = (1 - x^2)/(x^2+1)^2
        let f = RatFunc::new(x(), x().pow(2).add(&BiPoly::one())).unwrap();
        let d = f.derivative(Var::X);
        let expected = RatFunc::new(
            BiPoly::one().sub(&x().pow(2)),
            x().pow(2).add(&BiPoly::one()).pow(2),
        )
        .unwrap();
        assert_eq!(d, expected);
    }

    #[test]
    fn denominator_unit_normalization() {
        // 1/(2y) -> (1/2)/y
        let f = RatFunc::new(BiPoly::one(), y().scale(&rat_int(2))).unwrap();
        assert_eq!(f.den(), &y());
        assert_eq!(f.num(), &BiPoly::constant(rat(1, 2)));
    }

    #[test]
    fn shift_substitution() {
        let f = RatFunc::new(
            BiPoly::one(),
            x().scale(&rat_int(2)).add(&y().scale(&rat_int(3))),
        )
        .unwrap();
        let shifted = f.shift(Var::X, &rat_int(3));
        let expected = RatFunc::new(
            BiPoly::one(),
            x().scale(&rat_int(2))
                .add(&y().scale(&rat_int(3)))
                .add(&BiPoly::constant(rat_int(6))),
        )
        .unwrap();
        assert_eq!(shifted, expected);
    }
}
