//! Arithmetic in a number field Q[t]/(m) with m monic irreducible, plus a
//! generic fraction field over univariate polynomials.  Used by the
//! differential structure decomposition when residues are algebraic over Q.

use num_traits::{One, Zero};
use std::sync::Arc;

use crate::poly::{Coef, Poly, UPoly};
use crate::rational::Rational;

/// An element of Q[t]/(modulus).  Plain rationals embed with no modulus;
/// arithmetic unifies moduli and reduces representatives.
#[derive(Clone, Debug)]
pub struct AlgNum {
    pub repr: UPoly,
    pub modulus: Option<Arc<UPoly>>,
}

impl AlgNum {
    pub fn new(repr: UPoly, modulus: Arc<UPoly>) -> Self {
        let repr = repr.rem(&modulus);
        AlgNum {
            repr,
            modulus: Some(modulus),
        }
    }

    pub fn rational(r: Rational) -> Self {
        AlgNum {
            repr: UPoly::constant(r),
            modulus: None,
        }
    }

    /// The class of t itself.
    pub fn generator(modulus: Arc<UPoly>) -> Self {
        AlgNum::new(UPoly::var(), modulus)
    }

    fn unify(a: &Option<Arc<UPoly>>, b: &Option<Arc<UPoly>>) -> Option<Arc<UPoly>> {
        match (a, b) {
            (None, None) => None,
            (Some(m), None) | (None, Some(m)) => Some(m.clone()),
            (Some(m1), Some(m2)) => {
                debug_assert_eq!(**m1, **m2, "mixed moduli");
                Some(m1.clone())
            }
        }
    }

    fn reduce(repr: UPoly, modulus: Option<Arc<UPoly>>) -> Self {
        let repr = match &modulus {
            Some(m) => repr.rem(m),
            None => repr,
        };
        AlgNum { repr, modulus }
    }
}

impl PartialEq for AlgNum {
    fn eq(&self, other: &Self) -> bool {
        self.repr == other.repr
    }
}

impl Zero for AlgNum {
    fn zero() -> Self {
        AlgNum {
            repr: UPoly::zero(),
            modulus: None,
        }
    }
    fn is_zero(&self) -> bool {
        self.repr.is_zero()
    }
}

impl One for AlgNum {
    fn one() -> Self {
        AlgNum {
            repr: UPoly::one(),
            modulus: None,
        }
    }
}

impl std::ops::Add for AlgNum {
    type Output = AlgNum;
    fn add(self, rhs: AlgNum) -> AlgNum {
        let m = AlgNum::unify(&self.modulus, &rhs.modulus);
        AlgNum::reduce(self.repr.add(&rhs.repr), m)
    }
}

impl std::ops::Sub for AlgNum {
    type Output = AlgNum;
    fn sub(self, rhs: AlgNum) -> AlgNum {
        let m = AlgNum::unify(&self.modulus, &rhs.modulus);
        AlgNum::reduce(self.repr.sub(&rhs.repr), m)
    }
}

impl std::ops::Mul for AlgNum {
    type Output = AlgNum;
    fn mul(self, rhs: AlgNum) -> AlgNum {
        let m = AlgNum::unify(&self.modulus, &rhs.modulus);
        AlgNum::reduce(self.repr.mul(&rhs.repr), m)
    }
}

impl std::ops::Div for AlgNum {
    type Output = AlgNum;
    fn div(self, rhs: AlgNum) -> AlgNum {
        assert!(!rhs.is_zero(), "division by zero algebraic number");
        let m = AlgNum::unify(&self.modulus, &rhs.modulus);
        match &m {
            None => {
                // both are embedded rationals
                debug_assert!(self.repr.is_constant() && rhs.repr.is_constant());
                AlgNum::reduce(
                    self.repr.div_scalar(&rhs.repr.coeff(0)),
                    None,
                )
            }
            Some(modulus) => {
                let inv = rhs
                    .repr
                    .inv_mod(modulus)
                    .expect("nonzero element of a field is invertible");
                AlgNum::reduce(self.repr.mul(&inv), m)
            }
        }
    }
}

impl std::ops::Neg for AlgNum {
    type Output = AlgNum;
    fn neg(self) -> AlgNum {
        AlgNum {
            repr: self.repr.neg(),
            modulus: self.modulus,
        }
    }
}

impl Coef for AlgNum {
    fn from_rational(r: &Rational) -> Self {
        AlgNum::rational(r.clone())
    }
}

/// Fractions of univariate polynomials over a coefficient field, reduced and
/// with monic denominator.  With `F = AlgNum` this is the rational function
/// field L(x) over a number field L.
#[derive(Clone, Debug)]
pub struct RFrac<F: Coef> {
    pub num: Poly<F>,
    pub den: Poly<F>,
}

impl<F: Coef> RFrac<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Self {
        assert!(!den.is_zero());
        Self::reduced(num, den)
    }

    pub fn from_poly(num: Poly<F>) -> Self {
        RFrac {
            num,
            den: Poly::one(),
        }
    }

    fn reduced(num: Poly<F>, den: Poly<F>) -> Self {
        if num.is_zero() {
            return RFrac {
                num,
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree().unwrap_or(0) >= 1 {
            (num.div_exact(&g), den.div_exact(&g))
        } else {
            (num, den)
        };
        let lc = den.leading();
        RFrac {
            num: num.div_scalar(&lc),
            den: den.div_scalar(&lc),
        }
    }
}

impl<F: Coef> PartialEq for RFrac<F> {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl<F: Coef> Zero for RFrac<F> {
    fn zero() -> Self {
        RFrac {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<F: Coef> One for RFrac<F> {
    fn one() -> Self {
        RFrac {
            num: Poly::one(),
            den: Poly::one(),
        }
    }
}

impl<F: Coef> std::ops::Add for RFrac<F> {
    type Output = RFrac<F>;
    fn add(self, rhs: RFrac<F>) -> RFrac<F> {
        RFrac::reduced(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl<F: Coef> std::ops::Sub for RFrac<F> {
    type Output = RFrac<F>;
    fn sub(self, rhs: RFrac<F>) -> RFrac<F> {
        RFrac::reduced(
            self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl<F: Coef> std::ops::Mul for RFrac<F> {
    type Output = RFrac<F>;
    fn mul(self, rhs: RFrac<F>) -> RFrac<F> {
        RFrac::reduced(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl<F: Coef> std::ops::Div for RFrac<F> {
    type Output = RFrac<F>;
    fn div(self, rhs: RFrac<F>) -> RFrac<F> {
        assert!(!rhs.is_zero());
        RFrac::reduced(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }
}

impl<F: Coef> std::ops::Neg for RFrac<F> {
    type Output = RFrac<F>;
    fn neg(self) -> RFrac<F> {
        RFrac {
            num: self.num.neg(),
            den: self.den,
        }
    }
}

impl<F: Coef> Coef for RFrac<F> {
    fn from_rational(r: &Rational) -> Self {
        RFrac::from_poly(Poly::constant(F::from_rational(r)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn up(coeffs: &[i64]) -> UPoly {
        UPoly::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn sqrt2_field() {
        // t^2 - 2
        let m = Arc::new(up(&[-2, 0, 1]));
        let t = AlgNum::generator(m.clone());
        let two = AlgNum::rational(rat_int(2));
        assert_eq!(t.clone() * t.clone(), two.clone());
        // 1/t = t/2
        let inv = AlgNum::one() / t.clone();
        assert_eq!(inv * t.clone(), AlgNum::one());
        // (1 + t)(1 - t) = -1
        let a = AlgNum::one() + t.clone();
        let b = AlgNum::one() - t.clone();
        assert_eq!(a * b, AlgNum::rational(rat_int(-1)));
        let _ = rat(1, 2);
    }

    #[test]
    fn rfrac_over_number_field() {
        // (x^2 - 2)/(x - t) = x + t over Q(sqrt 2)
        let m = Arc::new(up(&[-2, 0, 1]));
        let t = AlgNum::generator(m.clone());
        let x2m2: Poly<AlgNum> = Poly::new(vec![
            AlgNum::rational(rat_int(-2)),
            AlgNum::zero(),
            AlgNum::one(),
        ]);
        let xmt = Poly::new(vec![-t.clone(), AlgNum::one()]);
        let frac = RFrac::new(x2m2, xmt);
        let expected = RFrac::from_poly(Poly::new(vec![t, AlgNum::one()]));
        assert_eq!(frac, expected);
    }
}
