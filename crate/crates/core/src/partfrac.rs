//! Irreducible partial fraction decomposition in a chosen main variable.

use num_traits::{One, Zero};

use crate::bipoly::{BiPoly, Var};
use crate::error::Result;
use crate::factor::factor_irreducible;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::uniview::{split_ratfunc, view_to_ratfunc, CoefFrac, UniView};

/// One proper fraction `numerator / base^power` with `base` irreducible and
/// unit-normal, and `deg_var(numerator) < deg_var(base)`.  The numerator is a
/// polynomial in the main variable whose coefficients may carry denominators
/// in the other variable.
#[derive(Debug, Clone, PartialEq)]
pub struct PfTerm {
    pub numerator: RatFunc,
    pub base: BiPoly,
    pub power: u32,
}

impl PfTerm {
    pub fn value(&self) -> RatFunc {
        self.numerator
            .div(&RatFunc::from_poly(self.base.pow(self.power)))
            .expect("nonzero base")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartialFractions {
    pub var: Var,
    pub poly_part: UniView,
    pub terms: Vec<PfTerm>,
}

impl PartialFractions {
    /// Exact reconstruction of the decomposed function.
    pub fn to_ratfunc(&self) -> RatFunc {
        let mut acc = self.poly_part.to_ratfunc();
        for t in &self.terms {
            let denom = RatFunc::from_poly(t.base.pow(t.power));
            acc = acc.add(&t.numerator.div(&denom).expect("nonzero base"));
        }
        acc
    }
}

/// Decompose `f` as polynomial part plus proper fractions over the
/// irreducible factors of the denominator.
pub fn partial_fractions(f: &RatFunc, var: Var) -> Result<PartialFractions> {
    let (poly_part, rnum, rden) = split_ratfunc(f, var);
    let poly_part = UniView::new(var, poly_part);
    if rnum.is_zero() {
        return Ok(PartialFractions {
            var,
            poly_part,
            terms: vec![],
        });
    }
    let factorization = factor_irreducible(f.den())?;
    // factors involving the main variable, in factorization order
    let mut moduli: Vec<(BiPoly, Poly<CoefFrac>, u32)> = Vec::new();
    for (p, m) in &factorization.factors {
        if p.degree(var).unwrap_or(0) == 0 {
            continue;
        }
        let monic = UniView::from_bipoly(p, var).poly.monic();
        moduli.push((p.clone(), monic, *m));
    }
    debug_assert!(!moduli.is_empty());
    // split the proper fraction across the pairwise coprime modulus powers
    let pieces = split_coprime(&rnum, &moduli, &rden);
    let mut terms = Vec::new();
    for ((base, monic, mult), piece) in moduli.iter().zip(pieces) {
        // gamma relates the stored base to its monic main-variable view
        let gamma = RatFunc::from_poly(base.clone())
            .div(&view_to_ratfunc(monic, var))
            .expect("nonzero");
        // expand the numerator in base-monic digits
        let mut rest = piece;
        let mut digits: Vec<Poly<CoefFrac>> = Vec::with_capacity(*mult as usize);
        for _ in 0..*mult {
            let (q, r) = rest.divrem(monic);
            digits.push(r);
            rest = q;
        }
        debug_assert!(rest.is_zero());
        for (j, digit) in digits.into_iter().enumerate() {
            if digit.is_zero() {
                continue;
            }
            let power = *mult - j as u32;
            let numerator = view_to_ratfunc(&digit, var)
                .mul(&gamma.pow(power as i64).expect("nonzero gamma"));
            terms.push(PfTerm {
                numerator,
                base: base.clone(),
                power,
            });
        }
    }
    let out = PartialFractions {
        var,
        poly_part,
        terms,
    };
    debug_assert_eq!(out.to_ratfunc(), *f);
    Ok(out)
}

/// Split `num / prod(monic_i^mult_i)` into proper pieces `r_i / monic_i^mult_i`.
fn split_coprime(
    num: &Poly<CoefFrac>,
    moduli: &[(BiPoly, Poly<CoefFrac>, u32)],
    _den: &Poly<CoefFrac>,
) -> Vec<Poly<CoefFrac>> {
    if moduli.len() == 1 {
        return vec![num.clone()];
    }
    let mid = moduli.len() / 2;
    let (left, right) = moduli.split_at(mid);
    let prod = |ms: &[(BiPoly, Poly<CoefFrac>, u32)]| {
        let mut acc = Poly::<CoefFrac>::one();
        for (_, m, k) in ms {
            acc = acc.mul(&m.pow(*k));
        }
        acc
    };
    let a = prod(left);
    let b = prod(right);
    let (g, s, t) = a.xgcd(&b);
    debug_assert_eq!(g.degree(), Some(0));
    // num/(a b) = (num t)/a + (num s)/b, each reduced to a proper fraction
    let ra = num.mul(&t).rem(&a);
    let rb = num.mul(&s).rem(&b);
    let mut out = split_coprime(&ra, left, &a);
    out.extend(split_coprime(&rb, right, &b));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;
    use num_traits::Zero;

    fn x() -> BiPoly {
        BiPoly::var(Var::X)
    }
    fn y() -> BiPoly {
        BiPoly::var(Var::Y)
    }
    fn rf(num: BiPoly, den: BiPoly) -> RatFunc {
        RatFunc::new(num, den).unwrap()
    }

    #[test]
    fn three_term_split() {
        // 1/(y^2 (y+1)) = 1/y^2 - 1/y + 1/(y+1)
        let f = rf(
            BiPoly::one(),
            y().pow(2).mul(&y().add(&BiPoly::one())),
        );
        let pf = partial_fractions(&f, Var::Y).unwrap();
        assert!(pf.poly_part.is_zero());
        assert_eq!(pf.terms.len(), 3);
        assert_eq!(pf.to_ratfunc(), f);
        let find = |base: &BiPoly, power: u32| -> RatFunc {
            pf.terms
                .iter()
                .find(|t| &t.base == base && t.power == power)
                .map(|t| t.numerator.clone())
                .unwrap_or_else(RatFunc::zero)
        };
        assert_eq!(find(&y(), 2), RatFunc::int(1));
        assert_eq!(find(&y(), 1), RatFunc::int(-1));
        assert_eq!(find(&y().add(&BiPoly::one()), 1), RatFunc::int(1));
    }

    #[test]
    fn paper_shape_in_x() {
        // (1 - x^2)/(x^2+1)^2 = 2/(x^2+1)^2 - 1/(x^2+1)
        let d = x().pow(2).add(&BiPoly::one());
        let f = rf(BiPoly::one().sub(&x().pow(2)), d.pow(2));
        let pf = partial_fractions(&f, Var::X).unwrap();
        assert!(pf.poly_part.is_zero());
        assert_eq!(pf.terms.len(), 2);
        let mut by_power: Vec<(u32, RatFunc)> = pf
            .terms
            .iter()
            .map(|t| (t.power, t.numerator.clone()))
            .collect();
        by_power.sort_by_key(|(p, _)| *p);
        assert_eq!(by_power[0], (1, RatFunc::int(-1)));
        assert_eq!(by_power[1], (2, RatFunc::int(2)));
        assert_eq!(pf.to_ratfunc(), f);
    }

    #[test]
    fn polynomial_input() {
        let f = RatFunc::from_poly(y().pow(2));
        let pf = partial_fractions(&f, Var::Y).unwrap();
        assert!(pf.terms.is_empty());
        assert_eq!(pf.to_ratfunc(), f);
    }

    #[test]
    fn mixed_coefficient_denominators() {
        // 1/(x (2x+3y)) in y: single y-factor, numerator carries 1/x... no:
        // base 2x+3y has gamma = 3, numerator must make it exact.
        let f = rf(
            BiPoly::one(),
            x().mul(&x().scale(&rat_int(2)).add(&y().scale(&rat_int(3)))),
        );
        let pf = partial_fractions(&f, Var::Y).unwrap();
        assert_eq!(pf.terms.len(), 1);
        assert_eq!(pf.to_ratfunc(), f);
    }
}
