//! Univariate views: polynomials in a designated main variable whose
//! coefficients are rational functions of the other variable.

use num_traits::{One, Zero};

use crate::bipoly::{BiPoly, Var};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::rational::Rational;

/// Coefficient fractions: rational functions free of the main variable.
pub type CoefFrac = RatFunc;

/// A polynomial in `var` over the field of rational functions in the other
/// variable.  Coefficients are stored in ascending degree; the leading
/// coefficient of a nonzero view is nonzero, and a "monic" view has leading
/// coefficient 1.
#[derive(Clone, PartialEq, Debug)]
pub struct UniView {
    pub var: Var,
    pub poly: Poly<CoefFrac>,
}

impl UniView {
    pub fn new(var: Var, poly: Poly<CoefFrac>) -> Self {
        debug_assert!(poly.coeffs().iter().all(|c| !c.depends_on(var)));
        UniView { var, poly }
    }

    pub fn zero(var: Var) -> Self {
        UniView {
            var,
            poly: Poly::zero(),
        }
    }

    pub fn from_bipoly(p: &BiPoly, var: Var) -> Self {
        let coeffs = p
            .coeffs_in(var)
            .into_iter()
            .map(RatFunc::from_poly)
            .collect();
        UniView {
            var,
            poly: Poly::new(coeffs),
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.poly.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.poly.leading().is_one()
    }

    pub fn monic(&self) -> Self {
        UniView {
            var: self.var,
            poly: self.poly.monic(),
        }
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        let v = RatFunc::var(self.var);
        let mut acc = RatFunc::zero();
        for c in self.poly.coeffs().iter().rev() {
            acc = acc.mul(&v).add(c);
        }
        acc
    }

    /// Clear coefficient denominators of a monic view: returns the
    /// unit-normal primitive bivariate polynomial spanning the same ideal.
    pub fn to_unit_normal_bipoly(&self) -> BiPoly {
        debug_assert!(self.is_monic());
        self.to_ratfunc().num().unit_normal()
    }

    /// Substitute `var -> var + j`.
    pub fn shift(&self, j: i64) -> Self {
        let amount = crate::rational::rat_int(j);
        let lin = Poly::new(vec![RatFunc::constant(amount), RatFunc::one()]);
        UniView {
            var: self.var,
            poly: self.poly.compose(&lin),
        }
    }

    /// Substitute `var -> q^j * var`.
    pub fn qshift(&self, q: &Rational, j: i64) -> Self {
        let factor = crate::rational::pow_i(q, j);
        let coeffs = self
            .poly
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| c.scale(&crate::rational::pow_i(&factor, k as i64)))
            .collect();
        UniView {
            var: self.var,
            poly: Poly::new(coeffs),
        }
    }
}

/// Determinant of the Sylvester matrix of two nonzero views sharing a main
/// variable; zero exactly when they share a nonconstant common factor.
pub fn resultant(a: &UniView, b: &UniView) -> CoefFrac {
    assert_eq!(a.var, b.var, "resultant requires a common main variable");
    assert!(!a.is_zero() && !b.is_zero());
    a.poly.resultant(&b.poly)
}

/// Split a rational function in the `var` view: `f = poly_part + num/den`
/// with `deg num < deg den`, `den` monic, `gcd(num, den) = 1`.  Coprimality
/// is inherited from the reduced bivariate fraction.
pub fn split_ratfunc(f: &RatFunc, var: Var) -> (Poly<CoefFrac>, Poly<CoefFrac>, Poly<CoefFrac>) {
    if f.is_zero() {
        return (Poly::zero(), Poly::zero(), Poly::one());
    }
    let num_view = UniView::from_bipoly(f.num(), var).poly;
    let den_view = UniView::from_bipoly(f.den(), var).poly;
    let lc = den_view.leading();
    let den = den_view.div_scalar(&lc);
    let num = num_view.div_scalar(&lc);
    let (q, r) = num.divrem(&den);
    if r.is_zero() {
        return (q, Poly::zero(), Poly::one());
    }
    debug_assert!(r.gcd(&den).degree() == Some(0));
    (q, r, den)
}

/// Reassemble a `var`-view polynomial into a rational function.
pub fn view_to_ratfunc(p: &Poly<CoefFrac>, var: Var) -> RatFunc {
    UniView {
        var,
        poly: p.clone(),
    }
    .to_ratfunc()
}

/// Squarefree decomposition of `p` with respect to `var` (Yun's algorithm
/// with subresultant-backed bivariate gcds, which keeps coefficient growth
/// under control).  Parts come back as unit-normal primitive bivariate
/// polynomials with strictly increasing multiplicities; the discarded unit is
/// an element of the coefficient field.
pub fn squarefree_decomp(p: &BiPoly, var: Var) -> Vec<(BiPoly, u32)> {
    use crate::gcd::{div_exact, poly_gcd};
    assert!(!p.is_zero());
    if p.degree(var).unwrap_or(0) == 0 {
        return vec![];
    }
    let content = p.content_in(var);
    let prim = div_exact(p, &content).expect("content divides");
    let dp = prim.derivative(var);
    let a0 = poly_gcd(&prim, &dp);
    let mut b = div_exact(&prim, &a0).expect("gcd divides");
    let mut c = div_exact(&dp, &a0).expect("gcd divides");
    let mut out = Vec::new();
    let mut i = 1u32;
    loop {
        let d = c.sub(&b.derivative(var));
        if d.is_zero() {
            if b.degree(var).unwrap_or(0) >= 1 {
                out.push((b.unit_normal(), i));
            }
            break;
        }
        let a = poly_gcd(&b, &d);
        if a.degree(var).unwrap_or(0) >= 1 {
            out.push((a.unit_normal(), i));
        }
        b = div_exact(&b, &a).expect("gcd divides");
        c = div_exact(&d, &a).expect("gcd divides");
        i += 1;
        if b.degree(var).unwrap_or(0) == 0 {
            break;
        }
    }
    out
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
    fn view_roundtrip() {
        let p = x().pow(2).mul(&y()).add(&y().pow(2)).add(&x());
        let v = UniView::from_bipoly(&p, Var::Y);
        assert_eq!(v.to_ratfunc(), RatFunc::from_poly(p));
    }

    #[test]
    fn resultant_examples() {
        // res_y(y - x, y + x) = 2x
        let a = UniView::from_bipoly(&y().sub(&x()), Var::Y);
        let b = UniView::from_bipoly(&y().add(&x()), Var::Y);
        assert_eq!(resultant(&a, &b), RatFunc::from_poly(x().scale(&rat_int(2))));
        // common factor -> 0
        let c = UniView::from_bipoly(&y().pow(2).sub(&x().pow(2)), Var::Y);
        assert!(resultant(&c, &a).is_zero());
    }

    #[test]
    fn squarefree_in_y() {
        // y^2 (y+1): parts (y+1, 1), (y, 2)
        let p = y().pow(2).mul(&y().add(&BiPoly::one()));
        let parts = squarefree_decomp(&p, Var::Y);
        assert_eq!(parts, vec![(y().add(&BiPoly::one()), 1), (y(), 2)]);
    }

    #[test]
    fn squarefree_with_multiplicity_three() {
        // (y - x)^3 (y + x): [(y+x, 1), (y-x, 3)] up to unit normalization
        let p = y().sub(&x()).pow(3).mul(&y().add(&x()));
        let parts = squarefree_decomp(&p, Var::Y);
        assert_eq!(
            parts,
            vec![
                (x().add(&y()), 1),
                (x().sub(&y()).unit_normal(), 3)
            ]
        );
        // reconstruct up to a coefficient-field unit
        let prod = BiPoly::product(parts);
        let unit = RatFunc::new(p.clone(), prod).unwrap();
        assert!(!unit.depends_on(Var::Y));
    }

    #[test]
    fn squarefree_x_case() {
        // (x^2+1)^2 in x
        let p = x().pow(2).add(&BiPoly::one()).pow(2);
        let parts = squarefree_decomp(&p, Var::X);
        assert_eq!(parts, vec![(x().pow(2).add(&BiPoly::one()), 2)]);
    }

    #[test]
    fn split_proper_fraction() {
        // (y^3 + 1) / (y^2) = y + 1/y^2
        let f = RatFunc::new(y().pow(3).add(&BiPoly::one()), y().pow(2)).unwrap();
        let (polypart, num, den) = split_ratfunc(&f, Var::Y);
        assert_eq!(view_to_ratfunc(&polypart, Var::Y), RatFunc::var(Var::Y));
        let frac = view_to_ratfunc(&num, Var::Y)
            .div(&view_to_ratfunc(&den, Var::Y))
            .unwrap();
        assert_eq!(
            frac,
            RatFunc::new(BiPoly::one(), y().pow(2)).unwrap()
        );
        assert_eq!(rat(1, 1), rat_int(1));
    }
}
