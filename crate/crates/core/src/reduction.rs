//! Hermite reduction, Abramov reduction, and its q-analogue: rewrite a
//! rational function as an operator image plus a canonical remainder.

use num_traits::{One, Zero};

use crate::bipoly::{BiPoly, Var};
use crate::error::{Error, Result};
use crate::operators::{sigma_orbit_rep, tau_orbit_rep, OpKind};
use crate::partfrac::partial_fractions;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::rational::{pow_i, rat_int, Rational};
use crate::uniview::{split_ratfunc, squarefree_decomp, view_to_ratfunc, CoefFrac, UniView};

/// One remainder fraction `numerator / base^power`.  Bases are unit-normal;
/// they are squarefree in the differential case and irreducible canonical
/// orbit representatives in the shift and q-shift cases.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionTerm {
    pub numerator: RatFunc,
    pub base: BiPoly,
    pub power: u32,
}

impl FractionTerm {
    pub fn value(&self) -> RatFunc {
        self.numerator
            .div(&RatFunc::from_poly(self.base.pow(self.power)))
            .expect("nonzero base")
    }
}

/// Remainder of a reduction: an optional constant part (q-case), a polynomial
/// part (always absorbed by these reductions, kept for structural symmetry),
/// and proper fraction terms.
#[derive(Debug, Clone, PartialEq)]
pub struct Remainder {
    pub var: Var,
    pub constant: RatFunc,
    pub poly_part: UniView,
    pub fraction_terms: Vec<FractionTerm>,
}

impl Remainder {
    fn empty(var: Var) -> Self {
        Remainder {
            var,
            constant: RatFunc::zero(),
            poly_part: UniView::zero(var),
            fraction_terms: vec![],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.poly_part.is_zero() && self.fraction_terms.is_empty()
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        let mut acc = self.constant.add(&self.poly_part.to_ratfunc());
        for t in &self.fraction_terms {
            acc = acc.add(&t.value());
        }
        acc
    }
}

/// `f = partial(certificate) + remainder` for the operator of the reduction.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionResult {
    pub certificate: RatFunc,
    pub remainder: Remainder,
}

// ---------------------------------------------------------------------------
// Hermite reduction (differential)
// ---------------------------------------------------------------------------

/// Ostrogradsky--Hermite reduction: `f = D_var(g) + a/b` with `b` squarefree
/// in `var`, `deg_var(a) < deg_var(b)`, `gcd(a, b) = 1`.  The polynomial part
/// is absorbed into the certificate by formal integration.  Only gcds are
/// used, no factorization.
pub fn hermite_reduce(f: &RatFunc, var: Var) -> ReductionResult {
    let (poly_part, num0, den0) = split_ratfunc(f, var);
    let mut certificate = view_to_ratfunc(&integrate_poly(&poly_part), var);
    let mut num = num0;
    if num.is_zero() {
        return ReductionResult {
            certificate,
            remainder: Remainder::empty(var),
        };
    }
    // squarefree structure of the denominator, tracked as (part, multiplicity)
    let den_biv = clear_monic(&den0, var);
    let mut parts: Vec<(Poly<CoefFrac>, u32)> = squarefree_decomp(&den_biv, var)
        .into_iter()
        .map(|(p, m)| (UniView::from_bipoly(&p, var).poly.monic(), m))
        .collect();
    debug_assert_eq!(
        parts
            .iter()
            .fold(Poly::one(), |acc, (p, m)| acc.mul(&p.pow(*m))),
        den0
    );
    loop {
        let Some(idx) = parts.iter().position(|(_, m)| *m >= 2) else {
            break;
        };
        let (v, e) = (parts[idx].0.clone(), parts[idx].1);
        // u = product of all other parts at their current powers
        let mut u = Poly::one();
        for (k, (p, m)) in parts.iter().enumerate() {
            if k != idx {
                u = u.mul(&p.pow(*m));
            }
        }
        // solve A = -(e-1) B V' U + C V with deg B < deg V
        let vp = v.derivative();
        let lhs = vp
            .mul(&u)
            .mul_scalar(&CoefFrac::constant(rat_int(-(e as i64 - 1))));
        let (g, s, _) = lhs.xgcd(&v);
        debug_assert_eq!(g.degree(), Some(0));
        let b = s.mul(&num).rem(&v);
        let c = num.sub(&lhs.mul(&b)).div_exact(&v);
        // certificate gains B / V^{e-1}
        let v_rf = view_to_ratfunc(&v, var);
        certificate = certificate.add(
            &view_to_ratfunc(&b, var)
                .div(&v_rf.pow(e as i64 - 1).expect("nonzero"))
                .expect("nonzero"),
        );
        num = c.sub(&b.derivative().mul(&u));
        parts[idx].1 = e - 1;
        if parts[idx].1 == 0 {
            parts.remove(idx);
        }
    }
    // remainder num / prod(parts), reduced
    let mut den = Poly::one();
    for (p, m) in &parts {
        den = den.mul(&p.pow(*m));
    }
    let g = num.gcd(&den);
    if g.degree().unwrap_or(0) >= 1 {
        num = num.div_exact(&g);
        den = den.div_exact(&g);
    }
    let remainder = if num.is_zero() || den.degree() == Some(0) {
        debug_assert!(num.is_zero(), "proper fraction cannot have trivial denominator");
        Remainder::empty(var)
    } else {
        let base = clear_monic(&den, var);
        let gamma = RatFunc::from_poly(base.clone())
            .div(&view_to_ratfunc(&den, var))
            .expect("nonzero");
        Remainder {
            var,
            constant: RatFunc::zero(),
            poly_part: UniView::zero(var),
            fraction_terms: vec![FractionTerm {
                numerator: view_to_ratfunc(&num, var).mul(&gamma),
                base,
                power: 1,
            }],
        }
    };
    let out = ReductionResult {
        certificate,
        remainder,
    };
    debug_assert_eq!(
        out.certificate.derivative(var).add(&out.remainder.to_ratfunc()),
        *f
    );
    out
}

/// Formal antiderivative of a polynomial in the view variable.
fn integrate_poly(p: &Poly<CoefFrac>) -> Poly<CoefFrac> {
    if p.is_zero() {
        return Poly::zero();
    }
    let mut coeffs = vec![CoefFrac::zero()];
    for (k, c) in p.coeffs().iter().enumerate() {
        coeffs.push(c.scale(&Rational::new(1.into(), (k as i64 + 1).into())));
    }
    Poly::new(coeffs)
}

fn clear_monic(p: &Poly<CoefFrac>, var: Var) -> BiPoly {
    UniView {
        var,
        poly: p.clone(),
    }
    .to_unit_normal_bipoly()
}

// ---------------------------------------------------------------------------
// Abramov reduction and q-analogue
// ---------------------------------------------------------------------------

/// `f = Delta_var(g) + sum a_{i,j}/b_i^j` with irreducible unit-normal bases
/// in distinct sigma-orbits (canonical representatives).  Polynomial parts
/// are absorbed through the falling-factorial antidifference.
pub fn abramov_reduce(f: &RatFunc, var: Var) -> Result<ReductionResult> {
    let (poly_part, num, den) = split_ratfunc(f, var);
    let mut certificate = view_to_ratfunc(&antidifference(&poly_part, var), var);
    let mut collapsed: Vec<(Poly<CoefFrac>, u32, RatFunc)> = Vec::new();
    if !num.is_zero() {
        let proper = view_to_ratfunc(&num, var)
            .div(&view_to_ratfunc(&den, var))
            .expect("nonzero");
        let pf = partial_fractions(&proper, var)?;
        for term in pf.terms {
            let v = UniView::from_bipoly(&term.base, var).poly.monic();
            let gamma = RatFunc::from_poly(term.base.clone())
                .div(&view_to_ratfunc(&v, var))
                .expect("nonzero");
            let a = term
                .numerator
                .div(&gamma.pow(term.power as i64).expect("nonzero"))
                .expect("nonzero");
            let (rep, m) = sigma_orbit_rep(&v, var);
            let rep_pow = view_to_ratfunc(&rep, var)
                .pow(term.power as i64)
                .expect("nonzero");
            certificate = certificate.add(&eq2_certificate(
                &a,
                &rep_pow,
                m,
                var,
                OpKind::Shift,
                None,
            ));
            let residue = theta_rf(&a, var, -m, OpKind::Shift, None);
            accumulate(&mut collapsed, rep, term.power, residue);
        }
    }
    let out = ReductionResult {
        certificate,
        remainder: remainder_from_collapsed(var, RatFunc::zero(), collapsed),
    };
    debug_assert_eq!(
        out.certificate
            .shift(var, &rat_int(1))
            .sub(&out.certificate)
            .add(&out.remainder.to_ratfunc()),
        *f
    );
    Ok(out)
}

/// `f = Delta_{q,var}(g) + c + sum a_{i,j}/b_i^j` with bases coprime to the
/// main variable and in distinct tau-orbits; monomials in the variable and
/// its reciprocal are absorbed through the exact factor `1/(q^k - 1)`; the
/// constant `c` is the residue at infinity.
pub fn q_abramov_reduce(f: &RatFunc, var: Var, q: &Rational) -> Result<ReductionResult> {
    if q.is_zero() || q.is_one() || (-q.clone()).is_one() {
        return Err(Error::QInvalid(format!("q = {}", q)));
    }
    let (poly_part, num, den) = split_ratfunc(f, var);
    let mut certificate = RatFunc::zero();
    let mut constant = RatFunc::zero();
    // monomials var^k (k >= 1) are tau-images of var^k/(q^k - 1)
    for (k, c) in poly_part.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if k == 0 {
            constant = c.clone();
        } else {
            let mono = c.mul(&RatFunc::var(var).pow(k as i64).expect("nonzero"));
            let scale = (pow_i(q, k as i64) - Rational::one()).recip();
            certificate = certificate.add(&mono.scale(&scale));
        }
    }
    let mut collapsed: Vec<(Poly<CoefFrac>, u32, RatFunc)> = Vec::new();
    if !num.is_zero() {
        let proper = view_to_ratfunc(&num, var)
            .div(&view_to_ratfunc(&den, var))
            .expect("nonzero");
        let pf = partial_fractions(&proper, var)?;
        for term in pf.terms {
            if term.base == BiPoly::var(var) {
                // negative powers of the main variable
                let k = term.power as i64;
                let value = term.value();
                let scale = (pow_i(q, -k) - Rational::one()).recip();
                certificate = certificate.add(&value.scale(&scale));
                continue;
            }
            let v = UniView::from_bipoly(&term.base, var).poly.monic();
            let gamma = RatFunc::from_poly(term.base.clone())
                .div(&view_to_ratfunc(&v, var))
                .expect("nonzero");
            let a = term
                .numerator
                .div(&gamma.pow(term.power as i64).expect("nonzero"))
                .expect("nonzero");
            let (rep, m, u) = tau_orbit_rep(&v, var, q);
            // V^j = u^j tau^m(rep^j)
            let a_adj = a.scale(&pow_i(&u, -(term.power as i64)));
            let rep_pow = view_to_ratfunc(&rep, var)
                .pow(term.power as i64)
                .expect("nonzero");
            certificate = certificate.add(&eq2_certificate(
                &a_adj,
                &rep_pow,
                m,
                var,
                OpKind::QShift,
                Some(q),
            ));
            let residue = theta_rf(&a_adj, var, -m, OpKind::QShift, Some(q));
            accumulate(&mut collapsed, rep, term.power, residue);
        }
    }
    let out = ReductionResult {
        certificate,
        remainder: remainder_from_collapsed(var, constant, collapsed),
    };
    debug_assert_eq!(
        out.certificate
            .scale_var(var, q)
            .sub(&out.certificate)
            .add(&out.remainder.to_ratfunc()),
        *f
    );
    Ok(out)
}

/// Shift or q-shift power acting on a rational function.
pub(crate) fn theta_rf(
    f: &RatFunc,
    var: Var,
    power: i64,
    kind: OpKind,
    q: Option<&Rational>,
) -> RatFunc {
    match kind {
        OpKind::Shift => f.shift(var, &rat_int(power)),
        OpKind::QShift => f.scale_var(var, &pow_i(q.expect("q present"), power)),
        OpKind::Derivation => panic!("derivation is not an automorphism"),
    }
}

/// The explicit telescoping certificate for moving `a/theta^m(b)` onto the
/// orbit representative: `a/theta^m(b) = Delta(g) + theta^{-m}(a)/b`.
pub(crate) fn eq2_certificate(
    a: &RatFunc,
    b: &RatFunc,
    m: i64,
    var: Var,
    kind: OpKind,
    q: Option<&Rational>,
) -> RatFunc {
    let mut g = RatFunc::zero();
    if m >= 0 {
        for i in 0..m {
            let num = theta_rf(a, var, i - m, kind, q);
            let den = theta_rf(b, var, i, kind, q);
            g = g.add(&num.div(&den).expect("nonzero base"));
        }
    } else {
        for i in 0..(-m) {
            let num = theta_rf(a, var, i, kind, q);
            let den = theta_rf(b, var, m + i, kind, q);
            g = g.sub(&num.div(&den).expect("nonzero base"));
        }
    }
    g
}

fn accumulate(
    collapsed: &mut Vec<(Poly<CoefFrac>, u32, RatFunc)>,
    rep: Poly<CoefFrac>,
    power: u32,
    residue: RatFunc,
) {
    for (r, p, acc) in collapsed.iter_mut() {
        if *p == power && *r == rep {
            *acc = acc.add(&residue);
            return;
        }
    }
    collapsed.push((rep, power, residue));
}

fn remainder_from_collapsed(
    var: Var,
    constant: RatFunc,
    collapsed: Vec<(Poly<CoefFrac>, u32, RatFunc)>,
) -> Remainder {
    let mut fraction_terms = Vec::new();
    for (rep, power, a) in collapsed {
        if a.is_zero() {
            continue;
        }
        let base = clear_monic(&rep, var);
        let gamma = RatFunc::from_poly(base.clone())
            .div(&view_to_ratfunc(&rep, var))
            .expect("nonzero");
        fraction_terms.push(FractionTerm {
            numerator: a.mul(&gamma.pow(power as i64).expect("nonzero")),
            base,
            power,
        });
    }
    fraction_terms.sort_by_key(|t| (t.base.total_degree(), format!("{}", t.base), t.power));
    Remainder {
        var,
        constant,
        poly_part: UniView::zero(var),
        fraction_terms,
    }
}

/// Exact antidifference of a polynomial through the falling-factorial basis:
/// returns `S` with `S(var+1) - S(var) = p`.
fn antidifference(p: &Poly<CoefFrac>, var: Var) -> Poly<CoefFrac> {
    if p.is_zero() {
        return Poly::zero();
    }
    let d = p.deg();
    // Newton forward-difference coefficients at 0, 1, ..., d
    let mut values: Vec<CoefFrac> = (0..=d as i64)
        .map(|i| p.eval(&CoefFrac::constant(rat_int(i))))
        .collect();
    let mut newton: Vec<CoefFrac> = Vec::with_capacity(d + 1);
    let mut factorial = Rational::one();
    for k in 0..=d {
        if k > 0 {
            factorial *= rat_int(k as i64);
        }
        newton.push(values[0].scale(&factorial.recip()));
        for i in 0..values.len() - 1 {
            values[i] = values[i + 1].sub(&values[i]);
        }
        values.pop();
    }
    // antidifference of falling factorial ff_k is ff_{k+1}/(k+1)
    let mut acc = Poly::zero();
    let z = Poly::new(vec![CoefFrac::zero(), CoefFrac::one()]);
    let mut ff = z.clone(); // ff_1 = z
    for (k, c) in newton.iter().enumerate() {
        let term = ff.mul_scalar(&c.scale(&Rational::new(1.into(), (k as i64 + 1).into())));
        acc = acc.add(&term);
        // ff_{k+2} = ff_{k+1} * (z - (k+1))
        let lin = Poly::new(vec![CoefFrac::constant(rat_int(-(k as i64 + 1))), CoefFrac::one()]);
        ff = ff.mul(&lin);
    }
    let shifted = {
        let lin = Poly::new(vec![CoefFrac::one(), CoefFrac::one()]);
        acc.compose(&lin)
    };
    debug_assert_eq!(shifted.sub(&acc), *p, "antidifference identity");
    let _ = var;
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

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
    fn hermite_paper_example() {
        // (1 - x^2)/(x^2+1)^2 = D_x(x/(x^2+1))
        let f = rf(
            BiPoly::one().sub(&x().pow(2)),
            x().pow(2).add(&BiPoly::one()).pow(2),
        );
        let r = hermite_reduce(&f, Var::X);
        assert!(r.remainder.is_zero());
        // witness equals x/(x^2+1) up to a D_x-kernel element; here exactly
        let expected = rf(x(), x().pow(2).add(&BiPoly::one()));
        assert_eq!(r.certificate.derivative(Var::X), f);
        assert_eq!(
            r.certificate.sub(&expected).derivative(Var::X),
            RatFunc::zero()
        );
    }

    #[test]
    fn hermite_one_over_y_squared() {
        let f = rf(BiPoly::one(), y().pow(2));
        let r = hermite_reduce(&f, Var::Y);
        assert!(r.remainder.is_zero());
        assert_eq!(r.certificate, rf(BiPoly::one().neg(), y()));
    }

    #[test]
    fn hermite_mixed_multiplicities() {
        // 1/(y^2 (y+1)): certificate -1/y, remainder -1/(y(y+1))
        let f = rf(BiPoly::one(), y().pow(2).mul(&y().add(&BiPoly::one())));
        let r = hermite_reduce(&f, Var::Y);
        assert_eq!(r.certificate, rf(BiPoly::one().neg(), y()));
        assert_eq!(r.remainder.fraction_terms.len(), 1);
        let t = &r.remainder.fraction_terms[0];
        assert_eq!(t.power, 1);
        assert_eq!(t.base, y().mul(&y().add(&BiPoly::one())));
        assert_eq!(t.numerator, RatFunc::int(-1));
    }

    #[test]
    fn hermite_polynomial_part() {
        // y^2 + 1/y has certificate y^3/3 plus untouched simple pole
        let f = RatFunc::from_poly(y().pow(2)).add(&rf(BiPoly::one(), y()));
        let r = hermite_reduce(&f, Var::Y);
        assert_eq!(
            r.certificate,
            RatFunc::from_poly(y().pow(3)).scale(&rat(1, 3))
        );
        assert_eq!(r.remainder.fraction_terms.len(), 1);
    }

    #[test]
    fn abramov_telescopes_consecutive_poles() {
        // 1/(y(y+1)) = Delta_y(-1/y)
        let f = rf(BiPoly::one(), y().mul(&y().add(&BiPoly::one())));
        let r = abramov_reduce(&f, Var::Y).unwrap();
        assert!(r.remainder.is_zero());
        assert_eq!(r.certificate, rf(BiPoly::one().neg(), y()));
    }

    #[test]
    fn abramov_single_pole_is_stuck() {
        let f = rf(BiPoly::one(), y());
        let r = abramov_reduce(&f, Var::Y).unwrap();
        assert!(r.certificate.is_zero());
        assert_eq!(r.remainder.fraction_terms.len(), 1);
        assert_eq!(r.remainder.fraction_terms[0].base, y());
    }

    #[test]
    fn abramov_canonicalizes_shifted_pole() {
        // 1/(y+5)^2: remainder 1/y^2, certificate sum_{i=0}^{4} 1/(y+i)^2
        let f = rf(
            BiPoly::one(),
            y().add(&BiPoly::constant(rat_int(5))).pow(2),
        );
        let r = abramov_reduce(&f, Var::Y).unwrap();
        assert_eq!(r.remainder.fraction_terms.len(), 1);
        let t = &r.remainder.fraction_terms[0];
        assert_eq!(t.base, y());
        assert_eq!(t.power, 2);
        assert_eq!(t.numerator, RatFunc::int(1));
        let mut expected = RatFunc::zero();
        for i in 0..5 {
            expected = expected.add(&rf(
                BiPoly::one(),
                y().add(&BiPoly::constant(rat_int(i))).pow(2),
            ));
        }
        assert_eq!(r.certificate, expected);
    }

    #[test]
    fn abramov_absorbs_polynomials() {
        let f = RatFunc::from_poly(y().pow(2).add(&x().mul(&y())));
        let r = abramov_reduce(&f, Var::Y).unwrap();
        assert!(r.remainder.is_zero());
    }

    #[test]
    fn q_abramov_constant_and_monomials() {
        let q = rat(2, 3);
        // constants are not tau-summable
        let r = q_abramov_reduce(&RatFunc::int(1), Var::Y, &q).unwrap();
        assert!(r.certificate.is_zero());
        assert_eq!(r.remainder.constant, RatFunc::int(1));
        // f = y: certificate y/(q-1)
        let r = q_abramov_reduce(&RatFunc::var(Var::Y), Var::Y, &q).unwrap();
        assert!(r.remainder.is_zero());
        assert_eq!(
            r.certificate,
            RatFunc::var(Var::Y).scale(&(q.clone() - rat_int(1)).recip())
        );
    }

    #[test]
    fn q_abramov_orbit_collapse() {
        let q = rat(2, 3);
        // f = 1/(q y - 1): remainder 1/(y-1) after one tau step
        let f = rf(
            BiPoly::one(),
            y().scale(&q).sub(&BiPoly::one()),
        );
        let r = q_abramov_reduce(&f, Var::Y, &q).unwrap();
        assert_eq!(r.remainder.fraction_terms.len(), 1);
        let t = &r.remainder.fraction_terms[0];
        assert_eq!(t.base, y().sub(&BiPoly::one()));
        assert_eq!(t.power, 1);
    }

    #[test]
    fn q_abramov_rejects_bad_q() {
        for bad in [rat_int(0), rat_int(1), rat_int(-1)] {
            assert!(matches!(
                q_abramov_reduce(&RatFunc::int(1), Var::Y, &bad),
                Err(Error::QInvalid(_))
            ));
        }
    }

    #[test]
    fn antidifference_matches_examples() {
        // sum of k from 0..z-1 is z(z-1)/2
        let p = Poly::new(vec![CoefFrac::zero(), CoefFrac::one()]);
        let s = antidifference(&p, Var::Y);
        let expected = Poly::new(vec![
            CoefFrac::zero(),
            CoefFrac::constant(rat(-1, 2)),
            CoefFrac::constant(rat(1, 2)),
        ]);
        assert_eq!(s, expected);
    }
}
