//! WZ pairs: verification, exactness, structure decompositions, and
//! generation.
//!
//! A pair (f, g) of bivariate rational functions is a WZ pair for a choice
//! of operators when `partial_x(f) = partial_y(g)`.  Every such pair splits
//! into an exact part plus structured special components: log-derivative
//! pairs in the differential case, cyclic pairs in the (q-)shift cases, and
//! a pair of univariate parts in the mixed cases.

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

use crate::algnum::{AlgNum, RFrac};
use crate::bipoly::{BiPoly, Var};
use crate::error::{Error, Result};
use crate::factor::factor_upoly;
use crate::operators::{apply_auto, apply_delta, joint_orbit, qshift_equiv, shift_equiv, theta_bipoly, OpKind, OperatorCase};
use crate::poly::{Poly, UPoly};
use crate::ratfunc::{eval_upoly_at, RatFunc};
use crate::rational::{pow_i, rat_int, Rational};
use crate::reduction::{abramov_reduce, eq2_certificate, hermite_reduce, q_abramov_reduce, theta_rf};
use crate::uniview::{split_ratfunc, view_to_ratfunc, CoefFrac, UniView};

/// Bound on the joint-orbit search in the shift-case decomposition.
pub const DEFAULT_S_MAX: i64 = 64;

// ---------------------------------------------------------------------------
// pairs and verification
// ---------------------------------------------------------------------------

/// A verified WZ pair.  `new` checks the defining identity; `new_unchecked`
/// exists for constructing negative test inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct WZPair {
    f: RatFunc,
    g: RatFunc,
    case: OperatorCase,
}

impl WZPair {
    pub fn new(f: RatFunc, g: RatFunc, case: OperatorCase) -> Result<Self> {
        if !verify_wz(&f, &g, &case) {
            return Err(Error::NotAWZPair);
        }
        Ok(WZPair { f, g, case })
    }

    pub fn new_unchecked(f: RatFunc, g: RatFunc, case: OperatorCase) -> Self {
        WZPair { f, g, case }
    }

    pub fn f(&self) -> &RatFunc {
        &self.f
    }

    pub fn g(&self) -> &RatFunc {
        &self.g
    }

    pub fn case(&self) -> &OperatorCase {
        &self.case
    }

    pub fn verifies(&self) -> bool {
        verify_wz(&self.f, &self.g, &self.case)
    }

    /// Rational linear combination of pairs sharing a case.
    pub fn linear_combination(a: &Rational, p: &WZPair, b: &Rational, r: &WZPair) -> WZPair {
        debug_assert_eq!(p.case, r.case);
        WZPair {
            f: p.f.scale(a).add(&r.f.scale(b)),
            g: p.g.scale(a).add(&r.g.scale(b)),
            case: p.case.clone(),
        }
    }
}

/// The defining identity: `partial_x(f) = partial_y(g)` exactly.
pub fn verify_wz(f: &RatFunc, g: &RatFunc, case: &OperatorCase) -> bool {
    apply_delta(f, Var::X, case) == apply_delta(g, Var::Y, case)
}

/// `theta^power` with the convention that power 0 is the identity for every
/// operator kind.
fn theta_pow(f: &RatFunc, var: Var, power: i64, case: &OperatorCase) -> RatFunc {
    if power == 0 {
        return f.clone();
    }
    apply_auto(f, var, power, case).expect("automorphism kind required")
}

// ---------------------------------------------------------------------------
// components and decompositions
// ---------------------------------------------------------------------------

/// One log-derivative component of a differential-case decomposition.
/// Rational constants collapse to a plain `(c, b)` pair; algebraic constants
/// are kept symbolically as an irreducible minimal polynomial together with
/// a template whose coefficients are polynomials in the auxiliary symbol t.
/// The semantics of the algebraic form is the sum over the roots `alpha` of
/// the minimal polynomial of `alpha * D(template(alpha)) / template(alpha)`.
#[derive(Debug, Clone, PartialEq)]
pub enum LogDerComponent {
    Rational { c: Rational, b: RatFunc },
    Algebraic { minpoly: UPoly, template: Vec<BiPoly> },
}

impl LogDerComponent {
    /// The contribution `sum_alpha alpha * D_var(b(alpha))/b(alpha)`.
    pub fn part(&self, var: Var) -> RatFunc {
        match self {
            LogDerComponent::Rational { c, b } => b
                .derivative(var)
                .div(b)
                .expect("nonzero b")
                .scale(c),
            LogDerComponent::Algebraic { minpoly, template } => {
                logder_trace(minpoly, template, var)
            }
        }
    }
}

/// Trace of `t * D_var(B)/B` over the roots of the minimal polynomial,
/// computed by modular inversion in Q(x, y)[t]/(minpoly) and Newton power
/// sums.  The minimal polynomial stays irreducible over Q(x, y) because the
/// extension is purely transcendental.
fn logder_trace(minpoly: &UPoly, template: &[BiPoly], var: Var) -> RatFunc {
    let b: Poly<RatFunc> = Poly::new(
        template
            .iter()
            .map(|p| RatFunc::from_poly(p.clone()))
            .collect(),
    );
    let m: Poly<RatFunc> = minpoly.map_coeffs(|c| RatFunc::constant(c.clone()));
    let db = b.map_coeffs(|c| c.derivative(var));
    let w = Poly::<RatFunc>::var().mul(&db).rem(&m);
    let v = b.rem(&m);
    let vinv = v.inv_mod(&m).expect("template invertible mod minpoly");
    let z = w.mul(&vinv).rem(&m);
    let sums = power_sums(minpoly);
    let mut acc = RatFunc::zero();
    for (k, pk) in sums.iter().enumerate() {
        acc = acc.add(&z.coeff(k).scale(pk));
    }
    acc
}

/// Power sums `p_0, ..., p_{d-1}` of the roots of a monic polynomial via
/// Newton's identities.
fn power_sums(m: &UPoly) -> Vec<Rational> {
    let d = m.deg();
    let mut p = Vec::with_capacity(d);
    p.push(rat_int(d as i64));
    for k in 1..d {
        let mut acc = -m.coeff(d - k) * rat_int(k as i64);
        for i in 1..k {
            acc -= m.coeff(d - i) * &p[k - i];
        }
        p.push(acc);
    }
    p
}

/// One cyclic component: `h` with `theta_x^s(h) = theta_y^t(h)`, `s >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclicComponent {
    pub h: RatFunc,
    pub s: i64,
    pub t: i64,
}

impl CyclicComponent {
    /// `f`-side operator sum `(theta_x^s - 1)/(theta_x - 1) . h`.
    pub fn f_part(&self, case: &OperatorCase) -> RatFunc {
        operator_sum(&self.h, Var::X, self.s, case)
    }

    /// `g`-side operator sum `(theta_y^t - 1)/(theta_y - 1) . h`.
    pub fn g_part(&self, case: &OperatorCase) -> RatFunc {
        operator_sum(&self.h, Var::Y, self.t, case)
    }

    pub fn side_condition_holds(&self, case: &OperatorCase) -> bool {
        theta_pow(&self.h, Var::X, self.s, case) == theta_pow(&self.h, Var::Y, self.t, case)
    }
}

/// `(theta^n - 1)/(theta - 1) . h`: the geometric operator sum, with the
/// negative branch `-sum_{j=1}^{-n} theta^{-j}(h)` for `n < 0`.
fn operator_sum(h: &RatFunc, var: Var, n: i64, case: &OperatorCase) -> RatFunc {
    let mut acc = RatFunc::zero();
    if n >= 0 {
        for j in 0..n {
            acc = acc.add(&theta_pow(h, var, j, case));
        }
    } else {
        for j in 1..=(-n) {
            acc = acc.sub(&theta_pow(h, var, -j, case));
        }
    }
    acc
}

/// Structured decomposition of a WZ pair:
///   f = partial_y(exact_h) + [log-derivative or cyclic f-parts] + mixed_u
///   g = partial_x(exact_h) + [log-derivative or cyclic g-parts] + mixed_v
/// with `mixed_u` in K(y) and `mixed_v` in K(x) (mixed cases only).
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub case: OperatorCase,
    pub exact_h: RatFunc,
    pub logder: Vec<LogDerComponent>,
    pub cyclic: Vec<CyclicComponent>,
    pub mixed_u: RatFunc,
    pub mixed_v: RatFunc,
}

impl Decomposition {
    fn empty(case: OperatorCase) -> Self {
        Decomposition {
            case,
            exact_h: RatFunc::zero(),
            logder: vec![],
            cyclic: vec![],
            mixed_u: RatFunc::zero(),
            mixed_v: RatFunc::zero(),
        }
    }

    pub fn has_special_components(&self) -> bool {
        !self.logder.is_empty()
            || !self.cyclic.is_empty()
            || !self.mixed_u.is_zero()
            || !self.mixed_v.is_zero()
    }
}

/// Reassemble the pair described by a decomposition; fails with
/// `InvalidComponent` when a cyclic component violates its side condition.
pub fn reconstruct(d: &Decomposition) -> Result<WZPair> {
    let case = &d.case;
    let mut f = apply_delta(&d.exact_h, Var::Y, case);
    let mut g = apply_delta(&d.exact_h, Var::X, case);
    for c in &d.logder {
        f = f.add(&c.part(Var::Y));
        g = g.add(&c.part(Var::X));
    }
    for c in &d.cyclic {
        if (c.s, c.t) == (0, 0) {
            return Err(Error::InvalidComponent("s = t = 0".into()));
        }
        if !c.side_condition_holds(case) {
            return Err(Error::InvalidComponent(format!(
                "theta_x^{}(h) != theta_y^{}(h)",
                c.s, c.t
            )));
        }
        f = f.add(&c.f_part(case));
        g = g.add(&c.g_part(case));
    }
    f = f.add(&d.mixed_u);
    g = g.add(&d.mixed_v);
    WZPair::new(f, g, case.clone())
}

// ---------------------------------------------------------------------------
// exactness
// ---------------------------------------------------------------------------

/// Is the pair of the form `(partial_y(h), partial_x(h))`?  Returns the
/// witness `h` when it is.  The candidate from telescoping `f` in y is
/// corrected by an element of the kernel K(x), itself decided by the
/// univariate analogue in x.
pub fn is_exact(pair: &WZPair) -> Result<(bool, Option<RatFunc>)> {
    if !pair.verifies() {
        return Err(Error::NotAWZPair);
    }
    let case = pair.case();
    let (ok, h0) = crate::residue::decide_telescoping(
        pair.f(),
        Var::Y,
        case.kind(Var::Y),
        case.q(),
    )?;
    if !ok {
        return Ok((false, None));
    }
    let h0 = h0.expect("witness accompanies a positive decision");
    let r = pair.g().sub(&apply_delta(&h0, Var::X, case));
    // the residual lies in the kernel of partial_y, i.e. K(x)
    debug_assert!(!r.depends_on(Var::Y));
    let (ok, w) = crate::residue::decide_telescoping(&r, Var::X, case.kind(Var::X), case.q())?;
    if !ok {
        return Ok((false, None));
    }
    Ok((true, Some(h0.add(&w.expect("witness")))))
}

// ---------------------------------------------------------------------------
// differential-case decomposition (log-derivative components)
// ---------------------------------------------------------------------------

/// Decompose a differential-case pair into an exact part and log-derivative
/// components with constant coefficients.
pub fn decompose_diff(pair: &WZPair) -> Result<Decomposition> {
    assert!(pair.case().is_differential(), "differential case required");
    if !pair.verifies() {
        return Err(Error::NotAWZPair);
    }
    let mut d = Decomposition::empty(pair.case().clone());
    let her = hermite_reduce(pair.f(), Var::Y);
    d.exact_h = her.certificate;
    for term in &her.remainder.fraction_terms {
        debug_assert_eq!(term.power, 1);
        let (a, b) = term_to_monic_view(term, Var::Y);
        d.logder.extend(rothstein_trager(&a, &b, Var::Y)?);
    }
    // the g-side residual is a univariate function of x
    let mut residual = pair.g().sub(&d.exact_h.derivative(Var::X));
    for c in &d.logder {
        residual = residual.sub(&c.part(Var::X));
    }
    if residual.depends_on(Var::Y) {
        return Err(Error::NonConstantResidue(
            "g-side residual depends on y".into(),
        ));
    }
    let hx = hermite_reduce(&residual, Var::X);
    d.exact_h = d.exact_h.add(&hx.certificate);
    for term in &hx.remainder.fraction_terms {
        let (a, b) = term_to_monic_view(term, Var::X);
        d.logder.extend(rothstein_trager(&a, &b, Var::X)?);
    }
    debug_assert_eq!(reconstruct(&d)?, *pair);
    Ok(d)
}

/// Convert a remainder fraction term to `(numerator, base)` in the monic
/// main-variable view.
fn term_to_monic_view(
    term: &crate::reduction::FractionTerm,
    var: Var,
) -> (Poly<CoefFrac>, Poly<CoefFrac>) {
    let b = UniView::from_bipoly(&term.base, var).poly.monic();
    let gamma = RatFunc::from_poly(term.base.clone())
        .div(&view_to_ratfunc(&b, var))
        .expect("nonzero");
    let a_rf = term
        .numerator
        .div(&gamma.pow(term.power as i64).expect("nonzero"))
        .expect("nonzero");
    let (a, proper_num, _) = split_ratfunc(&a_rf, var);
    debug_assert!(proper_num.is_zero(), "numerator polynomial in main var");
    (a, b)
}

/// Rothstein--Trager over the coefficient field: residues of the simple
/// fraction `a/b` are the roots of `res_var(b, a - t b')`; each irreducible
/// factor of that resultant contributes one log-derivative component.
fn rothstein_trager(
    a: &Poly<CoefFrac>,
    b: &Poly<CoefFrac>,
    var: Var,
) -> Result<Vec<LogDerComponent>> {
    let bp = b.derivative();
    let resultant_t = resultant_in_t(a, &bp, b);
    debug_assert!(!resultant_t.is_zero());
    let lead = resultant_t.leading();
    let monic_t = resultant_t.div_scalar(&lead);
    let mut rational_coeffs = Vec::with_capacity(monic_t.coeffs().len());
    for c in monic_t.coeffs() {
        match c.as_constant() {
            Some(r) => rational_coeffs.push(r),
            None => {
                return Err(Error::NonConstantResidue(format!(
                    "residue polynomial coefficient {} depends on {}",
                    c,
                    var.other().name()
                )))
            }
        }
    }
    let rpoly = UPoly::new(rational_coeffs);
    let (_, factors) = factor_upoly(&rpoly);
    let mut out = Vec::new();
    for (m, _) in factors {
        if m == UPoly::var() {
            continue; // zero residue
        }
        if m.deg() == 1 {
            let c = -m.coeff(0);
            let shifted = a.sub(&bp.mul_scalar(&CoefFrac::constant(c.clone())));
            let g = b.gcd(&shifted);
            let b_out = UniView { var, poly: g }.to_unit_normal_bipoly();
            out.push(LogDerComponent::Rational {
                c,
                b: RatFunc::from_poly(b_out),
            });
        } else {
            out.push(algebraic_component(a, b, &bp, &m, var));
        }
    }
    Ok(out)
}

/// The resultant `res_var(b, a - t b')` as a polynomial in t, computed by
/// evaluating the fixed-shape Sylvester determinant at interpolation nodes.
fn resultant_in_t(
    a: &Poly<CoefFrac>,
    bp: &Poly<CoefFrac>,
    b: &Poly<CoefFrac>,
) -> Poly<CoefFrac> {
    let m = b.deg();
    debug_assert!(m >= 1);
    let n = m - 1; // nominal degree of a - t b'
    let nodes = m + 1;
    let mut points = Vec::with_capacity(nodes);
    for k in 0..nodes {
        let t = rat_int(k as i64);
        let mut second = vec![CoefFrac::zero(); n + 1];
        for (i, slot) in second.iter_mut().enumerate() {
            *slot = a.coeff(i).sub(&bp.coeff(i).scale(&t));
        }
        let det = fixed_sylvester_det(b, &second, n);
        points.push((CoefFrac::constant(t), det));
    }
    Poly::interpolate(&points)
}

/// Sylvester determinant with the second polynomial padded to nominal
/// degree; evaluation commutes with the symbolic determinant because the
/// matrix shape is fixed.
fn fixed_sylvester_det(b: &Poly<CoefFrac>, second: &[CoefFrac], n: usize) -> CoefFrac {
    let m = b.deg();
    let size = m + n;
    if size == 0 {
        return CoefFrac::one();
    }
    let mut mat = vec![vec![CoefFrac::zero(); size]; size];
    for i in 0..n {
        for (k, c) in b.coeffs().iter().enumerate() {
            mat[i][i + (m - k)] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in second.iter().enumerate() {
            mat[n + i][i + (n - k)] = c.clone();
        }
    }
    crate::poly::det_in_place(mat)
}

/// Component for an irreducible residue minimal polynomial of degree >= 2:
/// the gcd is computed over the number field Q[t]/(m) extended by the other
/// variable, then cleared to a template with Q[t] coefficients.
fn algebraic_component(
    a: &Poly<CoefFrac>,
    b: &Poly<CoefFrac>,
    bp: &Poly<CoefFrac>,
    m: &UPoly,
    var: Var,
) -> LogDerComponent {
    let modulus = Arc::new(m.clone());
    let other = var.other();
    let lift = |p: &Poly<CoefFrac>| -> Poly<RFrac<AlgNum>> {
        p.map_coeffs(|c| {
            let num = c
                .num()
                .as_upoly(other)
                .expect("coefficient free of main var");
            let den = c
                .den()
                .as_upoly(other)
                .expect("coefficient free of main var");
            RFrac::new(
                num.map_coeffs(|r| AlgNum::rational(r.clone())),
                den.map_coeffs(|r| AlgNum::rational(r.clone())),
            )
        })
    };
    let t_scalar = RFrac::from_poly(Poly::constant(AlgNum::generator(modulus.clone())));
    let b_l = lift(b);
    let shifted = lift(a).sub(&lift(bp).mul_scalar(&t_scalar));
    let g = b_l.gcd(&shifted);
    debug_assert!(g.degree().unwrap_or(0) >= 1);
    // clear coefficient denominators: multiply by the lcm in Q[t]/(m)[x]
    let mut lcm: Poly<AlgNum> = Poly::one();
    for c in g.coeffs() {
        let gcd = lcm.gcd(&c.den);
        lcm = lcm.mul(&c.den.div_exact(&gcd));
    }
    let lcm_frac = RFrac::from_poly(lcm);
    let cleared = g.mul_scalar(&lcm_frac);
    // assemble the template: t-degree -> bivariate polynomial
    let tdeg = m.deg();
    let mut template = vec![BiPoly::zero(); tdeg];
    for (j, c) in cleared.coeffs().iter().enumerate() {
        debug_assert!(c.den.is_constant());
        let xpoly = c.num.div_scalar(&c.den.leading());
        for (i, alg) in xpoly.coeffs().iter().enumerate() {
            for (k, r) in alg.repr.coeffs().iter().enumerate() {
                if r.is_zero() {
                    continue;
                }
                let mono = match (var, other) {
                    (Var::Y, Var::X) => BiPoly::from_terms([((i as u32, j as u32), r.clone())]),
                    (Var::X, Var::Y) => BiPoly::from_terms([((j as u32, i as u32), r.clone())]),
                    _ => unreachable!(),
                };
                template[k] = template[k].add(&mono);
            }
        }
    }
    while template.last().is_some_and(|p| p.is_zero()) {
        template.pop();
    }
    LogDerComponent::Algebraic {
        minpoly: m.clone(),
        template,
    }
}

// ---------------------------------------------------------------------------
// (q-)shift-case decomposition (cyclic components)
// ---------------------------------------------------------------------------

/// Decompose a discrete-case pair into an exact part and cyclic components.
pub fn decompose_shift(pair: &WZPair) -> Result<Decomposition> {
    assert!(pair.case().is_discrete(), "discrete case required");
    if !pair.verifies() {
        return Err(Error::NotAWZPair);
    }
    let case = pair.case().clone();
    let kind_y = case.kind(Var::Y);
    let red = match kind_y {
        OpKind::Shift => abramov_reduce(pair.f(), Var::Y)?,
        OpKind::QShift => q_abramov_reduce(pair.f(), Var::Y, case.q().expect("q"))?,
        OpKind::Derivation => unreachable!(),
    };
    let mut d = Decomposition::empty(case.clone());
    d.exact_h = red.certificate;
    // the q-case constant must itself be a constant for a verified pair
    if !red.remainder.constant.is_zero() {
        let c = &red.remainder.constant;
        if c.as_constant().is_none() {
            return Err(Error::StructureViolation(format!(
                "q-reduction constant part {} depends on x",
                c
            )));
        }
        d.cyclic.push(CyclicComponent {
            h: c.clone(),
            s: 1,
            t: 0,
        });
    }
    // group remainder terms by (G-orbit of base, multiplicity)
    let members: Vec<GroupMember> = red
        .remainder
        .fraction_terms
        .iter()
        .map(|t| GroupMember::from_term(t, &case))
        .collect();
    for group in group_by_orbit(members, &case) {
        let (component, extra_exact) = close_group(group, &case)?;
        d.exact_h = d.exact_h.add(&extra_exact);
        d.cyclic.push(component);
    }
    // g-side residual lies in K(x) and becomes a (0, w) component
    let mut residual = pair.g().sub(&apply_delta(&d.exact_h, Var::X, &case));
    for c in &d.cyclic {
        residual = residual.sub(&c.g_part(&case));
    }
    if residual.depends_on(Var::Y) {
        return Err(Error::StructureViolation(
            "g-side residual depends on y".into(),
        ));
    }
    if !residual.is_zero() {
        d.cyclic.push(CyclicComponent {
            h: residual,
            s: 0,
            t: 1,
        });
    }
    debug_assert_eq!(reconstruct(&d)?, *pair);
    Ok(d)
}

struct GroupMember {
    biv: BiPoly,
    view: Poly<CoefFrac>,
    power: u32,
    numerator: RatFunc,
    offset: i64,
}

impl GroupMember {
    fn from_term(term: &crate::reduction::FractionTerm, _case: &OperatorCase) -> Self {
        let view = UniView::from_bipoly(&term.base, Var::Y).poly.monic();
        let gamma = RatFunc::from_poly(term.base.clone())
            .div(&view_to_ratfunc(&view, Var::Y))
            .expect("nonzero");
        let numerator = term
            .numerator
            .div(&gamma.pow(term.power as i64).expect("nonzero"))
            .expect("nonzero");
        GroupMember {
            biv: term.base.clone(),
            view,
            power: term.power,
            numerator,
            offset: 0,
        }
    }
}

/// Are two bases theta_y-equivalent (up to a unit in the q-case)?
fn y_equivalent(a: &BiPoly, b: &BiPoly, case: &OperatorCase) -> Option<i64> {
    match case.kind(Var::Y) {
        OpKind::Shift => shift_equiv(a, b, Var::Y),
        OpKind::QShift => qshift_equiv(a, b, Var::Y, case.q().expect("q")).map(|(j, _)| j),
        OpKind::Derivation => unreachable!(),
    }
}

fn theta_x_biv(p: &BiPoly, power: i64, case: &OperatorCase) -> BiPoly {
    theta_bipoly(p, Var::X, power, case.kind(Var::X), case.q()).unit_normal()
}

// Offsets are discovered forward-only: in a closing orbit every member is a
// nonnegative theta_x power of the pivot modulo theta_y, so the pivot (the
// first base in canonical term order) is the theta_x-minimal representative.
fn group_by_orbit(members: Vec<GroupMember>, case: &OperatorCase) -> Vec<Vec<GroupMember>> {
    let mut groups: Vec<Vec<GroupMember>> = Vec::new();
    'member: for mut m in members {
        for group in groups.iter_mut() {
            if group[0].power != m.power {
                continue;
            }
            let pivot = &group[0];
            for l in 1..=DEFAULT_S_MAX {
                let forward = theta_x_biv(&pivot.biv, l, case);
                if y_equivalent(&forward, &m.biv, case).is_some() {
                    m.offset = l;
                    group.push(m);
                    continue 'member;
                }
            }
        }
        m.offset = 0;
        groups.push(vec![m]);
    }
    groups
}

/// Match one (orbit, multiplicity) group against the cyclic shape: bases
/// `theta_x^l(beta)`, coefficients `theta_x^l(A_0)`, and a closing relation
/// `theta_x^s(beta^j) = C theta_y^t(beta^j)`.
fn close_group(
    mut group: Vec<GroupMember>,
    case: &OperatorCase,
) -> Result<(CyclicComponent, RatFunc)> {
    let kind_x = case.kind(Var::X);
    let kind_y = case.kind(Var::Y);
    let q = case.q();
    let j = group[0].power;
    let min_off = group.iter().map(|m| m.offset).min().unwrap();
    for m in group.iter_mut() {
        m.offset -= min_off;
    }
    let beta = group
        .iter()
        .find(|m| m.offset == 0)
        .expect("minimal member")
        .view
        .clone();
    let beta_biv = UniView {
        var: Var::Y,
        poly: beta.clone(),
    }
    .to_unit_normal_bipoly();
    let d = beta.deg();
    let beta_rf_pow = view_to_ratfunc(&beta, Var::Y)
        .pow(j as i64)
        .expect("nonzero");
    let mut extra_exact = RatFunc::zero();
    let mut coeffs: Vec<(i64, RatFunc)> = Vec::new();
    for m in &group {
        // member base = u^{-1} theta_x^l theta_y^mk (beta) with constant u
        let w_biv = theta_x_biv(&beta_biv, m.offset, case);
        let Some(mk) = y_equivalent(&w_biv, &m.biv, case) else {
            return Err(Error::StructureViolation(
                "orbit member lost during normalization".into(),
            ));
        };
        let u = match kind_y {
            OpKind::Shift => Rational::one(),
            OpKind::QShift => pow_i(q.expect("q"), mk * d as i64),
            OpKind::Derivation => unreachable!(),
        };
        let uj = pow_i(&u, j as i64);
        // A_l = theta_y^{-mk}(a) * u^j
        let a_l = theta_rf(&m.numerator, Var::Y, -mk, kind_y, q).scale(&uj);
        // certificate for moving the member onto theta_x^l(beta^j)
        let n_tilde = theta_rf(&m.numerator, Var::X, -m.offset, kind_x, q).scale(&uj);
        let cert = eq2_certificate(&n_tilde, &beta_rf_pow, mk, Var::Y, kind_y, q);
        extra_exact = extra_exact.add(&theta_rf(&cert, Var::X, m.offset, kind_x, q));
        if coeffs.iter().any(|(l, _)| *l == m.offset) {
            return Err(Error::StructureViolation(
                "duplicate orbit offset in group".into(),
            ));
        }
        coeffs.push((m.offset, a_l));
    }
    coeffs.sort_by_key(|(l, _)| *l);
    let n = coeffs.last().unwrap().0;
    let s = n + 1;
    // closing relation theta_x^s(beta) = C_b theta_y^t(beta)
    let w_biv = theta_x_biv(&beta_biv, s, case);
    let Some(t) = y_equivalent(&beta_biv, &w_biv, case) else {
        return Err(match joint_orbit(&beta_biv, DEFAULT_S_MAX, case) {
            Some(_) => Error::StructureViolation(format!(
                "no closing relation at s = {} for base {}",
                s, beta_biv
            )),
            None => Error::SearchBoundExceeded(DEFAULT_S_MAX),
        });
    };
    let u_t = match kind_y {
        OpKind::Shift => Rational::one(),
        OpKind::QShift => pow_i(q.expect("q"), t * d as i64),
        OpKind::Derivation => unreachable!(),
    };
    let c_rel = pow_i(&u_t, -(j as i64));
    // verify the Lemma-shape coefficient ladder
    if coeffs.len() != s as usize {
        return Err(Error::StructureViolation(
            "missing orbit offsets in group".into(),
        ));
    }
    let a0 = coeffs[0].1.clone();
    for (l, al) in coeffs.iter().skip(1) {
        if *al != theta_rf(&a0, Var::X, *l, kind_x, q) {
            return Err(Error::StructureViolation(format!(
                "coefficient at offset {} is not a theta_x power of the base coefficient",
                l
            )));
        }
    }
    let closing_lhs = theta_rf(&a0, Var::X, s, kind_x, q);
    let closing_rhs = theta_rf(&a0, Var::Y, t, kind_y, q).scale(&c_rel);
    if closing_lhs != closing_rhs {
        return Err(Error::StructureViolation(
            "closing coefficient relation fails".into(),
        ));
    }
    let h = a0.div(&beta_rf_pow).expect("nonzero");
    let component = CyclicComponent { h, s, t };
    debug_assert!(component.side_condition_holds(case));
    Ok((component, extra_exact))
}

// ---------------------------------------------------------------------------
// mixed-case decomposition
// ---------------------------------------------------------------------------

/// Decompose a mixed-case pair (automorphism in x, derivation in y) into an
/// exact part plus univariate components `u(y)` and `v(x)`.
pub fn decompose_mixed(pair: &WZPair) -> Result<Decomposition> {
    let case = pair.case().clone();
    assert!(
        case.kind(Var::X).is_automorphism() && case.kind(Var::Y) == OpKind::Derivation,
        "mixed case with automorphism in x required"
    );
    if !pair.verifies() {
        return Err(Error::NotAWZPair);
    }
    let her = hermite_reduce(pair.f(), Var::Y);
    let mut d = Decomposition::empty(case.clone());
    d.exact_h = her.certificate;
    let u = her.remainder.to_ratfunc();
    if u.depends_on(Var::X) {
        return Err(Error::StructureViolation(
            "reduced remainder of f depends on x".into(),
        ));
    }
    d.mixed_u = u;
    let v = pair.g().sub(&apply_delta(&d.exact_h, Var::X, &case));
    if v.depends_on(Var::Y) {
        return Err(Error::StructureViolation(
            "g-side residual depends on y".into(),
        ));
    }
    d.mixed_v = v;
    debug_assert_eq!(reconstruct(&d)?, *pair);
    Ok(d)
}

/// Dispatch over the operator case; transposed mixed cases reduce to the
/// standard mixed case through the involution (f, g, x, y) -> (g, f, y, x).
pub fn decompose(pair: &WZPair) -> Result<Decomposition> {
    let case = pair.case().clone();
    if case.is_differential() {
        return decompose_diff(pair);
    }
    if case.is_discrete() {
        return decompose_shift(pair);
    }
    if case.kind(Var::X).is_automorphism() {
        return decompose_mixed(pair);
    }
    // transposed: derivation in x, automorphism in y
    let swapped = WZPair::new_unchecked(
        pair.g().swap_vars(),
        pair.f().swap_vars(),
        case.transposed(),
    );
    debug_assert!(swapped.verifies());
    let ds = decompose_mixed(&swapped)?;
    let d = Decomposition {
        case,
        exact_h: ds.exact_h.swap_vars(),
        logder: vec![],
        cyclic: vec![],
        mixed_u: ds.mixed_v.swap_vars(),
        mixed_v: ds.mixed_u.swap_vars(),
    };
    debug_assert_eq!(reconstruct(&d)?, *pair);
    Ok(d)
}

// ---------------------------------------------------------------------------
// generators
// ---------------------------------------------------------------------------

/// The log-derivative pair `(c D_y(b)/b, c D_x(b)/b)`.
pub fn gen_logder(b: &RatFunc, c: &Rational) -> Result<WZPair> {
    if b.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let case = OperatorCase::differential();
    let f = b.derivative(Var::Y).div(b).expect("nonzero").scale(c);
    let g = b.derivative(Var::X).div(b).expect("nonzero").scale(c);
    WZPair::new(f, g, case)
}

/// An invariant rational function for the discrete cases: `h` with
/// `theta_x^s(h) = theta_y^t(h)` built from a univariate template.
/// The template is a univariate rational function given as `num/den`.
pub fn gen_invariant(
    template: (&UPoly, &UPoly),
    m: i64,
    n: i64,
    case: &OperatorCase,
) -> Result<(RatFunc, i64, i64)> {
    if (m, n) == (0, 0) {
        return Err(Error::InvalidIndices);
    }
    assert!(case.is_discrete(), "discrete case required");
    let (num, den) = template;
    assert!(!den.is_zero());
    let g = gcd_i64(m, n);
    let mbar = m / g;
    let nbar = n / g;
    let kx = case.kind(Var::X);
    let ky = case.kind(Var::Y);
    let h = match (kx, ky) {
        (OpKind::Shift, OpKind::Shift) => {
            let arg = RatFunc::var(Var::X)
                .scale(&rat_int(nbar))
                .sub(&RatFunc::var(Var::Y).scale(&rat_int(mbar)));
            eval_template(num, den, &arg)
        }
        (OpKind::QShift, OpKind::QShift) => {
            let arg = RatFunc::var(Var::X)
                .pow(nbar)
                .expect("nonzero")
                .div(&RatFunc::var(Var::Y).pow(mbar).expect("nonzero"))
                .expect("nonzero");
            eval_template(num, den, &arg)
        }
        _ => {
            // mixed shift/q-shift: invariants degenerate to univariate or
            // constant functions
            if m == 0 {
                eval_template(num, den, &RatFunc::var(Var::X))
            } else if n == 0 {
                eval_template(num, den, &RatFunc::var(Var::Y))
            } else {
                let mut point = 0i64;
                let value = loop {
                    let at = rat_int(point);
                    if !den.eval(&at).is_zero() {
                        break num.eval(&at) / den.eval(&at);
                    }
                    point += 1;
                };
                RatFunc::constant(value)
            }
        }
    };
    let (s, t) = if mbar >= 0 { (mbar, -nbar) } else { (-mbar, nbar) };
    debug_assert!(s >= 0);
    debug_assert_eq!(
        theta_pow(&h, Var::X, s, case),
        theta_pow(&h, Var::Y, t, case)
    );
    Ok((h, s, t))
}

fn eval_template(num: &UPoly, den: &UPoly, arg: &RatFunc) -> RatFunc {
    eval_upoly_at(num, arg)
        .div(&eval_upoly_at(den, arg))
        .expect("denominator nonzero at nonconstant argument")
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The cyclic pair built from an invariant `h` via the geometric operator
/// sums; the side condition `theta_x^s(h) = theta_y^t(h)` is checked.
pub fn gen_cyclic(h: &RatFunc, s: i64, t: i64, case: &OperatorCase) -> Result<WZPair> {
    if (s, t) == (0, 0) {
        return Err(Error::InvalidIndices);
    }
    assert!(s >= 0, "normalized components have s >= 0");
    if theta_pow(h, Var::X, s, case) != theta_pow(h, Var::Y, t, case) {
        return Err(Error::NotInvariant);
    }
    let f = operator_sum(h, Var::X, s, case);
    let g = operator_sum(h, Var::Y, t, case);
    WZPair::new(f, g, case.clone())
}

// ---------------------------------------------------------------------------
// random generation
// ---------------------------------------------------------------------------

/// Size controls for `random_pair`.
#[derive(Debug, Clone)]
pub struct SizeParams {
    pub max_degree: u32,
    pub coeff_height: i64,
    pub components: u32,
}

impl Default for SizeParams {
    fn default() -> Self {
        SizeParams {
            max_degree: 3,
            coeff_height: 9,
            components: 2,
        }
    }
}

/// Deterministic random WZ pair: a rational linear combination of one exact
/// pair and `components` special components appropriate to the case.
pub fn random_pair(seed: u64, case: &OperatorCase, params: &SizeParams) -> WZPair {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = random_ratfunc(&mut rng, params, true, true);
    let mut f = apply_delta(&h, Var::Y, case);
    let mut g = apply_delta(&h, Var::X, case);
    for _ in 0..params.components {
        let (cf, cg) = random_component(&mut rng, case, params);
        let w = random_nonzero_rational(&mut rng, params.coeff_height);
        f = f.add(&cf.scale(&w));
        g = g.add(&cg.scale(&w));
    }
    WZPair::new(f, g, case.clone()).expect("constructed pairs verify")
}

fn random_component(
    rng: &mut ChaCha8Rng,
    case: &OperatorCase,
    params: &SizeParams,
) -> (RatFunc, RatFunc) {
    if case.is_differential() {
        // log-derivative component with a nonzero rational constant
        let b = random_poly_nonconstant(rng, params);
        let c = random_nonzero_rational(rng, params.coeff_height);
        let pair = gen_logder(&RatFunc::from_poly(b), &c).expect("nonzero b");
        return (pair.f().clone(), pair.g().clone());
    }
    if case.is_discrete() {
        match rng.gen_range(0..3) {
            0 => {
                // invariant-driven cyclic component
                let num = random_upoly(rng, 2, params.coeff_height, false);
                let den = random_upoly(rng, 2, params.coeff_height, true);
                let m = rng.gen_range(-3..=3i64);
                let n = rng.gen_range(-3..=3i64);
                let (m, n) = if (m, n) == (0, 0) { (1, 1) } else { (m, n) };
                let (h, s, t) = gen_invariant((&num, &den), m, n, case).expect("valid indices");
                if h.is_zero() || (s, t) == (0, 0) {
                    return (RatFunc::zero(), RatFunc::zero());
                }
                let pair = gen_cyclic(&h, s, t, case).expect("side condition by construction");
                (pair.f().clone(), pair.g().clone())
            }
            1 => {
                // (a(y), 0) with h = a, s = 1, t = 0
                let a = random_ratfunc(rng, params, false, true);
                (a, RatFunc::zero())
            }
            _ => {
                // (0, b(x)) with h = b, s = 0, t = 1
                let b = random_ratfunc(rng, params, true, false);
                (RatFunc::zero(), b)
            }
        }
    } else {
        // mixed cases: u in K(y) on the f side, v in K(x) on the g side
        let u = random_ratfunc(rng, params, false, true);
        let v = random_ratfunc(rng, params, true, false);
        (u, v)
    }
}

fn random_rational(rng: &mut ChaCha8Rng, height: i64) -> Rational {
    rat_int(rng.gen_range(-height..=height))
}

fn random_nonzero_rational(rng: &mut ChaCha8Rng, height: i64) -> Rational {
    loop {
        let r = random_rational(rng, height);
        if !r.is_zero() {
            return r;
        }
    }
}

fn random_upoly(rng: &mut ChaCha8Rng, max_degree: u32, height: i64, nonzero: bool) -> UPoly {
    loop {
        let deg = rng.gen_range(0..=max_degree) as usize;
        let coeffs: Vec<Rational> = (0..=deg).map(|_| random_rational(rng, height)).collect();
        let p = UPoly::new(coeffs);
        if !nonzero || !p.is_zero() {
            return p;
        }
    }
}

fn random_bipoly(
    rng: &mut ChaCha8Rng,
    params: &SizeParams,
    use_x: bool,
    use_y: bool,
) -> BiPoly {
    let mut p = BiPoly::zero();
    let terms = rng.gen_range(1..=4);
    for _ in 0..terms {
        let dx = if use_x {
            rng.gen_range(0..=params.max_degree)
        } else {
            0
        };
        let dy = if use_y {
            rng.gen_range(0..=params.max_degree)
        } else {
            0
        };
        let total = dx + dy;
        if total > params.max_degree {
            continue;
        }
        let c = random_rational(rng, params.coeff_height);
        p = p.add(&BiPoly::from_terms([((dx, dy), c)]));
    }
    p
}

fn random_poly_nonconstant(rng: &mut ChaCha8Rng, params: &SizeParams) -> BiPoly {
    loop {
        let p = random_bipoly(rng, params, true, true);
        if !p.is_constant() {
            return p;
        }
    }
}

fn random_ratfunc(
    rng: &mut ChaCha8Rng,
    params: &SizeParams,
    use_x: bool,
    use_y: bool,
) -> RatFunc {
    let num = random_bipoly(rng, params, use_x, use_y);
    let den = loop {
        let d = random_bipoly(rng, params, use_x, use_y);
        if !d.is_zero() {
            break d;
        }
    };
    RatFunc::new(num, den).expect("nonzero denominator")
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
    fn p23() -> BiPoly {
        x().scale(&rat_int(2)).add(&y().scale(&rat_int(3)))
    }

    /// The worked cyclic pair: f = 1/p + 1/sigma_x(p) + 1/sigma_x^2(p),
    /// g = 1/p + 1/sigma_y(p) for p = 2x + 3y.
    fn example_two() -> WZPair {
        let p = p23();
        let f = rf(BiPoly::one(), p.clone())
            .add(&rf(BiPoly::one(), p.shift(Var::X, &rat_int(1))))
            .add(&rf(BiPoly::one(), p.shift(Var::X, &rat_int(2))));
        let g = rf(BiPoly::one(), p.clone()).add(&rf(BiPoly::one(), p.shift(Var::Y, &rat_int(1))));
        WZPair::new(f, g, OperatorCase::shift()).unwrap()
    }

    #[test]
    fn verify_example_two() {
        assert!(example_two().verifies());
    }

    #[test]
    fn verify_rejects_non_pairs() {
        let case = OperatorCase::differential();
        assert!(!verify_wz(
            &RatFunc::var(Var::Y),
            &RatFunc::var(Var::Y),
            &case
        ));
        assert!(matches!(
            WZPair::new(RatFunc::var(Var::Y), RatFunc::var(Var::Y), case),
            Err(Error::NotAWZPair)
        ));
    }

    #[test]
    fn verify_logder_pair() {
        // from h = (y-x)/(y+x): f = 2x/(y^2-x^2), g = -2y/(y^2-x^2)
        let f = rf(x().scale(&rat_int(2)), y().pow(2).sub(&x().pow(2)));
        let g = rf(
            y().scale(&rat_int(-2)),
            y().pow(2).sub(&x().pow(2)),
        );
        assert!(verify_wz(&f, &g, &OperatorCase::differential()));
    }

    #[test]
    fn exactness_by_construction_and_counterexamples() {
        // (D_y h, D_x h) for h = 1/(x+y)
        let h = rf(BiPoly::one(), x().add(&y()));
        let case = OperatorCase::differential();
        let pair = WZPair::new(h.derivative(Var::Y), h.derivative(Var::X), case.clone()).unwrap();
        let (ok, witness) = is_exact(&pair).unwrap();
        assert!(ok);
        let w = witness.unwrap();
        assert_eq!(w.derivative(Var::Y), *pair.f());
        assert_eq!(w.derivative(Var::X), *pair.g());
        // the worked cyclic pair is not exact
        let (ok, _) = is_exact(&example_two()).unwrap();
        assert!(!ok);
        // (0, 1/x) is not exact: 1/x is not D_x of a rational function
        let pair = WZPair::new(RatFunc::zero(), rf(BiPoly::one(), x()), case).unwrap();
        let (ok, _) = is_exact(&pair).unwrap();
        assert!(!ok);
    }

    #[test]
    fn decompose_diff_log_components() {
        // (2x/(y^2-x^2), -2y/(y^2-x^2)): components (1, y-x), (-1, y+x)
        let f = rf(x().scale(&rat_int(2)), y().pow(2).sub(&x().pow(2)));
        let g = rf(y().scale(&rat_int(-2)), y().pow(2).sub(&x().pow(2)));
        let pair = WZPair::new(f, g, OperatorCase::differential()).unwrap();
        let d = decompose_diff(&pair).unwrap();
        assert!(d.exact_h.is_zero());
        assert_eq!(d.logder.len(), 2);
        let mut constants: Vec<Rational> = d
            .logder
            .iter()
            .map(|c| match c {
                LogDerComponent::Rational { c, .. } => c.clone(),
                _ => panic!("rational constants expected"),
            })
            .collect();
        constants.sort();
        assert_eq!(constants, vec![rat_int(-1), rat_int(1)]);
        assert_eq!(reconstruct(&d).unwrap(), pair);
    }

    #[test]
    fn decompose_diff_exact_input() {
        let h = rf(BiPoly::one(), x().add(&y()));
        let pair = WZPair::new(
            h.derivative(Var::Y),
            h.derivative(Var::X),
            OperatorCase::differential(),
        )
        .unwrap();
        let d = decompose_diff(&pair).unwrap();
        assert!(d.logder.is_empty());
        assert_eq!(
            d.exact_h.derivative(Var::Y),
            *pair.f()
        );
        assert_eq!(reconstruct(&d).unwrap(), pair);
    }

    #[test]
    fn decompose_diff_univariate_tail() {
        // (0, 1/x) -> single component (1, x)
        let pair = WZPair::new(
            RatFunc::zero(),
            rf(BiPoly::one(), x()),
            OperatorCase::differential(),
        )
        .unwrap();
        let d = decompose_diff(&pair).unwrap();
        assert_eq!(d.logder.len(), 1);
        match &d.logder[0] {
            LogDerComponent::Rational { c, b } => {
                assert_eq!(c, &rat_int(1));
                assert_eq!(b, &RatFunc::var(Var::X));
            }
            _ => panic!("rational component expected"),
        }
        assert_eq!(reconstruct(&d).unwrap(), pair);
    }

    #[test]
    fn decompose_diff_algebraic_residues() {
        // f = 4x/(y^2-2x^2) has residues +-sqrt(2); the component template
        // carries minimal polynomial t^2 - 2
        let f = rf(x().scale(&rat_int(4)), y().pow(2).sub(&x().pow(2).scale(&rat_int(2))));
        let g = rf(
            y().scale(&rat_int(-4)),
            y().pow(2).sub(&x().pow(2).scale(&rat_int(2))),
        );
        let pair = WZPair::new(f, g, OperatorCase::differential()).unwrap();
        let d = decompose_diff(&pair).unwrap();
        assert_eq!(d.logder.len(), 1);
        match &d.logder[0] {
            LogDerComponent::Algebraic { minpoly, .. } => {
                assert_eq!(
                    minpoly,
                    &UPoly::new(vec![rat_int(-2), rat_int(0), rat_int(1)])
                );
            }
            _ => panic!("algebraic component expected"),
        }
        assert_eq!(reconstruct(&d).unwrap(), pair);
    }

    #[test]
    fn decompose_shift_example_two() {
        let pair = example_two();
        let d = decompose_shift(&pair).unwrap();
        assert!(d.exact_h.is_zero());
        assert_eq!(d.cyclic.len(), 1);
        let c = &d.cyclic[0];
        assert_eq!((c.s, c.t), (3, 2));
        assert_eq!(c.h, rf(BiPoly::one(), p23()));
        assert_eq!(reconstruct(&d).unwrap(), pair);
    }

    #[test]
    fn decompose_shift_exact_input() {
        let h = rf(BiPoly::one(), x().add(&y()));
        let case = OperatorCase::shift();
        let pair = WZPair::new(
            apply_delta(&h, Var::Y, &case),
            apply_delta(&h, Var::X, &case),
            case,
        )
        .unwrap();
        let d = decompose_shift(&pair).unwrap();
        assert!(d.cyclic.is_empty());
        assert_eq!(reconstruct(&d).unwrap(), pair);
    }

    #[test]
    fn decompose_shift_constants_in_q_case() {
        // (5, 0) in the q/q case: single component (5, 1, 0)
        let case = OperatorCase::qshift(rat(2, 3)).unwrap();
        let pair = WZPair::new(RatFunc::int(5), RatFunc::zero(), case).unwrap();
        let d = decompose_shift(&pair).unwrap();
        assert_eq!(d.cyclic.len(), 1);
        assert_eq!(d.cyclic[0].h, RatFunc::int(5));
        assert_eq!((d.cyclic[0].s, d.cyclic[0].t), (1, 0));
        assert_eq!(reconstruct(&d).unwrap(), pair);
    }

    #[test]
    fn decompose_mixed_cases() {
        // (1/y, 1/x) with shift in x, derivation in y
        let case = OperatorCase::new(OpKind::Shift, OpKind::Derivation, None).unwrap();
        let pair = WZPair::new(rf(BiPoly::one(), y()), rf(BiPoly::one(), x()), case).unwrap();
        let d = decompose_mixed(&pair).unwrap();
        assert!(d.exact_h.is_zero());
        assert_eq!(d.mixed_u, rf(BiPoly::one(), y()));
        assert_eq!(d.mixed_v, rf(BiPoly::one(), x()));
        assert_eq!(reconstruct(&d).unwrap(), pair);

        // built from h = 1/(x+y) plus the same tails
        let case = OperatorCase::new(OpKind::Shift, OpKind::Derivation, None).unwrap();
        let h = rf(BiPoly::one(), x().add(&y()));
        let f = h.derivative(Var::Y).add(&rf(BiPoly::one(), y()));
        let g = h
            .shift(Var::X, &rat_int(1))
            .sub(&h)
            .add(&rf(BiPoly::one(), x()));
        let pair = WZPair::new(f, g, case).unwrap();
        let d = decompose_mixed(&pair).unwrap();
        assert_eq!(d.mixed_u, rf(BiPoly::one(), y()));
        assert_eq!(d.mixed_v, rf(BiPoly::one(), x()));
        assert_eq!(reconstruct(&d).unwrap(), pair);
    }

    #[test]
    fn mixed_rejects_non_pair() {
        let case = OperatorCase::new(OpKind::Shift, OpKind::Derivation, None).unwrap();
        let pair = WZPair::new_unchecked(
            rf(BiPoly::one(), x().add(&y())),
            RatFunc::zero(),
            case,
        );
        assert!(matches!(decompose_mixed(&pair), Err(Error::NotAWZPair)));
    }

    #[test]
    fn dispatch_transposed_mixed() {
        // derivation in x, shift in y: swap of the mixed example
        let case = OperatorCase::new(OpKind::Derivation, OpKind::Shift, None).unwrap();
        let h = rf(BiPoly::one(), x().add(&y()));
        let f = h.shift(Var::Y, &rat_int(1)).sub(&h).add(&rf(BiPoly::one(), y()));
        let g = h.derivative(Var::X).add(&rf(BiPoly::one(), x()));
        let pair = WZPair::new(f, g, case).unwrap();
        let d = decompose(&pair).unwrap();
        assert_eq!(d.mixed_u, rf(BiPoly::one(), y()));
        assert_eq!(d.mixed_v, rf(BiPoly::one(), x()));
        assert_eq!(reconstruct(&d).unwrap(), pair);
    }

    #[test]
    fn reconstruct_negative_t_branch() {
        // (h = 1/(x-y), s = 1, t = -1) gives (1/(x-y), -1/(x-y+1))
        let case = OperatorCase::shift();
        let h = rf(BiPoly::one(), x().sub(&y()));
        let d = Decomposition {
            case: case.clone(),
            exact_h: RatFunc::zero(),
            logder: vec![],
            cyclic: vec![CyclicComponent {
                h: h.clone(),
                s: 1,
                t: -1,
            }],
            mixed_u: RatFunc::zero(),
            mixed_v: RatFunc::zero(),
        };
        let pair = reconstruct(&d).unwrap();
        assert_eq!(pair.f(), &h);
        let expected_g = rf(BiPoly::one(), x().sub(&y()).add(&BiPoly::one())).neg();
        assert_eq!(pair.g(), &expected_g);
    }

    #[test]
    fn reconstruct_rejects_bad_component() {
        let case = OperatorCase::shift();
        let d = Decomposition {
            case,
            exact_h: RatFunc::zero(),
            logder: vec![],
            cyclic: vec![CyclicComponent {
                h: rf(BiPoly::one(), y().pow(2).add(&x())),
                s: 1,
                t: 1,
            }],
            mixed_u: RatFunc::zero(),
            mixed_v: RatFunc::zero(),
        };
        assert!(matches!(
            reconstruct(&d),
            Err(Error::InvalidComponent(_))
        ));
    }

    #[test]
    fn gen_logder_examples() {
        // b = (y-x)/(y+x), c = 1 -> (2x/(y^2-x^2), -2y/(y^2-x^2))
        let b = rf(y().sub(&x()), y().add(&x()));
        let pair = gen_logder(&b, &rat_int(1)).unwrap();
        assert_eq!(
            pair.f(),
            &rf(x().scale(&rat_int(2)), y().pow(2).sub(&x().pow(2)))
        );
        assert_eq!(
            pair.g(),
            &rf(y().scale(&rat_int(-2)), y().pow(2).sub(&x().pow(2)))
        );
        // b = x -> (0, 1/x)
        let pair = gen_logder(&RatFunc::var(Var::X), &rat_int(1)).unwrap();
        assert!(pair.f().is_zero());
        assert_eq!(pair.g(), &rf(BiPoly::one(), x()));
        // constant b -> (0, 0)
        let pair = gen_logder(&RatFunc::int(7), &rat_int(1)).unwrap();
        assert!(pair.f().is_zero() && pair.g().is_zero());
        // zero b is rejected
        assert!(matches!(
            gen_logder(&RatFunc::zero(), &rat_int(1)),
            Err(Error::ZeroArgument)
        ));
    }

    #[test]
    fn gen_invariant_cases() {
        let one = UPoly::one();
        let z = UPoly::var();
        // shift, (m, n) = (3, 2), template 1/z -> h = 1/(2x-3y), (3, -2)
        let case = OperatorCase::shift();
        let (h, s, t) = gen_invariant((&one, &z), 3, 2, &case).unwrap();
        assert_eq!(
            h,
            rf(BiPoly::one(), x().scale(&rat_int(2)).sub(&y().scale(&rat_int(3))))
        );
        assert_eq!((s, t), (3, -2));
        // q-shift, (1, 1), template z -> h = x/y, (1, -1)
        let case = OperatorCase::qshift(rat(2, 3)).unwrap();
        let (h, s, t) = gen_invariant((&z, &one), 1, 1, &case).unwrap();
        assert_eq!(h, rf(x(), y()));
        assert_eq!((s, t), (1, -1));
        // mixed sigma_x / tau_y with mn != 0 -> constant
        let case = OperatorCase::new(OpKind::Shift, OpKind::QShift, Some(rat(2, 3))).unwrap();
        let (h, _, _) = gen_invariant((&z, &one), 1, 1, &case).unwrap();
        assert!(h.as_constant().is_some());
        // (0, 0) rejected
        assert!(matches!(
            gen_invariant((&z, &one), 0, 0, &OperatorCase::shift()),
            Err(Error::InvalidIndices)
        ));
    }

    #[test]
    fn gen_cyclic_matches_example_two() {
        let case = OperatorCase::shift();
        let h = rf(BiPoly::one(), p23());
        let pair = gen_cyclic(&h, 3, 2, &case).unwrap();
        assert_eq!(pair, example_two());
        // constants give (c, 0)
        let pair = gen_cyclic(&RatFunc::int(5), 1, 0, &case).unwrap();
        assert_eq!(pair.f(), &RatFunc::int(5));
        assert!(pair.g().is_zero());
        // q-shift example: h = x/y, s = 1, t = -1
        let case = OperatorCase::qshift(rat(2, 3)).unwrap();
        let h = rf(x(), y());
        let pair = gen_cyclic(&h, 1, -1, &case).unwrap();
        assert_eq!(pair.f(), &h);
        assert_eq!(pair.g(), &h.scale(&rat(-2, 3)));
        // side-condition violations are rejected
        assert!(matches!(
            gen_cyclic(&rf(BiPoly::one(), y().pow(2).add(&x())), 1, 1, &OperatorCase::shift()),
            Err(Error::NotInvariant)
        ));
    }

    #[test]
    fn random_pairs_are_deterministic_and_verify() {
        let case = OperatorCase::shift();
        let params = SizeParams::default();
        let a = random_pair(7, &case, &params);
        let b = random_pair(7, &case, &params);
        assert_eq!(a, b);
        for seed in 0..25 {
            let p = random_pair(seed, &case, &params);
            assert!(p.verifies());
        }
        // zero components give an exact pair
        let p = random_pair(
            3,
            &case,
            &SizeParams {
                components: 0,
                ..SizeParams::default()
            },
        );
        let (ok, _) = is_exact(&p).unwrap();
        assert!(ok);
    }

    #[test]
    fn decompose_roundtrip_smoke() {
        let params = SizeParams::default();
        let cases = vec![
            OperatorCase::differential(),
            OperatorCase::shift(),
            OperatorCase::qshift(rat(2, 3)).unwrap(),
            OperatorCase::new(OpKind::Shift, OpKind::QShift, Some(rat(2, 3))).unwrap(),
            OperatorCase::new(OpKind::Shift, OpKind::Derivation, None).unwrap(),
            OperatorCase::new(OpKind::QShift, OpKind::Derivation, Some(rat(2, 3))).unwrap(),
        ];
        for case in cases {
            for seed in 0..8 {
                let pair = random_pair(seed, &case, &params);
                let d = decompose(&pair).expect("decomposition succeeds");
                let back = reconstruct(&d).expect("reconstruction succeeds");
                assert_eq!(back, pair, "case {:?} seed {}", case, seed);
            }
        }
    }

    #[test]
    fn linearity_of_pairs() {
        let case = OperatorCase::shift();
        let params = SizeParams::default();
        for seed in 0..10 {
            let p = random_pair(seed, &case, &params);
            let r = random_pair(seed + 100, &case, &params);
            let combo = WZPair::linear_combination(&rat(3, 2), &p, &rat(-5, 7), &r);
            assert!(combo.verifies());
        }
    }

    #[test]
    fn subtracting_components_leaves_exact_pair() {
        let pair = example_two();
        let d = decompose_shift(&pair).unwrap();
        let case = pair.case().clone();
        let mut f = pair.f().clone();
        let mut g = pair.g().clone();
        for c in &d.cyclic {
            f = f.sub(&c.f_part(&case));
            g = g.sub(&c.g_part(&case));
        }
        let reduced = WZPair::new(f, g, case).unwrap();
        let (ok, _) = is_exact(&reduced).unwrap();
        assert!(ok);
    }
}
