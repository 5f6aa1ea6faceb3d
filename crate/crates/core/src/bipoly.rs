//! Sparse bivariate polynomials over the rationals.

use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::poly::UPoly;
use crate::rational::{pow_i, rat_int, Rational};

/// One of the two variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::X => Var::Y,
            Var::Y => Var::X,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
        }
    }
}

/// Exponent pair `(deg_x, deg_y)` mapped to nonzero coefficients; the zero
/// polynomial stores no terms.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

/// Graded-lexicographic comparison with x > y.
fn grlex(a: (u32, u32), b: (u32, u32)) -> std::cmp::Ordering {
    (a.0 + a.1, a.0).cmp(&(b.0 + b.1, b.0))
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        BiPoly { terms }
    }

    pub fn var(v: Var) -> Self {
        BiPoly::monomial(Rational::one(), v, 1)
    }

    pub fn monomial(c: Rational, v: Var, deg: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            let key = match v {
                Var::X => (deg, 0),
                Var::Y => (0, deg),
            };
            terms.insert(key, c);
        }
        BiPoly { terms }
    }

    pub fn from_terms(entries: impl IntoIterator<Item = ((u32, u32), Rational)>) -> Self {
        let mut p = BiPoly::zero();
        for (key, c) in entries {
            p.add_term(key, c);
        }
        p
    }

    fn add_term(&mut self, key: (u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self, v: Var) -> Option<u32> {
        self.terms
            .keys()
            .map(|&(dx, dy)| match v {
                Var::X => dx,
                Var::Y => dy,
            })
            .max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(dx, dy)| dx + dy).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == (0, 0))
    }

    pub fn depends_on(&self, v: Var) -> bool {
        self.degree(v).unwrap_or(0) > 0
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            Some(self.terms[&(0, 0)].clone())
        } else {
            None
        }
    }

    pub fn coeff(&self, dx: u32, dy: u32) -> Rational {
        self.terms.get(&(dx, dy)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading exponent pair under graded lex with x > y.
    pub fn leading_exponents(&self) -> Option<(u32, u32)> {
        self.terms.keys().copied().max_by(|&a, &b| grlex(a, b))
    }

    pub fn leading_coeff(&self) -> Option<Rational> {
        self.leading_exponents().map(|k| self.terms[&k].clone())
    }

    /// Scale so the graded-lex leading coefficient is 1.
    pub fn unit_normal(&self) -> Self {
        match self.leading_coeff() {
            None => BiPoly::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn is_unit_normal(&self) -> bool {
        self.leading_coeff().map_or(false, |c| c.is_one())
    }

    pub fn neg(&self) -> Self {
        BiPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in other.terms.iter() {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in other.terms.iter() {
            out.add_term(k, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = BiPoly::zero();
        for (&(ax, ay), ac) in self.terms.iter() {
            for (&(bx, by), bc) in other.terms.iter() {
                out.add_term((ax + bx, ay + by), ac * bc);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(&k, a)| (k, a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut out = BiPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    pub fn derivative(&self, v: Var) -> Self {
        let mut out = BiPoly::zero();
        for (&(dx, dy), c) in self.terms.iter() {
            let (d, key) = match v {
                Var::X => (dx, (dx.wrapping_sub(1), dy)),
                Var::Y => (dy, (dx, dy.wrapping_sub(1))),
            };
            if d > 0 {
                out.add_term(key, c * rat_int(d as i64));
            }
        }
        out
    }

    /// Substitute `v -> v + amount` exactly.
    pub fn shift(&self, v: Var, amount: &Rational) -> Self {
        if amount.is_zero() {
            return self.clone();
        }
        let max_deg = self.degree(v).unwrap_or(0) as usize;
        // binomial expansion of (v + amount)^d for each occurring degree
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(max_deg + 1);
        rows.push(vec![Rational::one()]);
        for d in 1..=max_deg {
            let prev = &rows[d - 1];
            let mut row = vec![Rational::zero(); d + 1];
            for (k, c) in prev.iter().enumerate() {
                // (v + a) * v^k expansion step
                row[k + 1] += c;
                row[k] += c * amount;
            }
            rows.push(row);
        }
        let mut out = BiPoly::zero();
        for (&(dx, dy), c) in self.terms.iter() {
            let d = match v {
                Var::X => dx,
                Var::Y => dy,
            } as usize;
            for (k, b) in rows[d].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let key = match v {
                    Var::X => (k as u32, dy),
                    Var::Y => (dx, k as u32),
                };
                out.add_term(key, c * b);
            }
        }
        out
    }

    /// Substitute `v -> factor * v` exactly.
    pub fn scale_var(&self, v: Var, factor: &Rational) -> Self {
        let mut out = BiPoly::zero();
        for (&(dx, dy), c) in self.terms.iter() {
            let d = match v {
                Var::X => dx,
                Var::Y => dy,
            };
            out.add_term((dx, dy), c * pow_i(factor, d as i64));
        }
        out
    }

    pub fn swap_vars(&self) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(dx, dy), c)| ((dy, dx), c.clone()))
                .collect(),
        }
    }

    /// Evaluate one variable at a rational point.
    pub fn eval_var(&self, v: Var, at: &Rational) -> Self {
        let mut out = BiPoly::zero();
        for (&(dx, dy), c) in self.terms.iter() {
            let (d, key) = match v {
                Var::X => (dx, (0, dy)),
                Var::Y => (dy, (dx, 0)),
            };
            out.add_term(key, c * pow_i(at, d as i64));
        }
        out
    }

    /// Coefficient of `v^k`, a polynomial in the other variable.
    pub fn coeff_of(&self, v: Var, k: u32) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(dx, dy), c) in self.terms.iter() {
            match v {
                Var::X if dx == k => out.add_term((0, dy), c.clone()),
                Var::Y if dy == k => out.add_term((dx, 0), c.clone()),
                _ => {}
            }
        }
        out
    }

    /// Coefficients in ascending `v`-degree; entries are free of `v`.
    pub fn coeffs_in(&self, v: Var) -> Vec<BiPoly> {
        let d = match self.degree(v) {
            None => return vec![],
            Some(d) => d,
        };
        (0..=d).map(|k| self.coeff_of(v, k)).collect()
    }

    /// View a polynomial free of the other variable as univariate in `v`.
    pub fn as_upoly(&self, v: Var) -> Option<UPoly> {
        if self.depends_on(v.other()) {
            return None;
        }
        let d = self.degree(v).unwrap_or(0);
        let mut coeffs = vec![Rational::zero(); d as usize + 1];
        for (&(dx, dy), c) in self.terms.iter() {
            let k = match v {
                Var::X => dx,
                Var::Y => dy,
            };
            coeffs[k as usize] = c.clone();
        }
        Some(UPoly::new(coeffs))
    }

    pub fn from_upoly(p: &UPoly, v: Var) -> Self {
        let mut out = BiPoly::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            let key = match v {
                Var::X => (k as u32, 0),
                Var::Y => (0, k as u32),
            };
            out.add_term(key, c.clone());
        }
        out
    }

    /// Content with respect to `v`: monic gcd (in the other variable) of the
    /// `v`-coefficients.  The result is free of `v`.
    pub fn content_in(&self, v: Var) -> BiPoly {
        let other = v.other();
        let mut g = UPoly::zero();
        for c in self.coeffs_in(v) {
            if c.is_zero() {
                continue;
            }
            let u = c.as_upoly(other).expect("coefficient free of main var");
            g = g.gcd(&u);
            if g.degree() == Some(0) {
                break;
            }
        }
        if g.is_zero() {
            BiPoly::zero()
        } else {
            BiPoly::from_upoly(&g, other)
        }
    }

    /// Rescale integer content away: primitive over Z with unit-normal sign,
    /// useful when presenting factors.
    pub fn primitive_rational(&self) -> Self {
        self.unit_normal()
    }

    /// Multiply out an iterator of (factor, multiplicity) pairs.
    pub fn product(parts: impl IntoIterator<Item = (BiPoly, u32)>) -> BiPoly {
        let mut acc = BiPoly::one();
        for (p, m) in parts {
            acc = acc.mul(&p.pow(m));
        }
        acc
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({})", self)
    }
}

/// Canonical display: graded-lex descending terms with explicit `*`, matching
/// the expression grammar accepted by the CLI parser.
impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<(u32, u32)> = self.terms.keys().copied().collect();
        keys.sort_by(|&a, &b| grlex(b, a));
        for (i, key) in keys.iter().enumerate() {
            let c = &self.terms[key];
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let (dx, dy) = *key;
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || (dx == 0 && dy == 0) {
                factors.push(format_rational(&abs));
            }
            if dx > 0 {
                factors.push(if dx == 1 { "x".into() } else { format!("x^{}", dx) });
            }
            if dy > 0 {
                factors.push(if dy == 1 { "y".into() } else { format!("y^{}", dy) });
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
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

    #[test]
    fn arithmetic_and_normalization() {
        // (y - x)(y + x) = y^2 - x^2
        let p = y().sub(&x()).mul(&y().add(&x()));
        assert_eq!(p, y().pow(2).sub(&x().pow(2)));
        // leading term under grlex (x > y) is -x^2
        assert_eq!(p.leading_exponents(), Some((2, 0)));
        let n = p.unit_normal();
        assert_eq!(n.leading_coeff(), Some(rat_int(1)));
        assert_eq!(n, x().pow(2).sub(&y().pow(2)));
    }

    #[test]
    fn shift_and_scale() {
        // 2x + 3y shifted by 3 in x
        let p = x().scale(&rat_int(2)).add(&y().scale(&rat_int(3)));
        let shifted = p.shift(Var::X, &rat_int(3));
        let expected = p.add(&BiPoly::constant(rat_int(6)));
        assert_eq!(shifted, expected);
        // q-scale x by 2/3 on x/1
        let q = x().scale_var(Var::X, &rat(2, 3));
        assert_eq!(q, x().scale(&rat(2, 3)));
        // composition of shifts
        let s = p.shift(Var::Y, &rat_int(2)).shift(Var::Y, &rat_int(-2));
        assert_eq!(s, p);
    }

    #[test]
    fn derivative_rules() {
        // d/dx (x^2 y) = 2 x y
        let p = x().pow(2).mul(&y());
        assert_eq!(p.derivative(Var::X), x().mul(&y()).scale(&rat_int(2)));
        assert_eq!(p.derivative(Var::Y), x().pow(2));
    }

    #[test]
    fn content_extraction() {
        // x * y^2 + x * y has y-content... content in y is x? no: coefficients
        // of y^2 and y^1 are both x, so content_in(Y) = x.
        let p = x().mul(&y().pow(2)).add(&x().mul(&y()));
        assert_eq!(p.content_in(Var::Y), x());
    }

    #[test]
    fn display_roundtrip_shape() {
        let p = x()
            .pow(2)
            .scale(&rat_int(-2))
            .add(&y().scale(&rat(1, 2)))
            .add(&BiPoly::constant(rat_int(3)));
        assert_eq!(format!("{}", p), "-2*x^2 + 1/2*y + 3");
    }
}
