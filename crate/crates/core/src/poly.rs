//! Dense univariate polynomials over an arbitrary coefficient field.
//!
//! The same machinery is instantiated at several levels of the tower:
//! `Poly<Rational>` for plain univariate work, `Poly<RatFunc>` behind the
//! univariate views of bivariate data, and `Poly<RFrac<AlgNum>>` when a
//! computation has to run over an algebraic extension of the rationals.

use num_traits::{One, Zero};
use std::fmt::Debug;
use std::ops::{Div, Neg, Sub};

use crate::rational::Rational;

/// Everything a coefficient field has to provide.  `num_rational::BigRational`
/// satisfies the bound out of the box; the crate's own field types implement
/// the same standard traits.
pub trait Coef:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
{
    fn from_rational(r: &Rational) -> Self;
}

impl Coef for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

/// Coefficients in ascending degree order; no trailing zeros; zero is empty.
#[derive(Clone, PartialEq)]
pub struct Poly<F: Coef> {
    coeffs: Vec<F>,
}

impl<F: Coef> Debug for Poly<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl<F: Coef> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `c * z^k`.
    pub fn monomial(c: F, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![F::zero(); k + 1];
        v[k] = c;
        Poly { coeffs: v }
    }

    pub fn var() -> Self {
        Poly::monomial(F::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree of a nonzero polynomial.
    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn leading(&self) -> F {
        self.coeffs.last().cloned().expect("leading of zero")
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.clone().neg()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        Poly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - other.coeff(k));
        }
        Poly::new(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = a.clone() * b.clone();
                out[i + j] = std::mem::replace(&mut out[i + j], F::zero()) + t;
            }
        }
        Poly::new(out)
    }

    pub fn mul_scalar(&self, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn div_scalar(&self, c: &F) -> Self {
        assert!(!c.is_zero());
        Poly::new(self.coeffs.iter().map(|a| a.clone() / c.clone()).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut out = Poly::one();
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

    /// Euclidean division; the divisor must be nonzero.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.deg();
        if self.coeffs.len() < divisor.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![F::zero(); self.coeffs.len() - divisor.coeffs.len() + 1];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = rem[k].clone() / lead.clone();
            let shift = k - dd;
            for (j, c) in divisor.coeffs.iter().enumerate() {
                let t = q.clone() * c.clone();
                rem[shift + j] = std::mem::replace(&mut rem[shift + j], F::zero()) - t;
            }
            quot[shift] = q;
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.divrem(divisor).1
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self.divrem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        self.div_scalar(&self.leading())
    }

    /// Monic greatest common divisor (Euclid).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Extended gcd: returns `(g, s, t)` with `g` monic and `s*a + t*b = g`.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = r1;
            r1 = r;
            let s = s0.sub(&q.mul(&s1));
            s0 = s1;
            s1 = s;
            let t = t0.sub(&q.mul(&t1));
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lc = r0.leading();
        (r0.div_scalar(&lc), s0.div_scalar(&lc), t0.div_scalar(&lc))
    }

    /// Inverse of `self` modulo `m` (requires gcd(self, m) = 1).
    pub fn inv_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = self.xgcd(m);
        if g.degree() == Some(0) {
            Some(s.rem(m))
        } else {
            None
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c.clone() * F::from_rational(&crate::rational::rat_int(k as i64)));
        }
        Poly::new(out)
    }

    pub fn eval(&self, at: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at.clone() + c.clone();
        }
        acc
    }

    /// Substitute another polynomial for the variable.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Squarefree decomposition by Yun's algorithm (characteristic zero).
    /// Returns monic squarefree parts with strictly increasing multiplicities;
    /// the discarded unit is `leading`.
    pub fn squarefree(&self) -> Vec<(Self, u32)> {
        assert!(!self.is_zero());
        let p = self.monic();
        if p.deg() == 0 {
            return vec![];
        }
        let dp = p.derivative();
        let mut out = Vec::new();
        let a0 = p.gcd(&dp);
        let mut b = p.div_exact(&a0);
        let mut c = dp.div_exact(&a0);
        let mut i = 1u32;
        loop {
            let d = c.sub(&b.derivative());
            if d.is_zero() {
                if b.deg() > 0 {
                    out.push((b, i));
                }
                break;
            }
            let a = b.gcd(&d);
            if a.deg() > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a);
            c = d.div_exact(&a);
            i += 1;
            if b.deg() == 0 {
                break;
            }
        }
        out
    }

    /// Resultant as the determinant of the Sylvester matrix, computed by
    /// fraction-based Gaussian elimination over the coefficient field.
    pub fn resultant(&self, other: &Self) -> F {
        assert!(!self.is_zero() && !other.is_zero());
        let m = self.deg();
        let n = other.deg();
        if m == 0 && n == 0 {
            return F::one();
        }
        // row i (0..n): z^{n-1-i} * self; row n+i (0..m): z^{m-1-i} * other
        let size = m + n;
        let mut mat = vec![vec![F::zero(); size]; size];
        for i in 0..n {
            for (k, c) in self.coeffs.iter().enumerate() {
                mat[i][i + (m - k)] = c.clone();
            }
        }
        for i in 0..m {
            for (k, c) in other.coeffs.iter().enumerate() {
                mat[n + i][i + (n - k)] = c.clone();
            }
        }
        det_in_place(mat)
    }

    /// Lagrange interpolation through distinct nodes.
    pub fn interpolate(points: &[(F, F)]) -> Self {
        let mut acc = Poly::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = Poly::constant(yi.clone());
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                let denom = xi.clone() - xj.clone();
                let lin = Poly::new(vec![xj.clone().neg() / denom.clone(), F::one() / denom]);
                basis = basis.mul(&lin);
            }
            acc = acc.add(&basis);
        }
        acc
    }

    pub fn map_coeffs<G: Coef>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

pub(crate) fn det_in_place<F: Coef>(mut mat: Vec<Vec<F>>) -> F {
    let n = mat.len();
    let mut det = F::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !mat[r][col].is_zero()) else {
            return F::zero();
        };
        if pivot != col {
            mat.swap(pivot, col);
            det = det.neg();
        }
        let p = mat[col][col].clone();
        det = det * p.clone();
        for r in col + 1..n {
            if mat[r][col].is_zero() {
                continue;
            }
            let factor = mat[r][col].clone() / p.clone();
            for c in col..n {
                let t = factor.clone() * mat[col][c].clone();
                mat[r][c] = std::mem::replace(&mut mat[r][c], F::zero()) - t;
            }
        }
    }
    det
}

/// Univariate polynomials over the rationals.
pub type UPoly = Poly<Rational>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn p(coeffs: &[i64]) -> UPoly {
        UPoly::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn divrem_roundtrip() {
        let a = p(&[1, 0, -3, 2, 5]);
        let b = p(&[2, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_shared_factor() {
        let a = p(&[-1, 0, 1]); // z^2 - 1
        let b = p(&[1, 1]); // z + 1
        assert_eq!(a.gcd(&b), b.monic());
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn squarefree_yun() {
        // z^2 (z+1)^3
        let f = p(&[0, 1]).pow(2).mul(&p(&[1, 1]).pow(3));
        let parts = f.squarefree();
        assert_eq!(parts, vec![(p(&[0, 1]), 2), (p(&[1, 1]), 3)]);
    }

    #[test]
    fn resultant_values() {
        // res(z^2 - 1, z - 2) = 2^2 - 1 = 3
        assert_eq!(p(&[-1, 0, 1]).resultant(&p(&[-2, 1])), rat_int(3));
        // shared root -> zero
        assert_eq!(p(&[-1, 0, 1]).resultant(&p(&[1, 1])), rat_int(0));
    }

    #[test]
    fn interpolation() {
        let pts = vec![
            (rat_int(0), rat_int(1)),
            (rat_int(1), rat_int(4)),
            (rat_int(2), rat_int(9)),
        ];
        let f = UPoly::interpolate(&pts);
        assert_eq!(f, p(&[1, 2, 1]));
        assert_eq!(f.eval(&rat(1, 2)), rat(9, 4));
    }

    #[test]
    fn compose_and_eval() {
        let f = p(&[1, 2, 1]);
        let g = p(&[-1, 1]);
        assert_eq!(f.compose(&g), p(&[0, 0, 1]));
    }
}
