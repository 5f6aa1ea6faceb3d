//! Bivariate gcd via a subresultant polynomial remainder sequence in a chosen
//! main variable, with content extraction into univariate gcds.  The PRS runs
//! over primitive integer coefficients to keep growth under control.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::bipoly::{BiPoly, Var};
use crate::poly::UPoly;
use crate::rational::Rational;

// ---- integer univariate layer (dense, ascending, trimmed) ----

type IPoly = Vec<BigInt>;

fn itrim(mut v: IPoly) -> IPoly {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn imul(a: &IPoly, b: &IPoly) -> IPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn isub(a: &IPoly, b: &IPoly) -> IPoly {
    let n = a.len().max(b.len());
    itrim(
        (0..n)
            .map(|k| {
                let x = a.get(k).cloned().unwrap_or_else(BigInt::zero);
                let y = b.get(k).cloned().unwrap_or_else(BigInt::zero);
                x - y
            })
            .collect(),
    )
}

/// Exact division in Z[x]; panics if the quotient is not integral.
fn idiv_exact(a: &IPoly, b: &IPoly) -> IPoly {
    assert!(!b.is_empty());
    if a.is_empty() {
        return vec![];
    }
    let mut rem = a.clone();
    let mut quot = vec![BigInt::zero(); a.len() - b.len() + 1];
    let bl = b.last().unwrap();
    for k in (b.len() - 1..rem.len()).rev() {
        if rem[k].is_zero() {
            continue;
        }
        let (q, r) = rem[k].div_rem(bl);
        assert!(r.is_zero(), "inexact integer polynomial division");
        let shift = k - (b.len() - 1);
        for (j, c) in b.iter().enumerate() {
            let t = &q * c;
            rem[shift + j] -= t;
        }
        quot[shift] = q;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact division");
    itrim(quot)
}

// ---- integer view of a bivariate polynomial in the main variable ----

struct IVPoly {
    coeffs: Vec<IPoly>,
}

impl IVPoly {
    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_empty()) {
            self.coeffs.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn deg(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn lc(&self) -> &IPoly {
        self.coeffs.last().expect("leading of zero")
    }

    fn mul_scalar(&self, s: &IPoly) -> IVPoly {
        IVPoly {
            coeffs: self.coeffs.iter().map(|c| itrim(imul(c, s))).collect(),
        }
    }

    /// `self - s * z^k * other`
    fn sub_shifted(&self, s: &IPoly, k: usize, other: &IVPoly) -> IVPoly {
        let n = self.coeffs.len().max(other.coeffs.len() + k);
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_default();
            let b = if i >= k {
                other
                    .coeffs
                    .get(i - k)
                    .map(|c| imul(c, s))
                    .unwrap_or_default()
            } else {
                vec![]
            };
            out.push(isub(&a, &b));
        }
        let mut v = IVPoly { coeffs: out };
        v.trim();
        v
    }

    fn div_exact_scalar(&self, s: &IPoly) -> IVPoly {
        IVPoly {
            coeffs: self.coeffs.iter().map(|c| idiv_exact(c, s)).collect(),
        }
    }

    /// Integer content together with the Z[x]-content (primitive part data).
    fn primitive_part(&self) -> IVPoly {
        let mut content: Option<IPoly> = None;
        for c in &self.coeffs {
            if c.is_empty() {
                continue;
            }
            content = Some(match content {
                None => c.clone(),
                Some(g) => ipoly_gcd(&g, c),
            });
            if let Some(g) = &content {
                if g.len() == 1 && g[0].abs().is_one() {
                    return IVPoly {
                        coeffs: self.coeffs.clone(),
                    };
                }
            }
        }
        match content {
            None => IVPoly { coeffs: vec![] },
            Some(g) => self.div_exact_scalar(&g),
        }
    }
}

/// Gcd of integer univariate polynomials (primitive with positive leading
/// coefficient), through the rational Euclidean algorithm.
fn ipoly_gcd(a: &IPoly, b: &IPoly) -> IPoly {
    let to_upoly = |p: &IPoly| {
        UPoly::new(
            p.iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    };
    let g = to_upoly(a).gcd(&to_upoly(b));
    if g.is_zero() {
        return vec![];
    }
    // clear denominators and primitivize
    let mut lcm = BigInt::one();
    for c in g.coeffs() {
        lcm = lcm.lcm(c.denom());
    }
    let mut v: IPoly = g
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let mut content = BigInt::zero();
    for c in &v {
        content = content.gcd(c);
    }
    if !content.is_zero() && !content.is_one() {
        for c in v.iter_mut() {
            *c = &*c / &content;
        }
    }
    if v.last().is_some_and(|c| c.is_negative()) {
        for c in v.iter_mut() {
            *c = -&*c;
        }
    }
    v
}

/// Pseudo-remainder `lc(b)^{deg a - deg b + 1} * a mod b` over Z[x].
fn pseudo_rem(a: &IVPoly, b: &IVPoly) -> IVPoly {
    let delta = a.deg() as i64 - b.deg() as i64;
    debug_assert!(delta >= 0);
    let lb = b.lc().clone();
    let mut r = IVPoly {
        coeffs: a.coeffs.clone(),
    };
    let mut e = delta + 1;
    while !r.is_zero() && r.deg() >= b.deg() {
        let k = r.deg() - b.deg();
        let lr = r.lc().clone();
        r = r.mul_scalar(&lb).sub_shifted(&lr, k, b);
        e -= 1;
    }
    if e > 0 {
        let mut scale = vec![BigInt::one()];
        for _ in 0..e {
            scale = imul(&scale, &lb);
        }
        r = r.mul_scalar(&scale);
    }
    r
}

/// Subresultant PRS gcd of two primitive integer polynomials of positive
/// main-variable degree; the result is primitive.
fn subresultant_gcd(a: IVPoly, b: IVPoly) -> IVPoly {
    let (mut f, mut g) = if a.deg() >= b.deg() { (a, b) } else { (b, a) };
    let mut gg: IPoly = vec![BigInt::one()];
    let mut h: IPoly = vec![BigInt::one()];
    loop {
        let delta = f.deg() - g.deg();
        let r = pseudo_rem(&f, &g);
        if r.is_zero() {
            return g.primitive_part();
        }
        if r.deg() == 0 {
            return IVPoly {
                coeffs: vec![vec![BigInt::one()]],
            };
        }
        let mut divisor = gg.clone();
        for _ in 0..delta {
            divisor = imul(&divisor, &h);
        }
        let next = r.div_exact_scalar(&divisor);
        f = g;
        g = next;
        gg = f.lc().clone();
        if delta > 0 {
            // h := gg^delta / h^(delta-1), exact per subresultant theory
            let mut num = vec![BigInt::one()];
            for _ in 0..delta {
                num = imul(&num, &gg);
            }
            let mut den = vec![BigInt::one()];
            for _ in 0..delta - 1 {
                den = imul(&den, &h);
            }
            h = idiv_exact(&num, &den);
        }
    }
}

/// Convert the main-variable view of a bivariate polynomial to primitive
/// integer coefficients (the rational scale is irrelevant for gcds).
fn to_int_view(p: &BiPoly, main: Var) -> IVPoly {
    let other = main.other();
    let views: Vec<UPoly> = p
        .coeffs_in(main)
        .into_iter()
        .map(|c| c.as_upoly(other).expect("coefficient free of main var"))
        .collect();
    let mut lcm = BigInt::one();
    for v in &views {
        for c in v.coeffs() {
            lcm = lcm.lcm(c.denom());
        }
    }
    let coeffs: Vec<IPoly> = views
        .iter()
        .map(|v| {
            itrim(
                v.coeffs()
                    .iter()
                    .map(|c| c.numer() * (&lcm / c.denom()))
                    .collect(),
            )
        })
        .collect();
    let mut out = IVPoly { coeffs };
    out.trim();
    out.primitive_part()
}

fn from_int_view(v: &IVPoly, main: Var) -> BiPoly {
    let other = main.other();
    let mut acc = BiPoly::zero();
    for (k, c) in v.coeffs.iter().enumerate() {
        let upoly = UPoly::new(
            c.iter()
                .map(|n| Rational::from_integer(n.clone()))
                .collect(),
        );
        let term = BiPoly::from_upoly(&upoly, other)
            .mul(&BiPoly::monomial(Rational::one(), main, k as u32));
        acc = acc.add(&term);
    }
    acc
}

/// Unit-normal gcd of two bivariate polynomials (not both zero).
pub fn poly_gcd(a: &BiPoly, b: &BiPoly) -> BiPoly {
    assert!(!(a.is_zero() && b.is_zero()), "gcd of two zero polynomials");
    if a.is_zero() {
        return b.unit_normal();
    }
    if b.is_zero() {
        return a.unit_normal();
    }
    if a.is_constant() || b.is_constant() {
        return BiPoly::one();
    }
    let main = Var::Y;
    let other = main.other();
    let ca = content_of(a, main);
    let cb = content_of(b, main);
    let gcont = ca.gcd(&cb);
    let pa = to_int_view(&strip_content(a, &ca, main), main);
    let pb = to_int_view(&strip_content(b, &cb, main), main);
    let gpp = if pa.deg() >= 1 && pb.deg() >= 1 {
        subresultant_gcd(pa, pb)
    } else {
        IVPoly {
            coeffs: vec![vec![BigInt::one()]],
        }
    };
    BiPoly::from_upoly(&gcont, other)
        .mul(&from_int_view(&gpp, main))
        .unit_normal()
}

fn content_of(p: &BiPoly, main: Var) -> UPoly {
    let other = main.other();
    let mut g = UPoly::zero();
    for c in p.coeffs_in(main) {
        if c.is_zero() {
            continue;
        }
        let u = c.as_upoly(other).expect("coefficient free of main var");
        g = g.gcd(&u);
        if g.degree() == Some(0) {
            break;
        }
    }
    g
}

fn strip_content(p: &BiPoly, content: &UPoly, main: Var) -> BiPoly {
    if content.degree() == Some(0) {
        return p.clone();
    }
    let other = main.other();
    let cb = BiPoly::from_upoly(content, other);
    div_exact(p, &cb).expect("content divides")
}

/// Exact bivariate division: `Some(q)` with `q * d == n`, or `None`.
pub fn div_exact(n: &BiPoly, d: &BiPoly) -> Option<BiPoly> {
    assert!(!d.is_zero(), "division by zero polynomial");
    if n.is_zero() {
        return Some(BiPoly::zero());
    }
    // long division on graded-lex leading terms
    let mut rem = n.clone();
    let mut quot = BiPoly::zero();
    let (ddx, ddy) = d.leading_exponents().unwrap();
    let dlc = d.leading_coeff().unwrap();
    while !rem.is_zero() {
        let (rdx, rdy) = rem.leading_exponents().unwrap();
        if rdx < ddx || rdy < ddy {
            return None;
        }
        let c = rem.leading_coeff().unwrap() / &dlc;
        let mono = BiPoly::from_terms([((rdx - ddx, rdy - ddy), c)]);
        quot = quot.add(&mono);
        rem = rem.sub(&mono.mul(d));
    }
    Some(quot)
}
