//! Irreducible factorization over the rationals.
//!
//! Univariate polynomials go through the classical route: squarefree
//! decomposition, reduction modulo a small prime, Berlekamp splitting,
//! linear Hensel lifting to a Mignotte-bound modulus, and subset
//! recombination.  Bivariate polynomials are factored by specializing the
//! second variable at a good point, factoring the specialization, lifting
//! the factors as truncated power series in the second variable, and
//! recombining.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::OnceLock;

use crate::bipoly::{BiPoly, Var};
use crate::error::{Error, Result};
use crate::gcd::div_exact;
use crate::poly::UPoly;
use crate::rational::{rat_int, Rational};

/// `p = unit * prod factors[i]^mult[i]` with irreducible, unit-normal,
/// nonconstant, pairwise non-associate factors.
#[derive(Debug, Clone, PartialEq)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<(BiPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> BiPoly {
        BiPoly::product(self.factors.iter().cloned()).scale(&self.unit)
    }
}

/// Total-degree cap for factorization; `WZ_MAX_DEGREE` overrides the
/// default of 30.  Read once per process.
pub fn degree_cap() -> u32 {
    static CAP: OnceLock<u32> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("WZ_MAX_DEGREE")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(30)
    })
}

/// Factor a nonzero bivariate polynomial into irreducibles over Q.
pub fn factor_irreducible(p: &BiPoly) -> Result<Factorization> {
    assert!(!p.is_zero(), "cannot factor the zero polynomial");
    let total = p.total_degree().unwrap_or(0);
    let cap = degree_cap();
    if total > cap {
        return Err(Error::DegreeCapExceeded { degree: total, cap });
    }
    let mut factors: Vec<(BiPoly, u32)> = Vec::new();
    collect_factors(p, 1, &mut factors)?;
    // canonical order and merge of associate factors
    let mut merged: Vec<(BiPoly, u32)> = Vec::new();
    'outer: for (f, m) in factors {
        for (g, k) in merged.iter_mut() {
            if *g == f {
                *k += m;
                continue 'outer;
            }
        }
        merged.push((f, m));
    }
    merged.sort_by_key(|(f, _)| (f.total_degree().unwrap_or(0), format!("{}", f)));
    let product = BiPoly::product(merged.iter().cloned());
    let unit = {
        let q = div_exact(p, &product).expect("factor product divides input");
        q.as_constant().expect("unit must be constant")
    };
    Ok(Factorization {
        unit,
        factors: merged,
    })
}

fn collect_factors(p: &BiPoly, mult: u32, out: &mut Vec<(BiPoly, u32)>) -> Result<()> {
    if p.is_constant() {
        return Ok(());
    }
    if !p.depends_on(Var::X) {
        let u = p.as_upoly(Var::Y).unwrap();
        for (f, m) in factor_upoly(&u).1 {
            out.push((BiPoly::from_upoly(&f, Var::Y).unit_normal(), mult * m));
        }
        return Ok(());
    }
    if !p.depends_on(Var::Y) {
        let u = p.as_upoly(Var::X).unwrap();
        for (f, m) in factor_upoly(&u).1 {
            out.push((BiPoly::from_upoly(&f, Var::X).unit_normal(), mult * m));
        }
        return Ok(());
    }
    // genuinely bivariate: split off the content in the x-view
    let content = p.content_in(Var::X);
    let primitive = if content.is_constant() {
        p.clone()
    } else {
        collect_factors(&content, mult, out)?;
        div_exact(p, &content).expect("content divides")
    };
    for (part, m) in crate::uniview::squarefree_decomp(&primitive, Var::X) {
        if !part.depends_on(Var::Y) || !part.depends_on(Var::X) {
            collect_factors(&part, mult * m, out)?;
            continue;
        }
        for f in factor_squarefree_bivariate(&part) {
            out.push((f.unit_normal(), mult * m));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// univariate factorization over Q
// ---------------------------------------------------------------------------

/// `p = unit * prod f_i^{m_i}` with monic irreducible `f_i` over Q.
pub fn factor_upoly(p: &UPoly) -> (Rational, Vec<(UPoly, u32)>) {
    assert!(!p.is_zero());
    let unit = p.leading();
    let mut out = Vec::new();
    for (part, m) in p.squarefree() {
        for f in factor_squarefree_rational(&part) {
            out.push((f, m));
        }
    }
    out.sort_by_key(|(f, _)| (f.deg(), format!("{:?}", f)));
    (unit, out)
}

fn factor_squarefree_rational(g: &UPoly) -> Vec<UPoly> {
    let n = g.deg();
    if n <= 1 {
        return vec![g.monic()];
    }
    // primitive integer model
    let gi = to_integer_poly(g);
    // monicize: G_hat(z) = M^(n-1) * G(z/M), integral and monic
    let m = gi.last().unwrap().clone();
    let mut hat: Vec<BigInt> = Vec::with_capacity(n + 1);
    for (k, c) in gi.iter().enumerate() {
        if k == n {
            hat.push(BigInt::one());
        } else {
            hat.push(c * m.pow((n - 1 - k) as u32));
        }
    }
    let factors_hat = factor_monic_integer_squarefree(&hat);
    factors_hat
        .into_iter()
        .map(|f| {
            // map back through z -> M z and make monic over Q
            let coeffs: Vec<Rational> = f
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    Rational::new(c.clone(), BigInt::one())
                        * crate::rational::pow_i(&Rational::from_integer(m.clone()), k as i64)
                })
                .collect();
            UPoly::new(coeffs).monic()
        })
        .collect()
}

fn to_integer_poly(g: &UPoly) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in g.coeffs() {
        lcm = lcm.lcm(c.denom());
    }
    let mut v: Vec<BigInt> = g
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
    if v.last().unwrap().is_negative() {
        for c in v.iter_mut() {
            *c = -&*c;
        }
    }
    v
}

fn factor_monic_integer_squarefree(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let p = choose_prime(f);
    let fp: Vec<u64> = f.iter().map(|c| to_fp(c, p)).collect();
    let modular = berlekamp(&fp, p);
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    // coefficient bound for any monic factor: 2^n * (n+1) * height(f)
    let height = f.iter().map(|c| c.abs()).max().unwrap();
    let bound: BigInt = (BigInt::one() << n) * BigInt::from(n as u64 + 1) * height;
    let mut modulus = BigInt::from(p);
    let mut steps = 1usize;
    while modulus < (&bound << 1) + 1 {
        modulus *= BigInt::from(p);
        steps += 1;
    }
    let lifted = lift_tree(f, &modular, p, steps);
    recombine(f.to_vec(), lifted, &modulus)
}

fn choose_prime(f: &[BigInt]) -> u64 {
    const CANDIDATES: [u64; 47] = [
        3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
        97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181,
        191, 193, 197, 199, 2, 211,
    ];
    for p in CANDIDATES {
        let fp: Vec<u64> = f.iter().map(|c| to_fp(c, p)).collect();
        if fp.last().map_or(true, |c| *c == 0) {
            continue;
        }
        let d = fp_derivative(&fp, p);
        if d.is_empty() {
            continue;
        }
        if fp_deg(&fp_gcd(fp.clone(), d, p)) == 0 {
            return p;
        }
    }
    panic!("no suitable small prime found for squarefree reduction");
}

fn to_fp(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

// ---- arithmetic over F_p (dense Vec<u64>, ascending, trimmed) ----

fn fp_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn fp_deg(v: &[u64]) -> usize {
    v.len().saturating_sub(1)
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u128 + (x as u128) * (y as u128)) % p as u128) as u64;
        }
    }
    fp_trim(out)
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (k, slot) in out.iter_mut().enumerate() {
        let x = a.get(k).copied().unwrap_or(0);
        let y = b.get(k).copied().unwrap_or(0);
        *slot = (x + p - y) % p;
    }
    fp_trim(out)
}

fn fp_add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (k, slot) in out.iter_mut().enumerate() {
        let x = a.get(k).copied().unwrap_or(0);
        let y = b.get(k).copied().unwrap_or(0);
        *slot = (x + y) % p;
    }
    fp_trim(out)
}

fn fp_inv(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1);
    t.rem_euclid(p as i128) as u64
}

fn fp_scale(a: &[u64], s: u64, p: u64) -> Vec<u64> {
    fp_trim(
        a.iter()
            .map(|&c| ((c as u128 * s as u128) % p as u128) as u64)
            .collect(),
    )
}

fn fp_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty());
    if a.len() < b.len() {
        return (vec![], a.to_vec());
    }
    let inv = fp_inv(*b.last().unwrap(), p);
    let mut rem = a.to_vec();
    let mut quot = vec![0u64; a.len() - b.len() + 1];
    for k in (b.len() - 1..rem.len()).rev() {
        if rem[k] == 0 {
            continue;
        }
        let q = ((rem[k] as u128 * inv as u128) % p as u128) as u64;
        let shift = k - (b.len() - 1);
        for (j, &c) in b.iter().enumerate() {
            let t = (q as u128 * c as u128 % p as u128) as u64;
            rem[shift + j] = (rem[shift + j] + p - t) % p;
        }
        quot[shift] = q;
    }
    (fp_trim(quot), fp_trim(rem))
}

fn fp_monic(a: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() {
        return vec![];
    }
    fp_scale(a, fp_inv(*a.last().unwrap(), p), p)
}

fn fp_gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    a = fp_trim(a);
    b = fp_trim(b);
    while !b.is_empty() {
        let (_, r) = fp_divrem(&a, &b, p);
        a = b;
        b = r;
    }
    fp_monic(&a, p)
}

fn fp_derivative(a: &[u64], p: u64) -> Vec<u64> {
    if a.len() <= 1 {
        return vec![];
    }
    fp_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| ((k as u128 % p as u128) * c as u128 % p as u128) as u64)
            .collect(),
    )
}

fn fp_xgcd(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1u64]);
    while !fp_trim(r1.clone()).is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        r0 = r1;
        r1 = r;
        let ns = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        s0 = s1;
        s1 = ns;
        let nt = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        t0 = t1;
        t1 = nt;
    }
    let lc = *fp_trim(r0.clone()).last().expect("xgcd of zero polynomials");
    let inv = fp_inv(lc, p);
    (
        fp_scale(&r0, inv, p),
        fp_scale(&s0, inv, p),
        fp_scale(&t0, inv, p),
    )
}

/// Monic irreducible factors of a monic squarefree polynomial mod p.
fn berlekamp(f: &[u64], p: u64) -> Vec<Vec<u64>> {
    let n = fp_deg(f);
    if n == 1 {
        return vec![f.to_vec()];
    }
    // z^p mod f
    let mut zp = vec![1u64];
    {
        let base = vec![0u64, 1];
        let mut sq = base;
        let mut e = p;
        loop {
            if e & 1 == 1 {
                zp = fp_divrem(&fp_mul(&zp, &sq, p), f, p).1;
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            sq = fp_divrem(&fp_mul(&sq, &sq, p), f, p).1;
        }
    }
    // rows[i] = z^(i p) mod f
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
    rows.push(vec![1u64]);
    for i in 1..n {
        let next = fp_divrem(&fp_mul(&rows[i - 1], &zp, p), f, p).1;
        rows.push(next);
    }
    // nullspace of M with M[j][i] = coeff_j(rows[i]) - delta_ij
    let mut mat = vec![vec![0u64; n]; n];
    for (i, row) in rows.iter().enumerate() {
        for j in 0..n {
            mat[j][i] = row.get(j).copied().unwrap_or(0);
        }
    }
    for i in 0..n {
        mat[i][i] = (mat[i][i] + p - 1) % p;
    }
    let basis = fp_nullspace(mat, p);
    let r = basis.len();
    if r == 1 {
        return vec![f.to_vec()];
    }
    let mut factors: Vec<Vec<u64>> = vec![f.to_vec()];
    for v in &basis {
        if factors.len() == r {
            break;
        }
        let v = fp_trim(v.clone());
        if fp_deg(&v) == 0 {
            continue;
        }
        let mut next: Vec<Vec<u64>> = Vec::new();
        for w in factors.into_iter() {
            if fp_deg(&w) <= 1 {
                next.push(w);
                continue;
            }
            let mut rem_w = w.clone();
            let mut pieces: Vec<Vec<u64>> = Vec::new();
            for s in 0..p {
                if fp_deg(&rem_w) == 0 {
                    break;
                }
                let mut vs = v.clone();
                if vs.is_empty() {
                    vs = vec![0];
                }
                vs[0] = (vs[0] + p - s) % p;
                let g = fp_gcd(rem_w.clone(), fp_trim(vs), p);
                if fp_deg(&g) >= 1 {
                    rem_w = fp_divrem(&rem_w, &g, p).0;
                    pieces.push(g);
                }
            }
            if fp_deg(&fp_trim(rem_w.clone())) >= 1 {
                pieces.push(fp_monic(&rem_w, p));
            }
            if pieces.is_empty() {
                next.push(w);
            } else {
                next.extend(pieces);
            }
        }
        factors = next;
    }
    factors
}

fn fp_nullspace(mut mat: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let n = mat.len();
    let mut pivot_col_of_row: Vec<Option<usize>> = vec![None; n];
    let mut row = 0usize;
    for col in 0..n {
        let Some(r) = (row..n).find(|&r| mat[r][col] != 0) else {
            continue;
        };
        mat.swap(row, r);
        let inv = fp_inv(mat[row][col], p);
        for c in 0..n {
            mat[row][c] = ((mat[row][c] as u128 * inv as u128) % p as u128) as u64;
        }
        for r2 in 0..n {
            if r2 != row && mat[r2][col] != 0 {
                let factor = mat[r2][col];
                for c in 0..n {
                    let t = (factor as u128 * mat[row][c] as u128 % p as u128) as u64;
                    mat[r2][c] = (mat[r2][c] + p - t) % p;
                }
            }
        }
        pivot_col_of_row[row] = Some(col);
        row += 1;
        if row == n {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row.iter().flatten().copied().collect();
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (r, pc) in pivot_col_of_row.iter().enumerate() {
            if let Some(pc) = pc {
                v[*pc] = (p - mat[r][free] % p) % p;
            }
        }
        basis.push(v);
    }
    basis
}

// ---- Hensel lifting over Z ----

/// Lift the factorization `f = prod(leaves) mod p` to `mod p^steps`.
fn lift_tree(f: &[BigInt], leaves: &[Vec<u64>], p: u64, steps: usize) -> Vec<Vec<BigInt>> {
    let modulus = BigInt::from(p).pow(steps as u32);
    let f_mod: Vec<BigInt> = f.iter().map(|c| c.mod_floor(&modulus)).collect();
    if leaves.len() == 1 {
        return vec![f_mod];
    }
    let mid = leaves.len() / 2;
    let (left, right) = leaves.split_at(mid);
    let g0 = left.iter().fold(vec![1u64], |acc, l| fp_mul(&acc, l, p));
    let h0 = right.iter().fold(vec![1u64], |acc, l| fp_mul(&acc, l, p));
    let (g, h) = lift_pair(&f_mod, &g0, &h0, p, steps);
    let mut out = lift_tree(&g, left, p, steps);
    out.extend(lift_tree(&h, right, p, steps));
    out
}

/// Linear Hensel steps: from `f = g0 h0 mod p` to `f = g h mod p^steps`,
/// with g, h monic and congruent to g0, h0 mod p.
fn lift_pair(
    f: &[BigInt],
    g0: &[u64],
    h0: &[u64],
    p: u64,
    steps: usize,
) -> (Vec<BigInt>, Vec<BigInt>) {
    let (one, s, t) = fp_xgcd(g0, h0, p);
    debug_assert_eq!(fp_deg(&one), 0);
    let pb = BigInt::from(p);
    let mut g: Vec<BigInt> = g0.iter().map(|&c| BigInt::from(c)).collect();
    let mut h: Vec<BigInt> = h0.iter().map(|&c| BigInt::from(c)).collect();
    let mut pk = pb.clone();
    for _ in 1..steps {
        let gh = int_mul(&g, &h);
        let diff = int_sub(f, &gh);
        let e_bar: Vec<u64> = diff
            .iter()
            .map(|c| {
                debug_assert!((c % &pk).is_zero(), "lift invariant broken");
                to_fp(&(c / &pk), p)
            })
            .collect();
        let e_bar = fp_trim(e_bar);
        if !e_bar.is_empty() {
            // solve dg*h0 + dh*g0 = e mod p with deg dg < deg g0
            let te = fp_mul(&t, &e_bar, p);
            let (q, dg) = fp_divrem(&te, g0, p);
            let dh = fp_add(&fp_mul(&s, &e_bar, p), &fp_mul(&q, h0, p), p);
            add_scaled(&mut g, &dg, &pk);
            add_scaled(&mut h, &dh, &pk);
        }
        pk *= &pb;
        for c in g.iter_mut() {
            *c = c.mod_floor(&pk);
        }
        for c in h.iter_mut() {
            *c = c.mod_floor(&pk);
        }
    }
    (g, h)
}

fn add_scaled(target: &mut Vec<BigInt>, delta: &[u64], scale: &BigInt) {
    if target.len() < delta.len() {
        target.resize(delta.len(), BigInt::zero());
    }
    for (k, &d) in delta.iter().enumerate() {
        target[k] += BigInt::from(d) * scale;
    }
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
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

fn int_sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| {
            let x = a.get(k).cloned().unwrap_or_else(BigInt::zero);
            let y = b.get(k).cloned().unwrap_or_else(BigInt::zero);
            x - y
        })
        .collect()
}

/// Try subsets of lifted modular factors against the integer polynomial.
fn recombine(
    mut remaining_poly: Vec<BigInt>,
    mut lifted: Vec<Vec<BigInt>>,
    modulus: &BigInt,
) -> Vec<Vec<BigInt>> {
    let mut found: Vec<Vec<BigInt>> = Vec::new();
    let mut size = 1usize;
    'outer: while 2 * size <= lifted.len() {
        let indices: Vec<usize> = (0..lifted.len()).collect();
        for combo in subsets(&indices, size) {
            let mut cand = vec![BigInt::one()];
            for &i in &combo {
                cand = int_mul(&cand, &lifted[i]);
                for c in cand.iter_mut() {
                    *c = c.mod_floor(modulus);
                }
            }
            let cand: Vec<BigInt> = cand.iter().map(|c| symmetric(c, modulus)).collect();
            if let Some(quot) = int_div_exact(&remaining_poly, &cand) {
                found.push(cand);
                remaining_poly = quot;
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, v)| v)
                    .collect();
                continue 'outer;
            }
        }
        size += 1;
    }
    if remaining_poly.len() > 1 {
        found.push(remaining_poly);
    }
    found
}

fn symmetric(c: &BigInt, modulus: &BigInt) -> BigInt {
    let half = modulus >> 1;
    if c > &half {
        c - modulus
    } else {
        c.clone()
    }
}

fn subsets(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack = vec![(0usize, Vec::new())];
    while let Some((start, acc)) = stack.pop() {
        if acc.len() == size {
            out.push(acc);
            continue;
        }
        for i in start..items.len() {
            let mut next = acc.clone();
            next.push(items[i]);
            stack.push((i + 1, next));
        }
    }
    out
}

/// Exact division of integer polynomials with monic divisor.
fn int_div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    if a.len() < b.len() {
        return None;
    }
    debug_assert!(b.last().unwrap().is_one());
    let mut rem: Vec<BigInt> = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - b.len() + 1];
    for k in (b.len() - 1..rem.len()).rev() {
        if rem[k].is_zero() {
            continue;
        }
        let q = rem[k].clone();
        let shift = k - (b.len() - 1);
        for (j, c) in b.iter().enumerate() {
            let t = &q * c;
            rem[shift + j] -= t;
        }
        quot[shift] = q;
    }
    if rem.iter().all(|c| c.is_zero()) {
        Some(quot)
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// bivariate factorization over Q via evaluation and series lifting
// ---------------------------------------------------------------------------

/// Input: primitive in the x-view over Q[y], squarefree, depending on both
/// variables.  Output: its irreducible factors.
fn factor_squarefree_bivariate(g: &BiPoly) -> Vec<BiPoly> {
    let n = g.degree(Var::X).unwrap();
    let lcx_poly = g.coeff_of(Var::X, n).as_upoly(Var::Y).unwrap();
    let mut point: Option<i64> = None;
    for cand in eval_candidates() {
        let a = rat_int(cand);
        if lcx_poly.eval(&a).is_zero() {
            continue;
        }
        let u = g.eval_var(Var::Y, &a).as_upoly(Var::X).unwrap();
        if u.gcd(&u.derivative()).degree() == Some(0) {
            point = Some(cand);
            break;
        }
    }
    let a = point.expect("no good evaluation point at desk degrees");
    let u = g.eval_var(Var::Y, &rat_int(a)).as_upoly(Var::X).unwrap();
    let (_, parts) = factor_upoly(&u);
    debug_assert!(parts.iter().all(|(_, m)| *m == 1));
    if parts.len() == 1 {
        return vec![g.clone()];
    }
    let base: Vec<UPoly> = parts.into_iter().map(|(f, _)| f).collect();
    // shift so the good point is y = 0
    let h = g.shift(Var::Y, &rat_int(a));
    let factors_h = lift_and_recombine(&h, &base);
    factors_h
        .into_iter()
        .map(|f| f.shift(Var::Y, &rat_int(-a)))
        .collect()
}

fn eval_candidates() -> impl Iterator<Item = i64> {
    (0..400).map(|k| if k % 2 == 0 { k / 2 } else { -(k / 2 + 1) })
}

// Truncated power series in y with polynomial-in-x coefficients, stored as
// coefficient vectors indexed by the y-order.

fn series_mul(a: &[UPoly], b: &[UPoly], prec: usize) -> Vec<UPoly> {
    let mut out = vec![UPoly::zero(); prec];
    for (i, ai) in a.iter().enumerate().take(prec) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if i + j >= prec {
                break;
            }
            out[i + j] = out[i + j].add(&ai.mul(bj));
        }
    }
    out
}

fn series_product(factors: &[Vec<UPoly>], prec: usize) -> Vec<UPoly> {
    let mut acc = vec![UPoly::zero(); prec];
    acc[0] = UPoly::one();
    for f in factors {
        acc = series_mul(&acc, f, prec);
    }
    acc
}

/// `h` as a y-series of x-polynomials: index = y-order.
fn bipoly_to_series(h: &BiPoly, prec: usize) -> Vec<UPoly> {
    let mut out = vec![UPoly::zero(); prec];
    for (&(dx, dy), c) in h.terms() {
        if (dy as usize) < prec {
            out[dy as usize] = out[dy as usize].add(&UPoly::monomial(c.clone(), dx as usize));
        }
    }
    out
}

fn series_to_bipoly(s: &[UPoly]) -> BiPoly {
    let mut out = BiPoly::zero();
    for (order, c) in s.iter().enumerate() {
        let as_x = BiPoly::from_upoly(c, Var::X);
        let ymono = BiPoly::monomial(Rational::one(), Var::Y, order as u32);
        out = out.add(&as_x.mul(&ymono));
    }
    out
}

/// Inverse of a y-series with nonzero constant term, to the given precision.
fn yseries_inverse(lambda: &UPoly, prec: usize) -> Vec<Rational> {
    let l0 = lambda.coeff(0);
    assert!(!l0.is_zero());
    let v = l0.recip();
    let mut inv = vec![Rational::zero(); prec];
    inv[0] = v.clone();
    for k in 1..prec {
        let mut acc = Rational::zero();
        for j in 1..=k {
            acc += lambda.coeff(j) * &inv[k - j];
        }
        inv[k] = -acc * &v;
    }
    inv
}

fn lift_and_recombine(h_orig: &BiPoly, base: &[UPoly]) -> Vec<BiPoly> {
    let n = h_orig.degree(Var::X).unwrap();
    let dy = h_orig.degree(Var::Y).unwrap_or(0) as usize;
    let lambda0 = h_orig.coeff_of(Var::X, n).as_upoly(Var::Y).unwrap();
    let prec = dy + lambda0.degree().unwrap_or(0) + 1;

    // H-hat = H / lc_x(H) as a series, monic in x
    let inv = yseries_inverse(&lambda0, prec);
    let h_series = bipoly_to_series(h_orig, prec);
    let inv_series: Vec<UPoly> = inv.iter().map(|c| UPoly::constant(c.clone())).collect();
    let hat = series_mul(&h_series, &inv_series, prec);

    // Bezout data: s_i = (prod_{j != i} u_j)^{-1} mod u_i
    let mut bezout = Vec::with_capacity(base.len());
    for (i, ui) in base.iter().enumerate() {
        let mut rest = UPoly::one();
        for (j, uj) in base.iter().enumerate() {
            if i != j {
                rest = rest.mul(uj).rem(ui);
            }
        }
        bezout.push(rest.inv_mod(ui).expect("modular inverse of coprime factors"));
    }

    // order-by-order linear lifting of the monic factors
    let mut lifted: Vec<Vec<UPoly>> = base
        .iter()
        .map(|u| {
            let mut v = vec![UPoly::zero(); prec];
            v[0] = u.clone();
            v
        })
        .collect();
    for k in 1..prec {
        let prod = series_product(&lifted, k + 1);
        let e = hat[k].sub(&prod[k]);
        if e.is_zero() {
            continue;
        }
        for (i, ui) in base.iter().enumerate() {
            let delta = bezout[i].mul(&e).rem(ui);
            lifted[i][k] = lifted[i][k].add(&delta);
        }
    }
    debug_assert_eq!(series_product(&lifted, prec), hat);

    // recombination against the shrinking remaining polynomial
    let mut remaining = h_orig.clone();
    let mut live: Vec<Vec<UPoly>> = lifted;
    let mut found = Vec::new();
    let mut size = 1usize;
    'outer: while 2 * size <= live.len() {
        let idx: Vec<usize> = (0..live.len()).collect();
        for combo in subsets(&idx, size) {
            let lam = remaining
                .coeff_of(Var::X, remaining.degree(Var::X).unwrap())
                .as_upoly(Var::Y)
                .unwrap();
            let lam_series: Vec<UPoly> =
                lam.coeffs().iter().map(|c| UPoly::constant(c.clone())).collect();
            let mut m = lam_series;
            for &i in &combo {
                m = series_mul(&m, &live[i], prec);
            }
            let cand_raw = series_to_bipoly(&m);
            if cand_raw.is_zero() {
                continue;
            }
            let content = cand_raw.content_in(Var::X);
            let cand = div_exact(&cand_raw, &content).expect("content divides");
            if let Some(quot) = div_exact(&remaining, &cand) {
                found.push(cand);
                remaining = quot;
                live = live
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, v)| v)
                    .collect();
                size = 1;
                continue 'outer;
            }
        }
        size += 1;
    }
    if remaining.degree(Var::X).unwrap_or(0) >= 1 {
        found.push(remaining);
    }
    found
}
