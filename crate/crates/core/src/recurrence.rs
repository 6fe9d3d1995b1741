//! Linear recurrences over the scalar field: Berlekamp-Massey, polynomial
//! helpers in one variable, and root finding for roots of the form
//! `c * q^a s^b L^e ...` with `c` rational.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::laurent::{ideal_gcd, LaurentPoly};
use crate::poly::{qgcd, Exponents, MPoly, NVARS};
use crate::scalar::Scalar;

/// Shortest recurrence `a_n + c_1 a_{n-1} + ... + c_L a_{n-L} = 0` valid on
/// the whole sequence. Returns `[1, c_1, ..., c_L]`.
pub fn berlekamp_massey(seq: &[Scalar]) -> Vec<Scalar> {
    let mut c = vec![Scalar::one()];
    let mut b = vec![Scalar::one()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bd = Scalar::one();
    for n in 0..seq.len() {
        let mut d = seq[n].clone();
        for i in 1..=l.min(c.len() - 1) {
            if !c[i].is_zero() {
                d += &(&c[i] * &seq[n - i]);
            }
        }
        if d.is_zero() {
            m += 1;
            continue;
        }
        let coef = d.checked_div(&bd).expect("nonzero discrepancy base");
        let t = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, Scalar::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            if !bi.is_zero() {
                c[i + m] -= &(&coef * bi);
            }
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = t;
            bd = d;
            m = 1;
        } else {
            m += 1;
        }
    }
    c.resize(l + 1, Scalar::zero());
    c
}

/// Formal derivative of a polynomial.
pub fn derivative(p: &LaurentPoly) -> LaurentPoly {
    LaurentPoly::from_terms(
        p.terms()
            .filter(|(n, _)| *n != 0)
            .map(|(n, c)| (n - 1, c * &Scalar::from_int(n))),
    )
}

/// `(x - b)`.
pub fn linear(b: &Scalar) -> LaurentPoly {
    LaurentPoly::from_terms([(1, Scalar::one()), (0, -b)])
}

/// Distinct roots with multiplicities, or `None` when some root is not of
/// the form rational times monomial (or the polynomial is zero).
pub fn roots(p: &LaurentPoly) -> Option<Vec<(Scalar, usize)>> {
    if p.is_zero() {
        return None;
    }
    let (_, p) = p.strip_monomial();
    let deg = p.max_degree().unwrap_or(0);
    if deg == 0 {
        return Some(Vec::new());
    }
    let dp = derivative(&p);
    let g = ideal_gcd([&p, &dp]);
    let sqf = p.div_exact(&g).expect("gcd divides").monic();
    let candidates = monomial_roots(&sqf);
    let mut out = Vec::new();
    let mut rest = p.clone();
    for b in candidates {
        let lin = linear(&b);
        let mut mult = 0;
        while let Some(q) = rest.div_exact(&lin) {
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            out.push((b, mult));
        }
    }
    let total: usize = out.iter().map(|(_, k)| k).sum();
    (total as i64 == deg).then_some(out)
}

/// Nonzero roots of a square-free polynomial that have the form
/// `c * monomial` with rational `c`.
fn monomial_roots(p: &LaurentPoly) -> Vec<Scalar> {
    // Clear denominators so every coefficient is a Laurent polynomial.
    let mut den = Scalar::one();
    for (_, c) in p.terms() {
        let d = Scalar::from_fraction(c.denominator().clone(), MPoly::one()).unwrap();
        let g = MPoly::gcd(den.numerator(), d.numerator());
        let g = Scalar::from_fraction(g, MPoly::one()).unwrap();
        den = &(&den * &d) * &g.inv().unwrap();
    }
    let coeffs: Vec<(i64, MPoly)> = p
        .terms()
        .map(|(n, c)| {
            let v = c * &den;
            debug_assert!(v.is_laurent());
            (n, v.numerator().clone())
        })
        .collect();
    let mut per_var: Vec<Vec<i32>> = Vec::with_capacity(NVARS);
    for v in 0..NVARS {
        let pts: Vec<(i64, i32)> = coeffs
            .iter()
            .map(|(k, a)| (*k, a.terms().map(|(e, _)| e[v]).min().unwrap()))
            .collect();
        per_var.push(slopes(&pts));
    }
    let mut found = BTreeSet::new();
    // Enumerate the cartesian product of per-variable candidates.
    let mut exps = Vec::new();
    let mut cur = [0i32; NVARS];
    product(&per_var, 0, &mut cur, &mut exps);
    for e in exps {
        let mono = MPoly::monomial(e, BigRational::one());
        for c in rational_slice_roots(&coeffs, &mono) {
            let r = Scalar::from_fraction(mono.scale(&c), MPoly::one()).unwrap();
            found.insert(r);
        }
    }
    found.into_iter().collect()
}

fn product(per_var: &[Vec<i32>], v: usize, cur: &mut Exponents, out: &mut Vec<Exponents>) {
    if v == per_var.len() {
        out.push(*cur);
        return;
    }
    for e in &per_var[v] {
        cur[v] = *e;
        product(per_var, v + 1, cur, out);
    }
}

/// Integer root valuations from the lower Newton polygon of points
/// `(k, val(a_k))`: values `e` where `min_k val(a_k) + k e` is attained twice.
fn slopes(pts: &[(i64, i32)]) -> Vec<i32> {
    let mut out = BTreeSet::new();
    for (i, (k1, v1)) in pts.iter().enumerate() {
        for (k2, v2) in &pts[i + 1..] {
            let num = (*v1 as i64) - (*v2 as i64);
            let den = k2 - k1;
            if num % den != 0 {
                continue;
            }
            let e = num / den;
            let val = |k: i64, v: i32| v as i64 + k * e;
            let min = pts.iter().map(|(k, v)| val(*k, *v)).min().unwrap();
            let hits = pts.iter().filter(|(k, v)| val(*k, *v) == min).count();
            if hits >= 2 {
                out.insert(e as i32);
            }
        }
    }
    out.into_iter().collect()
}

/// Rational `c` with `sum_k a_k (c * mono)^k = 0`.
fn rational_slice_roots(coeffs: &[(i64, MPoly)], mono: &MPoly) -> Vec<BigRational> {
    // Group coefficients of p(mono * y) by monomial; each group is a
    // univariate rational polynomial in y that must vanish at c.
    let mut groups: std::collections::BTreeMap<Exponents, Vec<(i64, BigRational)>> =
        Default::default();
    for (k, a) in coeffs {
        let ak = a.mul(&mono.pow(*k as u32));
        for (e, c) in ak.terms() {
            groups.entry(*e).or_default().push((*k, c.clone()));
        }
    }
    let mut g: Option<Vec<BigRational>> = None;
    for terms in groups.values() {
        let deg = terms.iter().map(|(k, _)| *k).max().unwrap() as usize;
        let mut u = vec![BigRational::zero(); deg + 1];
        for (k, c) in terms {
            u[*k as usize] += c;
        }
        g = Some(match g {
            None => u,
            Some(prev) => qgcd(prev, u),
        });
        if g.as_ref().map(|v| v.len() <= 1).unwrap_or(false) {
            return Vec::new();
        }
    }
    match g {
        Some(u) => rational_roots(&u),
        None => Vec::new(),
    }
}

fn qtrim(mut u: Vec<BigRational>) -> Vec<BigRational> {
    while u.last().map(|c| c.is_zero()).unwrap_or(false) {
        u.pop();
    }
    u
}

/// Rational roots of a univariate rational polynomial (nonzero roots only).
pub fn rational_roots(u: &[BigRational]) -> Vec<BigRational> {
    let mut u = qtrim(u.to_vec());
    while u.len() > 1 && u[0].is_zero() {
        u.remove(0);
    }
    if u.len() <= 1 {
        return Vec::new();
    }
    // Integer coefficients.
    let l = u.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = u
        .iter()
        .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    if u.len() == 2 {
        return vec![BigRational::new(-ints[0].clone(), ints[1].clone())];
    }
    let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
        return Vec::new();
    };
    let mut out = BTreeSet::new();
    for p in &ps {
        for q in &qs {
            for sign in [1, -1] {
                let cand = BigRational::new(p * BigInt::from(sign), q.clone());
                let mut acc = BigRational::zero();
                for c in u.iter().rev() {
                    acc = acc * &cand + c;
                }
                if acc.is_zero() {
                    out.insert(cand);
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Positive divisors, or `None` when the number is too large to factor by
/// trial division.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
        if d > 1_000_000 {
            return None;
        }
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn bm_geometric() {
        let q = Scalar::q();
        let seq: Vec<Scalar> = (0..10).map(|n| q.powi(n)).collect();
        let c = berlekamp_massey(&seq);
        assert_eq!(c, vec![Scalar::one(), -&q]);
    }

    #[test]
    fn bm_polynomial() {
        let seq: Vec<Scalar> = (0..10).map(|n| s(n * n)).collect();
        let c = berlekamp_massey(&seq);
        assert_eq!(c, vec![s(1), s(-3), s(3), s(-1)]);
    }

    #[test]
    fn roots_of_products() {
        let q = Scalar::q();
        let sv = Scalar::s();
        let b1 = &sv * &q.inv().unwrap();
        let p = &(&linear(&q) * &linear(&q)) * &(&linear(&b1) * &linear(&s(2)));
        let mut r = roots(&p).unwrap();
        r.sort();
        let mut expected = vec![(q, 2), (b1, 1), (s(2), 1)];
        expected.sort();
        assert_eq!(r, expected);
    }

    #[test]
    fn irreducible_has_no_roots() {
        let p = LaurentPoly::from_terms([(2, s(1)), (0, -&Scalar::q())]);
        assert!(roots(&p).is_none());
    }
}
