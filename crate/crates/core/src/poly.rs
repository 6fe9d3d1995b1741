//! Sparse multivariate (Laurent) polynomials over the rationals.
//!
//! This is the coefficient layer underneath [`crate::scalar::Scalar`]. Terms are
//! keyed by exponent vectors over the fixed symbol set [`VARS`] and compared in
//! lexicographic order; the last key of the map is the leading term. Negative
//! exponents are allowed so that Laurent monomials in `q` never need a
//! denominator, but the gcd and exact-division routines only accept genuine
//! polynomials.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Formal symbols, in the order used for exponent vectors and printing.
///
/// `q` is the deformation parameter, `s` the default evaluation point of the
/// embeddings, `L` stands for `log q`, and `s2`, `s3` are additional
/// independent points for multi-point constructions.
pub const VARS: [&str; 5] = ["q", "s", "L", "s2", "s3"];
pub const NVARS: usize = VARS.len();

pub type Exponents = [i32; NVARS];

pub const ZERO_EXP: Exponents = [0; NVARS];

pub fn var_index(name: &str) -> Option<usize> {
    VARS.iter().position(|v| *v == name)
}

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MPoly {
    terms: BTreeMap<Exponents, BigRational>,
}

fn add_exp(a: &Exponents, b: &Exponents) -> Exponents {
    let mut r = *a;
    for i in 0..NVARS {
        r[i] += b[i];
    }
    r
}

fn sub_exp(a: &Exponents, b: &Exponents) -> Exponents {
    let mut r = *a;
    for i in 0..NVARS {
        r[i] -= b[i];
    }
    r
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(ZERO_EXP, c)
    }

    pub fn monomial(e: Exponents, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        MPoly { terms }
    }

    pub fn var(i: usize) -> Self {
        let mut e = ZERO_EXP;
        e[i] = 1;
        Self::monomial(e, BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&ZERO_EXP)
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&ZERO_EXP))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_value(&self) -> BigRational {
        self.terms
            .get(&ZERO_EXP)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    /// Leading term in lexicographic order. Panics on the zero polynomial.
    pub fn leading(&self) -> (&Exponents, &BigRational) {
        self.terms.iter().next_back().expect("leading term of zero")
    }

    pub fn leading_coeff(&self) -> &BigRational {
        self.leading().1
    }

    fn add_term(&mut self, e: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let (big, small) = if self.len() >= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut r = big.clone();
        for (e, c) in &small.terms {
            r.add_term(*e, c.clone());
        }
        r
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(*e, -c.clone());
        }
        r
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero();
        }
        if other.is_monomial() {
            let (e, c) = other.leading();
            return self.mul_monomial(e, c);
        }
        if self.is_monomial() {
            let (e, c) = self.leading();
            return other.mul_monomial(e, c);
        }
        let mut r = MPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                r.add_term(add_exp(ea, eb), ca * cb);
            }
        }
        r
    }

    pub fn mul_monomial(&self, e: &Exponents, c: &BigRational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(ea, ca)| (add_exp(ea, e), ca * c))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> MPoly {
        self.mul_monomial(&ZERO_EXP, c)
    }

    pub fn shift(&self, e: &Exponents) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(ea, ca)| (add_exp(ea, e), ca.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut result = MPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Componentwise minimum of the exponents (zero vector for the zero polynomial).
    pub fn min_exponents(&self) -> Exponents {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return ZERO_EXP;
        };
        let mut m = *first;
        for e in it {
            for i in 0..NVARS {
                m[i] = m[i].min(e[i]);
            }
        }
        m
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    pub fn degree_in(&self, v: usize) -> i32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    pub fn involves(&self, v: usize) -> bool {
        self.terms.keys().any(|e| e[v] != 0)
    }

    /// Divides out the largest monomial, returning `(monomial exponent, rest)`.
    pub fn split_monomial(&self) -> (Exponents, MPoly) {
        let m = self.min_exponents();
        let neg: Exponents = std::array::from_fn(|i| -m[i]);
        (m, self.shift(&neg))
    }

    /// Coefficients with respect to variable `v` (requires non-negative exponents in `v`).
    fn coeffs_in(&self, v: usize) -> Vec<MPoly> {
        let d = self.degree_in(v).max(0) as usize;
        let mut out = vec![MPoly::zero(); d + 1];
        for (e, c) in &self.terms {
            let k = e[v];
            debug_assert!(k >= 0);
            let mut e2 = *e;
            e2[v] = 0;
            out[k as usize].add_term(e2, c.clone());
        }
        out
    }

    fn from_coeffs_in(v: usize, coeffs: &[MPoly]) -> MPoly {
        let mut r = MPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            for (e, a) in &c.terms {
                let mut e2 = *e;
                e2[v] += k as i32;
                r.add_term(e2, a.clone());
            }
        }
        r
    }

    /// Exact division of polynomials; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if d.is_monomial() {
            let (e, c) = d.leading();
            let neg: Exponents = std::array::from_fn(|i| -e[i]);
            let r = self.mul_monomial(&neg, &c.recip());
            return if r.is_polynomial() || !self.is_polynomial() {
                Some(r)
            } else {
                None
            };
        }
        let (de, dc) = d.leading();
        let (de, dc) = (*de, dc.clone());
        let mut rem = self.clone();
        let mut quo = MPoly::zero();
        while !rem.is_zero() {
            let (re, rc) = rem.leading();
            let e = sub_exp(re, &de);
            if e.iter().any(|&x| x < 0) {
                return None;
            }
            let c = rc / &dc;
            rem = rem.sub(&d.mul_monomial(&e, &c));
            quo.add_term(e, c);
        }
        Some(quo)
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self) -> MPoly {
        if self.is_zero() {
            return MPoly::zero();
        }
        let lc = self.leading_coeff().clone();
        if lc.is_one() {
            return self.clone();
        }
        self.scale(&lc.recip())
    }

    /// Monic greatest common divisor of two polynomials (non-negative exponents).
    pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return MPoly::one();
        }
        let (ma, ra) = a.split_monomial();
        let (mb, rb) = b.split_monomial();
        let mono: Exponents = std::array::from_fn(|i| ma[i].min(mb[i]));
        let g = Self::gcd_no_monomial(&ra, &rb);
        g.shift(&mono).monic()
    }

    fn gcd_no_monomial(a: &MPoly, b: &MPoly) -> MPoly {
        if a.is_constant() || b.is_constant() {
            return MPoly::one();
        }
        if a == b {
            return a.monic();
        }
        let Some(v) = (0..NVARS).find(|&v| a.involves(v) || b.involves(v)) else {
            return MPoly::one();
        };
        if !a.involves(v) {
            return Self::gcd(a, &b.content_in(v));
        }
        if !b.involves(v) {
            return Self::gcd(&a.content_in(v), b);
        }
        // Cheap test: if a specialization shows that the gcd cannot involve
        // some variable, the gcd is the gcd of the contents in that variable.
        for u in 0..NVARS {
            let (ia, ib) = (a.involves(u), b.involves(u));
            if (ia || ib) && (!(ia && ib) || !image_gcd_involves(a, b, u)) {
                return Self::gcd(&a.content_in(u), &b.content_in(u));
            }
        }
        let ca = a.content_in(v);
        let cb = b.content_in(v);
        let gc = Self::gcd(&ca, &cb);
        let pa = a.div_exact(&ca).expect("content divides");
        let pb = b.div_exact(&cb).expect("content divides");
        let (mut x, mut y) = if pa.degree_in(v) >= pb.degree_in(v) {
            (pa.coeffs_in(v), pb.coeffs_in(v))
        } else {
            (pb.coeffs_in(v), pa.coeffs_in(v))
        };
        loop {
            let r = prem(&x, &y);
            if r.is_empty() {
                break;
            }
            if r.len() == 1 {
                return gc;
            }
            let rp = MPoly::from_coeffs_in(v, &r);
            let rc = rp.content_in(v);
            let rp = rp.div_exact(&rc).expect("content divides");
            x = y;
            y = rp.coeffs_in(v);
        }
        let g = MPoly::from_coeffs_in(v, &y);
        let g = g.div_exact(&g.content_in(v)).expect("content divides");
        gc.mul(&g).monic()
    }

    /// Gcd of the coefficients with respect to `v`.
    fn content_in(&self, v: usize) -> MPoly {
        let cs = self.coeffs_in(v);
        let mut g = MPoly::zero();
        for c in cs.iter().filter(|c| !c.is_zero()) {
            g = MPoly::gcd(&g, c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Substitutes a rational value for variable `v` (Laurent exponents allowed
    /// when the value is nonzero).
    pub fn substitute(&self, v: usize, value: &BigRational) -> MPoly {
        let mut r = MPoly::zero();
        for (e, c) in &self.terms {
            let mut e2 = *e;
            let k = e2[v];
            e2[v] = 0;
            let factor = rational_pow(value, k);
            r.add_term(e2, c * factor);
        }
        r
    }

    /// Formats with integer coefficients assumed; terms from leading to trailing.
    pub(crate) fn fmt_terms(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono = format_monomial(e);
            let neg = c.is_negative();
            let abs = c.abs();
            let body = match (mono.is_empty(), abs.is_one()) {
                (true, _) => format_rational(&abs),
                (false, true) => mono,
                (false, false) => format!("{}*{}", format_rational(&abs), mono),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

const SPECIALIZATION: [i64; NVARS] = [3, 5, 7, 11, 13];

/// Image of `p` in `Q[x_v]` after substituting fixed integers for the other
/// variables.
fn univariate_image(p: &MPoly, v: usize) -> Vec<BigRational> {
    let d = p.degree_in(v).max(0) as usize;
    let mut out = vec![BigRational::zero(); d + 1];
    for (e, c) in &p.terms {
        let mut f = c.clone();
        for u in 0..NVARS {
            if u != v && e[u] != 0 {
                f *= rational_pow(&BigRational::from_integer(SPECIALIZATION[u].into()), e[u]);
            }
        }
        out[e[v] as usize] += f;
    }
    out
}

/// False only when a specialization proves that `gcd(a, b)` has degree 0 in
/// `v`; the specialization is valid when it preserves both leading
/// coefficients in `v`.
fn image_gcd_involves(a: &MPoly, b: &MPoly, v: usize) -> bool {
    let ia = univariate_image(a, v);
    let ib = univariate_image(b, v);
    let vanishes = |p: &[BigRational]| p.last().map(|c| c.is_zero()).unwrap_or(true);
    if vanishes(&ia) || vanishes(&ib) {
        return true;
    }
    qgcd(ia, ib).len() > 1
}

fn qtrim(mut u: Vec<BigRational>) -> Vec<BigRational> {
    while u.last().map(|c| c.is_zero()).unwrap_or(false) {
        u.pop();
    }
    u
}

/// Monic gcd of univariate rational polynomials (ascending coefficients).
pub(crate) fn qgcd(a: Vec<BigRational>, b: Vec<BigRational>) -> Vec<BigRational> {
    let mut a = qtrim(a);
    let mut b = qtrim(b);
    while !b.is_empty() {
        let r = qrem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(lc) = a.last().cloned() {
        for c in a.iter_mut() {
            *c = &*c / &lc;
        }
    }
    a
}

fn qrem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        let f = &lr / &lb;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &f * c;
        }
        r.pop();
        r = qtrim(r);
    }
    r
}

/// Positive rational `f` such that every coefficient of every input, divided
/// by `f`, is an integer and the integers have no common factor.
pub fn joint_content(polys: &[&MPoly]) -> BigRational {
    let mut l = BigInt::one();
    for p in polys {
        for c in p.terms.values() {
            l = l.lcm(c.denom());
        }
    }
    let mut g = BigInt::zero();
    for p in polys {
        for c in p.terms.values() {
            let n = (c * BigRational::from_integer(l.clone())).to_integer();
            g = g.gcd(&n);
        }
    }
    if g.is_zero() {
        return BigRational::one();
    }
    BigRational::new(g, l)
}

pub fn rational_pow(value: &BigRational, k: i32) -> BigRational {
    if k >= 0 {
        num_traits::pow(value.clone(), k as usize)
    } else {
        num_traits::pow(value.recip(), (-k) as usize)
    }
}

fn format_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub(crate) fn format_monomial(e: &Exponents) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(VARS[i].to_string()),
            _ => parts.push(format!("{}^{}", VARS[i], k)),
        }
    }
    parts.join("*")
}

/// Pseudo-remainder of dense coefficient vectors (lowest degree first).
/// The result is trimmed; an empty vector is zero.
fn prem(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r: Vec<MPoly> = a.to_vec();
    trim(&mut r);
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (i, bc) in b.iter().enumerate() {
            let idx = i + dr - db;
            r[idx] = r[idx].sub(&lr.mul(bc));
        }
        trim(&mut r);
    }
    r
}

fn trim(v: &mut Vec<MPoly>) {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if self.is_zero() {
            return write!(f, "0");
        }
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let m = format_monomial(e);
            if m.is_empty() {
                write!(f, "({})", c)?;
            } else {
                write!(f, "({})*{}", c, m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn q() -> MPoly {
        MPoly::var(0)
    }

    fn s() -> MPoly {
        MPoly::var(1)
    }

    #[test]
    fn gcd_of_difference_of_squares() {
        let one = MPoly::one();
        let a = q().mul(&q()).sub(&one);
        let b = q().sub(&one);
        assert_eq!(MPoly::gcd(&a, &b), b);
        assert_eq!(a.div_exact(&b).unwrap(), q().add(&one));
    }

    #[test]
    fn gcd_multivariate() {
        // (q + s)(q - 2s) and (q + s)(s + 3)
        let f = q().add(&s());
        let a = f.mul(&q().sub(&s().scale(&int(2))));
        let b = f.mul(&s().add(&MPoly::constant(int(3))));
        assert_eq!(MPoly::gcd(&a, &b), f.monic());
    }

    #[test]
    fn gcd_extracts_common_monomial() {
        let a = q().mul(&q()).mul(&s());
        let b = q().mul(&s()).mul(&s()).add(&q());
        assert_eq!(MPoly::gcd(&a, &b), q());
    }

    #[test]
    fn coprime_gives_one() {
        let a = q().add(&MPoly::one());
        let b = q().sub(&MPoly::one());
        assert!(MPoly::gcd(&a, &b).is_one());
    }

    #[test]
    fn non_divisible_returns_none() {
        let a = q().add(&MPoly::one());
        let b = q().sub(&MPoly::one());
        assert!(a.div_exact(&b).is_none());
    }
}
