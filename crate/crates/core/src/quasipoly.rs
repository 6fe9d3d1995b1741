//! Quasipolynomials `n -> sum_b p_b(n) b^n` and their annihilators.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::AlgebraError;
use crate::laurent::LaurentPoly;
use crate::recurrence::{berlekamp_massey, linear, roots};
use crate::scalar::Scalar;

/// Default bound on the annihilator degree accepted by [`interpolate_finite`].
pub const DEFAULT_DEGREE_BOUND: usize = 16;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct QuasiPolynomial {
    /// Base -> coefficients of `p_b`, ascending in `x`, no trailing zeros.
    terms: BTreeMap<Scalar, Vec<Scalar>>,
}

fn trim(mut v: Vec<Scalar>) -> Vec<Scalar> {
    while v.last().map(Scalar::is_zero).unwrap_or(false) {
        v.pop();
    }
    v
}

fn poly_eval(coeffs: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

impl QuasiPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `p(n) b^n` with `p` given by ascending coefficients.
    pub fn term(base: Scalar, coeffs: Vec<Scalar>) -> Result<Self, AlgebraError> {
        let mut p = Self::zero();
        p.add_term(base, coeffs)?;
        Ok(p)
    }

    pub fn add_term(&mut self, base: Scalar, coeffs: Vec<Scalar>) -> Result<(), AlgebraError> {
        if base.is_zero() {
            return Err(AlgebraError::ZeroArgument("quasipolynomial base"));
        }
        let entry = self.terms.entry(base.clone()).or_default();
        if entry.len() < coeffs.len() {
            entry.resize(coeffs.len(), Scalar::zero());
        }
        for (i, c) in coeffs.into_iter().enumerate() {
            entry[i] += &c;
        }
        let t = trim(std::mem::take(entry));
        if t.is_empty() {
            self.terms.remove(&base);
        } else {
            *self.terms.get_mut(&base).unwrap() = t;
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn bases(&self) -> impl Iterator<Item = &Scalar> {
        self.terms.keys()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Scalar, &[Scalar])> {
        self.terms.iter().map(|(b, c)| (b, c.as_slice()))
    }

    /// Coefficients of `p_b` (empty when `b` is not a base).
    pub fn coeffs(&self, base: &Scalar) -> &[Scalar] {
        self.terms.get(base).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Degree of `p_b`, if `b` is a base.
    pub fn degree(&self, base: &Scalar) -> Option<usize> {
        self.terms.get(base).map(|c| c.len() - 1)
    }

    pub fn eval(&self, n: i64) -> Scalar {
        let x = Scalar::from_int(n);
        let mut acc = Scalar::zero();
        for (b, c) in &self.terms {
            acc += &(&poly_eval(c, &x) * &b.powi(n));
        }
        acc
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QuasiPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(b, p)| (b.clone(), p.iter().map(|x| x * c).collect()))
                .collect(),
        }
    }

    /// The quasipolynomial `n -> c^n P(n)`.
    pub fn scale_bases(&self, c: &Scalar) -> Result<Self, AlgebraError> {
        if c.is_zero() {
            return Err(AlgebraError::ZeroArgument("scale_bases"));
        }
        Ok(QuasiPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(b, p)| (b * c, p.clone()))
                .collect(),
        })
    }

    /// `prod_b (x - b)^{deg p_b + 1}`, as a polynomial in `x`.
    pub fn min_annihilator(&self) -> LaurentPoly {
        let mut out = LaurentPoly::one();
        for (b, p) in &self.terms {
            let lin = linear(b);
            for _ in 0..p.len() {
                out = &out * &lin;
            }
        }
        out
    }

    /// `(d/dx)^l p_b (0) = l! * [x^l] p_b`.
    pub fn jet_at_zero(&self, base: &Scalar, l: usize) -> Scalar {
        let c = self.coeffs(base).get(l).cloned().unwrap_or_default();
        let fact: i64 = (1..=l as i64).product();
        &c * &Scalar::from_int(fact)
    }
}

/// Checks `sum_k b_k P(n + k) = 0` for all `|n| <= window`.
pub fn annihilates_window(b: &LaurentPoly, p: &QuasiPolynomial, window: i64) -> bool {
    if p.is_zero() {
        return true;
    }
    let (_, b) = b.strip_monomial();
    let deg = b.max_degree().unwrap_or(0);
    let mut values: BTreeMap<i64, Scalar> = BTreeMap::new();
    for n in -window..=window + deg {
        values.insert(n, p.eval(n));
    }
    (-window..=window).all(|n| {
        let mut acc = Scalar::zero();
        for (k, c) in b.terms() {
            acc += &(c * &values[&(n + k)]);
        }
        acc.is_zero()
    })
}

/// A congruence class of bases: all members are `representative * q^{-k}`
/// with `k >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseClass {
    pub representative: Scalar,
    /// `(k, base)` sorted by `k`; the first entry is `(0, representative)`.
    pub members: Vec<(i64, Scalar)>,
}

/// Partitions bases into classes `b q^Z`.
pub fn congruence_classes<'a, I: IntoIterator<Item = &'a Scalar>>(bases: I) -> Vec<BaseClass> {
    // Each class is stored as (anchor, [(exponent relative to anchor, base)]).
    let mut groups: Vec<(Scalar, Vec<(i64, Scalar)>)> = Vec::new();
    'outer: for b in bases {
        for (anchor, members) in groups.iter_mut() {
            if let Ok(Some(k)) = b.q_power_ratio(anchor) {
                if !members.iter().any(|(_, m)| m == b) {
                    members.push((k, b.clone()));
                }
                continue 'outer;
            }
        }
        groups.push((b.clone(), vec![(0, b.clone())]));
    }
    let mut out: Vec<BaseClass> = groups
        .into_iter()
        .map(|(_, members)| {
            let top = members.iter().map(|(k, _)| *k).max().unwrap();
            let mut members: Vec<(i64, Scalar)> =
                members.into_iter().map(|(k, b)| (top - k, b)).collect();
            members.sort();
            BaseClass {
                representative: members[0].1.clone(),
                members,
            }
        })
        .collect();
    out.sort_by(|a, b| a.representative.cmp(&b.representative));
    out
}

/// Recovers a quasipolynomial from consecutive values `data[lo..=hi]`
/// (missing points inside the range count as zero).
///
/// Returns `None` when no annihilator of degree at most `bound` is visible
/// in the data, when the detected recurrence has a zero root, or when its
/// roots are not of the form rational times monomial.
pub fn interpolate_finite(data: &BTreeMap<i64, Scalar>, bound: usize) -> Option<QuasiPolynomial> {
    if data.values().all(Scalar::is_zero) {
        return Some(QuasiPolynomial::zero());
    }
    let lo = *data.keys().next()?;
    let hi = *data.keys().next_back()?;
    let seq: Vec<Scalar> = (lo..=hi)
        .map(|n| data.get(&n).cloned().unwrap_or_default())
        .collect();
    let conn = berlekamp_massey(&seq);
    let l = conn.len() - 1;
    if l > bound || 2 * l > seq.len() || conn[l].is_zero() {
        return None;
    }
    // Characteristic polynomial x^L + c_1 x^{L-1} + ... + c_L.
    let chi = LaurentPoly::from_terms(
        conn.iter()
            .enumerate()
            .map(|(i, c)| ((l - i) as i64, c.clone())),
    );
    let rts = roots(&chi)?;
    // Unknowns: coefficient j of p_b, for j below the multiplicity of b.
    let unknowns: Vec<(Scalar, usize)> = rts
        .iter()
        .flat_map(|(b, k)| (0..*k).map(move |j| (b.clone(), j)))
        .collect();
    let basis = |n: i64, (b, j): &(Scalar, usize)| -> Scalar {
        &Scalar::from_int(n).powi(*j as i64) * &b.powi(n)
    };
    let rows: Vec<Vec<Scalar>> = (0..unknowns.len() as i64)
        .map(|i| unknowns.iter().map(|u| basis(lo + i, u)).collect())
        .collect();
    let rhs: Vec<Scalar> = seq[..unknowns.len()].to_vec();
    let sol = solve(rows, rhs)?;
    let mut out = QuasiPolynomial::zero();
    for ((b, j), v) in unknowns.iter().zip(sol) {
        let mut coeffs = vec![Scalar::zero(); j + 1];
        coeffs[*j] = v;
        out.add_term(b.clone(), coeffs).ok()?;
    }
    for (n, v) in (lo..=hi).zip(&seq) {
        if &out.eval(n) != v {
            return None;
        }
    }
    Some(out)
}

/// Solves a square linear system by Gaussian elimination.
#[allow(clippy::needless_range_loop)]
pub fn solve(mut a: Vec<Vec<Scalar>>, mut b: Vec<Scalar>) -> Option<Vec<Scalar>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].inv().ok()?;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for c in col..n {
                let d = &f * &a[col][c];
                a[r][c] -= &d;
            }
            let d = &f * &b[col];
            b[r] -= &d;
        }
    }
    Some((0..n).map(|i| &b[i] * &a[i][i].inv().unwrap()).collect())
}

impl fmt::Display for QuasiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(b, c)| {
                let p = LaurentPoly::from_terms(
                    c.iter().enumerate().map(|(i, v)| (i as i64, v.clone())),
                );
                format!("[{}]*({})^n", crate::syntax::laurent_string(&p, "n"), b)
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for QuasiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuasiPolynomial({})", self)
    }
}

impl Add for &QuasiPolynomial {
    type Output = QuasiPolynomial;
    fn add(self, rhs: &QuasiPolynomial) -> QuasiPolynomial {
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.add_term(b.clone(), c.clone()).expect("nonzero base");
        }
        out
    }
}

impl Sub for &QuasiPolynomial {
    type Output = QuasiPolynomial;
    fn sub(self, rhs: &QuasiPolynomial) -> QuasiPolynomial {
        self + &-rhs
    }
}

impl Neg for &QuasiPolynomial {
    type Output = QuasiPolynomial;
    fn neg(self) -> QuasiPolynomial {
        self.scale(&Scalar::from_int(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Scalar {
        Scalar::q()
    }

    fn one() -> Scalar {
        Scalar::one()
    }

    fn x_poly() -> Vec<Scalar> {
        vec![Scalar::zero(), one()]
    }

    #[test]
    fn eval_examples() {
        let p = QuasiPolynomial::term(one(), vec![one()]).unwrap();
        assert_eq!(p.eval(5), one());
        let p = QuasiPolynomial::term(q(), vec![one()]).unwrap();
        assert_eq!(p.eval(3), Scalar::q_pow(3));
        let p = QuasiPolynomial::term(one(), x_poly()).unwrap();
        assert_eq!(p.eval(-2), Scalar::from_int(-2));
    }

    #[test]
    fn annihilator_examples() {
        let p = QuasiPolynomial::term(q(), vec![one()]).unwrap();
        assert_eq!(p.min_annihilator(), linear(&q()));
        assert!(QuasiPolynomial::zero().min_annihilator().is_one());
        let p2 = QuasiPolynomial::term(one(), x_poly()).unwrap();
        assert_eq!(p2.min_annihilator(), &linear(&one()) * &linear(&one()));
        assert!(annihilates_window(&linear(&q()), &p, 40));
        assert!(!annihilates_window(&linear(&one()), &p, 40));
        assert!(annihilates_window(&linear(&one()), &QuasiPolynomial::zero(), 40));
    }

    #[test]
    fn scale_bases_examples() {
        let p = QuasiPolynomial::term(one(), vec![one()]).unwrap();
        assert_eq!(
            p.scale_bases(&q()).unwrap(),
            QuasiPolynomial::term(q(), vec![one()]).unwrap()
        );
        let p = QuasiPolynomial::term(q(), x_poly()).unwrap();
        assert_eq!(
            p.scale_bases(&q().inv().unwrap()).unwrap(),
            QuasiPolynomial::term(one(), x_poly()).unwrap()
        );
        assert_eq!(p.scale_bases(&one()).unwrap(), p);
        assert!(p.scale_bases(&Scalar::zero()).is_err());
    }

    #[test]
    fn class_examples() {
        let s = Scalar::s();
        let sq = &s * &q().inv().unwrap();
        let c = congruence_classes([&s, &sq]);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].representative, s);
        assert_eq!(c[0].members.iter().map(|m| m.0).collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(congruence_classes([&one(), &s]).len(), 2);
        let c = congruence_classes([&Scalar::q_pow(2), &Scalar::q_pow(5)]);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].representative, Scalar::q_pow(5));
        assert_eq!(c[0].members.iter().map(|m| m.0).collect::<Vec<_>>(), vec![0, 3]);
    }

    #[test]
    fn jet_examples() {
        let b = one();
        let p = QuasiPolynomial::term(b.clone(), vec![one()]).unwrap();
        assert_eq!(p.jet_at_zero(&b, 0), one());
        let p = QuasiPolynomial::term(b.clone(), x_poly()).unwrap();
        assert_eq!(p.jet_at_zero(&b, 1), one());
        let p = QuasiPolynomial::term(b.clone(), vec![Scalar::zero(), Scalar::zero(), one()])
            .unwrap();
        assert!(p.jet_at_zero(&b, 1).is_zero());
    }

    #[test]
    fn interpolation_examples() {
        let zeros: BTreeMap<i64, Scalar> = (-10..=10).map(|n| (n, Scalar::zero())).collect();
        assert_eq!(interpolate_finite(&zeros, 16), Some(QuasiPolynomial::zero()));
        let geo: BTreeMap<i64, Scalar> = (-10..=10).map(|n| (n, Scalar::q_pow(n))).collect();
        assert_eq!(
            interpolate_finite(&geo, 16),
            Some(QuasiPolynomial::term(q(), vec![one()]).unwrap())
        );
        let mut spike = zeros.clone();
        spike.insert(1, one());
        assert_eq!(interpolate_finite(&spike, 16), None);
    }

    #[test]
    fn interpolation_mixed() {
        let s = Scalar::s();
        let mut p = QuasiPolynomial::term(s.clone(), vec![one(), Scalar::from_int(2)]).unwrap();
        p.add_term(Scalar::from_int(3), vec![q()]).unwrap();
        let data: BTreeMap<i64, Scalar> = (-6..=6).map(|n| (n, p.eval(n))).collect();
        assert_eq!(interpolate_finite(&data, 16), Some(p));
    }
}
