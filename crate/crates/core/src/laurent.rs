//! Laurent polynomials in one variable over [`Scalar`].
//!
//! The variable is printed as `T`; in the operator algebra it stands for the
//! q-shift operator.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::AlgebraError;
use crate::jet::{jet_exp, RmElement};
use crate::scalar::Scalar;

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Scalar>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(0, c)
    }

    /// `c * T^n`.
    pub fn monomial(n: i64, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(n, c);
        }
        LaurentPoly { terms }
    }

    /// `T^n`.
    pub fn power(n: i64) -> Self {
        Self::monomial(n, Scalar::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Scalar)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (n, c) in it {
            p.add_term(n, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0).is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Scalar)> {
        self.terms.iter().map(|(n, c)| (*n, c))
    }

    pub fn coeff(&self, n: i64) -> Scalar {
        self.terms.get(&n).cloned().unwrap_or_default()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, n: i64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(n) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(n, a)| (*n, a * c)).collect(),
        }
    }

    /// Multiplies by `T^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(n, a)| (n + k, a.clone())).collect(),
        }
    }

    /// `f(c T)`: the coefficient of `T^n` is multiplied by `c^n`.
    pub fn scale_arg(&self, c: &Scalar) -> Result<Self, AlgebraError> {
        if c.is_zero() {
            return Err(AlgebraError::ZeroArgument("scale_arg"));
        }
        if c.is_one() {
            return Ok(self.clone());
        }
        let mut terms = BTreeMap::new();
        for (n, a) in &self.terms {
            terms.insert(*n, a * &c.pow(*n)?);
        }
        Ok(LaurentPoly { terms })
    }

    /// `f(q^k T)`.
    pub fn q_shift(&self, k: i64) -> Self {
        if k == 0 {
            return self.clone();
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(n, a)| (*n, a * &Scalar::q_pow(n * k)))
                .collect(),
        }
    }

    /// Coefficient of `T^0`.
    pub fn const_term(&self) -> Scalar {
        self.coeff(0)
    }

    /// Plain evaluation `f(c)`.
    pub fn eval(&self, c: &Scalar) -> Result<Scalar, AlgebraError> {
        if c.is_zero() {
            return Err(AlgebraError::ZeroArgument("eval"));
        }
        let mut acc = Scalar::zero();
        for (n, a) in &self.terms {
            acc += &(a * &c.pow(*n)?);
        }
        Ok(acc)
    }

    /// `f(c q^t)` in `R_m`.
    pub fn jet_eval(&self, c: &Scalar, m: usize) -> Result<RmElement, AlgebraError> {
        if c.is_zero() {
            return Err(AlgebraError::ZeroArgument("jet_eval"));
        }
        let mut acc = RmElement::zero(m);
        for (n, a) in &self.terms {
            let coef = a * &c.pow(*n)?;
            acc = &acc + &jet_exp(*n, m).scale(&coef);
        }
        Ok(acc)
    }

    /// Splits `f = T^k g` with `g` a polynomial having nonzero constant term.
    pub fn strip_monomial(&self) -> (i64, LaurentPoly) {
        match self.min_degree() {
            None => (0, Self::zero()),
            Some(k) => (k, self.shift(-k)),
        }
    }

    /// Makes the leading coefficient 1.
    pub fn monic(&self) -> Self {
        match self.terms.values().next_back() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Polynomial division with remainder; both inputs must have only
    /// nonnegative exponents and `d` must be nonzero.
    fn div_rem(&self, d: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        let dd = d.max_degree().expect("division by zero polynomial");
        let lc_inv = d.coeff(dd).inv().expect("nonzero leading coefficient");
        let mut quo = Self::zero();
        let mut rem = self.clone();
        while let Some(rd) = rem.max_degree() {
            if rd < dd {
                break;
            }
            let c = &rem.coeff(rd) * &lc_inv;
            let t = Self::monomial(rd - dd, c);
            rem = &rem - &(&t * d);
            quo = &quo + &t;
        }
        (quo, rem)
    }

    /// Exact division in the Laurent ring (monomials are units).
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        let (ka, a) = self.strip_monomial();
        let (kb, b) = d.strip_monomial();
        let (quo, rem) = a.div_rem(&b);
        rem.is_zero().then(|| quo.shift(ka - kb))
    }
}

/// Generator of the ideal spanned by `fs` in the Laurent ring, normalized to
/// be monic with nonzero constant term. The zero ideal gives 0.
pub fn ideal_gcd<'a, I: IntoIterator<Item = &'a LaurentPoly>>(fs: I) -> LaurentPoly {
    let mut g = LaurentPoly::zero();
    for f in fs {
        if f.is_zero() {
            continue;
        }
        let (_, mut b) = f.strip_monomial();
        let mut a = g;
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        g = a.strip_monomial().1.monic();
        if g.is_one() {
            break;
        }
    }
    g
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::syntax::write_laurent(f, self)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({})", self)
    }
}

impl From<Scalar> for LaurentPoly {
    fn from(c: Scalar) -> Self {
        LaurentPoly::constant(c)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (n, c) in &rhs.terms {
            r.add_term(*n, c.clone());
        }
        r
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (n, c) in &rhs.terms {
            r.add_term(*n, -c);
        }
        r
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut r = LaurentPoly::zero();
        for (n, a) in &self.terms {
            for (k, b) in &rhs.terms {
                r.add_term(n + k, a * b);
            }
        }
        r
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(n, c)| (*n, -c)).collect(),
        }
    }
}
