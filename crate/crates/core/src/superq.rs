//! The superalgebra of 2x2 quantum pseudo-differential supermatrices and its
//! central extension.
//!
//! An element is a finite sum of terms `z^n f(T) E_ij` plus a multiple of the
//! central element `C`. The shift operator satisfies `T z = q z T`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::half::Half;
use crate::laurent::LaurentPoly;
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Sector {
    E11,
    E12,
    E21,
    E22,
}

impl Sector {
    pub const ALL: [Sector; 4] = [Sector::E11, Sector::E12, Sector::E21, Sector::E22];

    pub fn new(i: u8, j: u8) -> Option<Sector> {
        match (i, j) {
            (1, 1) => Some(Sector::E11),
            (1, 2) => Some(Sector::E12),
            (2, 1) => Some(Sector::E21),
            (2, 2) => Some(Sector::E22),
            _ => None,
        }
    }

    pub fn row(self) -> u8 {
        match self {
            Sector::E11 | Sector::E12 => 1,
            Sector::E21 | Sector::E22 => 2,
        }
    }

    pub fn col(self) -> u8 {
        match self {
            Sector::E11 | Sector::E21 => 1,
            Sector::E12 | Sector::E22 => 2,
        }
    }

    /// 0 for the diagonal sectors, 1 for the off-diagonal ones.
    pub fn parity(self) -> u8 {
        u8::from(self.row() != self.col())
    }

    /// `E_ij E_rs = delta_jr E_is`.
    pub fn compose(self, other: Sector) -> Option<Sector> {
        (self.col() == other.row()).then(|| Sector::new(self.row(), other.col()).unwrap())
    }

    /// The sector `E_ji`.
    pub fn transpose(self) -> Sector {
        Sector::new(self.col(), self.row()).unwrap()
    }

    pub fn name(self) -> &'static str {
        match self {
            Sector::E11 => "E11",
            Sector::E12 => "E12",
            Sector::E21 => "E21",
            Sector::E22 => "E22",
        }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SuperQElement {
    terms: BTreeMap<(i64, Sector), LaurentPoly>,
    central: Scalar,
}

/// A basis vector `z^k e_c` of the superline `C[z, 1/z]^{1|1}`, `c` in {1, 2}.
pub type LineBasis = (i64, u8);

/// Finite combination of superline basis vectors.
pub type LineVector = BTreeMap<LineBasis, Scalar>;

impl SuperQElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c * C`.
    pub fn central(c: Scalar) -> Self {
        SuperQElement {
            terms: BTreeMap::new(),
            central: c,
        }
    }

    /// `z^n f(T) E_sector`.
    pub fn term(n: i64, f: LaurentPoly, sector: Sector) -> Self {
        let mut x = Self::zero();
        x.add_term(n, sector, f);
        x
    }

    /// `f(T) E_sector`.
    pub fn diag(f: LaurentPoly, sector: Sector) -> Self {
        Self::term(0, f, sector)
    }

    /// `z^n f(T) (E11 + E22)`.
    pub fn identity_term(n: i64, f: LaurentPoly) -> Self {
        let mut x = Self::term(n, f.clone(), Sector::E11);
        x.add_term(n, Sector::E22, f);
        x
    }

    pub fn add_term(&mut self, n: i64, sector: Sector, f: LaurentPoly) {
        if f.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((n, sector)) {
            Entry::Vacant(v) => {
                v.insert(f);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &f;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_central(&mut self, c: &Scalar) {
        self.central += c;
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.central.is_zero()
    }

    pub fn central_part(&self) -> &Scalar {
        &self.central
    }

    /// The element with its central part dropped.
    pub fn without_central(&self) -> Self {
        SuperQElement {
            terms: self.terms.clone(),
            central: Scalar::zero(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, Sector, &LaurentPoly)> {
        self.terms.iter().map(|((n, s), f)| (*n, *s, f))
    }

    pub fn coeff(&self, n: i64, sector: Sector) -> LaurentPoly {
        self.terms.get(&(n, sector)).cloned().unwrap_or_default()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SuperQElement {
            terms: self
                .terms
                .iter()
                .map(|(k, f)| (*k, f.scale(c)))
                .collect(),
            central: &self.central * c,
        }
    }

    /// Parity when homogeneous: `Some(0)` even, `Some(1)` odd, `None` mixed.
    /// The zero element counts as even.
    pub fn parity(&self) -> Option<u8> {
        let odd_terms = self.terms.keys().filter(|(_, s)| s.parity() == 1).count();
        if odd_terms == 0 {
            Some(0)
        } else if odd_terms == self.terms.len() && self.central.is_zero() {
            Some(1)
        } else {
            None
        }
    }

    /// Splits into (even part including `C`, odd part).
    pub fn parity_split(&self) -> (Self, Self) {
        let mut even = Self::central(self.central.clone());
        let mut odd = Self::zero();
        for ((n, s), f) in &self.terms {
            let target = if s.parity() == 0 { &mut even } else { &mut odd };
            target.terms.insert((*n, *s), f.clone());
        }
        (even, odd)
    }

    /// Associative product; central parts are ignored.
    pub fn assoc_mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((n, a), f) in &self.terms {
            for ((m, b), g) in &other.terms {
                if let Some(s) = a.compose(*b) {
                    out.add_term(n + m, s, &f.q_shift(*m) * g);
                }
            }
        }
        out
    }

    /// Superbracket of the central extension.
    pub fn bracket(&self, other: &Self) -> Self {
        let (x0, x1) = self.parity_split();
        let (y0, y1) = other.parity_split();
        let mut out = Self::zero();
        for (x, px) in [(&x0, 0u8), (&x1, 1)] {
            for (y, py) in [(&y0, 0u8), (&y1, 1)] {
                if x.terms.is_empty() || y.terms.is_empty() {
                    continue;
                }
                let xy = x.assoc_mul(y);
                let yx = y.assoc_mul(x);
                out = &out + &xy;
                if px * py == 1 {
                    out = &out + &yx;
                } else {
                    out = &out - &yx;
                }
            }
        }
        out.central = psi(self, other);
        out
    }

    /// `Str_0`: constant term of the `E11` part minus that of the `E22` part,
    /// in z-degree 0.
    pub fn str0(&self) -> Scalar {
        &self.coeff(0, Sector::E11).const_term() - &self.coeff(0, Sector::E22).const_term()
    }

    /// The automorphism `f(T) -> f(qT)` applied to every Laurent part.
    pub fn sigma(&self) -> Self {
        SuperQElement {
            terms: self
                .terms
                .iter()
                .map(|(k, f)| (*k, f.q_shift(1)))
                .collect(),
            central: self.central.clone(),
        }
    }

    /// Principal degree of the term `z^n E_sector`.
    pub fn term_degree(n: i64, sector: Sector) -> Half {
        match sector {
            Sector::E11 | Sector::E22 => Half::from_int(n),
            Sector::E12 => Half::from_twice(2 * n + 1),
            Sector::E21 => Half::from_twice(2 * n - 1),
        }
    }

    /// Decomposition by principal degree; `C` has degree 0.
    pub fn grade_decompose(&self) -> BTreeMap<Half, SuperQElement> {
        let mut out: BTreeMap<Half, SuperQElement> = BTreeMap::new();
        for ((n, s), f) in &self.terms {
            out.entry(Self::term_degree(*n, *s))
                .or_default()
                .terms
                .insert((*n, *s), f.clone());
        }
        if !self.central.is_zero() {
            out.entry(Half::ZERO).or_default().central = self.central.clone();
        }
        out
    }

    /// Action on the basis vector `z^k e_c`: `z^n f(T) E_ij` sends `z^k e_j`
    /// to `f(q^k) z^{k+n} e_i`.
    pub fn act_on_superline(&self, v: LineBasis) -> LineVector {
        let (k, c) = v;
        let mut out = LineVector::new();
        for ((n, s), f) in &self.terms {
            if s.col() != c {
                continue;
            }
            let val = f.eval(&Scalar::q_pow(k)).expect("q^k is nonzero");
            add_line(&mut out, (k + n, s.row()), val);
        }
        out
    }

    /// Action on a finite combination of basis vectors.
    pub fn act_on_vector(&self, v: &LineVector) -> LineVector {
        let mut out = LineVector::new();
        for (b, c) in v {
            for (b2, c2) in self.act_on_superline(*b) {
                add_line(&mut out, b2, &c2 * c);
            }
        }
        out
    }
}

fn add_line(v: &mut LineVector, b: LineBasis, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let e = v.entry(b).or_default();
    *e += &c;
    if e.is_zero() {
        v.remove(&b);
    }
}

/// The 2-cocycle defining the central extension.
///
/// Only pairs of terms with z-degrees `r` and `-r` contribute. For `r > 0`,
/// `psi(z^r f E_ij, z^-r g E_kl) = -(-1)^i delta_jk delta_il
/// sum_{m=0}^{r-1} (f(q^{m-r} T) g(q^m T))_0`; the opposite order follows
/// by super-antisymmetry.
pub fn psi(x: &SuperQElement, y: &SuperQElement) -> Scalar {
    let mut acc = Scalar::zero();
    for ((r, a), f) in &x.terms {
        if *r == 0 {
            continue;
        }
        for ((s, b), g) in &y.terms {
            if *s != -r || a.col() != b.row() || a.row() != b.col() {
                continue;
            }
            if *r > 0 {
                acc += &psi_positive(*r, *a, f, g);
            } else {
                // psi(x, y) = -(-1)^{|x||y|} psi(y, x), and both terms share a parity.
                let v = psi_positive(*s, *b, g, f);
                if a.parity() == 1 {
                    acc += &v;
                } else {
                    acc -= &v;
                }
            }
        }
    }
    acc
}

fn psi_positive(r: i64, a: Sector, f: &LaurentPoly, g: &LaurentPoly) -> Scalar {
    let mut sum = Scalar::zero();
    for m in 0..r {
        let lhs = f.q_shift(m - r);
        let rhs = g.q_shift(m);
        // Constant term of the product without forming it.
        for (n, c) in lhs.terms() {
            let d = rhs.coeff(-n);
            if !d.is_zero() {
                sum += &(c * &d);
            }
        }
    }
    if a.row() == 1 {
        sum
    } else {
        -sum
    }
}

impl fmt::Display for SuperQElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::syntax::write_element(f, self)
    }
}

impl fmt::Debug for SuperQElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperQ({})", self)
    }
}

impl Add for &SuperQElement {
    type Output = SuperQElement;
    fn add(self, rhs: &SuperQElement) -> SuperQElement {
        let mut r = self.clone();
        for ((n, s), f) in &rhs.terms {
            r.add_term(*n, *s, f.clone());
        }
        r.central += &rhs.central;
        r
    }
}

impl Sub for &SuperQElement {
    type Output = SuperQElement;
    fn sub(self, rhs: &SuperQElement) -> SuperQElement {
        self + &-rhs
    }
}

impl Neg for &SuperQElement {
    type Output = SuperQElement;
    fn neg(self) -> SuperQElement {
        SuperQElement {
            terms: self.terms.iter().map(|(k, f)| (*k, -f)).collect(),
            central: -&self.central,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: i64) -> LaurentPoly {
        LaurentPoly::power(n)
    }

    fn one() -> LaurentPoly {
        LaurentPoly::one()
    }

    #[test]
    fn product_examples() {
        let x = SuperQElement::term(1, t(1), Sector::E11);
        let y = SuperQElement::term(2, t(3), Sector::E11);
        let expected = SuperQElement::term(3, t(4).scale(&Scalar::q_pow(2)), Sector::E11);
        assert_eq!(x.assoc_mul(&y), expected);
        let e12 = SuperQElement::diag(one(), Sector::E12);
        let e21 = SuperQElement::diag(one(), Sector::E21);
        assert!(e12.assoc_mul(&e12).is_zero());
        assert_eq!(e12.assoc_mul(&e21), SuperQElement::diag(one(), Sector::E11));
    }

    #[test]
    fn bracket_examples() {
        let x = SuperQElement::term(1, t(1), Sector::E11);
        let y = SuperQElement::term(-1, t(-1), Sector::E11);
        assert_eq!(x.bracket(&y), SuperQElement::central(Scalar::q_pow(-1)));
        let e12 = SuperQElement::diag(one(), Sector::E12);
        assert!(e12.bracket(&e12).is_zero());
        let e11 = SuperQElement::diag(one(), Sector::E11);
        assert_eq!(e11.bracket(&e12), e12);
    }

    #[test]
    fn str0_examples() {
        let mut x = SuperQElement::diag(t(2), Sector::E11);
        x.add_term(0, Sector::E22, &LaurentPoly::constant(Scalar::from_int(3)) + &t(-1));
        assert_eq!(x.str0(), Scalar::from_int(-3));
        assert!(SuperQElement::diag(one(), Sector::E12).str0().is_zero());
        assert!(SuperQElement::central(Scalar::one()).str0().is_zero());
    }

    #[test]
    fn psi_examples() {
        let x = SuperQElement::term(1, t(1), Sector::E11);
        let y = SuperQElement::term(-1, t(-1), Sector::E11);
        assert_eq!(psi(&x, &y), Scalar::q_pow(-1));
        let a = SuperQElement::term(1, one(), Sector::E12);
        let b = SuperQElement::term(1, one(), Sector::E21);
        assert!(psi(&a, &b).is_zero());
        let c = SuperQElement::term(2, one(), Sector::E11);
        let d = SuperQElement::term(-2, one(), Sector::E11);
        assert_eq!(psi(&c, &d), Scalar::from_int(2));
        assert_eq!(psi(&d, &c), Scalar::from_int(-2));
    }

    #[test]
    fn sigma_examples() {
        let x = SuperQElement::diag(t(1), Sector::E11);
        assert_eq!(x.sigma(), SuperQElement::diag(t(1).scale(&Scalar::q()), Sector::E11));
        let y = SuperQElement::diag(one(), Sector::E22);
        assert_eq!(y.sigma(), y);
        let z = SuperQElement::term(1, t(-1), Sector::E21);
        assert_eq!(
            z.sigma(),
            SuperQElement::term(1, t(-1).scale(&Scalar::q_pow(-1)), Sector::E21)
        );
    }

    #[test]
    fn grade_examples() {
        let mut x = SuperQElement::term(2, t(1), Sector::E11);
        x.add_term(2, Sector::E22, one());
        let g = x.grade_decompose();
        assert_eq!(g.len(), 1);
        assert_eq!(g[&Half::from_int(2)], x);
        let y = SuperQElement::term(3, one(), Sector::E12);
        assert!(y.grade_decompose().contains_key(&Half::from_twice(7)));
        let z = SuperQElement::term(3, one(), Sector::E21);
        assert!(z.grade_decompose().contains_key(&Half::from_twice(5)));
    }

    #[test]
    fn superline_examples() {
        let shift = SuperQElement::identity_term(0, t(1));
        for n in -3..=3 {
            let v = shift.act_on_superline((n, 1));
            assert_eq!(v, LineVector::from([((n, 1), Scalar::q_pow(n))]));
        }
        let x = SuperQElement::term(1, t(2), Sector::E11);
        assert_eq!(
            x.act_on_superline((3, 1)),
            LineVector::from([((4, 1), Scalar::q_pow(6))])
        );
        let e21 = SuperQElement::diag(one(), Sector::E21);
        assert_eq!(
            e21.act_on_superline((5, 1)),
            LineVector::from([((5, 2), Scalar::one())])
        );
    }
}
