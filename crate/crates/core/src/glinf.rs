//! Half-integer indexed matrices over `R_m` with the central extension
//! `C(A, B) = Str([J, A] B)`, `J = sum_{r <= 0} E_rr`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::AlgebraError;
use crate::half::Half;
use crate::jet::RmElement;
use crate::scalar::Scalar;
use crate::superq::Sector;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GlInfElement {
    order: usize,
    entries: BTreeMap<(Half, Half), RmElement>,
    central: RmElement,
}

/// Parity of `E_ij`: 0 when `i - j` is an integer.
pub fn entry_parity(i: Half, j: Half) -> u8 {
    u8::from(!(i - j).is_integer())
}

fn chi_nonpositive(i: Half) -> i64 {
    i64::from(i <= Half::ZERO)
}

impl GlInfElement {
    pub fn zero(m: usize) -> Self {
        GlInfElement {
            order: m,
            entries: BTreeMap::new(),
            central: RmElement::zero(m),
        }
    }

    /// `a E_ij`.
    pub fn unit(i: Half, j: Half, a: RmElement) -> Self {
        let mut x = Self::zero(a.order());
        x.add_entry(i, j, a);
        x
    }

    pub fn central_only(c: RmElement) -> Self {
        let mut x = Self::zero(c.order());
        x.central = c;
        x
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn add_entry(&mut self, i: Half, j: Half, a: RmElement) {
        assert_eq!(a.order(), self.order, "jet orders differ");
        if a.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.entries.entry((i, j)) {
            Entry::Vacant(v) => {
                v.insert(a);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &a;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_central(&mut self, c: &RmElement) {
        self.central = &self.central + c;
    }

    pub fn entry(&self, i: Half, j: Half) -> RmElement {
        self.entries
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| RmElement::zero(self.order))
    }

    pub fn entries(&self) -> impl Iterator<Item = (Half, Half, &RmElement)> {
        self.entries.iter().map(|((i, j), a)| (*i, *j, a))
    }

    pub fn central(&self) -> &RmElement {
        &self.central
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty() && self.central.is_zero()
    }

    pub fn scale(&self, c: &RmElement) -> Self {
        let mut out = Self::zero(self.order);
        for ((i, j), a) in &self.entries {
            out.add_entry(*i, *j, a * c);
        }
        out.central = &self.central * c;
        out
    }

    /// Supercommutator plus the central term.
    pub fn bracket(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.order != other.order {
            return Err(AlgebraError::OrderMismatch(self.order, other.order));
        }
        let mut out = Self::zero(self.order);
        // Index rows of `other` and columns of `other` for the two products.
        let mut by_row: BTreeMap<Half, Vec<(Half, &RmElement)>> = BTreeMap::new();
        let mut by_col: BTreeMap<Half, Vec<(Half, &RmElement)>> = BTreeMap::new();
        for ((k, l), b) in &other.entries {
            by_row.entry(*k).or_default().push((*l, b));
            by_col.entry(*l).or_default().push((*k, b));
        }
        let mut central = RmElement::zero(self.order);
        for ((i, j), a) in &self.entries {
            let p = entry_parity(*i, *j);
            // a E_ij * b E_jl
            if let Some(row) = by_row.get(j) {
                for (l, b) in row {
                    out.add_entry(*i, *l, a * b);
                    if *l == *i {
                        // Str([J, a E_ij] b E_ji)
                        let w = (chi_nonpositive(*i) - chi_nonpositive(*j)) * i.sign();
                        if w != 0 {
                            central = &central + &(a * b).scale(&Scalar::from_int(w));
                        }
                    }
                }
            }
            // -(-1)^{pp'} b E_ki * a E_ij
            if let Some(col) = by_col.get(i) {
                for (k, b) in col {
                    let pp = p * entry_parity(*k, *i);
                    let prod = a * b;
                    if pp == 1 {
                        out.add_entry(*k, *j, prod);
                    } else {
                        out.add_entry(*k, *j, -&prod);
                    }
                }
            }
        }
        out.central = central;
        Ok(out)
    }

    /// Supertrace `sum_r (-1)^{2r} a_rr`.
    pub fn supertrace(&self) -> RmElement {
        let mut acc = RmElement::zero(self.order);
        for ((i, j), a) in &self.entries {
            if i == j {
                acc = if i.is_integer() { &acc + a } else { &acc - a };
            }
        }
        acc
    }

    /// Decomposition by `j - i`; the central part has degree 0.
    pub fn principal_degree(&self) -> BTreeMap<Half, GlInfElement> {
        let mut out: BTreeMap<Half, GlInfElement> = BTreeMap::new();
        for ((i, j), a) in &self.entries {
            out.entry(*j - *i)
                .or_insert_with(|| GlInfElement::zero(self.order))
                .add_entry(*i, *j, a.clone());
        }
        if !self.central.is_zero() {
            out.entry(Half::ZERO)
                .or_insert_with(|| GlInfElement::zero(self.order))
                .central = self.central.clone();
        }
        out
    }

    /// `Some(d)` when every entry has `j - i = d` and there is no central part.
    pub fn homogeneous_degree(&self) -> Option<Half> {
        let degs: BTreeSet<Half> = self.entries.keys().map(|(i, j)| *j - *i).collect();
        if degs.len() == 1 && self.central.is_zero() {
            degs.into_iter().next()
        } else {
            None
        }
    }
}

/// The position of `E_ij M_sector` among half-integer indices.
pub fn sector_map(i: i64, j: i64, sector: Sector) -> (Half, Half) {
    let (i, j) = (Half::from_int(i), Half::from_int(j));
    match sector {
        Sector::E11 => (i, j),
        Sector::E12 => (i, j - Half::HALF),
        Sector::E21 => (i - Half::HALF, j),
        Sector::E22 => (i - Half::HALF, j - Half::HALF),
    }
}

/// Witness `s` with `[A, E_{s-1/2, s}] != 0`, searched over `s` in
/// `[lo, hi]` (half-integer steps).
pub fn sp2_witness(a: &GlInfElement, lo: Half, hi: Half) -> Option<Half> {
    let mut s = lo;
    while s <= hi {
        let e = GlInfElement::unit(s - Half::HALF, s, RmElement::one(a.order()));
        if !a.bracket(&e).expect("same order").is_zero() {
            return Some(s);
        }
        s = s + Half::HALF;
    }
    None
}

/// Window of `s` values for [`sp2_witness`]: the support of `A` widened by
/// `margin` on both sides.
pub fn sp2_window(a: &GlInfElement, margin: Half) -> (Half, Half) {
    let idx: Vec<Half> = a.entries().flat_map(|(i, j, _)| [i, j]).collect();
    let lo = idx.iter().min().copied().unwrap_or(Half::ZERO);
    let hi = idx.iter().max().copied().unwrap_or(Half::ZERO);
    (lo - margin, hi + margin)
}

impl fmt::Display for GlInfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .entries
            .iter()
            .map(|((i, j), a)| format!("({})*E[{},{}]", a, i, j))
            .collect();
        if !self.central.is_zero() {
            parts.push(format!("({})*C", self.central));
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for GlInfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GlInf[{}]({})", self.order, self)
    }
}

impl Add for &GlInfElement {
    type Output = GlInfElement;
    fn add(self, rhs: &GlInfElement) -> GlInfElement {
        let mut out = self.clone();
        for ((i, j), a) in &rhs.entries {
            out.add_entry(*i, *j, a.clone());
        }
        out.central = &out.central + &rhs.central;
        out
    }
}

impl Neg for &GlInfElement {
    type Output = GlInfElement;
    fn neg(self) -> GlInfElement {
        GlInfElement {
            order: self.order,
            entries: self.entries.iter().map(|(k, a)| (*k, -a)).collect(),
            central: -&self.central,
        }
    }
}

impl Sub for &GlInfElement {
    type Output = GlInfElement;
    fn sub(self, rhs: &GlInfElement) -> GlInfElement {
        self + &-rhs
    }
}

// ------------------------------------------------------------ half-diagonal

/// `sum_j a_j(t) E_{j+1/2, j}` over all half-integers `j`, with cofinitely
/// many `a_j` equal to a default that depends on whether `j` is an integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfDiagonal {
    pub default_int: RmElement,
    pub default_half: RmElement,
    pub exceptions: BTreeMap<Half, RmElement>,
}

/// A principal ideal of `R_m`: zero, or `t^v R_m` with `v <= m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RmIdeal {
    Zero,
    Power(usize),
}

impl RmIdeal {
    /// The ideal generated by `a`; units give `Power(0)`.
    pub fn generated_by(a: &RmElement) -> RmIdeal {
        match a.valuation() {
            None => RmIdeal::Zero,
            Some(v) => RmIdeal::Power(v),
        }
    }

    /// Codimension in `R_m`.
    pub fn codimension(self, m: usize) -> usize {
        match self {
            RmIdeal::Zero => m + 1,
            RmIdeal::Power(v) => v,
        }
    }
}

impl fmt::Display for RmIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RmIdeal::Zero => f.write_str("0"),
            RmIdeal::Power(0) => f.write_str("R"),
            RmIdeal::Power(1) => f.write_str("t*R"),
            RmIdeal::Power(v) => write!(f, "t^{}*R", v),
        }
    }
}

/// Per-position ideals: defaults by parity plus the exceptional positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfDiagonalIdeals {
    pub default_int: RmIdeal,
    pub default_half: RmIdeal,
    pub exceptions: BTreeMap<Half, RmIdeal>,
}

impl HalfDiagonal {
    pub fn constant(a: RmElement) -> Self {
        HalfDiagonal {
            default_int: a.clone(),
            default_half: a,
            exceptions: BTreeMap::new(),
        }
    }

    pub fn coefficient(&self, j: Half) -> &RmElement {
        self.exceptions.get(&j).unwrap_or(if j.is_integer() {
            &self.default_int
        } else {
            &self.default_half
        })
    }

    /// True iff all but finitely many `a_j` are nonzero constants.
    pub fn is_nondegenerate(&self) -> bool {
        let ok = |a: &RmElement| a.is_constant() && !a.is_zero();
        ok(&self.default_int) && ok(&self.default_half)
    }

    /// The degree `-1/2` slice of the minimal parabolic: position-wise
    /// principal ideals `(a_j)`.
    pub fn g0a(&self) -> HalfDiagonalIdeals {
        HalfDiagonalIdeals {
            default_int: RmIdeal::generated_by(&self.default_int),
            default_half: RmIdeal::generated_by(&self.default_half),
            exceptions: self
                .exceptions
                .iter()
                .map(|(j, a)| (*j, RmIdeal::generated_by(a)))
                .collect(),
        }
    }

    /// The finite part `sum_{lo <= j <= hi} a_j E_{j+1/2, j}`.
    pub fn window(&self, lo: Half, hi: Half) -> GlInfElement {
        let mut out = GlInfElement::zero(self.default_int.order());
        let mut j = lo;
        while j <= hi {
            out.add_entry(j + Half::HALF, j, self.coefficient(j).clone());
            j = j + Half::HALF;
        }
        out
    }
}

// ------------------------------------------------------------------ weights

/// Labels indexed by integers: finitely many exceptions, a constant value
/// for keys `<= 0` (`neg_tail`) and one for keys `> 0` (`pos_tail`).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LabelSeq {
    pub neg_tail: Scalar,
    pub pos_tail: Scalar,
    pub except: BTreeMap<i64, Scalar>,
}

impl LabelSeq {
    pub fn get(&self, k: i64) -> Scalar {
        match self.except.get(&k) {
            Some(v) => v.clone(),
            None if k <= 0 => self.neg_tail.clone(),
            None => self.pos_tail.clone(),
        }
    }

    /// Drops exceptions equal to the tail value at their key.
    pub fn normalized(&self) -> Self {
        let mut out = LabelSeq {
            neg_tail: self.neg_tail.clone(),
            pos_tail: self.pos_tail.clone(),
            except: BTreeMap::new(),
        };
        for (k, v) in &self.except {
            let tail = if *k <= 0 { &self.neg_tail } else { &self.pos_tail };
            if v != tail {
                out.except.insert(*k, v.clone());
            }
        }
        out
    }

    /// Smallest and largest exceptional key.
    pub fn key_range(&self) -> Option<(i64, i64)> {
        Some((*self.except.keys().next()?, *self.except.keys().next_back()?))
    }
}

/// Highest weight of `gl_{inf|inf}[m]`: charges `c_l = lambda(t^l)` and
/// labels `lambda_k^{(l)} = lambda(t^l E_kk)`.
///
/// `integral[l]` holds `lambda_k^{(l)}` for integer `k`; `half[l]` holds
/// `lambda_{k-1/2}^{(l)}` under key `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlWeight {
    pub m: usize,
    pub charges: Vec<Scalar>,
    pub integral: Vec<LabelSeq>,
    pub half: Vec<LabelSeq>,
}

/// One failure of `lambda_k + lambda_{k-1/2} + delta_{k,1/2} c_l = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub l: usize,
    pub k: Half,
    pub value: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasifiniteReport {
    pub quasifinite: bool,
    /// Violations inside the scanned window, in order of `(l, k)`.
    pub violations: Vec<Violation>,
    /// `(l, side)` pairs whose tails violate the relation forever; side is
    /// `-1` or `+1`.
    pub tail_failures: Vec<(usize, i8)>,
}

impl GlWeight {
    pub fn zero(m: usize) -> Self {
        GlWeight {
            m,
            charges: vec![Scalar::zero(); m + 1],
            integral: vec![LabelSeq::default(); m + 1],
            half: vec![LabelSeq::default(); m + 1],
        }
    }

    pub fn validate(&self) -> Result<(), AlgebraError> {
        let n = self.m + 1;
        if self.charges.len() != n || self.integral.len() != n || self.half.len() != n {
            return Err(AlgebraError::Invalid(format!(
                "weight of order {} needs {} charges and label sequences",
                self.m, n
            )));
        }
        Ok(())
    }

    /// `lambda_k^{(l)}`.
    pub fn label(&self, l: usize, k: Half) -> Scalar {
        match k.as_int() {
            Some(n) => self.integral[l].get(n),
            None => self.half[l].get(k.ceil()),
        }
    }

    /// `lambda_k^{(l)} + lambda_{k-1/2}^{(l)} + delta_{k,1/2} c_l`.
    pub fn relation(&self, l: usize, k: Half) -> Scalar {
        let mut v = &self.label(l, k) + &self.label(l, k - Half::HALF);
        if k == Half::HALF {
            v += &self.charges[l];
        }
        v
    }

    /// Range of half-integers outside which every relation equals its tail
    /// value.
    pub fn scan_window(&self) -> (Half, Half) {
        let mut lo = 0i64;
        let mut hi = 0i64;
        for seq in self.integral.iter().chain(&self.half) {
            if let Some((a, b)) = seq.key_range() {
                lo = lo.min(a);
                hi = hi.max(b);
            }
        }
        (Half::from_int(lo - 1), Half::from_int(hi + 1))
    }

    /// Quasifiniteness: the relations hold for all but finitely many `k`.
    pub fn quasifinite(&self) -> QuasifiniteReport {
        let mut tail_failures = Vec::new();
        for l in 0..=self.m {
            if !(&self.integral[l].neg_tail + &self.half[l].neg_tail).is_zero() {
                tail_failures.push((l, -1));
            }
            if !(&self.integral[l].pos_tail + &self.half[l].pos_tail).is_zero() {
                tail_failures.push((l, 1));
            }
        }
        let (lo, hi) = self.scan_window();
        let mut violations = Vec::new();
        for l in 0..=self.m {
            let mut k = lo;
            while k <= hi {
                let v = self.relation(l, k);
                if !v.is_zero() {
                    violations.push(Violation { l, k, value: v });
                }
                k = k + Half::HALF;
            }
        }
        QuasifiniteReport {
            quasifinite: tail_failures.is_empty(),
            violations,
            tail_failures,
        }
    }

    /// Component-wise sum of two weights of the same order.
    pub fn add(&self, other: &GlWeight) -> Result<GlWeight, AlgebraError> {
        if self.m != other.m {
            return Err(AlgebraError::OrderMismatch(self.m, other.m));
        }
        let add_seq = |a: &LabelSeq, b: &LabelSeq| {
            let keys: BTreeSet<i64> = a.except.keys().chain(b.except.keys()).copied().collect();
            LabelSeq {
                neg_tail: &a.neg_tail + &b.neg_tail,
                pos_tail: &a.pos_tail + &b.pos_tail,
                except: keys.into_iter().map(|k| (k, &a.get(k) + &b.get(k))).collect(),
            }
            .normalized()
        };
        Ok(GlWeight {
            m: self.m,
            charges: self
                .charges
                .iter()
                .zip(&other.charges)
                .map(|(a, b)| a + b)
                .collect(),
            integral: self
                .integral
                .iter()
                .zip(&other.integral)
                .map(|(a, b)| add_seq(a, b))
                .collect(),
            half: self
                .half
                .iter()
                .zip(&other.half)
                .map(|(a, b)| add_seq(a, b))
                .collect(),
        })
    }

    /// Same weight with redundant exceptions removed.
    pub fn normalized(&self) -> GlWeight {
        GlWeight {
            m: self.m,
            charges: self.charges.clone(),
            integral: self.integral.iter().map(LabelSeq::normalized).collect(),
            half: self.half.iter().map(LabelSeq::normalized).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(twice: i64) -> Half {
        Half::from_twice(twice)
    }

    fn one(m: usize) -> RmElement {
        RmElement::one(m)
    }

    #[test]
    fn central_examples() {
        let a = GlInfElement::unit(h(2), h(0), one(0));
        let b = GlInfElement::unit(h(0), h(2), one(0));
        assert_eq!(
            a.bracket(&b).unwrap().central(),
            &RmElement::constant(Scalar::from_int(-1), 0)
        );
        let a = GlInfElement::unit(h(1), h(0), one(0));
        let b = GlInfElement::unit(h(0), h(1), one(0));
        assert_eq!(a.bracket(&b).unwrap().central(), &one(0));
        let a = GlInfElement::unit(h(4), h(2), one(0));
        let b = GlInfElement::unit(h(2), h(4), one(0));
        assert!(a.bracket(&b).unwrap().central().is_zero());
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let a = GlInfElement::unit(h(0), h(0), one(0));
        let b = GlInfElement::unit(h(0), h(0), one(1));
        assert!(a.bracket(&b).is_err());
    }

    #[test]
    fn supertrace_examples() {
        assert!(GlInfElement::unit(h(0), h(0), one(0)).supertrace().is_one());
        assert_eq!(
            GlInfElement::unit(h(1), h(1), one(0)).supertrace(),
            RmElement::constant(Scalar::from_int(-1), 0)
        );
        assert!(GlInfElement::unit(h(0), h(2), one(0)).supertrace().is_zero());
    }

    #[test]
    fn sector_map_examples() {
        assert_eq!(sector_map(3, 5, Sector::E22), (h(5), h(9)));
        assert_eq!(sector_map(3, 5, Sector::E12), (h(6), h(9)));
        assert_eq!(sector_map(3, 5, Sector::E11), (h(6), h(10)));
    }

    #[test]
    fn degree_examples() {
        let a = GlInfElement::unit(h(0), h(2), one(0));
        assert!(a.principal_degree().contains_key(&Half::ONE));
        let b = GlInfElement::unit(h(1), h(0), one(0));
        assert!(b.principal_degree().contains_key(&h(-1)));
        let c = GlInfElement::central_only(one(0));
        assert!(c.principal_degree().contains_key(&Half::ZERO));
    }

    #[test]
    fn quasifinite_examples() {
        let w = GlWeight::zero(0);
        let r = w.quasifinite();
        assert!(r.quasifinite && r.violations.is_empty());
        let mut w = GlWeight::zero(0);
        w.charges[0] = Scalar::one();
        let r = w.quasifinite();
        assert!(r.quasifinite);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].k, Half::HALF);
        let mut w = GlWeight::zero(0);
        w.integral[0].neg_tail = Scalar::one();
        w.integral[0].pos_tail = Scalar::one();
        assert!(!w.quasifinite().quasifinite);
    }

    #[test]
    fn nondegenerate_examples() {
        assert!(HalfDiagonal::constant(one(1)).is_nondegenerate());
        assert!(!HalfDiagonal::constant(RmElement::zero(1)).is_nondegenerate());
        let t = RmElement::from_coeffs(vec![Scalar::zero(), Scalar::one()], 1);
        assert!(!HalfDiagonal::constant(t).is_nondegenerate());
    }

    #[test]
    fn g0a_examples() {
        let d = HalfDiagonal::constant(one(2));
        assert_eq!(d.g0a().default_int, RmIdeal::Power(0));
        let mut d = HalfDiagonal::constant(one(2));
        let t = RmElement::from_coeffs(vec![Scalar::zero(), Scalar::one()], 2);
        d.exceptions.insert(Half::ZERO, t);
        assert_eq!(d.g0a().exceptions[&Half::ZERO], RmIdeal::Power(1));
        d.exceptions.insert(Half::ZERO, RmElement::zero(2));
        assert_eq!(d.g0a().exceptions[&Half::ZERO], RmIdeal::Zero);
    }
}
