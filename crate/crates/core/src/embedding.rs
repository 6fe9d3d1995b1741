//! Embeddings of the extended superalgebra into `gl_{inf|inf}[m]`.
//!
//! `z^k f(T) E_11` maps to `sum_j f(s q^{-j+t}) E_{j-k, j}`, and likewise for
//! the other sectors with the row and/or column shifted by `-1/2`. Entries
//! are jets in `R_m`; `q^t` is expanded with [`jet_exp`].

use std::collections::BTreeMap;

use crate::error::AlgebraError;
use crate::glinf::{entry_parity, GlInfElement};
use crate::half::Half;
use crate::jet::{jet_exp, RmElement};
use crate::laurent::LaurentPoly;
use crate::scalar::Scalar;
use crate::superq::{Sector, SuperQElement};

/// One diagonal of a banded operator: the image of `z^k f(T) E_sector`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strand {
    pub k: i64,
    pub sector: Sector,
    pub f: LaurentPoly,
}

impl Strand {
    /// Offset `j - i` of the diagonal this strand occupies.
    pub fn offset(&self) -> Half {
        let (r, c) = self.position(0);
        c - r
    }

    /// Matrix position of the entry attached to integer column label `j`.
    pub fn position(&self, j: i64) -> (Half, Half) {
        let row = Half::from_int(j - self.k);
        let col = Half::from_int(j);
        match self.sector {
            Sector::E11 => (row, col),
            Sector::E21 => (row - Half::HALF, col),
            Sector::E12 => (row, col - Half::HALF),
            Sector::E22 => (row - Half::HALF, col - Half::HALF),
        }
    }

    /// The integer label `j` whose entry sits in column `col`, if any.
    pub fn label_of_column(&self, col: Half) -> Option<i64> {
        match self.sector {
            Sector::E11 | Sector::E21 => col.as_int(),
            Sector::E12 | Sector::E22 => (col + Half::HALF).as_int(),
        }
    }
}

/// An infinite banded matrix over `R_m` given by finitely many strands, plus
/// a central part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandedOperator {
    pub s: Scalar,
    pub m: usize,
    pub strands: Vec<Strand>,
    pub central: RmElement,
}

pub type DenseWindow = BTreeMap<(Half, Half), RmElement>;

impl BandedOperator {
    pub fn entry(&self, i: Half, j: Half) -> RmElement {
        let mut acc = RmElement::zero(self.m);
        for st in &self.strands {
            let Some(label) = st.label_of_column(j) else {
                continue;
            };
            if st.position(label).0 != i {
                continue;
            }
            acc = &acc + &self.strand_value(st, label);
        }
        acc
    }

    fn strand_value(&self, st: &Strand, label: i64) -> RmElement {
        let point = &self.s * &Scalar::q_pow(-label);
        st.f.jet_eval(&point, self.m).expect("evaluation point is nonzero")
    }

    /// Distinct diagonal offsets `j - i`.
    pub fn offsets(&self) -> Vec<Half> {
        let mut v: Vec<Half> = self.strands.iter().map(Strand::offset).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Largest `|j - i|` over the strands.
    pub fn bandwidth(&self) -> Half {
        self.offsets()
            .into_iter()
            .map(|d| if d < Half::ZERO { -d } else { d })
            .max()
            .unwrap_or(Half::ZERO)
    }

    /// All nonzero entries whose row lies in `[lo, hi]`.
    pub fn rows(&self, lo: Half, hi: Half) -> DenseWindow {
        let mut out = DenseWindow::new();
        for st in &self.strands {
            let (r0, _) = st.position(0);
            // Row is r0 + j for the integer label j.
            let jlo = (lo - r0).ceil();
            let jhi = (hi - r0).floor();
            for label in jlo..=jhi {
                let (r, c) = st.position(label);
                let v = self.strand_value(st, label);
                add_entry(&mut out, r, c, v);
            }
        }
        out
    }

    /// All nonzero entries with both indices in `[lo, hi]`.
    pub fn window(&self, lo: Half, hi: Half) -> DenseWindow {
        self.rows(lo, hi)
            .into_iter()
            .filter(|((_, c), _)| *c >= lo && *c <= hi)
            .collect()
    }

    /// The window as a finite-support element, central part included.
    pub fn to_element(&self, lo: Half, hi: Half) -> GlInfElement {
        let mut a = GlInfElement::central_only(self.central.clone());
        for ((i, j), v) in self.window(lo, hi) {
            a.add_entry(i, j, v);
        }
        a
    }

    /// Entries of the supercommutator `[A, B]` with both indices in `[lo, hi]`
    /// (the central part is not included; see [`cocycle`]).
    pub fn bracket_window(&self, other: &Self, lo: Half, hi: Half) -> DenseWindow {
        let band = self.bandwidth() + other.bandwidth();
        let a_rows = self.rows(lo, hi);
        let b_rows = other.rows(lo, hi);
        let a_mid = self.rows(lo - band, hi + band);
        let b_mid = other.rows(lo - band, hi + band);
        let mut out = DenseWindow::new();
        for (first, second, sign_swap) in [(&a_rows, &b_mid, false), (&b_rows, &a_mid, true)] {
            // Index the second factor by row.
            let mut by_row: BTreeMap<Half, Vec<(Half, &RmElement)>> = BTreeMap::new();
            for ((r, c), v) in second.iter() {
                by_row.entry(*r).or_default().push((*c, v));
            }
            for ((i, j), x) in first.iter() {
                let Some(row) = by_row.get(j) else { continue };
                for (l, y) in row {
                    if *l < lo || *l > hi {
                        continue;
                    }
                    let prod = x * *y;
                    let v = if sign_swap && entry_parity(*i, *j) * entry_parity(*j, *l) != 1 {
                        -&prod
                    } else {
                        prod
                    };
                    add_entry(&mut out, *i, *l, v);
                }
            }
        }
        out
    }
}

fn add_entry(w: &mut DenseWindow, i: Half, j: Half, v: RmElement) {
    if v.is_zero() {
        return;
    }
    let key = (i, j);
    let nv = match w.get(&key) {
        Some(old) => old + &v,
        None => v,
    };
    if nv.is_zero() {
        w.remove(&key);
    } else {
        w.insert(key, nv);
    }
}

/// `C(A, B) = sum_{i,j} (-1)^{2i} (chi(i <= 0) - chi(j <= 0)) a_ij b_ji`.
/// Only index pairs straddling 0 contribute, so the sum is finite.
pub fn cocycle(a: &BandedOperator, b: &BandedOperator) -> RmElement {
    let band = a.bandwidth().max(b.bandwidth()) + Half::ONE;
    let mut acc = RmElement::zero(a.m);
    for ((i, j), x) in a.rows(-band, band) {
        let w = i64::from(i <= Half::ZERO) - i64::from(j <= Half::ZERO);
        if w == 0 {
            continue;
        }
        let y = b.entry(j, i);
        if y.is_zero() {
            continue;
        }
        let sign = w * i.sign();
        acc = &acc + &(&x * &y).scale(&Scalar::from_int(sign));
    }
    acc
}

/// `phi_s^{[m]}`; central inputs are rejected.
pub fn phi(x: &SuperQElement, s: &Scalar, m: usize) -> Result<BandedOperator, AlgebraError> {
    if !x.central_part().is_zero() {
        return Err(AlgebraError::CentralInput);
    }
    check_point(s)?;
    Ok(BandedOperator {
        s: s.clone(),
        m,
        strands: x
            .terms()
            .map(|(k, sector, f)| Strand {
                k,
                sector,
                f: f.clone(),
            })
            .collect(),
        central: RmElement::zero(m),
    })
}

fn check_point(s: &Scalar) -> Result<(), AlgebraError> {
    if s.is_zero() {
        return Err(AlgebraError::ZeroArgument("evaluation point"));
    }
    Ok(())
}

/// Central part that `phi_hat` adds to the image of `x` (excluding the
/// image of `C`): `-(-1)^i s^k / (1 - q^k) q^{kt}` for each `T^k E_ii`,
/// `k != 0`, in z-degree 0.
pub fn correction(x: &SuperQElement, s: &Scalar, m: usize) -> RmElement {
    let mut acc = RmElement::zero(m);
    for (sector, sign) in [(Sector::E11, 1i64), (Sector::E22, -1)] {
        for (k, c) in x.coeff(0, sector).terms() {
            if k == 0 {
                continue;
            }
            let denom = &Scalar::one() - &Scalar::q_pow(k);
            let coef = &(&(c * &s.powi(k)) * &denom.inv().expect("q^k != 1"))
                * &Scalar::from_int(sign);
            acc = &acc + &jet_exp(k, m).scale(&coef);
        }
    }
    acc
}

/// `phi_hat_s^{[m]}`: `phi` plus the central correction, with `C -> 1`.
pub fn phi_hat(x: &SuperQElement, s: &Scalar, m: usize) -> Result<BandedOperator, AlgebraError> {
    let mut op = phi(&x.without_central(), s, m)?;
    let c = RmElement::constant(x.central_part().clone(), m);
    op.central = &correction(x, s, m) + &c;
    Ok(op)
}

/// Components `phi_hat_{s_i}^{[m_i]}(x)`; the points must be pairwise
/// incongruent modulo integral powers of `q`.
pub fn phi_multi(
    x: &SuperQElement,
    points: &[Scalar],
    orders: &[usize],
) -> Result<Vec<BandedOperator>, AlgebraError> {
    if points.len() != orders.len() {
        return Err(AlgebraError::Invalid(
            "need one order per evaluation point".into(),
        ));
    }
    for (i, a) in points.iter().enumerate() {
        check_point(a)?;
        for b in &points[i + 1..] {
            if a.q_power_ratio(b)?.is_some() {
                return Err(AlgebraError::PointsNotSeparated(a.to_string(), b.to_string()));
            }
        }
    }
    points
        .iter()
        .zip(orders)
        .map(|(s, m)| phi_hat(x, s, *m))
        .collect()
}

/// Finite combination of basis vectors `v_i`, `i` a half-integer.
pub type SuperLineVector = BTreeMap<Half, Scalar>;

/// Action of `x` on the module spanned by `v_i` at `m = 0`.
pub fn module_action(
    x: &SuperQElement,
    s: &Scalar,
    v: &SuperLineVector,
) -> Result<SuperLineVector, AlgebraError> {
    if !x.central_part().is_zero() {
        return Err(AlgebraError::CentralInput);
    }
    check_point(s)?;
    let mut out = SuperLineVector::new();
    for (k, sector, f) in x.terms() {
        let st = Strand {
            k,
            sector,
            f: f.clone(),
        };
        for (i, c) in v {
            let Some(label) = st.label_of_column(*i) else {
                continue;
            };
            let val = f.eval(&(s * &Scalar::q_pow(-label)))?;
            let (row, _) = st.position(label);
            let e = out.entry(row).or_default();
            *e += &(&val * c);
            if e.is_zero() {
                out.remove(&row);
            }
        }
    }
    Ok(out)
}

/// Result of [`kernel_test`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelReport {
    pub in_kernel: bool,
    /// A nonzero entry `(i, j, value)` of `phi(x)` when `x != 0`.
    pub witness: Option<(Half, Half, RmElement)>,
}

/// `x` lies in the kernel of `phi_s^{[m]}` iff `x = 0`; for nonzero `x`
/// a nonzero entry is produced, scanning column labels `0, 1, -1, 2, ...`.
pub fn kernel_test(x: &SuperQElement, s: &Scalar, m: usize) -> Result<KernelReport, AlgebraError> {
    let x = x.without_central();
    if x.is_zero() {
        return Ok(KernelReport {
            in_kernel: true,
            witness: None,
        });
    }
    let op = phi(&x, s, m)?;
    let width = x
        .terms()
        .map(|(_, _, f)| f.len() as i64)
        .sum::<i64>()
        + 2;
    for step in 0..=2 * width {
        let label = if step % 2 == 1 { (step + 1) / 2 } else { -(step / 2) };
        for st in &op.strands {
            let (i, j) = st.position(label);
            let v = op.entry(i, j);
            if !v.is_zero() {
                return Ok(KernelReport {
                    in_kernel: false,
                    witness: Some((i, j, v)),
                });
            }
        }
    }
    Err(AlgebraError::Invalid(
        "no nonzero entry found; the evaluation point is not generic".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_element;

    fn h(twice: i64) -> Half {
        Half::from_twice(twice)
    }

    fn s() -> Scalar {
        Scalar::s()
    }

    #[test]
    fn phi_examples() {
        let x = parse_element("z*T*E11").unwrap();
        let op = phi(&x, &s(), 0).unwrap();
        for j in -3..=3 {
            let v = op.entry(Half::from_int(j - 1), Half::from_int(j));
            assert_eq!(v, RmElement::constant(&s() * &Scalar::q_pow(-j), 0));
        }
        let op = phi(&parse_element("E12").unwrap(), &s(), 0).unwrap();
        assert!(op.entry(h(4), h(3)).is_one());
        let op = phi(&parse_element("T*E11").unwrap(), &s(), 1).unwrap();
        let sj = &s() * &Scalar::q_pow(-2);
        assert_eq!(
            op.entry(h(4), h(4)),
            RmElement::from_coeffs(vec![sj.clone(), &sj * &Scalar::log_q()], 1)
        );
        assert_eq!(
            phi(&parse_element("C").unwrap(), &s(), 0),
            Err(AlgebraError::CentralInput)
        );
    }

    #[test]
    fn phi_hat_examples() {
        let c = phi_hat(&parse_element("C").unwrap(), &s(), 2).unwrap();
        assert!(c.central.is_one());
        let x = parse_element("T*E11").unwrap();
        let op = phi_hat(&x, &s(), 0).unwrap();
        let expected = &s() * &(&Scalar::one() - &Scalar::q()).inv().unwrap();
        assert_eq!(op.central, RmElement::constant(expected, 0));
        let op = phi_hat(&parse_element("E11").unwrap(), &s(), 0).unwrap();
        assert!(op.central.is_zero());
    }

    #[test]
    fn window_examples() {
        let op = phi(&parse_element("z*T*E11").unwrap(), &s(), 0).unwrap();
        let w = op.window(h(-2), h(2));
        assert_eq!(w[&(h(-2), h(0))], RmElement::constant(s(), 0));
        assert_eq!(w[&(h(0), h(2))], RmElement::constant(&s() * &Scalar::q_pow(-1), 0));
        assert_eq!(w.len(), 2);
        let op = phi(&SuperQElement::zero(), &s(), 0).unwrap();
        assert!(op.window(h(-4), h(4)).is_empty());
        let op = phi(&parse_element("E11").unwrap(), &s(), 0).unwrap();
        let w = op.window(h(0), h(2));
        assert_eq!(w.keys().copied().collect::<Vec<_>>(), vec![(h(0), h(0)), (h(2), h(2))]);
    }

    #[test]
    fn module_action_examples() {
        let v0 = SuperLineVector::from([(Half::ZERO, Scalar::one())]);
        let x = parse_element("z*T^2*E11").unwrap();
        assert_eq!(
            module_action(&x, &s(), &v0).unwrap(),
            SuperLineVector::from([(h(-2), s().powi(2))])
        );
        let x = parse_element("E21").unwrap();
        assert_eq!(
            module_action(&x, &s(), &v0).unwrap(),
            SuperLineVector::from([(h(-1), Scalar::one())])
        );
        let vh = SuperLineVector::from([(h(-1), Scalar::one())]);
        let x = parse_element("E12").unwrap();
        assert_eq!(
            module_action(&x, &s(), &vh).unwrap(),
            SuperLineVector::from([(h(0), Scalar::one())])
        );
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_test(&SuperQElement::zero(), &s(), 0).unwrap().in_kernel);
        let r = kernel_test(&parse_element("z*T*E11").unwrap(), &s(), 0).unwrap();
        assert!(!r.in_kernel);
        assert_eq!(r.witness, Some((h(-2), h(0), RmElement::constant(s(), 0))));
        let r = kernel_test(&parse_element("(T - s)*E11").unwrap(), &s(), 0).unwrap();
        assert_eq!(r.witness.unwrap().0, h(2));
    }

    #[test]
    fn multi_examples() {
        let x = parse_element("T*E11").unwrap();
        assert_eq!(phi_multi(&x, &[s()], &[0]).unwrap().len(), 1);
        assert!(matches!(
            phi_multi(&x, &[s(), &s() * &Scalar::q()], &[0, 0]),
            Err(AlgebraError::PointsNotSeparated(_, _))
        ));
        let s2 = Scalar::symbol("s2").unwrap();
        assert_eq!(phi_multi(&x, &[s(), s2], &[0, 1]).unwrap().len(), 2);
    }

    #[test]
    fn cocycle_matches_psi_example() {
        let x = parse_element("z*T*E11").unwrap();
        let y = parse_element("z^-1*T^-1*E11").unwrap();
        let a = phi(&x, &s(), 0).unwrap();
        let b = phi(&y, &s(), 0).unwrap();
        assert_eq!(cocycle(&a, &b), RmElement::constant(Scalar::q_pow(-1), 0));
    }
}

#[cfg(test)]
mod homomorphism {
    use super::*;
    use crate::superq::psi;
    use crate::syntax::parse_element;

    fn check(x: &str, y: &str, m: usize) {
        let (x, y) = (parse_element(x).unwrap(), parse_element(y).unwrap());
        let s = Scalar::s();
        let (lo, hi) = (Half::from_int(-6), Half::from_int(6));
        let a = phi_hat(&x, &s, m).unwrap();
        let b = phi_hat(&y, &s, m).unwrap();
        let xy = x.bracket(&y);
        let lhs = phi_hat(&xy, &s, m).unwrap();
        assert_eq!(lhs.window(lo, hi), a.bracket_window(&b, lo, hi), "{x} {y}");
        assert_eq!(lhs.central, cocycle(&a, &b), "{x} {y} m={m}");
        let pulled = cocycle(&phi(&x, &s, 0).unwrap(), &phi(&y, &s, 0).unwrap());
        let kappa = correction(&xy, &s, 0);
        assert_eq!(pulled, &RmElement::constant(psi(&x, &y), 0) + &kappa);
    }

    #[test]
    fn small_pairs() {
        for m in 0..=2 {
            check("z*T*E11", "z^-1*T^-1*E11", m);
            check("z*T*E11", "z^-1*E11", m);
            check("z^2*(T^2 - 3*T^-1)*E11 + z^2*T*E22", "z^-2*(T + q)*E11 - z^-2*T^-1*E22", m);
            check("z*(T - 1)*E12", "(T^2 + 2)*E21", m);
            check("z^-1*(T - q)*E12 + (T - 1)*E21", "z*T^3*E12 + z^2*T^-1*E21", m);
            check("T^2*E11 + T*E22", "T^-1*E12", m);
        }
    }
}
