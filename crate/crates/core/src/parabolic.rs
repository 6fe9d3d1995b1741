//! Minimal parabolic subalgebras `p^d` for degree `-1/2` elements `d`, the
//! space `g_0^d = [g_{1/2}, d]`, and the depth-1/2 singular-vector test.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::AlgebraError;
use crate::half::Half;
use crate::laurent::{ideal_gcd, LaurentPoly};
use crate::scalar::Scalar;
use crate::superq::{Sector, SuperQElement};

/// `d = z^{-1} b12(T) E12 + b21(T) E21`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfElement {
    pub b12: LaurentPoly,
    pub b21: LaurentPoly,
}

impl HalfElement {
    pub fn new(b12: LaurentPoly, b21: LaurentPoly) -> Self {
        HalfElement { b12, b21 }
    }

    pub fn is_zero(&self) -> bool {
        self.b12.is_zero() && self.b21.is_zero()
    }

    pub fn to_element(&self) -> SuperQElement {
        let mut x = SuperQElement::zero();
        x.add_term(-1, Sector::E12, self.b12.clone());
        x.add_term(0, Sector::E21, self.b21.clone());
        x
    }

    /// Reads `d` back from an element of degree `-1/2`.
    pub fn from_element(x: &SuperQElement) -> Result<Self, AlgebraError> {
        let d = HalfElement::new(x.coeff(-1, Sector::E12), x.coeff(0, Sector::E21));
        if d.to_element() != *x {
            return Err(AlgebraError::Invalid(format!(
                "{x} is not homogeneous of degree -1/2"
            )));
        }
        Ok(d)
    }
}

impl fmt::Display for HalfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_element())
    }
}

/// Something that can be paired with degree-zero elements: the labels
/// `Delta_{l,i} = lambda(T^l E_ii)` and the central charge `lambda(C)`.
pub trait WeightFunctional {
    /// `Delta_{l,i}`; `l = 0` may be undetermined.
    fn label(&self, l: i64, i: u8) -> Result<Scalar, AlgebraError>;

    /// `Delta_{l,1} + Delta_{l,2}`, always determined.
    fn pair_sum(&self, l: i64) -> Scalar;

    fn charge(&self) -> Scalar;

    /// `lambda(x)` on the z-degree 0 diagonal part and the central part of `x`.
    /// Only the pair sum of the `l = 0` labels is consulted when the two
    /// diagonal coefficients agree.
    fn evaluate(&self, x: &SuperQElement) -> Result<Scalar, AlgebraError> {
        let f11 = x.coeff(0, Sector::E11);
        let f22 = x.coeff(0, Sector::E22);
        let mut exps: Vec<i64> = f11.terms().chain(f22.terms()).map(|(k, _)| k).collect();
        exps.sort_unstable();
        exps.dedup();
        let mut acc = x.central_part() * &self.charge();
        for l in exps {
            let (a, b) = (f11.coeff(l), f22.coeff(l));
            if l == 0 {
                acc += &(&b * &self.pair_sum(0));
                let diff = &a - &b;
                if !diff.is_zero() {
                    acc += &(&diff * &self.label(0, 1)?);
                }
            } else {
                acc += &(&a * &self.label(l, 1)?);
                acc += &(&b * &self.label(l, 2)?);
            }
        }
        Ok(acc)
    }
}

/// `f b21 I + g(q^{-1}T) b12 E22 + b12(qT) g E11 - (g(q^{-1}T) b12)_0 C`,
/// the bracket of `f E12 + z g E21` with `d`.
pub fn g0a_element(d: &HalfElement, f: &LaurentPoly, g: &LaurentPoly) -> SuperQElement {
    let fb = f * &d.b21;
    let h = &g.q_shift(-1) * &d.b12;
    let mut x = SuperQElement::zero();
    x.add_term(0, Sector::E11, fb.clone());
    x.add_term(0, Sector::E22, fb);
    x.add_term(0, Sector::E22, h.clone());
    x.add_term(0, Sector::E11, &d.b12.q_shift(1) * g);
    x.add_central(&-h.const_term());
    x
}

/// Ideal generators of one graded slice `p_{-k}`; sectors that do not occur
/// in degree `-k` carry 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicSlice {
    pub depth: Half,
    pub generators: BTreeMap<Sector, LaurentPoly>,
}

impl ParabolicSlice {
    pub fn generator(&self, sector: Sector) -> LaurentPoly {
        self.generators.get(&sector).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.values().all(LaurentPoly::is_zero)
    }

    fn spanning(&self, window: i64) -> Vec<SuperQElement> {
        let mut out = Vec::new();
        for (sector, b) in &self.generators {
            if b.is_zero() {
                continue;
            }
            for l in -window..=window {
                out.push(slice_term(self.depth, *sector, &b.shift(l)));
            }
        }
        out
    }
}

impl fmt::Display for ParabolicSlice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "depth {}:", self.depth)?;
        for (s, b) in &self.generators {
            write!(f, " b{}{} = {}", s.row(), s.col(), crate::syntax::laurent_string(b, "w"))?;
        }
        Ok(())
    }
}

fn sectors_at(depth: Half) -> [Sector; 2] {
    if depth.is_integer() {
        [Sector::E11, Sector::E22]
    } else {
        [Sector::E12, Sector::E21]
    }
}

/// z-degree carrying `sector` in principal degree `-depth`.
fn z_degree(depth: Half, sector: Sector) -> i64 {
    let shifted = match sector {
        Sector::E12 => -depth - Half::HALF,
        Sector::E21 => -depth + Half::HALF,
        _ => -depth,
    };
    shifted.as_int().expect("sector matches depth parity")
}

fn slice_term(depth: Half, sector: Sector, f: &LaurentPoly) -> SuperQElement {
    SuperQElement::term(z_degree(depth, sector), f.clone(), sector)
}

fn collect(depth: Half, elems: &[SuperQElement]) -> ParabolicSlice {
    let generators = sectors_at(depth)
        .into_iter()
        .map(|sector| {
            let n = z_degree(depth, sector);
            let parts: Vec<LaurentPoly> = elems.iter().map(|x| x.coeff(n, sector)).collect();
            (sector, ideal_gcd(parts.iter()))
        })
        .collect();
    ParabolicSlice { depth, generators }
}

pub const DEFAULT_SLICE_WINDOW: i64 = 2;
pub const MAX_SLICE_DEPTH: Half = Half::from_twice(6);

/// Ideal generators of `p^d_{-k}` by bracket closure: `d` under the degree-0
/// generators `T^l E_ii`, `|l| <= window`, then `p_{-k-1/2} = [p_{-1/2}, p_{-k}]`.
pub fn min_parabolic_slice(
    d: &HalfElement,
    depth: Half,
    window: i64,
) -> Result<ParabolicSlice, AlgebraError> {
    if d.is_zero() {
        return Err(AlgebraError::ZeroArgument("d"));
    }
    if depth <= Half::ZERO || depth > MAX_SLICE_DEPTH {
        return Err(AlgebraError::Invalid(format!(
            "depth must lie in (0, {MAX_SLICE_DEPTH}], got {depth}"
        )));
    }
    let x = d.to_element();
    let mut orbit = vec![x.clone()];
    let mut frontier = vec![x];
    for _ in 0..2 {
        let mut next = Vec::new();
        for y in &frontier {
            for l in -window..=window {
                for sector in [Sector::E11, Sector::E22] {
                    let g = SuperQElement::diag(LaurentPoly::power(l), sector);
                    next.push(g.bracket(y));
                }
            }
        }
        orbit.extend(next.iter().cloned());
        frontier = next;
    }
    let first = collect(Half::HALF, &orbit);
    let half_span = first.spanning(window);
    let mut slice = first;
    while slice.depth < depth {
        let span = slice.spanning(window);
        let elems: Vec<SuperQElement> = half_span
            .iter()
            .flat_map(|a| span.iter().map(move |b| a.bracket(b)))
            .collect();
        slice = collect(slice.depth + Half::HALF, &elems);
    }
    Ok(slice)
}

/// Nonzero `d` give parabolics of finite codimension in every sector `d`
/// touches.
pub fn is_nondegenerate(d: &HalfElement) -> bool {
    if d.is_zero() {
        return false;
    }
    let Ok(slice) = min_parabolic_slice(d, Half::HALF, DEFAULT_SLICE_WINDOW) else {
        return false;
    };
    (d.b12.is_zero() || !slice.generator(Sector::E12).is_zero())
        && (d.b21.is_zero() || !slice.generator(Sector::E21).is_zero())
}

pub const DEFAULT_PROBE_WINDOW: i64 = 8;

/// First probe on which `lambda` does not vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Probe {
    /// `f = w^s`, `g = 0`.
    F(i64),
    /// `f = 0`, `g = w^r`.
    G(i64),
}

/// `Ok(None)` iff `lambda(g0a_element(d, f, g)) = 0` for every monomial
/// `f`, `g` with exponent in `[-window, window]`.
pub fn singular_vector_failure(
    w: &dyn WeightFunctional,
    d: &HalfElement,
    window: i64,
) -> Result<Option<(Probe, Scalar)>, AlgebraError> {
    let zero = LaurentPoly::zero();
    for e in -window..=window {
        let p = LaurentPoly::power(e);
        let v = w.evaluate(&g0a_element(d, &p, &zero))?;
        if !v.is_zero() {
            return Ok(Some((Probe::F(e), v)));
        }
        let v = w.evaluate(&g0a_element(d, &zero, &p))?;
        if !v.is_zero() {
            return Ok(Some((Probe::G(e), v)));
        }
    }
    Ok(None)
}

pub fn singular_vector_check(
    w: &dyn WeightFunctional,
    d: &HalfElement,
    window: i64,
) -> Result<bool, AlgebraError> {
    Ok(singular_vector_failure(w, d, window)?.is_none())
}
