//! Highest weights of the extended superalgebra: quasifiniteness, labels of
//! modules pulled back from `gl_{inf|inf}[m]`, synthesis of those modules
//! from `(P12, P21)`, and the round trip between the two.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::AlgebraError;
use crate::glinf::{GlWeight, LabelSeq};
use crate::laurent::LaurentPoly;
use crate::parabolic::{HalfElement, WeightFunctional};
use crate::quasipoly::{congruence_classes, interpolate_finite, QuasiPolynomial, DEFAULT_DEGREE_BOUND};
use crate::scalar::Scalar;
use crate::syntax::laurent_string;

/// Highest weight given by the quasipolynomials
/// `P12(n) = Delta_{n,1} q^n + Delta_{n,2}`, `P21(n) = Delta_{n,1} + Delta_{n,2}`
/// and the central charge `c = P21(0) - P12(0)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SSqWeight {
    pub p12: QuasiPolynomial,
    pub p21: QuasiPolynomial,
    pub c: Scalar,
    /// `(Delta_{0,1}, Delta_{0,2})`, which `(P12, P21, c)` do not determine.
    pub zero_split: Option<(Scalar, Scalar)>,
}

impl SSqWeight {
    pub fn new(p12: QuasiPolynomial, p21: QuasiPolynomial, c: Scalar) -> Result<Self, AlgebraError> {
        let w = SSqWeight {
            p12,
            p21,
            c,
            zero_split: None,
        };
        w.validate()?;
        Ok(w)
    }

    /// Charge read off from `P21(0) - P12(0)`.
    pub fn from_pair(p12: QuasiPolynomial, p21: QuasiPolynomial) -> Self {
        let c = &p21.eval(0) - &p12.eval(0);
        SSqWeight {
            p12,
            p21,
            c,
            zero_split: None,
        }
    }

    pub fn with_zero_split(mut self, d01: Scalar, d02: Scalar) -> Result<Self, AlgebraError> {
        self.zero_split = Some((d01, d02));
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), AlgebraError> {
        let p21_0 = self.p21.eval(0);
        if &p21_0 - &self.p12.eval(0) != self.c {
            return Err(AlgebraError::InconsistentWeight(format!(
                "P21(0) - P12(0) = {} but c = {}",
                &p21_0 - &self.p12.eval(0),
                self.c
            )));
        }
        if let Some((a, b)) = &self.zero_split {
            if a + b != p21_0 {
                return Err(AlgebraError::InconsistentWeight(format!(
                    "Delta_0,1 + Delta_0,2 = {} but P21(0) = {}",
                    a + b,
                    p21_0
                )));
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.p12.is_zero() && self.p21.is_zero() && self.c.is_zero()
    }

    /// Sum of weights; the zero split survives only if both carry one.
    pub fn add(&self, other: &SSqWeight) -> SSqWeight {
        let zero_split = match (&self.zero_split, &other.zero_split) {
            (Some((a, b)), Some((x, y))) => Some((a + x, b + y)),
            _ => None,
        };
        SSqWeight {
            p12: &self.p12 + &other.p12,
            p21: &self.p21 + &other.p21,
            c: &self.c + &other.c,
            zero_split,
        }
    }
}

impl fmt::Display for SSqWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P12 = {}, P21 = {}, c = {}", self.p12, self.p21, self.c)
    }
}

/// `Delta_{n,i}`: `Delta_{n,1} = (P12(n) - P21(n)) / (q^n - 1)` and
/// `Delta_{n,2} = P21(n) - Delta_{n,1}`.
pub fn delta_of(w: &SSqWeight, n: i64, i: u8) -> Result<Scalar, AlgebraError> {
    if !(1..=2).contains(&i) {
        return Err(AlgebraError::Invalid(format!("label index {i} is not 1 or 2")));
    }
    if n == 0 {
        let (a, b) = w.zero_split.as_ref().ok_or(AlgebraError::UndeterminedZeroLabel)?;
        return Ok(if i == 1 { a.clone() } else { b.clone() });
    }
    let p21 = w.p21.eval(n);
    let d1 = (&w.p12.eval(n) - &p21).checked_div(&(&Scalar::q_pow(n) - &Scalar::one()))?;
    Ok(if i == 1 { d1 } else { &p21 - &d1 })
}

impl WeightFunctional for SSqWeight {
    fn label(&self, l: i64, i: u8) -> Result<Scalar, AlgebraError> {
        delta_of(self, l, i)
    }

    fn pair_sum(&self, l: i64) -> Scalar {
        self.p21.eval(l)
    }

    fn charge(&self) -> Scalar {
        self.c.clone()
    }
}

/// Finitely many labels `Delta_{l,i}` (all others zero) and a charge.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RawLabels {
    pub labels: BTreeMap<(i64, u8), Scalar>,
    pub c: Scalar,
}

impl RawLabels {
    fn get(&self, l: i64, i: u8) -> Scalar {
        self.labels.get(&(l, i)).cloned().unwrap_or_default()
    }

    /// Values of `P12` and `P21` over the support, padded with zeros.
    fn series(&self, pad: i64) -> (BTreeMap<i64, Scalar>, BTreeMap<i64, Scalar>) {
        let lo = self.labels.keys().map(|k| k.0).min().unwrap_or(0).min(0) - pad;
        let hi = self.labels.keys().map(|k| k.0).max().unwrap_or(0).max(0) + pad;
        let mut p12 = BTreeMap::new();
        let mut p21 = BTreeMap::new();
        for n in lo..=hi {
            let sum = &self.get(n, 1) + &self.get(n, 2);
            let v12 = if n == 0 {
                &sum - &self.c
            } else {
                &(&self.get(n, 1) * &Scalar::q_pow(n)) + &self.get(n, 2)
            };
            p12.insert(n, v12);
            p21.insert(n, sum);
        }
        (p12, p21)
    }
}

impl WeightFunctional for RawLabels {
    fn label(&self, l: i64, i: u8) -> Result<Scalar, AlgebraError> {
        Ok(self.get(l, i))
    }

    fn pair_sum(&self, l: i64) -> Scalar {
        &self.get(l, 1) + &self.get(l, 2)
    }

    fn charge(&self) -> Scalar {
        self.c.clone()
    }
}

/// A weight functional with one label shifted by `delta`.
pub struct Perturbed<'a> {
    pub base: &'a dyn WeightFunctional,
    pub l: i64,
    pub i: u8,
    pub delta: Scalar,
}

impl WeightFunctional for Perturbed<'_> {
    fn label(&self, l: i64, i: u8) -> Result<Scalar, AlgebraError> {
        let v = self.base.label(l, i)?;
        Ok(if (l, i) == (self.l, self.i) { &v + &self.delta } else { v })
    }

    fn pair_sum(&self, l: i64) -> Scalar {
        let v = self.base.pair_sum(l);
        if l == self.l {
            &v + &self.delta
        } else {
            v
        }
    }

    fn charge(&self) -> Scalar {
        self.base.charge()
    }
}

/// Verdict of [`check_qf`] with the annihilators of `P12` and `P21`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QfReport {
    pub quasifinite: bool,
    pub b12: Option<LaurentPoly>,
    pub b21: Option<LaurentPoly>,
}

impl QfReport {
    /// `d = z^{-1} b12(T) E12 + b21(T) E21`, when quasifinite.
    pub fn half_element(&self) -> Option<HalfElement> {
        Some(HalfElement::new(self.b12.clone()?, self.b21.clone()?))
    }
}

impl fmt::Display for QfReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.b12, &self.b21) {
            (Some(a), Some(b)) if self.quasifinite => write!(
                f,
                "quasifinite: true, b12 = {}, b21 = {}",
                laurent_string(a, "x"),
                laurent_string(b, "x")
            ),
            _ => write!(f, "quasifinite: false"),
        }
    }
}

pub fn check_qf(w: &SSqWeight) -> Result<QfReport, AlgebraError> {
    w.validate()?;
    Ok(QfReport {
        quasifinite: true,
        b12: Some(w.p12.min_annihilator()),
        b21: Some(w.p21.min_annihilator()),
    })
}

/// Finite label data is quasifinite iff both series are quasipolynomials
/// on all of Z, which only happens when they vanish.
pub fn check_qf_raw(w: &RawLabels) -> QfReport {
    let pad = 2 * DEFAULT_DEGREE_BOUND as i64;
    let (s12, s21) = w.series(pad);
    match (
        interpolate_finite(&s12, DEFAULT_DEGREE_BOUND),
        interpolate_finite(&s21, DEFAULT_DEGREE_BOUND),
    ) {
        (Some(a), Some(b)) => QfReport {
            quasifinite: true,
            b12: Some(a.min_annihilator()),
            b21: Some(b.min_annihilator()),
        },
        _ => QfReport {
            quasifinite: false,
            b12: None,
            b21: None,
        },
    }
}

/// One tensor factor `L^{[m]}(lambda_s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleDescriptor {
    pub s: Scalar,
    pub m: usize,
    pub weight: GlWeight,
}

impl ModuleDescriptor {
    pub fn validate(&self) -> Result<(), AlgebraError> {
        if self.s.is_zero() {
            return Err(AlgebraError::ZeroArgument("s"));
        }
        self.weight.validate()?;
        if self.weight.m != self.m {
            return Err(AlgebraError::OrderMismatch(self.m, self.weight.m));
        }
        let report = self.weight.quasifinite();
        if !report.quasifinite {
            return Err(AlgebraError::NotQuasifinite(format!(
                "tails violate the relation at {:?}",
                report.tail_failures
            )));
        }
        Ok(())
    }
}

fn factorial(l: usize) -> Scalar {
    Scalar::from_int((1..=l as i64).product())
}

/// Keys `j` outside which both `lambda_j + lambda_{j-1/2}` and
/// `lambda_{j+1} + lambda_{j-1/2}` equal their (zero) tails.
fn support_range(w: &GlWeight) -> (i64, i64) {
    let (lo, hi) = w.scan_window();
    (lo.floor().min(0) - 2, hi.ceil().max(1) + 2)
}

/// `(P12, P21, c)` of the pullback of `L^{[m]}(lambda)` along `phi_hat_s^{[m]}`.
pub fn labels_of_module(d: &ModuleDescriptor) -> Result<SSqWeight, AlgebraError> {
    d.validate()?;
    let w = &d.weight;
    let log_q = Scalar::log_q();
    let (lo, hi) = support_range(w);
    let mut p12 = QuasiPolynomial::zero();
    let mut p21 = QuasiPolynomial::zero();
    for j in lo..=hi {
        let base = &d.s * &Scalar::q_pow(-j);
        let mut c21 = Vec::with_capacity(d.m + 1);
        let mut c12 = Vec::with_capacity(d.m + 1);
        for l in 0..=d.m {
            let scale = &log_q.powi(l as i64) * &factorial(l).inv()?;
            let half = w.half[l].get(j);
            c21.push(&(&w.integral[l].get(j) + &half) * &scale);
            c12.push(&(&w.integral[l].get(j + 1) + &half) * &scale);
        }
        p21.add_term(base.clone(), c21)?;
        p12.add_term(base, c12)?;
    }
    let residual: Vec<Scalar> = (0..=d.m)
        .map(|l| -&(&(&w.charges[l] * &log_q.powi(l as i64)) * &factorial(l).inv().unwrap()))
        .collect();
    p12.add_term(d.s.clone(), residual)?;
    Ok(SSqWeight::from_pair(p12, p21))
}

/// Sum of the labels of the tensor factors.
pub fn tensor_labels(ds: &[ModuleDescriptor]) -> Result<SSqWeight, AlgebraError> {
    ds.iter()
        .try_fold(SSqWeight::default(), |acc, d| Ok(acc.add(&labels_of_module(d)?)))
}

/// Knobs distinguishing the readings of the synthesis formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SynthesisRules {
    /// `+1`: `c_l = sum (h_{k-1/2} - h_k)`; `-1` flips it.
    pub charge_sign: i64,
    /// Accumulate `lambda_i` over `k > i` instead of `k < i`.
    pub sum_from_above: bool,
}

pub const STANDARD_RULES: SynthesisRules = SynthesisRules {
    charge_sign: 1,
    sum_from_above: false,
};

/// One module per congruence class `sigma q^Z` of bases, `sigma` the member
/// with the largest power of `q`.
pub fn synthesize_with(
    p12: &QuasiPolynomial,
    p21: &QuasiPolynomial,
    rules: SynthesisRules,
) -> Result<Vec<ModuleDescriptor>, AlgebraError> {
    let bases: BTreeSet<Scalar> = p12.bases().chain(p21.bases()).cloned().collect();
    let log_q = Scalar::log_q();
    let mut out = Vec::new();
    for class in congruence_classes(bases.iter()) {
        let m = class
            .members
            .iter()
            .flat_map(|(_, b)| [p12.degree(b), p21.degree(b)])
            .flatten()
            .max()
            .unwrap_or(0);
        let top = class.members.last().map(|(k, _)| *k).unwrap_or(0);
        let mut weight = GlWeight::zero(m);
        for l in 0..=m {
            let unscale = &factorial(l) * &log_q.powi(l as i64).inv()?;
            // h_{k-1/2} from P21 and h_k from P12 at base sigma q^{-k}.
            let mut h_half = BTreeMap::new();
            let mut h_int = BTreeMap::new();
            for (k, b) in &class.members {
                let pick = |p: &QuasiPolynomial| {
                    &p.coeffs(b).get(l).cloned().unwrap_or_default() * &unscale
                };
                h_half.insert(*k, pick(p21));
                h_int.insert(*k, pick(p12));
            }
            let get = |m: &BTreeMap<i64, Scalar>, k: i64| m.get(&k).cloned().unwrap_or_default();
            let mut c = Scalar::zero();
            for k in 0..=top {
                c += &(&get(&h_half, k) - &get(&h_int, k));
            }
            let c = &c * &Scalar::from_int(rules.charge_sign);
            let step = |k: i64| {
                let mut v = &get(&h_int, k) - &get(&h_half, k);
                if k == 0 {
                    v += &c;
                }
                v
            };
            let mut integral = LabelSeq::default();
            let mut half = LabelSeq::default();
            for i in 0..=top + 1 {
                let lambda: Scalar = if rules.sum_from_above {
                    (i + 1..=top).map(step).fold(Scalar::zero(), |a, b| &a + &b)
                } else {
                    (0..i).map(step).fold(Scalar::zero(), |a, b| &a + &b)
                };
                half.except.insert(i, &get(&h_half, i) - &lambda);
                integral.except.insert(i, lambda);
            }
            weight.charges[l] = c;
            weight.integral[l] = integral.normalized();
            weight.half[l] = half.normalized();
        }
        out.push(ModuleDescriptor {
            s: class.representative.clone(),
            m,
            weight,
        });
    }
    Ok(out)
}

pub fn synthesize(
    p12: &QuasiPolynomial,
    p21: &QuasiPolynomial,
) -> Result<Vec<ModuleDescriptor>, AlgebraError> {
    synthesize_with(p12, p21, STANDARD_RULES)
}

/// Outcome of comparing `tensor_labels(synthesize(P12, P21))` with the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundtripReport {
    pub pass: bool,
    pub expected: SSqWeight,
    pub actual: Option<SSqWeight>,
    pub diffs: Vec<String>,
}

impl fmt::Display for RoundtripReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.pass { "pass" } else { "fail" })?;
        for d in &self.diffs {
            write!(f, "\n  {d}")?;
        }
        Ok(())
    }
}

fn poly_string(coeffs: &[Scalar]) -> String {
    let p = LaurentPoly::from_terms(coeffs.iter().cloned().enumerate().map(|(i, c)| (i as i64, c)));
    laurent_string(&p, "x")
}

/// Per-base differences between two weights.
pub fn weight_diff(expected: &SSqWeight, actual: &SSqWeight) -> Vec<String> {
    let mut out = Vec::new();
    for (name, e, a) in [
        ("P12", &expected.p12, &actual.p12),
        ("P21", &expected.p21, &actual.p21),
    ] {
        let bases: BTreeSet<&Scalar> = e.bases().chain(a.bases()).collect();
        for b in bases {
            if e.coeffs(b) != a.coeffs(b) {
                out.push(format!(
                    "{name} at base {b}: expected {}, got {}",
                    poly_string(e.coeffs(b)),
                    poly_string(a.coeffs(b))
                ));
            }
        }
    }
    if expected.c != actual.c {
        out.push(format!("c: expected {}, got {}", expected.c, actual.c));
    }
    out
}

pub fn roundtrip_with(
    p12: &QuasiPolynomial,
    p21: &QuasiPolynomial,
    rules: SynthesisRules,
) -> RoundtripReport {
    let expected = SSqWeight::from_pair(p12.clone(), p21.clone());
    let actual = synthesize_with(p12, p21, rules).and_then(|ds| tensor_labels(&ds));
    match actual {
        Ok(actual) => {
            let diffs = weight_diff(&expected, &actual);
            RoundtripReport {
                pass: diffs.is_empty(),
                expected,
                actual: Some(actual),
                diffs,
            }
        }
        Err(e) => RoundtripReport {
            pass: false,
            expected,
            actual: None,
            diffs: vec![format!("synthesis failed: {e}")],
        },
    }
}

pub fn roundtrip(p12: &QuasiPolynomial, p21: &QuasiPolynomial) -> RoundtripReport {
    roundtrip_with(p12, p21, STANDARD_RULES)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::phi_hat;
    use crate::half::Half;
    use crate::parabolic::{singular_vector_check, DEFAULT_PROBE_WINDOW};
    use crate::superq::{Sector, SuperQElement};
    use crate::syntax::parse_laurent;

    fn qp(terms: &[(Scalar, i64)]) -> QuasiPolynomial {
        let mut p = QuasiPolynomial::zero();
        for (b, c) in terms {
            p.add_term(b.clone(), vec![Scalar::from_int(*c)]).unwrap();
        }
        p
    }

    fn s() -> Scalar {
        Scalar::s()
    }

    fn lam_half_one() -> ModuleDescriptor {
        let mut weight = GlWeight::zero(0);
        weight.half[0].except.insert(1, Scalar::one());
        ModuleDescriptor { s: s(), m: 0, weight }
    }

    fn charge_one() -> ModuleDescriptor {
        let mut weight = GlWeight::zero(0);
        weight.charges[0] = Scalar::one();
        ModuleDescriptor { s: s(), m: 0, weight }
    }

    #[test]
    fn check_qf_examples() {
        let w = SSqWeight::new(qp(&[(Scalar::q(), 1)]), qp(&[(Scalar::one(), 1)]), Scalar::zero()).unwrap();
        let r = check_qf(&w).unwrap();
        assert_eq!(r.to_string(), "quasifinite: true, b12 = x - q, b21 = x - 1");
        let r = check_qf(&SSqWeight::default()).unwrap();
        assert!(r.quasifinite && r.b12.unwrap().is_one() && r.b21.unwrap().is_one());
        let raw = RawLabels {
            labels: BTreeMap::from([((1, 1), Scalar::one())]),
            c: Scalar::zero(),
        };
        assert!(!check_qf_raw(&raw).quasifinite);
        assert!(check_qf_raw(&RawLabels::default()).quasifinite);
        assert!(matches!(
            SSqWeight::new(QuasiPolynomial::zero(), QuasiPolynomial::zero(), Scalar::one()),
            Err(AlgebraError::InconsistentWeight(_))
        ));
    }

    #[test]
    fn delta_examples() {
        let p = qp(&[(Scalar::q(), 2), (s(), 1)]);
        let w = SSqWeight::from_pair(p.clone(), p);
        for n in [-2, -1, 1, 3] {
            assert!(delta_of(&w, n, 1).unwrap().is_zero());
        }
        let w = SSqWeight::new(qp(&[(Scalar::one(), 1)]), qp(&[(Scalar::one(), 2)]), Scalar::one()).unwrap();
        let expected = (&Scalar::q() - &Scalar::one()).inv().unwrap();
        assert_eq!(delta_of(&w, 1, 1).unwrap(), -&expected);
        assert_eq!(delta_of(&w, 0, 1), Err(AlgebraError::UndeterminedZeroLabel));
    }

    #[test]
    fn labels_examples() {
        let w = labels_of_module(&lam_half_one()).unwrap();
        let sq = &s() * &Scalar::q_pow(-1);
        assert_eq!(w.p12, qp(&[(sq.clone(), 1)]));
        assert_eq!(w.p21, qp(&[(sq, 1)]));
        assert!(w.c.is_zero());
        let zero = ModuleDescriptor { s: s(), m: 1, weight: GlWeight::zero(1) };
        assert!(labels_of_module(&zero).unwrap().is_zero());
        let w = labels_of_module(&charge_one()).unwrap();
        assert_eq!(w.p12, qp(&[(s(), -1)]));
        assert!(w.p21.is_zero());
        assert!(w.c.is_one());
    }

    /// `lambda(phi_hat_s(T^k E_ii))` summed over the diagonal directly.
    fn oracle_delta(d: &ModuleDescriptor, k: i64, i: u8) -> Scalar {
        let sector = if i == 1 { Sector::E11 } else { Sector::E22 };
        let x = SuperQElement::diag(LaurentPoly::power(k), sector);
        let op = phi_hat(&x, &d.s, d.m).unwrap();
        let (lo, hi) = (Half::from_int(-12), Half::from_int(12));
        let mut acc = Scalar::zero();
        for ((r, _), v) in op.window(lo, hi) {
            for (l, c) in v.coeffs().iter().enumerate() {
                acc += &(c * &d.weight.label(l, r));
            }
        }
        for (l, c) in op.central.coeffs().iter().enumerate() {
            acc += &(c * &d.weight.charges[l]);
        }
        acc
    }

    #[test]
    fn labels_match_pairing_oracle() {
        let mut w2 = GlWeight::zero(2);
        w2.integral[0].except.insert(2, Scalar::q());
        w2.half[0].except.insert(2, -&Scalar::q());
        w2.half[1].except.insert(0, Scalar::from_int(3));
        w2.integral[2].except.insert(-1, Scalar::ratio(1, 2));
        w2.charges[1] = Scalar::from_int(5);
        let d2 = ModuleDescriptor { s: s(), m: 2, weight: w2 };
        for d in [lam_half_one(), charge_one(), d2] {
            let w = labels_of_module(&d).unwrap();
            for k in [-3, -2, -1, 1, 2, 3] {
                for i in [1, 2] {
                    assert_eq!(delta_of(&w, k, i).unwrap(), oracle_delta(&d, k, i), "k={k} i={i}");
                }
            }
        }
    }

    #[test]
    fn tensor_examples() {
        assert!(tensor_labels(&[]).unwrap().is_zero());
        let a = lam_half_one();
        assert_eq!(tensor_labels(std::slice::from_ref(&a)).unwrap(), labels_of_module(&a).unwrap());
        let mut b = charge_one();
        b.s = Scalar::symbol("s2").unwrap();
        let sum = labels_of_module(&a).unwrap().add(&labels_of_module(&b).unwrap());
        assert_eq!(tensor_labels(&[a, b]).unwrap(), sum);
    }

    #[test]
    fn synthesize_examples() {
        assert!(synthesize(&QuasiPolynomial::zero(), &QuasiPolynomial::zero()).unwrap().is_empty());
        let p = qp(&[(&s() * &Scalar::q_pow(-1), 1)]);
        let ds = synthesize(&p, &p).unwrap();
        assert_eq!(ds.len(), 1);
        assert_eq!(ds[0].m, 0);
        assert!(ds[0].weight.charges[0].is_zero());
        assert!(roundtrip(&p, &p).pass);
        let mixed = qp(&[(Scalar::one(), 1), (s(), 2)]);
        let ds = synthesize(&mixed, &QuasiPolynomial::zero()).unwrap();
        assert_eq!(ds.len(), 2);
        assert!(roundtrip(&mixed, &QuasiPolynomial::zero()).pass);
        assert!(roundtrip(&QuasiPolynomial::zero(), &QuasiPolynomial::zero()).pass);
    }

    #[test]
    fn reversed_charge_fails() {
        let w = labels_of_module(&charge_one()).unwrap();
        let rules = SynthesisRules { charge_sign: -1, sum_from_above: false };
        let r = roundtrip_with(&w.p12, &w.p21, rules);
        assert!(!r.pass);
        assert!(roundtrip(&w.p12, &w.p21).pass);
    }

    #[test]
    fn singular_vector_examples() {
        let lp = |x: &str| parse_laurent(x).unwrap();
        let d11 = HalfElement::new(lp("1"), lp("1"));
        assert!(singular_vector_check(&SSqWeight::default(), &d11, DEFAULT_PROBE_WINDOW).unwrap());
        let raw = RawLabels {
            labels: BTreeMap::from([((0, 1), Scalar::from_int(-1))]),
            c: Scalar::zero(),
        };
        assert!(!singular_vector_check(&raw, &d11, DEFAULT_PROBE_WINDOW).unwrap());
        let w = SSqWeight::new(qp(&[(Scalar::q(), 1)]), qp(&[(Scalar::one(), 1)]), Scalar::zero()).unwrap();
        let d = HalfElement::new(lp("T - q"), lp("T - 1"));
        assert!(singular_vector_check(&w, &d, DEFAULT_PROBE_WINDOW).unwrap());
        let bumped = Perturbed { base: &w, l: 2, i: 1, delta: Scalar::one() };
        assert!(!singular_vector_check(&bumped, &d, DEFAULT_PROBE_WINDOW).unwrap());
    }
}
