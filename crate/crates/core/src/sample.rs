//! Random test data with small, cheap coefficients.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::classifier::ModuleDescriptor;
use crate::glinf::{GlInfElement, GlWeight, LabelSeq};
use crate::half::Half;
use crate::jet::RmElement;
use crate::laurent::LaurentPoly;
use crate::quasipoly::QuasiPolynomial;
use crate::scalar::Scalar;
use crate::superq::{Sector, SuperQElement};

/// Bounds for random elements.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub max_terms: usize,
    pub z_bound: i64,
    pub exp_bound: i64,
    pub max_poly_terms: usize,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            max_terms: 2,
            z_bound: 3,
            exp_bound: 3,
            max_poly_terms: 2,
        }
    }
}

/// `c q^e` with `c` a small nonzero integer and `|e| <= 1`.
pub fn scalar<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    let c = *[-3i64, -2, -1, 1, 2, 3].choose(rng).unwrap();
    &Scalar::from_int(c) * &Scalar::q_pow(rng.gen_range(-1..=1))
}

pub fn laurent<R: Rng + ?Sized>(rng: &mut R, exp_bound: i64, max_terms: usize) -> LaurentPoly {
    let n = rng.gen_range(1..=max_terms);
    let mut p = LaurentPoly::zero();
    while p.len() < n {
        p.add_term(rng.gen_range(-exp_bound..=exp_bound), scalar(rng));
    }
    p
}

fn sectors_of(parity: u8) -> [Sector; 2] {
    if parity == 0 {
        [Sector::E11, Sector::E22]
    } else {
        [Sector::E12, Sector::E21]
    }
}

/// Nonzero element of the given parity; even elements sometimes carry a
/// central part.
pub fn homogeneous<R: Rng + ?Sized>(rng: &mut R, parity: u8, shape: &Shape) -> SuperQElement {
    loop {
        let mut x = SuperQElement::zero();
        for _ in 0..rng.gen_range(1..=shape.max_terms) {
            let sector = *sectors_of(parity).choose(rng).unwrap();
            let n = rng.gen_range(-shape.z_bound..=shape.z_bound);
            x.add_term(n, sector, laurent(rng, shape.exp_bound, shape.max_poly_terms));
        }
        if parity == 0 && rng.gen_bool(0.2) {
            x.add_central(&scalar(rng));
        }
        if !x.is_zero() {
            return x;
        }
    }
}

/// Element of random parity.
pub fn any_homogeneous<R: Rng + ?Sized>(rng: &mut R, shape: &Shape) -> SuperQElement {
    let p = rng.gen_range(0..=1);
    homogeneous(rng, p, shape)
}

/// Nonzero element whose terms all have z-degree `n`, without central part.
pub fn of_z_degree<R: Rng + ?Sized>(rng: &mut R, n: i64, shape: &Shape) -> SuperQElement {
    loop {
        let mut x = SuperQElement::zero();
        for _ in 0..rng.gen_range(1..=shape.max_terms) {
            let sector = *Sector::ALL.choose(rng).unwrap();
            x.add_term(n, sector, laurent(rng, shape.exp_bound, shape.max_poly_terms));
        }
        if !x.is_zero() {
            return x;
        }
    }
}

/// Quasipolynomial with at most `max_bases` bases drawn from a fixed pool
/// and polynomial parts of degree at most `max_degree`.
pub fn quasipoly<R: Rng + ?Sized>(rng: &mut R, max_bases: usize, max_degree: usize) -> QuasiPolynomial {
    let pool = [
        Scalar::one(),
        Scalar::from_int(-1),
        Scalar::from_int(2),
        Scalar::q(),
        Scalar::q_pow(-1),
        Scalar::q_pow(2),
        &Scalar::from_int(2) * &Scalar::q(),
        Scalar::s(),
        &Scalar::s() * &Scalar::q(),
    ];
    let k = rng.gen_range(1..=max_bases);
    let mut out = QuasiPolynomial::zero();
    for b in pool.choose_multiple(rng, k) {
        let deg = rng.gen_range(0..=max_degree);
        let mut coeffs: Vec<Scalar> = (0..deg).map(|_| small_int(rng)).collect();
        coeffs.push(nonzero_int(rng));
        out.add_term(b.clone(), coeffs).unwrap();
    }
    out
}

fn small_int<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    Scalar::from_int(rng.gen_range(-3..=3))
}

fn nonzero_int<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    Scalar::from_int(*[-3i64, -2, -1, 1, 2, 3].choose(rng).unwrap())
}

fn label_seq<R: Rng + ?Sized>(rng: &mut R, neg: Scalar, pos: Scalar, keys: i64) -> LabelSeq {
    let mut seq = LabelSeq {
        neg_tail: neg,
        pos_tail: pos,
        except: Default::default(),
    };
    for _ in 0..rng.gen_range(0..=3) {
        seq.except.insert(rng.gen_range(-keys..=keys), small_int(rng));
    }
    seq.normalized()
}

/// Weight of order `m` with exceptions in `[-3, 3]`; when `quasifinite`
/// the half-integer tails cancel the integer ones.
pub fn gl_weight<R: Rng + ?Sized>(rng: &mut R, m: usize, quasifinite: bool) -> GlWeight {
    let mut w = GlWeight::zero(m);
    for l in 0..=m {
        let (neg, pos) = if rng.gen_bool(0.5) {
            (small_int(rng), small_int(rng))
        } else {
            (Scalar::zero(), Scalar::zero())
        };
        let (hneg, hpos) = if quasifinite {
            (-&neg, -&pos)
        } else {
            (small_int(rng), small_int(rng))
        };
        w.integral[l] = label_seq(rng, neg, pos, 3);
        w.half[l] = label_seq(rng, hneg, hpos, 3);
        if rng.gen_bool(0.5) {
            w.charges[l] = small_int(rng);
        }
    }
    w
}

/// Quasifinite weight with zero tails, order `m`, at base `s`.
pub fn module_descriptor<R: Rng + ?Sized>(rng: &mut R, s: Scalar, m: usize) -> ModuleDescriptor {
    let mut weight = gl_weight(rng, m, true);
    for l in 0..=m {
        for seq in [&mut weight.integral[l], &mut weight.half[l]] {
            seq.neg_tail = Scalar::zero();
            seq.pos_tail = Scalar::zero();
            *seq = seq.normalized();
        }
    }
    ModuleDescriptor { s, m, weight }
}

pub fn jet<R: Rng + ?Sized>(rng: &mut R, m: usize) -> RmElement {
    RmElement::from_coeffs((0..=m).map(|_| small_int(rng)).collect(), m)
}

/// Finite-support element of principal degree `k` with row indices in
/// `[-bound, bound]`.
pub fn gl_of_degree<R: Rng + ?Sized>(rng: &mut R, m: usize, k: Half, bound: i64) -> GlInfElement {
    let mut a = GlInfElement::zero(m);
    for _ in 0..rng.gen_range(1..=3) {
        let i = Half::from_twice(rng.gen_range(-2 * bound..=2 * bound));
        a.add_entry(i, i + k, jet(rng, m));
    }
    a
}

/// Finite-support element with rows and columns in `[-bound, bound]`.
pub fn gl_element<R: Rng + ?Sized>(rng: &mut R, m: usize, bound: i64) -> GlInfElement {
    let mut a = GlInfElement::zero(m);
    for _ in 0..rng.gen_range(1..=3) {
        let i = Half::from_twice(rng.gen_range(-2 * bound..=2 * bound));
        let j = Half::from_twice(rng.gen_range(-2 * bound..=2 * bound));
        a.add_entry(i, j, jet(rng, m));
    }
    if rng.gen_bool(0.3) {
        a.add_central(&jet(rng, m));
    }
    a
}

/// Homogeneous finite-support element of the given parity.
pub fn gl_homogeneous<R: Rng + ?Sized>(rng: &mut R, m: usize, parity: u8, bound: i64) -> GlInfElement {
    let mut a = GlInfElement::zero(m);
    for _ in 0..rng.gen_range(1..=3) {
        let i = Half::from_twice(rng.gen_range(-2 * bound..=2 * bound));
        let mut j = Half::from_twice(rng.gen_range(-2 * bound..=2 * bound));
        if crate::glinf::entry_parity(i, j) != parity {
            j = j + Half::HALF;
        }
        a.add_entry(i, j, jet(rng, m));
    }
    if parity == 0 && rng.gen_bool(0.3) {
        a.add_central(&jet(rng, m));
    }
    a
}
