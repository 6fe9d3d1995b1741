//! Single-case property checks shared by the test suites and the CLI.
//! Each returns `Err` with a short description of the first discrepancy.

use std::collections::BTreeMap;

use crate::classifier::{check_qf, Perturbed, SSqWeight};
use crate::convention::SynthesisConvention;
use crate::embedding::{cocycle, correction, module_action, phi, phi_hat, SuperLineVector};
use crate::glinf::{sector_map, sp2_window, sp2_witness, GlInfElement, GlWeight};
use crate::half::Half;
use crate::jet::RmElement;
use crate::laurent::LaurentPoly;
use crate::parabolic::{
    g0a_element, min_parabolic_slice, singular_vector_check, HalfElement, DEFAULT_PROBE_WINDOW,
};
use crate::quasipoly::{annihilates_window, QuasiPolynomial};
use crate::recurrence::linear;
use crate::scalar::Scalar;
use crate::superq::{psi, Sector, SuperQElement};
use crate::syntax::{element_string, parse_element};

pub type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sign(a: u8, b: u8) -> Scalar {
    Scalar::from_int(if a * b == 1 { -1 } else { 1 })
}

fn parity_of(x: &SuperQElement) -> Result<u8, String> {
    x.parity().ok_or_else(|| format!("{x} is not homogeneous"))
}

/// `[x, [y, z]] = [[x, y], z] + (-1)^{|x||y|} [y, [x, z]]`.
pub fn super_jacobi(x: &SuperQElement, y: &SuperQElement, z: &SuperQElement) -> Check {
    let (px, py) = (parity_of(x)?, parity_of(y)?);
    let lhs = x.bracket(&y.bracket(z));
    let rhs = &x.bracket(y).bracket(z) + &y.bracket(&x.bracket(z)).scale(&sign(px, py));
    ensure(lhs == rhs, || format!("Jacobi fails on {x} | {y} | {z}: {lhs} vs {rhs}"))
}

/// `[x, y] = -(-1)^{|x||y|} [y, x]`.
pub fn super_antisymmetry(x: &SuperQElement, y: &SuperQElement) -> Check {
    let (px, py) = (parity_of(x)?, parity_of(y)?);
    let lhs = x.bracket(y);
    let rhs = -&y.bracket(x).scale(&sign(px, py));
    ensure(lhs == rhs, || format!("antisymmetry fails on {x} | {y}"))
}

/// The product acts on `C[z, z^-1]^{1|1}` as the composition of actions.
pub fn product_oracle(x: &SuperQElement, y: &SuperQElement, bound: i64) -> Check {
    let xy = x.assoc_mul(y);
    for k in -bound..=bound {
        for c in [1u8, 2] {
            let v = y.act_on_superline((k, c));
            let lhs = xy.act_on_superline((k, c));
            let rhs = x.act_on_vector(&v);
            ensure(lhs == rhs, || format!("product oracle fails on {x} | {y} at ({k}, {c})"))?;
        }
    }
    Ok(())
}

/// `C(phi(x), phi(y)) = psi(x, y)`, as literally stated.
pub fn cocycle_pullback(x: &SuperQElement, y: &SuperQElement, s: &Scalar) -> Check {
    let a = phi(x, s, 0).map_err(|e| e.to_string())?;
    let b = phi(y, s, 0).map_err(|e| e.to_string())?;
    let lhs = cocycle(&a, &b);
    let rhs = RmElement::constant(psi(x, y), 0);
    ensure(lhs == rhs, || format!("C(phi x, phi y) = {lhs} but psi = {rhs} for {x} | {y}"))
}

/// `C(phi(x), phi(y)) = psi(x, y) + kappa([x, y])`, where `kappa` is the
/// central correction of `phi_hat`.
pub fn cocycle_pullback_corrected(x: &SuperQElement, y: &SuperQElement, s: &Scalar) -> Check {
    let a = phi(x, s, 0).map_err(|e| e.to_string())?;
    let b = phi(y, s, 0).map_err(|e| e.to_string())?;
    let lhs = cocycle(&a, &b);
    let rhs = &RmElement::constant(psi(x, y), 0) + &correction(&x.bracket(y), s, 0);
    ensure(lhs == rhs, || format!("corrected pullback fails on {x} | {y}: {lhs} vs {rhs}"))
}

/// `phi_hat([x, y]) = [phi_hat(x), phi_hat(y)]` on `[-w, w]`, central parts
/// included.
pub fn homomorphism(x: &SuperQElement, y: &SuperQElement, s: &Scalar, m: usize, w: i64) -> Check {
    let (lo, hi) = (Half::from_int(-w), Half::from_int(w));
    let a = phi_hat(x, s, m).map_err(|e| e.to_string())?;
    let b = phi_hat(y, s, m).map_err(|e| e.to_string())?;
    let lhs = phi_hat(&x.bracket(y), s, m).map_err(|e| e.to_string())?;
    ensure(lhs.window(lo, hi) == a.bracket_window(&b, lo, hi), || {
        format!("window mismatch for {x} | {y} at m = {m}")
    })?;
    let c = cocycle(&a, &b);
    ensure(lhs.central == c, || {
        format!("central mismatch for {x} | {y} at m = {m}: {} vs {c}", lhs.central)
    })
}

/// `module_action(x, v_i)` equals column `i` of `phi(x)`.
pub fn intertwining(x: &SuperQElement, s: &Scalar, w: i64) -> Check {
    let op = phi(x, s, 0).map_err(|e| e.to_string())?;
    let band = op.bandwidth();
    let mut i = Half::from_int(-w);
    while i <= Half::from_int(w) {
        let v = SuperLineVector::from([(i, Scalar::one())]);
        let got = module_action(x, s, &v).map_err(|e| e.to_string())?;
        let mut col = SuperLineVector::new();
        let mut r = i - band;
        while r <= i + band {
            let e = op.entry(r, i);
            if !e.is_zero() {
                col.insert(r, e.coeff(0).clone());
            }
            r = r + Half::HALF;
        }
        ensure(got == col, || format!("intertwining fails for {x} at v_{i}"))?;
        i = i + Half::HALF;
    }
    Ok(())
}

/// Principal degrees of `phi(x)` match `grade_decompose(x)`.
pub fn gradation_compatibility(x: &SuperQElement, s: &Scalar, m: usize, w: i64) -> Check {
    compare_degrees(x, s, m, w, |x| x.grade_decompose())
}

/// `z^n E12` in degree `n - 1/2` and `z^n E21` in degree `n + 1/2`; even
/// terms as in `grade_decompose`.
pub fn reflected_grading(x: &SuperQElement) -> BTreeMap<Half, SuperQElement> {
    let mut out: BTreeMap<Half, SuperQElement> = BTreeMap::new();
    for (n, sector, f) in x.terms() {
        let shift = match sector {
            Sector::E12 => -Half::HALF,
            Sector::E21 => Half::HALF,
            _ => Half::ZERO,
        };
        out.entry(Half::from_int(n) + shift)
            .or_default()
            .add_term(n, sector, f.clone());
    }
    out
}

/// Principal degrees of `phi(x)` match [`reflected_grading`].
pub fn reflected_gradation_compatibility(x: &SuperQElement, s: &Scalar, m: usize, w: i64) -> Check {
    compare_degrees(x, s, m, w, reflected_grading)
}

fn compare_degrees(
    x: &SuperQElement,
    s: &Scalar,
    m: usize,
    w: i64,
    grading: impl Fn(&SuperQElement) -> BTreeMap<Half, SuperQElement>,
) -> Check {
    let (lo, hi) = (Half::from_int(-w), Half::from_int(w));
    let x = x.without_central();
    let whole = phi(&x, s, m).map_err(|e| e.to_string())?.to_element(lo, hi);
    let by_degree = whole.principal_degree();
    for (deg, part) in grading(&x) {
        let img = phi(&part, s, m).map_err(|e| e.to_string())?.to_element(lo, hi);
        let expected = by_degree.get(&deg).cloned().unwrap_or_else(|| GlInfElement::zero(m));
        ensure(img == expected, || format!("degree {deg} of phi({x}) differs"))?;
    }
    let total = by_degree.values().map(|e| e.entries().count()).sum::<usize>();
    ensure(total == whole.entries().count(), || format!("phi({x}) has stray degrees"))
}

pub fn injectivity(x: &SuperQElement, s: &Scalar) -> Check {
    let r = crate::embedding::kernel_test(x, s, 0).map_err(|e| e.to_string())?;
    ensure(r.in_kernel == x.without_central().is_zero(), || {
        format!("kernel test disagrees for {x}")
    })
}

/// The minimal annihilator kills `P` on `[-window, window]` and no divisor
/// with one root factor removed does.
pub fn annihilator(p: &QuasiPolynomial, window: i64) -> Check {
    let b = p.min_annihilator();
    ensure(annihilates_window(&b, p, window), || format!("{b} does not annihilate {p}"))?;
    for base in p.bases() {
        let smaller = b
            .div_exact(&linear(base))
            .ok_or_else(|| format!("x - {base} does not divide {b}"))?;
        ensure(!annihilates_window(&smaller, p, window), || {
            format!("{b} without x - {base} still annihilates {p}")
        })?;
    }
    Ok(())
}

/// `d = (b12(T), b21(T))` from `check_qf` is singular for `w`, and stops
/// being so once any label `Delta_{n,i}`, `|n| <= bound`, is shifted.
pub fn singular_linkage(w: &SSqWeight, bound: i64) -> Check {
    let r = check_qf(w).map_err(|e| e.to_string())?;
    let d = r.half_element().ok_or("weight is not quasifinite")?;
    let ok = singular_vector_check(w, &d, DEFAULT_PROBE_WINDOW).map_err(|e| e.to_string())?;
    ensure(ok, || format!("{d} is not singular for {w}"))?;
    for n in -bound..=bound {
        for i in [1u8, 2] {
            let bumped = Perturbed {
                base: w,
                l: n,
                i,
                delta: Scalar::one(),
            };
            let still = singular_vector_check(&bumped, &d, DEFAULT_PROBE_WINDOW)
                .map_err(|e| e.to_string())?;
            ensure(!still, || format!("shifting Delta_{n},{i} keeps {d} singular for {w}"))?;
        }
    }
    Ok(())
}

/// `gl_quasifinite` against a direct scan of the relations over a wide window.
pub fn quasifinite_scan(w: &GlWeight, margin: i64) -> Check {
    let report = w.quasifinite();
    let (lo, hi) = w.scan_window();
    let (wlo, whi) = (lo - Half::from_int(margin), hi + Half::from_int(margin));
    let mut inside = Vec::new();
    let mut edge_failures = 0;
    for l in 0..=w.m {
        let mut k = wlo;
        while k <= whi {
            let mut v = &w.label(l, k) + &w.label(l, k - Half::HALF);
            if k == Half::HALF {
                v += &w.charges[l];
            }
            if !v.is_zero() {
                if k >= lo && k <= hi {
                    inside.push((l, k, v));
                } else if k <= wlo + Half::ONE || k >= whi - Half::ONE {
                    edge_failures += 1;
                }
            }
            k = k + Half::HALF;
        }
    }
    let listed: Vec<_> = report
        .violations
        .iter()
        .map(|v| (v.l, v.k, v.value.clone()))
        .collect();
    ensure(listed == inside, || "violation lists differ".to_string())?;
    ensure(report.quasifinite == (edge_failures == 0), || {
        format!("verdict {} but {edge_failures} violations at the window edges", report.quasifinite)
    })
}

/// Round trip under `conv`; the report's diff lines become the error.
pub fn roundtrip(conv: &dyn SynthesisConvention, w: &SSqWeight) -> Check {
    let r = conv.roundtrip(&w.p12, &w.p21);
    ensure(r.pass, || r.diffs.join("; "))
}

/// A nonzero `A` of degree `-k` has a nonzero bracket with some `E_{s-1/2, s}`
/// in a window exceeding its support by `k + 1`.
pub fn sp2(a: &GlInfElement, k: Half) -> Check {
    let (lo, hi) = sp2_window(a, k + Half::ONE);
    let w = sp2_witness(a, lo, hi);
    ensure(w.is_some() == !a.is_zero(), || format!("SP2 fails for {a}"))
}

/// Brackets commute with the identification of sectors with matrix blocks.
pub fn sector_composition() -> Check {
    for a in Sector::ALL {
        for b in Sector::ALL {
            let one = RmElement::one(0);
            for (i, j, k, l) in [(0, 1, 1, 3), (2, -1, 0, 2), (1, 1, 1, 1)] {
                let (x1, x2) = sector_map(i, j, a);
                let (y1, y2) = sector_map(k, l, b);
                let mut prod = GlInfElement::zero(0);
                if x2 == y1 {
                    prod.add_entry(x1, y2, one.clone());
                }
                let mut expected = GlInfElement::zero(0);
                if let Some(c) = a.compose(b) {
                    if j == k {
                        let (r, t) = sector_map(i, l, c);
                        expected.add_entry(r, t, one.clone());
                    }
                }
                ensure(prod == expected, || format!("{a:?} * {b:?} at {i},{j},{k},{l}"))?;
            }
        }
    }
    Ok(())
}

pub fn gl_jacobi(x: &GlInfElement, y: &GlInfElement, z: &GlInfElement, px: u8, py: u8) -> Check {
    let br = |a: &GlInfElement, b: &GlInfElement| a.bracket(b).map_err(|e| e.to_string());
    let lhs = br(x, &br(y, z)?)?;
    let sgn = RmElement::constant(sign(px, py), x.order());
    let rhs = &br(&br(x, y)?, z)? + &br(y, &br(x, z)?)?.scale(&sgn);
    ensure(lhs == rhs, || format!("Jacobi fails on {x} | {y} | {z}"))
}

pub fn gl_antisymmetry(x: &GlInfElement, y: &GlInfElement, px: u8, py: u8) -> Check {
    let lhs = x.bracket(y).map_err(|e| e.to_string())?;
    let sgn = RmElement::constant(-&sign(px, py), x.order());
    let rhs = y.bracket(x).map_err(|e| e.to_string())?.scale(&sgn);
    ensure(lhs == rhs, || format!("antisymmetry fails on {x} | {y}"))
}

/// `g0a_element(d, f, g) = [f E12 + z g E21, d]`.
pub fn g0a_bracket(d: &HalfElement, f: &LaurentPoly, g: &LaurentPoly) -> Check {
    let mut a = SuperQElement::zero();
    a.add_term(0, Sector::E12, f.clone());
    a.add_term(1, Sector::E21, g.clone());
    let lhs = a.bracket(&d.to_element());
    let rhs = g0a_element(d, f, g);
    ensure(lhs == rhs, || format!("g0a mismatch for {d}, f = {f}, g = {g}"))
}

/// A nonzero slice at depth `k` forces nonzero slices at every smaller depth.
pub fn parabolic_chain(d: &HalfElement, window: i64) -> Check {
    let mut prev_nonzero = true;
    let mut k = Half::HALF;
    while k <= crate::parabolic::MAX_SLICE_DEPTH {
        let slice = min_parabolic_slice(d, k, window).map_err(|e| e.to_string())?;
        ensure(prev_nonzero || slice.is_zero(), || format!("chain breaks at depth {k} for {d}"))?;
        prev_nonzero = !slice.is_zero();
        k = k + Half::HALF;
    }
    Ok(())
}

pub fn parse_print(x: &SuperQElement) -> Check {
    let text = element_string(x);
    let back = parse_element(&text).map_err(|e| format!("{text}: {e}"))?;
    ensure(back == *x, || format!("{text} parses to {back}"))
}
