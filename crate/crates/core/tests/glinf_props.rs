use proptest::prelude::*;
use qsigma_core::checks;
use qsigma_core::glinf::{GlInfElement, GlWeight};
use qsigma_core::sample;
use qsigma_core::{Half, Scalar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobi_and_antisymmetry(seed in any::<u64>(), m in 0usize..=2, p in 0u8..8) {
        let mut r = rng(seed);
        let (px, py, pz) = (p & 1, (p >> 1) & 1, (p >> 2) & 1);
        let x = sample::gl_homogeneous(&mut r, m, px, 2);
        let y = sample::gl_homogeneous(&mut r, m, py, 2);
        let z = sample::gl_homogeneous(&mut r, m, pz, 2);
        prop_assert_eq!(checks::gl_jacobi(&x, &y, &z, px, py), Ok(()));
        prop_assert_eq!(checks::gl_antisymmetry(&x, &y, px, py), Ok(()));
    }

    #[test]
    fn sp2_windowed(seed in any::<u64>(), twice_k in 1i64..=3, m in 0usize..=1) {
        let mut r = rng(seed);
        let k = Half::from_twice(twice_k);
        let a = sample::gl_of_degree(&mut r, m, -k, 3);
        prop_assert_eq!(checks::sp2(&a, k), Ok(()));
    }

    #[test]
    fn quasifinite_matches_scan(seed in any::<u64>(), m in 0usize..=2, qf in any::<bool>()) {
        let mut r = rng(seed);
        let w = sample::gl_weight(&mut r, m, qf);
        prop_assert_eq!(checks::quasifinite_scan(&w, 6), Ok(()));
        if qf {
            prop_assert!(w.quasifinite().quasifinite);
        }
    }

    #[test]
    fn quasifinite_ignores_tail_consistent_exceptions(seed in any::<u64>(), key in -8i64..=8) {
        let mut r = rng(seed);
        let w = sample::gl_weight(&mut r, 1, true);
        let mut wider = w.clone();
        for l in 0..=1 {
            let v = w.integral[l].get(key);
            wider.integral[l].except.insert(key, v);
        }
        prop_assert_eq!(w.quasifinite().quasifinite, wider.quasifinite().quasifinite);
        let far = |rep: qsigma_core::glinf::QuasifiniteReport| rep.violations.len();
        prop_assert_eq!(far(w.quasifinite()), far(wider.quasifinite()));
    }
}

#[test]
fn sector_map_respects_composition() {
    assert_eq!(checks::sector_composition(), Ok(()));
}

#[test]
fn zero_is_annihilated() {
    assert_eq!(checks::sp2(&GlInfElement::zero(0), Half::HALF), Ok(()));
}

#[test]
fn documented_quasifinite_examples() {
    let w = GlWeight::zero(0);
    let rep = w.quasifinite();
    assert!(rep.quasifinite && rep.violations.is_empty());
    let mut w = GlWeight::zero(0);
    w.charges[0] = Scalar::one();
    let rep = w.quasifinite();
    assert!(rep.quasifinite);
    assert_eq!(rep.violations.len(), 1);
    assert_eq!(rep.violations[0].k, Half::HALF);
    let mut w = GlWeight::zero(0);
    w.integral[0].neg_tail = Scalar::one();
    w.integral[0].pos_tail = Scalar::one();
    assert!(!w.quasifinite().quasifinite);
}
