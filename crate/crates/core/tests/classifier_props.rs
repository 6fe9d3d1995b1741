use proptest::prelude::*;
use qsigma_core::checks;
use qsigma_core::classifier::{labels_of_module, tensor_labels, SSqWeight};
use qsigma_core::parabolic::HalfElement;
use qsigma_core::sample;
use qsigma_core::{ConventionRegistry, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn points() -> [Scalar; 3] {
    [
        Scalar::s(),
        Scalar::symbol("s2").unwrap(),
        Scalar::symbol("s3").unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn annihilators_are_minimal(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = sample::quasipoly(&mut r, 3, 2);
        prop_assert_eq!(checks::annihilator(&p, 40), Ok(()));
    }

    #[test]
    fn labels_are_consistent_and_round_trip(seed in any::<u64>(), m in 0usize..=2) {
        let mut r = rng(seed);
        let d = sample::module_descriptor(&mut r, Scalar::s(), m);
        let w = labels_of_module(&d).unwrap();
        prop_assert_eq!(w.validate(), Ok(()));
        let reg = ConventionRegistry::default();
        prop_assert_eq!(checks::roundtrip(reg.get("standard").unwrap(), &w), Ok(()));
    }

    #[test]
    fn tensor_product_adds_labels(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ds: Vec<_> = points()
            .into_iter()
            .map(|s| { let m = r.gen_range(0..=1); sample::module_descriptor(&mut r, s, m) })
            .collect();
        let abc = tensor_labels(&ds).unwrap();
        let cba = tensor_labels(&[ds[2].clone(), ds[1].clone(), ds[0].clone()]).unwrap();
        prop_assert_eq!(&abc, &cba);
        let ab = tensor_labels(&ds[..2]).unwrap();
        let c = tensor_labels(&ds[2..]).unwrap();
        prop_assert_eq!(ab.add(&c), abc);
    }

    #[test]
    fn singular_vectors_follow_annihilators(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p12 = sample::quasipoly(&mut r, 2, 1);
        let p21 = sample::quasipoly(&mut r, 2, 1);
        let w = SSqWeight::from_pair(p12, p21);
        prop_assert_eq!(checks::singular_linkage(&w, 3), Ok(()));
    }

    #[test]
    fn g0a_matches_the_bracket(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = HalfElement::new(sample::laurent(&mut r, 3, 2), sample::laurent(&mut r, 3, 2));
        let f = sample::laurent(&mut r, 3, 2);
        let g = sample::laurent(&mut r, 3, 2);
        prop_assert_eq!(checks::g0a_bracket(&d, &f, &g), Ok(()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn parabolic_chain(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = HalfElement::new(sample::laurent(&mut r, 2, 2), sample::laurent(&mut r, 2, 2));
        prop_assert_eq!(checks::parabolic_chain(&d, 1), Ok(()));
    }
}

#[test]
fn mixed_class_round_trip() {
    let mut r = rng(7);
    let ds: Vec<_> = points()
        .into_iter()
        .enumerate()
        .map(|(i, s)| sample::module_descriptor(&mut r, s, i))
        .collect();
    let w = tensor_labels(&ds).unwrap();
    let reg = ConventionRegistry::default();
    assert_eq!(checks::roundtrip(reg.get("standard").unwrap(), &w), Ok(()));
    assert!(checks::roundtrip(reg.get("reversed-charge").unwrap(), &w).is_err() || w.c.is_zero());
}
