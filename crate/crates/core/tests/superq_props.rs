use proptest::prelude::*;
use qsigma_core::checks;
use qsigma_core::sample::{self, Shape};
use qsigma_core::superq::{psi, SuperQElement};
use qsigma_core::{Half, Sector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobi_and_antisymmetry(seed in any::<u64>()) {
        let mut r = rng(seed);
        let shape = Shape::default();
        let x = sample::any_homogeneous(&mut r, &shape);
        let y = sample::any_homogeneous(&mut r, &shape);
        let z = sample::any_homogeneous(&mut r, &shape);
        prop_assert_eq!(checks::super_jacobi(&x, &y, &z), Ok(()));
        prop_assert_eq!(checks::super_antisymmetry(&x, &y), Ok(()));
    }

    #[test]
    fn product_matches_action(seed in any::<u64>()) {
        let mut r = rng(seed);
        let shape = Shape::default();
        let x = sample::any_homogeneous(&mut r, &shape).without_central();
        let y = sample::any_homogeneous(&mut r, &shape).without_central();
        prop_assert_eq!(checks::product_oracle(&x, &y, 5), Ok(()));
    }

    #[test]
    fn gradation_is_additive(seed in any::<u64>()) {
        let mut r = rng(seed);
        let shape = Shape::default();
        let x = sample::any_homogeneous(&mut r, &shape);
        let y = sample::any_homogeneous(&mut r, &shape);
        for (a, xa) in x.grade_decompose() {
            for (b, yb) in y.grade_decompose() {
                let br = xa.bracket(&yb);
                for deg in br.grade_decompose().keys() {
                    prop_assert_eq!(*deg, a + b);
                }
            }
        }
        let mut sum = SuperQElement::zero();
        for part in x.grade_decompose().values() {
            sum = &sum + part;
        }
        prop_assert_eq!(sum, x);
    }

    #[test]
    fn psi_vanishes_off_opposite_degrees(seed in any::<u64>(), n in -3i64..=3, k in -3i64..=3) {
        prop_assume!(n + k != 0 || n == 0);
        let mut r = rng(seed);
        let shape = Shape::default();
        let x = sample::of_z_degree(&mut r, n, &shape);
        let y = sample::of_z_degree(&mut r, k, &shape);
        prop_assert!(psi(&x, &y).is_zero());
    }

    #[test]
    fn sigma_is_an_automorphism(seed in any::<u64>()) {
        let mut r = rng(seed);
        let shape = Shape::default();
        let x = sample::any_homogeneous(&mut r, &shape);
        let y = sample::any_homogeneous(&mut r, &shape);
        prop_assert_eq!(x.bracket(&y).sigma(), x.sigma().bracket(&y.sigma()));
        prop_assert_eq!(psi(&x.sigma(), &y.sigma()), psi(&x, &y));
    }

    #[test]
    fn str0_is_supersymmetric(seed in any::<u64>()) {
        let mut r = rng(seed);
        let shape = Shape { z_bound: 0, ..Shape::default() };
        let a = sample::any_homogeneous(&mut r, &shape).without_central();
        let b = sample::any_homogeneous(&mut r, &shape).without_central();
        let (pa, pb) = (a.parity().unwrap(), b.parity().unwrap());
        let sign = if pa * pb == 1 { -1 } else { 1 };
        let lhs = a.assoc_mul(&b).str0();
        let rhs = &b.assoc_mul(&a).str0() * &qsigma_core::Scalar::from_int(sign);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn parse_print_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = sample::any_homogeneous(&mut r, &Shape::default());
        prop_assert_eq!(checks::parse_print(&x), Ok(()));
    }
}

#[test]
fn documented_degrees() {
    assert_eq!(SuperQElement::term_degree(3, Sector::E12), Half::from_twice(7));
    assert_eq!(SuperQElement::term_degree(3, Sector::E21), Half::from_twice(5));
    assert_eq!(SuperQElement::term_degree(2, Sector::E22), Half::from_int(2));
}
