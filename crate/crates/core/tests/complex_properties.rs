mod common;

use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;
use torsion_core::metrized_complex::{check_dlap_identity, check_rt_identity, duality_products};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rt_and_dlap_hold(seed in any::<u64>()) {
        let c = common::random_complex(&mut common::rng(seed), 5, 4, true);
        let rt = check_rt_identity(&c).unwrap();
        prop_assert!(rt.holds, "{:?} {:?}", c, rt);
        let dl = check_dlap_identity(&c).unwrap();
        prop_assert!(dl.holds, "{:?} {:?}", c, dl);
    }

    #[test]
    fn regulator_routes_agree(seed in any::<u64>()) {
        let c = common::random_complex(&mut common::rng(seed), 5, 4, true);
        for j in 0..=c.top_degree() {
            let h = c.cohomology(j).unwrap();
            if h.free_rank > 0 {
                prop_assert_eq!(&h.regulator_sq, &c.regulator_sq_by_quotient(j).unwrap());
            } else {
                prop_assert!(h.regulator_sq.is_one());
            }
        }
    }

    #[test]
    fn duality_product_law(seed in any::<u64>()) {
        let c = common::random_complex(&mut common::rng(seed), 5, 4, true);
        for p in duality_products(&c).unwrap() {
            prop_assert_eq!(p, BigRational::one());
        }
    }

    #[test]
    fn euler_characteristic(seed in any::<u64>()) {
        let c = common::random_complex(&mut common::rng(seed), 6, 4, false);
        let mut chi_h = 0i64;
        let mut chi_a = 0i64;
        for (j, h) in c.cohomology_all().unwrap().iter().enumerate() {
            let s = if j % 2 == 0 { 1 } else { -1 };
            chi_h += s * h.free_rank as i64;
            chi_a += s * c.dims()[j] as i64;
        }
        prop_assert_eq!(chi_h, chi_a);
    }

    #[test]
    fn invariant_under_change_of_basis(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let c = common::random_complex(&mut rng, 4, 4, true);
        let c2 = common::change_basis(&c, &mut rng);
        prop_assert_eq!(c.cohomology_all().unwrap(), c2.cohomology_all().unwrap());
        let (a, b) = (check_rt_identity(&c).unwrap(), check_rt_identity(&c2).unwrap());
        prop_assert!(b.holds);
        prop_assert_eq!(a.rhs, b.rhs);
        prop_assert!(check_dlap_identity(&c2).unwrap().holds);
    }
}
