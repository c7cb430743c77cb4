mod common;

use common::connected_bounded;
use perturb_core::fragment::{check_fragment, fragment};
use perturb_core::io::write_clusters;
use perturb_core::Graph;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn fragments_meet_the_contract(
        n in 2usize..1500,
        max_deg in 2usize..=12,
        ell in 1usize..=40,
        extra in 0usize..400,
        seed in any::<u64>(),
    ) {
        let g = connected_bounded(n, max_deg, extra, seed);
        let fam = fragment(&g, ell).unwrap();
        prop_assert!(check_fragment(&g, &fam, ell).is_ok());
        let again = fragment(&g, ell).unwrap();
        let (mut a, mut b) = (Vec::new(), Vec::new());
        write_clusters(&fam, &mut a).unwrap();
        write_clusters(&again, &mut b).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn disconnected_input_is_rejected() {
    assert!(fragment(&Graph::empty(5), 2).is_err());
}
