mod common;

use std::collections::BTreeSet;

use common::*;
use h1loc_core::matgroup::{MatrixGroup, DEFAULT_GROUP_CAP};
use h1loc_core::modring::{ModMatrix, Modulus};
use h1loc_core::Error;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn setting() -> impl Strategy<Value = (Modulus, usize, usize, u64)> {
    (
        prop_oneof![
            Just((Modulus::new(3, 2).unwrap(), 2usize)),
            Just((Modulus::new(3, 1).unwrap(), 3usize)),
            Just((Modulus::new(5, 1).unwrap(), 2usize)),
            Just((Modulus::new(3, 2).unwrap(), 1usize)),
        ],
        1usize..=2,
        any::<u64>(),
    )
        .prop_map(|((m, r), g, s)| (m, r, g, s))
}

fn group_for(m: Modulus, r: usize, gens: usize, seed: u64) -> Option<MatrixGroup> {
    let mut rng = StdRng::seed_from_u64(seed);
    random_small_group(&mut rng, m, r, gens, 600)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn table_agrees_with_matrices((m, r, gens, seed) in setting()) {
        let Some(g) = group_for(m, r, gens, seed) else { return Ok(()) };
        let n = g.order();
        prop_assert!(g.element(0).is_identity());
        for a in 0..n {
            for b in 0..n {
                let c = g.mul(a, b);
                prop_assert!(c < n);
                prop_assert_eq!(g.element(a).mul(g.element(b)).unwrap(), g.element(c).clone());
            }
            prop_assert_eq!(g.mul(a, g.inverse(a)), 0);
            prop_assert_eq!(n % g.element_order(a), 0);
        }
    }

    #[test]
    fn cyclic_subgroups_cover_and_are_maximal((m, r, gens, seed) in setting()) {
        let Some(g) = group_for(m, r, gens, seed) else { return Ok(()) };
        let subs = g.cyclic_subgroups();
        let mut covered: BTreeSet<usize> = subs.iter().flat_map(|c| c.elements.iter().copied()).collect();
        covered.insert(0);
        prop_assert_eq!(covered.len(), g.order());
        for (i, a) in subs.iter().enumerate() {
            prop_assert_eq!(g.order() % a.order, 0);
            prop_assert_eq!(g.cyclic_closure(a.generator), a.elements.clone());
            for (j, b) in subs.iter().enumerate() {
                if i != j {
                    let sa: BTreeSet<_> = a.elements.iter().collect();
                    let sb: BTreeSet<_> = b.elements.iter().collect();
                    prop_assert!(!sa.is_subset(&sb));
                }
            }
        }
    }

    #[test]
    fn block_sum_keeps_order((m, r, gens, seed) in setting(), s in 0usize..=2) {
        let Some(g) = group_for(m, r, gens, seed) else { return Ok(()) };
        let b = g.block_sum(s, DEFAULT_GROUP_CAP).unwrap();
        prop_assert_eq!(b.order(), g.order());
        prop_assert_eq!(b.dim(), g.dim() + s);
    }

    #[test]
    fn sylow_commutes_with_reduction(seed in any::<u64>(), gens in 1usize..=2) {
        let m = Modulus::new(3, 2).unwrap();
        let Some(g) = group_for(m, 2, gens, seed) else { return Ok(()) };
        let sylow = match g.sylow_p(DEFAULT_GROUP_CAP) {
            Ok(s) => s,
            Err(Error::SylowNotClosed { .. }) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let (a, rest) = g.p_part();
        prop_assert_eq!(sylow.order(), 3usize.pow(a));
        prop_assert!(rest % 3 != 0);
        let red = g.reduce_mod(1, DEFAULT_GROUP_CAP).unwrap();
        let image_sylow = match red.image.sylow_p(DEFAULT_GROUP_CAP) {
            Ok(s) => s,
            Err(Error::SylowNotClosed { .. }) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let projected: BTreeSet<Vec<Vec<i64>>> = sylow
            .elements()
            .iter()
            .map(|x| x.reduce_to(red.image.modulus()).to_rows())
            .collect();
        let expected: BTreeSet<Vec<Vec<i64>>> = image_sylow.elements().iter().map(|x| x.to_rows()).collect();
        prop_assert_eq!(projected, expected);
    }
}

#[test]
fn sylow_of_order_eighteen_group() {
    let m = Modulus::new(3, 2).unwrap();
    let g1 = ModMatrix::from_rows(m, &[vec![0, 8], vec![1, 8]]).unwrap();
    let g =
        MatrixGroup::enumerate(m, 2, vec![g1.clone(), ModMatrix::scalar(m, 2, 2)], 100).unwrap();
    assert_eq!(g.order(), 18);
    let s = g.sylow_p(100).unwrap();
    let want = MatrixGroup::enumerate(m, 2, vec![g1, ModMatrix::scalar(m, 2, 4)], 100).unwrap();
    let a: BTreeSet<_> = s.elements().iter().map(|x| x.to_rows()).collect();
    let b: BTreeSet<_> = want.elements().iter().map(|x| x.to_rows()).collect();
    assert_eq!(a, b);
}

#[test]
fn coprime_order_group_has_trivial_sylow() {
    let m = Modulus::new(3, 2).unwrap();
    let g = MatrixGroup::enumerate(m, 1, vec![ModMatrix::scalar(m, 1, 8)], 100).unwrap();
    assert_eq!(g.order(), 2);
    assert_eq!(g.sylow_p(100).unwrap().order(), 1);
}
