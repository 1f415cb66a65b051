mod common;

use std::collections::HashSet;

use common::*;
use h1loc_core::modring::{
    image_submodule, kernel_submodule, solve_linear, solve_linear_lifted, ModMatrix, ModVector,
    Modulus, Submodule,
};
use proptest::prelude::*;

fn m9() -> Modulus {
    Modulus::new(3, 2).unwrap()
}

fn modulus_strategy() -> impl Strategy<Value = Modulus> {
    prop_oneof![
        Just(Modulus::new(3, 1).unwrap()),
        Just(Modulus::new(3, 2).unwrap()),
        Just(Modulus::new(5, 1).unwrap()),
        Just(Modulus::new(5, 2).unwrap()),
        Just(Modulus::new(3, 3).unwrap()),
    ]
}

fn matrix_in(m: Modulus, rows: usize, cols: usize) -> impl Strategy<Value = ModMatrix> {
    proptest::collection::vec(any::<i64>(), rows * cols).prop_map(move |e| {
        ModMatrix::new(m, rows, cols, e.into_iter().map(|x| x % 1000).collect()).unwrap()
    })
}

fn vectors_in(m: Modulus, rank: usize, count: usize) -> impl Strategy<Value = Vec<ModVector>> {
    proptest::collection::vec(proptest::collection::vec(-100i64..100, rank), 0..=count)
        .prop_map(move |vs| vs.into_iter().map(|v| ModVector::new(m, v)).collect())
}

/// Span of the generators by closure under addition (every submodule of a
/// finite abelian p-group is closed under addition, so this is the subgroup).
fn brute_span(m: Modulus, rank: usize, gens: &[ModVector]) -> HashSet<Vec<i64>> {
    let q = m.value();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut frontier = vec![vec![0; rank]];
    seen.insert(vec![0; rank]);
    while let Some(v) = frontier.pop() {
        for g in gens {
            let w = add(&v, g.entries(), q);
            if seen.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    seen
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn solve_matches_exhaustive_search_mod_9(a in matrix_in(m9(), 2, 2), b in proptest::collection::vec(0i64..9, 2)) {
        let rows = a.to_rows();
        let solvable = all_vectors(9, 2).iter().any(|x| mat_vec(&rows, x, 9) == b);
        let bv = ModVector::new(m9(), b.clone());
        let sol = solve_linear(&a, &bv).unwrap();
        prop_assert_eq!(sol.solution.is_some(), solvable);
        if let Some(x) = &sol.solution {
            prop_assert_eq!(a.mul_vec(x).unwrap(), bv.clone());
        }
        let kernel_size = all_vectors(9, 2).iter().filter(|x| mat_vec(&rows, x, 9) == vec![0, 0]).count();
        prop_assert_eq!(sol.kernel.order().unwrap(), kernel_size as u128);
        prop_assert_eq!(solve_linear_lifted(&a, &bv).unwrap().solution.is_some(), solvable);
    }

    #[test]
    fn modular_and_lifted_routes_agree(
        (a, b) in (modulus_strategy(), 1usize..=4, 1usize..=4).prop_flat_map(|(m, r, c)| {
            (matrix_in(m, r, c), proptest::collection::vec(-50i64..50, r).prop_map(move |v| ModVector::new(m, v)))
        })
    ) {
        let x = solve_linear(&a, &b).unwrap();
        let y = solve_linear_lifted(&a, &b).unwrap();
        prop_assert_eq!(x.solution.is_some(), y.solution.is_some());
        prop_assert_eq!(&x.kernel, &y.kernel);
        if let Some(s) = &y.solution {
            prop_assert_eq!(a.mul_vec(s).unwrap(), b.clone());
        }
    }

    #[test]
    fn index_times_order_is_everything(
        (m, rank, gens) in (modulus_strategy(), 1usize..=4).prop_flat_map(|(m, r)| (Just(m), Just(r), vectors_in(m, r, 5)))
    ) {
        let s = Submodule::new(m, rank, &gens).unwrap();
        prop_assert_eq!(s.order_exponent() + s.index_exponent(), m.n() as u64 * rank as u64);
        let again = Submodule::new(m, rank, &s.generators()).unwrap();
        prop_assert_eq!(&again, &s);
        for g in &gens {
            prop_assert!(s.contains(g).unwrap());
        }
    }

    #[test]
    fn lattice_operations_match_brute_force(
        (g1, g2) in (vectors_in(m9(), 2, 3), vectors_in(m9(), 2, 3))
    ) {
        let m = m9();
        let (a, b) = (Submodule::new(m, 2, &g1).unwrap(), Submodule::new(m, 2, &g2).unwrap());
        let (sa, sb) = (brute_span(m, 2, &g1), brute_span(m, 2, &g2));
        prop_assert_eq!(a.order().unwrap(), sa.len() as u128);
        let meet = a.intersect(&b).unwrap();
        prop_assert_eq!(meet.order().unwrap(), sa.intersection(&sb).count() as u128);
        let all: Vec<ModVector> = g1.iter().chain(&g2).cloned().collect();
        prop_assert_eq!(a.sum(&b).unwrap().order().unwrap(), brute_span(m, 2, &all).len() as u128);
        for v in all_vectors(9, 2) {
            let mv = ModVector::new(m, v.clone());
            prop_assert_eq!(a.contains(&mv).unwrap(), sa.contains(&v));
        }
    }

    #[test]
    fn lift_then_reduce_is_identity(
        a in (modulus_strategy(), 1usize..=5, 1usize..=5).prop_flat_map(|(m, r, c)| matrix_in(m, r, c))
    ) {
        prop_assert_eq!(a.lift().reduce(a.modulus()), a);
    }

    #[test]
    fn image_and_kernel_orders_multiply(
        a in (modulus_strategy(), 1usize..=4).prop_flat_map(|(m, r)| matrix_in(m, r, r))
    ) {
        let m = a.modulus();
        let img = image_submodule(&a).unwrap();
        let ker = kernel_submodule(&a).unwrap();
        prop_assert_eq!(img.order_exponent() + ker.order_exponent(), m.n() as u64 * a.cols() as u64);
        for g in ker.generators() {
            prop_assert!(a.mul_vec(&g).unwrap().is_zero());
        }
    }
}

#[test]
fn sum_of_images_is_v() {
    let m = m9();
    let g1 = ModMatrix::from_rows(m, &[vec![0, 8], vec![1, 8]]).unwrap();
    let g2 = ModMatrix::scalar(m, 2, 4);
    let s = image_submodule(&g2.minus_identity().unwrap())
        .unwrap()
        .sum(&image_submodule(&g1.minus_identity().unwrap()).unwrap())
        .unwrap();
    let v = kernel_submodule(&ModMatrix::from_rows(m, &[vec![3, 3]]).unwrap()).unwrap();
    assert_eq!(s, v);
    assert!(v.contains(&ModVector::new(m, [1, 2])).unwrap());
    assert_eq!(Submodule::full(m, 2).intersect(&s).unwrap(), s);
}

#[test]
fn lifted_route_at_full_width() {
    use rand::{rngs::StdRng, Rng, SeedableRng};
    let m = Modulus::new(13, 3).unwrap();
    let mut rng = StdRng::seed_from_u64(36);
    for case in 0..3 {
        let a = random_matrix(&mut rng, m, 36);
        // Multiply some rows by p and p^2 so the system has nontrivial torsion.
        let mut rows = a.to_rows();
        for (i, row) in rows.iter_mut().enumerate().take(12) {
            let f = if i % 2 == 0 { 13 } else { 169 };
            row.iter_mut().for_each(|x| *x *= f);
        }
        if case == 2 {
            rows[35] = rows[0].clone();
        }
        let a = ModMatrix::from_rows(m, &rows).unwrap();
        let x0 = ModVector::new(m, (0..36).map(|_| rng.gen_range(0..2197)));
        let b = a.mul_vec(&x0).unwrap();
        let x = solve_linear(&a, &b).unwrap();
        let y = solve_linear_lifted(&a, &b).unwrap();
        assert_eq!(x.kernel, y.kernel, "case {case}");
        let s = y.solution.expect("solvable by construction");
        assert_eq!(a.mul_vec(&s).unwrap(), b, "case {case}");
    }
}
