use h1loc_core::modring::{smith_normal_form, IntMatrix};
use proptest::prelude::*;

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn matrix_strategy() -> impl Strategy<Value = IntMatrix> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-20i128..=20, r * c)
            .prop_map(move |e| IntMatrix::new(r, c, e).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_is_a_unimodular_diagonalization(a in matrix_strategy()) {
        let s = smith_normal_form(&a).unwrap();
        prop_assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.s.clone());
        prop_assert_eq!(s.u.det().unwrap().abs(), 1);
        prop_assert_eq!(s.v.det().unwrap().abs(), 1);
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if i != j {
                    prop_assert_eq!(s.s.get(i, j), 0);
                }
            }
        }
        for w in s.invariant_factors.windows(2) {
            prop_assert!(w[0] >= 0 && w[1] >= 0);
            if w[0] == 0 {
                prop_assert_eq!(w[1], 0);
            } else {
                prop_assert_eq!(w[1] % w[0], 0);
            }
        }
    }

    #[test]
    fn leading_factors_match_gcd_of_minors(a in matrix_strategy()) {
        let s = smith_normal_form(&a).unwrap();
        let f = &s.invariant_factors;
        let g1 = a.entries().iter().fold(0, |acc, &x| gcd(acc, x));
        prop_assert_eq!(f.first().copied().unwrap_or(0), g1);
        let mut g2 = 0;
        for i1 in 0..a.rows() {
            for i2 in i1 + 1..a.rows() {
                for j1 in 0..a.cols() {
                    for j2 in j1 + 1..a.cols() {
                        let minor = a.get(i1, j1) * a.get(i2, j2) - a.get(i1, j2) * a.get(i2, j1);
                        g2 = gcd(g2, minor);
                    }
                }
            }
        }
        if f.len() >= 2 {
            prop_assert_eq!(f[0] * f[1], g2);
        }
    }
}

#[test]
fn diag_two_three() {
    let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]).unwrap();
    assert_eq!(smith_normal_form(&a).unwrap().invariant_factors, vec![1, 6]);
}
