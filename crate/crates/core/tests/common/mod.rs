#![allow(dead_code)]

use h1loc_core::matgroup::MatrixGroup;
use h1loc_core::modring::{ModMatrix, Modulus};
use rand::rngs::StdRng;
use rand::Rng;

/// Plain integer-vector helpers, independent of the library's arithmetic.
pub fn vec_mod(v: &[i64], q: i64) -> Vec<i64> {
    v.iter().map(|x| x.rem_euclid(q)).collect()
}

pub fn mat_vec(a: &[Vec<i64>], v: &[i64], q: i64) -> Vec<i64> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .map(|(x, y)| x * y)
                .sum::<i64>()
                .rem_euclid(q)
        })
        .collect()
}

pub fn add(a: &[i64], b: &[i64], q: i64) -> Vec<i64> {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x + y).rem_euclid(q))
        .collect()
}

pub fn sub(a: &[i64], b: &[i64], q: i64) -> Vec<i64> {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).rem_euclid(q))
        .collect()
}

/// Every vector of (Z/qZ)^r in lexicographic order.
pub fn all_vectors(q: i64, r: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..q).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

pub fn random_matrix(rng: &mut StdRng, m: Modulus, r: usize) -> ModMatrix {
    let q = m.value();
    let rows: Vec<Vec<i64>> = (0..r)
        .map(|_| (0..r).map(|_| rng.gen_range(0..q)).collect())
        .collect();
    ModMatrix::from_rows(m, &rows).unwrap()
}

pub fn random_invertible(rng: &mut StdRng, m: Modulus, r: usize) -> ModMatrix {
    loop {
        let g = random_matrix(rng, m, r);
        if g.is_invertible() {
            return g;
        }
    }
}

/// A random group with at most `max_order` elements, or `None` after many
/// attempts.
pub fn random_small_group(
    rng: &mut StdRng,
    m: Modulus,
    r: usize,
    gens: usize,
    max_order: usize,
) -> Option<MatrixGroup> {
    for _ in 0..200 {
        let g: Vec<ModMatrix> = (0..gens).map(|_| random_invertible(rng, m, r)).collect();
        if let Ok(group) = MatrixGroup::enumerate(m, r, g, max_order) {
            return Some(group);
        }
    }
    None
}

/// The acting matrices of `group` as plain integer matrices mod q.
pub fn plain_action(group: &MatrixGroup, q: i64) -> Vec<Vec<Vec<i64>>> {
    group
        .elements()
        .iter()
        .map(|g| {
            g.to_rows()
                .into_iter()
                .map(|row| vec_mod(&row, q))
                .collect()
        })
        .collect()
}
