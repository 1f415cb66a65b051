//! Finite subgroups of GL_r(Z/p^nZ) enumerated from generators.

mod cyclic;
mod integer;
mod reduce;
mod sylow;

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::modring::{ModMatrix, Modulus};

pub use cyclic::CyclicSubgroup;
pub use integer::IntegerGroup;
pub use reduce::ReductionResult;

pub const DEFAULT_GROUP_CAP: usize = 4096;

/// A finite matrix group with its full element table.
///
/// Elements are discovered breadth-first: starting from the identity (index
/// 0), each element is multiplied on the right by every generator in order,
/// and new products are appended. Every downstream table inherits this order.
#[derive(Debug, Clone)]
pub struct MatrixGroup {
    modulus: Modulus,
    dim: usize,
    generators: Vec<ModMatrix>,
    elements: Vec<ModMatrix>,
    index: HashMap<ModMatrix, usize>,
    /// For each non-identity element, the element and generator it was
    /// discovered from: `e = parent * generator`.
    parent: Vec<Option<(usize, usize)>>,
    /// `right[e][s]` is the index of `e * generator_s`.
    right: Vec<Vec<u32>>,
    mul: Vec<u32>,
}

impl MatrixGroup {
    pub fn enumerate(
        modulus: Modulus,
        dim: usize,
        generators: Vec<ModMatrix>,
        cap: usize,
    ) -> Result<MatrixGroup> {
        if dim == 0 {
            return Err(Error::Dimension("matrix groups need dimension >= 1".into()));
        }
        if cap == 0 {
            return Err(Error::Invalid("group cap must be at least 1".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.modulus() != modulus {
                return Err(Error::ModulusMismatch {
                    left: modulus.value(),
                    right: g.modulus().value(),
                });
            }
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::Dimension(format!(
                    "generator {i} is {}x{}, expected {dim}x{dim}",
                    g.rows(),
                    g.cols()
                )));
            }
            if !g.is_invertible() {
                return Err(Error::NotInvertible(i));
            }
        }
        let id = ModMatrix::identity(modulus, dim);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut parent = vec![None];
        let mut right: Vec<Vec<u32>> = Vec::new();
        let mut i = 0;
        while i < elements.len() {
            let mut row = Vec::with_capacity(generators.len());
            for (s, g) in generators.iter().enumerate() {
                let prod = elements[i].mul(g)?;
                let k = match index.get(&prod) {
                    Some(&k) => k,
                    None => {
                        if elements.len() == cap {
                            return Err(Error::GroupTooLarge { cap });
                        }
                        let k = elements.len();
                        index.insert(prod.clone(), k);
                        elements.push(prod);
                        parent.push(Some((i, s)));
                        k
                    }
                };
                row.push(k as u32);
            }
            right.push(row);
            i += 1;
        }
        // mul[a][b] = mul[a][parent(b)] * generator(b), filled in discovery order.
        let n = elements.len();
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            mul[a * n] = a as u32;
            for b in 1..n {
                let (pb, s) = parent[b].expect("non-identity");
                let x = mul[a * n + pb] as usize;
                mul[a * n + b] = right[x][s];
            }
        }
        Ok(MatrixGroup {
            modulus,
            dim,
            generators,
            elements,
            index,
            parent,
            right,
            mul,
        })
    }

    pub fn trivial(modulus: Modulus, dim: usize) -> Result<MatrixGroup> {
        Self::enumerate(modulus, dim, Vec::new(), 1)
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn generators(&self) -> &[ModMatrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[ModMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &ModMatrix {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &ModMatrix) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Element index of each generator.
    pub fn generator_indices(&self) -> Vec<usize> {
        (0..self.generators.len())
            .map(|s| self.right[0][s] as usize)
            .collect()
    }

    /// `(parent, generator)` with `element = parent * generator`; `None` for
    /// the identity.
    pub fn parent(&self, i: usize) -> Option<(usize, usize)> {
        self.parent[i]
    }

    /// Index of `element_i * generator_s`.
    pub fn right_by_generator(&self, i: usize, s: usize) -> usize {
        self.right[i][s] as usize
    }

    /// Normal-form word: generator indices whose product is the element.
    pub fn word(&self, mut i: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while let Some((p, s)) = self.parent[i] {
            w.push(s);
            i = p;
        }
        w.reverse();
        w
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.mul(a, b) == 0)
            .expect("finite group")
    }

    pub fn power(&self, a: usize, k: u64) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    /// Least m >= 1 with g^m = 1.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut m = 1;
        while x != 0 {
            x = self.mul(x, a);
            m += 1;
        }
        m
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generator_indices();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Indices of the subgroup generated by the given elements, sorted.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = vec![0usize];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
            i += 1;
        }
        queue.sort_unstable();
        queue
    }

    /// Returns b when the group is isomorphic to (Z/pZ)^b.
    pub fn elementary_abelian_profile(&self) -> Option<u32> {
        let p = self.modulus.p() as usize;
        if !self.is_abelian() {
            return None;
        }
        if (1..self.order()).any(|i| self.element_order(i) != p) {
            return None;
        }
        let mut n = self.order();
        let mut b = 0;
        while n > 1 {
            debug_assert_eq!(n % p, 0);
            n /= p;
            b += 1;
        }
        Some(b)
    }

    /// Replaces every generator g by diag(g, Id_s).
    pub fn block_sum(&self, s: usize, cap: usize) -> Result<MatrixGroup> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.block_with_identity(s))
            .collect();
        Self::enumerate(self.modulus, self.dim + s, gens, cap)
    }

    /// The subgroup generated by the given element indices, enumerated as a
    /// group in its own right.
    pub fn subgroup(&self, gens: &[usize], cap: usize) -> Result<MatrixGroup> {
        let mats = gens.iter().map(|&i| self.elements[i].clone()).collect();
        Self::enumerate(self.modulus, self.dim, mats, cap)
    }
}
