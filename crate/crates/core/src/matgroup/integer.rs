use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::matgroup::MatrixGroup;
use crate::modring::{IntMatrix, Modulus};

/// A finite subgroup of GL_r(Z), enumerated exactly.
#[derive(Debug, Clone)]
pub struct IntegerGroup {
    dim: usize,
    generators: Vec<IntMatrix>,
    elements: Vec<IntMatrix>,
}

impl IntegerGroup {
    /// Enumerates the group generated by `generators`; a group that does not
    /// close within `cap` elements (or overflows) is a resource error.
    pub fn enumerate(dim: usize, generators: Vec<IntMatrix>, cap: usize) -> Result<IntegerGroup> {
        if dim == 0 {
            return Err(Error::Dimension("matrix groups need dimension >= 1".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::Dimension(format!(
                    "generator {i} is not {dim}x{dim}"
                )));
            }
            if g.det()?.abs() != 1 {
                return Err(Error::NotInvertible(i));
            }
        }
        let id = IntMatrix::identity(dim);
        let mut seen = HashMap::from([(id.clone(), 0usize)]);
        let mut elements = vec![id];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &generators {
                let prod = elements[i].mul(g)?;
                if !seen.contains_key(&prod) {
                    if elements.len() == cap {
                        return Err(Error::GroupTooLarge { cap });
                    }
                    seen.insert(prod.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(prod);
                }
            }
        }
        Ok(IntegerGroup {
            dim,
            generators,
            elements,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[IntMatrix] {
        &self.elements
    }

    /// The image group under reduction mod p^n.
    pub fn reduce(&self, modulus: Modulus, cap: usize) -> Result<MatrixGroup> {
        let gens = self.generators.iter().map(|g| g.reduce(modulus)).collect();
        MatrixGroup::enumerate(modulus, self.dim, gens, cap)
    }
}
