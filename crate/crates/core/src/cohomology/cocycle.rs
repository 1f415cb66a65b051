use serde::Serialize;

use super::GModule;
use crate::error::{Error, Result};
use crate::modring::{image_submodule, solve_linear, ModVector, Modulus};

/// A 1-cocycle as its full value table, indexed by element index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Cocycle {
    #[serde(skip)]
    modulus: Modulus,
    values: Vec<ModVector>,
}

impl Cocycle {
    pub fn values(&self) -> &[ModVector] {
        &self.values
    }

    pub fn value(&self, element: usize) -> &ModVector {
        &self.values[element]
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Pointwise sum; sums of cocycles are cocycles.
    pub fn add(&self, other: &Cocycle) -> Result<Cocycle> {
        if self.values.len() != other.values.len() {
            return Err(Error::Dimension("cocycles over different groups".into()));
        }
        Ok(Cocycle {
            modulus: self.modulus,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.add(b))
                .collect::<Result<_>>()?,
        })
    }

    /// Flattened table, element-major.
    pub fn to_flat(&self) -> ModVector {
        ModVector::concat(&self.values, self.modulus)
    }
}

/// One local condition Z_g ∈ Im(g - 1) at the chosen generator of a maximal
/// cyclic subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalCondition {
    pub element: usize,
    pub witness: Option<ModVector>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalCheck {
    pub locally_trivial: bool,
    pub conditions: Vec<LocalCondition>,
}

impl GModule<'_> {
    fn check_value(&self, v: &ModVector) -> Result<()> {
        if v.modulus() != self.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.value(),
                right: v.modulus().value(),
            });
        }
        if v.len() != self.rank {
            return Err(Error::Dimension(format!(
                "value of length {} in a module of rank {}",
                v.len(),
                self.rank
            )));
        }
        Ok(())
    }

    /// First pair (g, h) with Z_{gh} != Z_g + g Z_h, if any.
    fn identity_failure(&self, values: &[ModVector]) -> Result<Option<(usize, usize)>> {
        let group = self.group;
        for g in 0..group.order() {
            for h in 0..group.order() {
                let rhs = values[g].add(&self.action[g].mul_vec(&values[h])?)?;
                if values[group.mul(g, h)] != rhs {
                    return Ok(Some((g, h)));
                }
            }
        }
        Ok(None)
    }

    /// Wraps a value table as a cocycle after checking the identity on every
    /// pair of elements.
    pub fn cocycle(&self, values: Vec<ModVector>) -> Result<Cocycle> {
        if values.len() != self.group.order() {
            return Err(Error::Dimension(format!(
                "{} values for a group of order {}",
                values.len(),
                self.group.order()
            )));
        }
        for v in &values {
            self.check_value(v)?;
        }
        if let Some((g, h)) = self.identity_failure(&values)? {
            return Err(Error::InconsistentCocycle { g, h });
        }
        Ok(Cocycle {
            modulus: self.modulus,
            values,
        })
    }

    pub(crate) fn cocycle_unchecked(&self, values: Vec<ModVector>) -> Cocycle {
        debug_assert!(self.identity_failure(&values).unwrap().is_none());
        Cocycle {
            modulus: self.modulus,
            values,
        }
    }

    /// The unique table with the given generator values, built along the
    /// discovery words and then checked against the whole multiplication
    /// table.
    pub fn extend_from_generators(&self, assignments: &[ModVector]) -> Result<Cocycle> {
        let gens = self.group.generators().len();
        if assignments.len() != gens {
            return Err(Error::AssignmentCount {
                expected: gens,
                got: assignments.len(),
            });
        }
        for v in assignments {
            self.check_value(v)?;
        }
        let mut values = vec![ModVector::zero(self.modulus, self.rank)];
        for e in 1..self.group.order() {
            let (par, s) = self.group.parent(e).expect("non-identity");
            let v = values[par].add(&self.action[par].mul_vec(&assignments[s])?)?;
            values.push(v);
        }
        // A generator equal to an earlier element must agree with that entry.
        for (s, &e) in self.group.generator_indices().iter().enumerate() {
            if values[e] != assignments[s] {
                return Err(Error::InconsistentCocycle { g: 0, h: e });
            }
        }
        self.cocycle(values)
    }

    /// g ↦ (g - 1) w.
    pub fn coboundary(&self, w: &ModVector) -> Result<Cocycle> {
        self.check_value(w)?;
        let values = self
            .action
            .iter()
            .map(|g| g.mul_vec(w)?.sub(w))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.cocycle_unchecked(values))
    }

    /// Checks Z_g ∈ Im(g - 1) at the chosen generator of every maximal
    /// cyclic subgroup, which gives the condition for every element.
    pub fn is_locally_trivial(&self, z: &Cocycle) -> Result<LocalCheck> {
        if z.values.len() != self.group.order() {
            return Err(Error::Dimension("cocycle over a different group".into()));
        }
        let mut conditions = Vec::new();
        for c in self.group.cyclic_subgroups() {
            let a = self.action[c.generator].minus_identity()?;
            let sol = solve_linear(&a, &z.values[c.generator])?;
            conditions.push(LocalCondition {
                element: c.generator,
                witness: sol.solution,
            });
        }
        Ok(LocalCheck {
            locally_trivial: conditions.iter().all(|c| c.witness.is_some()),
            conditions,
        })
    }

    /// Whether `v` lies in Im(g - 1) for the element with index `g`.
    pub fn in_image_of_g_minus_one(&self, g: usize, v: &ModVector) -> Result<bool> {
        image_submodule(&self.action[g].minus_identity()?)?.contains(v)
    }
}
