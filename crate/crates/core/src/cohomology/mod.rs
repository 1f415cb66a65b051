//! First cohomology and first local cohomology of a finite matrix group
//! acting on (Z/p^nZ)^r.
//!
//! Cocycles are determined by their values on the group generators, so the
//! linear algebra runs in generator coordinates: a vector z in M^S holds one
//! value per generator, and each element's value Z_e = L_e z is a linear form
//! accumulated along the breadth-first discovery tree. The cocycle identity
//! then reduces to one constraint per Cayley-graph edge (e, s):
//! Z_{e s} = Z_e + e Z_s. By induction on word length this implies the
//! identity for every pair of elements.

mod cocycle;
mod h1;
mod levels;

use crate::error::{Error, Result};
use crate::matgroup::{MatrixGroup, DEFAULT_GROUP_CAP};
use crate::modring::{ModMatrix, Modulus};

pub use cocycle::{Cocycle, LocalCheck, LocalCondition};
pub use h1::H1Result;
pub use levels::{level_maps, LevelMaps};

/// Caps on the work a computation may do.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_group_order: usize,
    /// Largest dense matrix (rows * cols) a computation may build.
    pub max_matrix_entries: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_group_order: DEFAULT_GROUP_CAP,
            max_matrix_entries: 20_000_000,
        }
    }
}

impl Limits {
    pub(crate) fn check_matrix(&self, rows: usize, cols: usize) -> Result<()> {
        if rows.saturating_mul(cols) > self.max_matrix_entries {
            return Err(Error::MatrixTooLarge {
                rows,
                cols,
                cap: self.max_matrix_entries,
            });
        }
        Ok(())
    }
}

/// A group together with a linear action on (Z/p^nZ)^r, one matrix per
/// element index.
#[derive(Debug, Clone)]
pub struct GModule<'g> {
    group: &'g MatrixGroup,
    modulus: Modulus,
    rank: usize,
    action: Vec<ModMatrix>,
}

impl<'g> GModule<'g> {
    /// The defining action of the group on (Z/p^nZ)^r.
    pub fn natural(group: &'g MatrixGroup) -> Self {
        GModule {
            group,
            modulus: group.modulus(),
            rank: group.dim(),
            action: group.elements().to_vec(),
        }
    }

    /// The action on (Z/p^jZ)^r through the matrices reduced mod p^j.
    pub fn reduced(group: &'g MatrixGroup, j: u32) -> Result<Self> {
        if j == 0 || j > group.modulus().n() {
            return Err(Error::Invalid(format!(
                "level {j} outside 1..={}",
                group.modulus().n()
            )));
        }
        let modulus = group.modulus().with_exponent(j)?;
        Ok(GModule {
            group,
            modulus,
            rank: group.dim(),
            action: group
                .elements()
                .iter()
                .map(|g| g.reduce_to(modulus))
                .collect(),
        })
    }

    /// An arbitrary action; checked to be a homomorphism on the element table.
    pub fn with_action(
        group: &'g MatrixGroup,
        modulus: Modulus,
        rank: usize,
        action: Vec<ModMatrix>,
    ) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::Dimension(format!(
                "{} action matrices for a group of order {}",
                action.len(),
                group.order()
            )));
        }
        for a in &action {
            if a.modulus() != modulus || a.rows() != rank || a.cols() != rank {
                return Err(Error::Dimension("action matrix shape or modulus".into()));
            }
        }
        if !action[0].is_identity() {
            return Err(Error::Invalid("identity must act trivially".into()));
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                if action[group.mul(a, b)] != action[a].mul(&action[b])? {
                    return Err(Error::Invalid(format!(
                        "action is not multiplicative at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(GModule {
            group,
            modulus,
            rank,
            action,
        })
    }

    pub fn group(&self) -> &'g MatrixGroup {
        self.group
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self, element: usize) -> &ModMatrix {
        &self.action[element]
    }

    /// Width of generator coordinates.
    pub(crate) fn coord_width(&self) -> usize {
        self.group.generators().len() * self.rank
    }

    /// L_e for every element: the r x (S r) matrix with Z_e = L_e z.
    pub(crate) fn linear_forms(&self) -> Vec<Vec<i64>> {
        let m = self.modulus;
        let r = self.rank;
        let k = self.coord_width();
        let mut forms: Vec<Vec<i64>> = Vec::with_capacity(self.group.order());
        forms.push(vec![0; r * k]);
        for e in 1..self.group.order() {
            let (par, s) = self.group.parent(e).expect("non-identity");
            let mut f = forms[par].clone();
            let g = &self.action[par];
            for i in 0..r {
                for j in 0..r {
                    let x = &mut f[i * k + s * r + j];
                    *x = m.add(*x, g.get(i, j));
                }
            }
            forms.push(f);
        }
        forms
    }
}
