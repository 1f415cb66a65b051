use std::collections::BTreeMap;

use serde::Serialize;

use super::MatrixGroup;

/// A cyclic subgroup with a chosen generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicSubgroup {
    pub generator: usize,
    pub order: usize,
    /// Sorted element indices.
    pub elements: Vec<usize>,
}

impl MatrixGroup {
    /// Sorted element indices of the powers of `a`.
    pub fn cyclic_closure(&self, a: usize) -> Vec<usize> {
        let mut out = vec![0];
        let mut x = a;
        while x != 0 {
            out.push(x);
            x = self.mul(x, a);
        }
        out.sort_unstable();
        out
    }

    /// The maximal cyclic subgroups, each with its lowest-index generator,
    /// sorted by that generator. The trivial subgroup is never returned.
    pub fn cyclic_subgroups(&self) -> Vec<CyclicSubgroup> {
        let mut by_set: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for a in 1..self.order() {
            by_set.entry(self.cyclic_closure(a)).or_insert(a);
        }
        let sets: Vec<(Vec<usize>, usize)> = by_set.into_iter().collect();
        let mut member = vec![false; self.order()];
        let mut out = Vec::new();
        for (i, (s, g)) in sets.iter().enumerate() {
            let contained = sets.iter().enumerate().any(|(j, (t, _))| {
                if j == i || t.len() <= s.len() || t.len() % s.len() != 0 {
                    return false;
                }
                member.iter_mut().for_each(|m| *m = false);
                t.iter().for_each(|&x| member[x] = true);
                s.iter().all(|&x| member[x])
            });
            if !contained {
                out.push(CyclicSubgroup {
                    generator: *g,
                    order: s.len(),
                    elements: s.clone(),
                });
            }
        }
        out.sort_by_key(|c| c.generator);
        out
    }
}
