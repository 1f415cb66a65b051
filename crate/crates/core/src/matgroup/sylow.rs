use super::MatrixGroup;
use crate::error::{Error, Result};

impl MatrixGroup {
    /// p-part of the group order as (a, m) with |G| = p^a * m.
    pub fn p_part(&self) -> (u32, usize) {
        let p = self.modulus().p() as usize;
        let mut m = self.order();
        let mut a = 0;
        while m.is_multiple_of(p) {
            m /= p;
            a += 1;
        }
        (a, m)
    }

    pub fn is_p_group(&self) -> bool {
        self.p_part().1 == 1
    }

    /// Element indices of the p-Sylow subgroup, sorted.
    ///
    /// Built greedily from the p-power-order elements in index order. This
    /// succeeds exactly when those elements close to a p-group, i.e. when the
    /// Sylow subgroup is normal; otherwise `SylowNotClosed` is returned.
    pub fn sylow_indices(&self) -> Result<(Vec<usize>, Vec<usize>)> {
        let (a, _) = self.p_part();
        let p = self.modulus().p() as usize;
        let target = p.pow(a);
        let mut gens = Vec::new();
        let mut closure = vec![0usize];
        let mut inside = vec![false; self.order()];
        inside[0] = true;
        for x in 1..self.order() {
            if inside[x] {
                continue;
            }
            let ord = self.element_order(x);
            if !is_power_of(ord, p) {
                continue;
            }
            gens.push(x);
            closure = self.closure(&gens);
            if closure.len() > target {
                return Err(Error::SylowNotClosed {
                    found: closure.len(),
                    expected: target,
                });
            }
            closure.iter().for_each(|&y| inside[y] = true);
        }
        if closure.len() != target {
            return Err(Error::SylowNotClosed {
                found: closure.len(),
                expected: target,
            });
        }
        Ok((gens, closure))
    }

    /// The p-Sylow subgroup as a matrix group over the same modulus.
    pub fn sylow_p(&self, cap: usize) -> Result<MatrixGroup> {
        let (gens, _) = self.sylow_indices()?;
        self.subgroup(&gens, cap)
    }
}

fn is_power_of(mut x: usize, p: usize) -> bool {
    while x.is_multiple_of(p) {
        x /= p;
    }
    x == 1
}

#[cfg(test)]
mod tests {
    use super::super::tests::*;
    use super::*;
    use crate::matgroup::DEFAULT_GROUP_CAP;
    use crate::modring::ModMatrix;

    #[test]
    fn p_group_is_its_own_sylow() {
        let g = g_p();
        let s = g.sylow_p(DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(s.order(), 9);
    }

    #[test]
    fn sylow_of_order_eighteen() {
        let g = MatrixGroup::enumerate(
            m9(),
            2,
            vec![gamma1(), ModMatrix::scalar(m9(), 2, 2)],
            DEFAULT_GROUP_CAP,
        )
        .unwrap();
        let s = g.sylow_p(DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(s.order(), 9);
        let expected = MatrixGroup::enumerate(m9(), 2, vec![gamma1(), gamma2()], 100).unwrap();
        let mut a: Vec<_> = s.elements().to_vec();
        let mut b: Vec<_> = expected.elements().to_vec();
        a.sort_by(|x, y| x.entries().cmp(y.entries()));
        b.sort_by(|x, y| x.entries().cmp(y.entries()));
        assert_eq!(a, b);
    }

    #[test]
    fn coprime_order_gives_trivial_sylow() {
        // -Id has order 2
        let g = MatrixGroup::enumerate(m9(), 2, vec![ModMatrix::scalar(m9(), 2, -1)], 10).unwrap();
        assert_eq!(g.sylow_p(10).unwrap().order(), 1);
    }

    #[test]
    fn non_normal_sylow_is_reported() {
        // SL_2(F_3) has four Sylow 3-subgroups.
        let m3 = crate::modring::Modulus::new(3, 1).unwrap();
        let a = ModMatrix::from_rows(m3, &[vec![1, 1], vec![0, 1]]).unwrap();
        let b = ModMatrix::from_rows(m3, &[vec![1, 0], vec![1, 1]]).unwrap();
        let g = MatrixGroup::enumerate(m3, 2, vec![a, b], 100).unwrap();
        assert_eq!(g.order(), 24);
        assert!(matches!(
            g.sylow_p(100),
            Err(Error::SylowNotClosed { expected: 3, .. })
        ));
    }
}
