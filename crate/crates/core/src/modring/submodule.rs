use super::matrix::{ModMatrix, ModVector};
use super::modulus::Modulus;
use super::snf::{mod_smith, SnfTracking};
use crate::error::{Error, Result};

/// A subgroup of (Z/p^nZ)^r held in Howell form.
///
/// Generators are stored as rows in echelon order. Each row has a leading
/// entry p^v (its pivot), entries of earlier rows in a later pivot column are
/// reduced into [0, p^v), and the rows whose leading column is at least c span
/// every element of the submodule that vanishes before column c. That last
/// property makes the form unique, so equality of submodules is equality of
/// representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Submodule {
    modulus: Modulus,
    rank: usize,
    rows: Vec<Vec<i64>>,
    pivots: Vec<(usize, u32)>,
}

fn leading(row: &[i64]) -> Option<usize> {
    row.iter().position(|&a| a != 0)
}

/// Howell form of the row span of `rows` (each of length `width`).
pub(crate) fn howell(modulus: Modulus, width: usize, rows: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let m = modulus;
    let mut pool: Vec<Vec<i64>> = rows
        .into_iter()
        .filter(|r| r.iter().any(|&a| a != 0))
        .collect();
    let mut out: Vec<Vec<i64>> = Vec::new();
    let mut pivot_data: Vec<(usize, i64)> = Vec::new();
    for col in 0..width {
        let best = pool
            .iter()
            .enumerate()
            .filter(|(_, r)| r[col] != 0)
            .min_by_key(|(i, r)| (m.valuation(r[col]), *i))
            .map(|(i, _)| i);
        let Some(best) = best else { continue };
        let mut piv = pool.swap_remove(best);
        let (v, uinv) = m.split_unit(piv[col]).expect("nonzero");
        if uinv != 1 {
            for a in piv[col..].iter_mut() {
                *a = m.mul(*a, uinv);
            }
        }
        let pv = m.p_pow(v);
        for r in pool.iter_mut() {
            let x = r[col];
            if x != 0 {
                let c = x / pv;
                for j in col..width {
                    if piv[j] != 0 {
                        r[j] = m.sub(r[j], m.mul(c, piv[j]));
                    }
                }
            }
        }
        pool.retain(|r| r.iter().any(|&a| a != 0));
        if v > 0 {
            let ann = m.p_pow(m.n() - v);
            let extra: Vec<i64> = piv.iter().map(|&a| m.mul(a, ann)).collect();
            if extra.iter().any(|&a| a != 0) {
                pool.push(extra);
            }
        }
        out.push(piv);
        pivot_data.push((col, pv));
    }
    // Reduce entries above each pivot.
    for (i, &(col, pv)) in pivot_data.iter().enumerate() {
        for j in 0..i {
            let x = out[j][col];
            if x >= pv {
                let c = x / pv;
                let (head, tail) = out.split_at_mut(i);
                let src = &tail[0];
                let dst = &mut head[j];
                for k in col..width {
                    if src[k] != 0 {
                        dst[k] = m.sub(dst[k], m.mul(c, src[k]));
                    }
                }
            }
        }
    }
    out
}

impl Submodule {
    pub fn new(modulus: Modulus, rank: usize, generators: &[ModVector]) -> Result<Self> {
        for g in generators {
            if g.modulus() != modulus {
                return Err(Error::ModulusMismatch {
                    left: modulus.value(),
                    right: g.modulus().value(),
                });
            }
            if g.len() != rank {
                return Err(Error::Dimension(format!(
                    "generator of length {} in rank {rank}",
                    g.len()
                )));
            }
        }
        Ok(Self::from_raw(
            modulus,
            rank,
            generators.iter().map(|g| g.entries().to_vec()).collect(),
        ))
    }

    pub(crate) fn from_raw(modulus: Modulus, rank: usize, rows: Vec<Vec<i64>>) -> Self {
        let rows = howell(modulus, rank, rows);
        let pivots = rows
            .iter()
            .map(|r| {
                let c = leading(r).expect("nonzero row");
                (c, modulus.valuation(r[c]))
            })
            .collect();
        Submodule {
            modulus,
            rank,
            rows,
            pivots,
        }
    }

    pub fn zero(modulus: Modulus, rank: usize) -> Self {
        Submodule {
            modulus,
            rank,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(modulus: Modulus, rank: usize) -> Self {
        Self::from_raw(
            modulus,
            rank,
            (0..rank)
                .map(|i| ModVector::unit(modulus, rank, i).into_entries())
                .collect(),
        )
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> Vec<ModVector> {
        self.rows
            .iter()
            .map(|r| ModVector::new(self.modulus, r.iter().copied()))
            .collect()
    }

    pub fn num_generators(&self) -> usize {
        self.rows.len()
    }

    /// log_p of the number of elements.
    pub fn order_exponent(&self) -> u64 {
        self.pivots
            .iter()
            .map(|&(_, v)| (self.modulus.n() - v) as u64)
            .sum()
    }

    /// log_p of the index in the ambient module.
    pub fn index_exponent(&self) -> u64 {
        self.modulus.n() as u64 * self.rank as u64 - self.order_exponent()
    }

    fn p_power(&self, e: u64) -> Result<u128> {
        u32::try_from(e)
            .ok()
            .and_then(|e| (self.modulus.p() as u128).checked_pow(e))
            .ok_or(Error::Overflow("submodule index"))
    }

    pub fn order(&self) -> Result<u128> {
        self.p_power(self.order_exponent())
    }

    pub fn index(&self) -> Result<u128> {
        self.p_power(self.index_exponent())
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    fn check_vector(&self, v: &ModVector) -> Result<()> {
        if v.modulus() != self.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.value(),
                right: v.modulus().value(),
            });
        }
        if v.len() != self.rank {
            return Err(Error::Dimension(format!(
                "vector of length {} in rank {}",
                v.len(),
                self.rank
            )));
        }
        Ok(())
    }

    fn check_ambient(&self, other: &Submodule) -> Result<()> {
        if self.modulus != other.modulus || self.rank != other.rank {
            return Err(Error::Dimension(format!(
                "ambient (Z/{}Z)^{} vs (Z/{}Z)^{}",
                self.modulus.value(),
                self.rank,
                other.modulus.value(),
                other.rank
            )));
        }
        Ok(())
    }

    /// Coefficients expressing `v` in the stored generators, if `v` lies in
    /// the submodule.
    pub fn coefficients(&self, v: &ModVector) -> Result<Option<Vec<i64>>> {
        self.check_vector(v)?;
        let m = self.modulus;
        let mut rest = v.entries().to_vec();
        let mut coeffs = vec![0i64; self.rows.len()];
        for (i, (row, &(col, pv))) in self.rows.iter().zip(&self.pivots).enumerate() {
            if rest[..col].iter().any(|&a| a != 0) {
                return Ok(None);
            }
            let x = rest[col];
            if x == 0 {
                continue;
            }
            let p_v = m.p_pow(pv);
            if x % p_v != 0 {
                return Ok(None);
            }
            let c = x / p_v;
            coeffs[i] = c;
            for j in col..self.rank {
                if row[j] != 0 {
                    rest[j] = m.sub(rest[j], m.mul(c, row[j]));
                }
            }
        }
        Ok(rest.iter().all(|&a| a == 0).then_some(coeffs))
    }

    pub fn contains(&self, v: &ModVector) -> Result<bool> {
        Ok(self.coefficients(v)?.is_some())
    }

    pub fn contains_submodule(&self, other: &Submodule) -> Result<bool> {
        self.check_ambient(other)?;
        for g in other.generators() {
            if !self.contains(&g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Submodule) -> Result<Submodule> {
        self.check_ambient(other)?;
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        Ok(Self::from_raw(self.modulus, self.rank, rows))
    }

    /// Intersection by the Zassenhaus construction: the Howell form of
    /// [[S, S], [T, 0]] has its zero-prefix rows spanning S ∩ T.
    pub fn intersect(&self, other: &Submodule) -> Result<Submodule> {
        self.check_ambient(other)?;
        let r = self.rank;
        let mut rows = Vec::with_capacity(self.rows.len() + other.rows.len());
        for s in &self.rows {
            let mut row = s.clone();
            row.extend_from_slice(s);
            rows.push(row);
        }
        for t in &other.rows {
            let mut row = t.clone();
            row.extend(std::iter::repeat_n(0, r));
            rows.push(row);
        }
        let h = howell(self.modulus, 2 * r, rows);
        let inner = h
            .into_iter()
            .filter(|row| row[..r].iter().all(|&a| a == 0))
            .map(|row| row[r..].to_vec())
            .collect();
        Ok(Self::from_raw(self.modulus, r, inner))
    }

    /// Image of the submodule under a linear map given as a matrix acting on
    /// column vectors.
    pub fn map(&self, f: &ModMatrix) -> Result<Submodule> {
        if f.cols() != self.rank {
            return Err(Error::Dimension("map source rank".into()));
        }
        let gens = self
            .generators()
            .iter()
            .map(|g| f.mul_vec(g))
            .collect::<Result<Vec<_>>>()?;
        Submodule::new(f.modulus(), f.rows(), &gens)
    }
}

/// The finite abelian p-group `top / bottom`, with bottom ⊆ top.
#[derive(Debug, Clone)]
pub struct Quotient {
    top: Submodule,
    /// Exponents e_i of the nontrivial cyclic factors Z/p^e_i, nondecreasing.
    exponents: Vec<u32>,
    /// Column indices of `transform` belonging to the kept factors.
    kept: Vec<usize>,
    /// Coordinates c = x * transform, where x are coefficients in `top`'s rows.
    transform: ModMatrix,
    generators: Vec<ModVector>,
}

impl Quotient {
    pub fn new(top: &Submodule, bottom: &Submodule) -> Result<Quotient> {
        top.check_ambient(bottom)?;
        let m = top.modulus;
        let s = top.rows.len();
        // Relations among the rows of `top`: x with x * A = 0.
        let a_t = ModMatrix::from_columns(m, top.rank, &top.generators());
        let rel = super::solve::kernel_submodule(&a_t)?;
        let mut rel_rows: Vec<Vec<i64>> = rel.rows.clone();
        for b in bottom.generators() {
            let c = top
                .coefficients(&b)?
                .ok_or_else(|| Error::Invalid("quotient bottom is not contained in top".into()))?;
            rel_rows.push(c);
        }
        let rel_matrix = ModMatrix::new(
            m,
            rel_rows.len(),
            s,
            rel_rows.into_iter().flatten().collect(),
        )?;
        let snf = mod_smith(
            &rel_matrix,
            SnfTracking {
                p: false,
                q_inv: true,
            },
        );
        let q_inv = snf.q_inv.expect("tracked");
        let mut exponents = Vec::new();
        let mut kept = Vec::new();
        let mut generators = Vec::new();
        for i in 0..s {
            let e = snf.exponents.get(i).copied().unwrap_or(m.n());
            if e == 0 {
                continue;
            }
            exponents.push(e);
            kept.push(i);
            // Generator: row i of q_inv, read as coefficients on top's rows.
            let mut g = vec![0i64; top.rank];
            for (l, row) in top.rows.iter().enumerate() {
                let c = q_inv.get(i, l);
                if c != 0 {
                    for (gj, &rj) in g.iter_mut().zip(row) {
                        *gj = m.add(*gj, m.mul(c, rj));
                    }
                }
            }
            generators.push(ModVector::new(m, g));
        }
        Ok(Quotient {
            top: top.clone(),
            exponents,
            kept,
            transform: snf.q,
            generators,
        })
    }

    pub fn modulus(&self) -> Modulus {
        self.top.modulus
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn invariant_factors(&self) -> Vec<u64> {
        let p = self.top.modulus.p() as u64;
        self.exponents.iter().map(|&e| p.pow(e)).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.is_empty()
    }

    /// log_p of the quotient's order.
    pub fn order_exponent(&self) -> u64 {
        self.exponents.iter().map(|&e| e as u64).sum()
    }

    /// Representatives of the cyclic factors, in the ambient module.
    pub fn generators(&self) -> &[ModVector] {
        &self.generators
    }

    /// Class coordinates of `v` (the i-th taken mod p^e_i), or `None` when `v`
    /// is not in the top submodule.
    pub fn coordinates(&self, v: &ModVector) -> Result<Option<Vec<i64>>> {
        let Some(x) = self.top.coefficients(v)? else {
            return Ok(None);
        };
        let m = self.top.modulus;
        Ok(Some(
            self.kept
                .iter()
                .zip(&self.exponents)
                .map(|(&j, &e)| {
                    let c = x.iter().enumerate().fold(0i64, |acc, (l, &xl)| {
                        m.add(acc, m.mul(xl, self.transform.get(l, j)))
                    });
                    c % m.p_pow(e)
                })
                .collect(),
        ))
    }

    /// Order of the class with the given coordinates.
    pub fn order_of(&self, coords: &[i64]) -> u64 {
        let m = self.top.modulus;
        coords
            .iter()
            .zip(&self.exponents)
            .map(|(&c, &e)| {
                let v = if c == 0 { e } else { m.valuation(c).min(e) };
                (m.p() as u64).pow(e - v)
            })
            .max()
            .unwrap_or(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn m9() -> Modulus {
        Modulus::new(3, 2).unwrap()
    }

    fn v(e: &[i64]) -> ModVector {
        ModVector::new(m9(), e.iter().copied())
    }

    /// Every element of the span, by enumeration over all coefficient tuples.
    fn span(gens: &[ModVector], rank: usize) -> BTreeSet<Vec<i64>> {
        let mut set = BTreeSet::new();
        set.insert(vec![0; rank]);
        loop {
            let mut next = set.clone();
            for x in &set {
                for g in gens {
                    next.insert(v(x).add(g).unwrap().into_entries());
                }
            }
            if next.len() == set.len() {
                return set;
            }
            set = next;
        }
    }

    #[test]
    fn index_of_p_multiples() {
        let s = Submodule::new(m9(), 2, &[v(&[3, 0]), v(&[0, 3])]).unwrap();
        assert_eq!(s.index().unwrap(), 9);
        assert_eq!(s.order().unwrap(), 9);
        assert!(s.contains(&v(&[6, 3])).unwrap());
        assert!(!s.contains(&v(&[1, 0])).unwrap());
    }

    #[test]
    fn sum_zero_mod_p_submodule() {
        // V = {x : x1 + x2 = 0 mod 3}
        let s = Submodule::new(m9(), 2, &[v(&[1, 2]), v(&[3, 0])]).unwrap();
        assert_eq!(s.index().unwrap(), 3);
        assert!(s.contains(&v(&[1, 2])).unwrap());
        assert!(s.contains(&v(&[2, 1])).unwrap());
        assert!(!s.contains(&v(&[1, 0])).unwrap());
        assert_eq!(span(&s.generators(), 2).len() as u128, s.order().unwrap());
    }

    #[test]
    fn howell_property_needs_annihilator_rows() {
        // (3, 1) alone: 3 * (3, 1) = (0, 3) must show up as a generator.
        let s = Submodule::new(m9(), 2, &[v(&[3, 1])]).unwrap();
        assert!(s.contains(&v(&[0, 3])).unwrap());
        assert_eq!(s.order().unwrap(), 9);
        assert_eq!(s.num_generators(), 2);
        let t = Submodule::new(m9(), 2, &[v(&[3, 1]), v(&[0, 3])]).unwrap();
        assert_eq!(s, t);
    }

    #[test]
    fn intersection_and_full() {
        let full = Submodule::full(m9(), 2);
        let s = Submodule::new(m9(), 2, &[v(&[1, 2])]).unwrap();
        assert_eq!(full.intersect(&s).unwrap(), s);
        let t = Submodule::new(m9(), 2, &[v(&[1, 0])]).unwrap();
        let i = s.intersect(&t).unwrap();
        assert!(i.is_zero());
        let u = Submodule::new(m9(), 2, &[v(&[3, 3])]).unwrap();
        let w = Submodule::new(m9(), 2, &[v(&[1, 1])]).unwrap();
        assert_eq!(w.intersect(&u).unwrap(), u);
        let z = Submodule::zero(m9(), 2);
        assert_eq!(z.index().unwrap(), 81);
        assert!(s.sum(&Submodule::zero(m9(), 3)).is_err());
    }

    #[test]
    fn quotient_of_full_by_p_multiples() {
        let full = Submodule::full(m9(), 2);
        let pm = Submodule::new(m9(), 2, &[v(&[3, 0]), v(&[0, 3])]).unwrap();
        let q = Quotient::new(&full, &pm).unwrap();
        assert_eq!(q.invariant_factors(), vec![3, 3]);
        let q = Quotient::new(&full, &Submodule::zero(m9(), 2)).unwrap();
        assert_eq!(q.invariant_factors(), vec![9, 9]);
        let c = q.coordinates(&v(&[3, 0])).unwrap().unwrap();
        assert_eq!(q.order_of(&c), 3);
        let s = Submodule::new(m9(), 2, &[v(&[1, 2]), v(&[3, 0])]).unwrap();
        let q = Quotient::new(&s, &pm).unwrap();
        assert_eq!(q.invariant_factors(), vec![3]);
        assert!(Quotient::new(&pm, &s).is_err());
    }
}
