use super::{Cocycle, GModule, Limits};
use crate::error::{Error, Result};
use crate::modring::{
    image_submodule, kernel_submodule, ModMatrix, ModVector, Modulus, Quotient, Submodule,
};

/// A cohomology group presented by invariant factors and basis cocycles.
#[derive(Debug, Clone)]
pub struct H1Result {
    modulus: Modulus,
    rank: usize,
    generator_elements: Vec<usize>,
    cocycles: Submodule,
    coboundaries: Submodule,
    quotient: Quotient,
    basis: Vec<Cocycle>,
}

impl H1Result {
    /// p-power orders of the cyclic factors, each dividing the next.
    pub fn invariant_factors(&self) -> Vec<u64> {
        self.quotient.invariant_factors()
    }

    pub fn basis(&self) -> &[Cocycle] {
        &self.basis
    }

    pub fn is_trivial(&self) -> bool {
        self.quotient.is_trivial()
    }

    /// log_p of the group order.
    pub fn order_exponent(&self) -> u64 {
        self.quotient.order_exponent()
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// The cocycle subgroup in generator coordinates.
    pub(crate) fn cocycles(&self) -> &Submodule {
        &self.cocycles
    }

    pub(crate) fn coboundaries(&self) -> &Submodule {
        &self.coboundaries
    }

    pub(crate) fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    pub(crate) fn generator_values(&self, z: &Cocycle) -> Result<ModVector> {
        if z.modulus() != self.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.value(),
                right: z.modulus().value(),
            });
        }
        let parts: Vec<ModVector> = self
            .generator_elements
            .iter()
            .map(|&e| z.value(e).clone())
            .collect();
        let out = ModVector::concat(&parts, self.modulus);
        if out.len() != self.generator_elements.len() * self.rank {
            return Err(Error::Dimension("cocycle rank".into()));
        }
        Ok(out)
    }

    /// Coordinates of the class of `z` on the basis (the i-th read mod the
    /// i-th invariant factor), or `None` if `z` is outside the cocycle group
    /// this result quotients (e.g. fails the local conditions).
    pub fn coordinates(&self, z: &Cocycle) -> Result<Option<Vec<i64>>> {
        self.quotient.coordinates(&self.generator_values(z)?)
    }

    pub fn class_order(&self, z: &Cocycle) -> Result<Option<u64>> {
        Ok(self.coordinates(z)?.map(|c| self.quotient.order_of(&c)))
    }
}

impl GModule<'_> {
    fn forms_matrix_rows<'f>(&self, forms: &'f [Vec<i64>], e: usize, row: usize) -> &'f [i64] {
        let k = self.coord_width();
        &forms[e][row * k..(row + 1) * k]
    }

    /// One r-row block per non-tree Cayley edge (e, s):
    /// L_e + e E_s - L_{e s} = 0.
    fn edge_constraints(&self, forms: &[Vec<i64>], limits: &Limits) -> Result<Vec<Vec<i64>>> {
        let m = self.modulus;
        let r = self.rank;
        let k = self.coord_width();
        let group = self.group;
        let gens = group.generators().len();
        limits.check_matrix(group.order() * gens * r, k)?;
        let mut rows = Vec::new();
        for e in 0..group.order() {
            for s in 0..gens {
                let es = group.right_by_generator(e, s);
                if group.parent(es) == Some((e, s)) {
                    continue;
                }
                let g = &self.action[e];
                for i in 0..r {
                    let mut row: Vec<i64> = self
                        .forms_matrix_rows(forms, e, i)
                        .iter()
                        .zip(self.forms_matrix_rows(forms, es, i))
                        .map(|(&a, &b)| m.sub(a, b))
                        .collect();
                    for j in 0..r {
                        let x = &mut row[s * r + j];
                        *x = m.add(*x, g.get(i, j));
                    }
                    if row.iter().any(|&a| a != 0) {
                        rows.push(row);
                    }
                }
            }
        }
        Ok(rows)
    }

    fn matrix_from_rows(&self, rows: Vec<Vec<i64>>, width: usize) -> ModMatrix {
        let n = rows.len();
        ModMatrix::new(self.modulus, n, width, rows.into_iter().flatten().collect())
            .expect("row widths")
    }

    /// Z^1 in generator coordinates.
    pub(crate) fn generator_cocycles(&self, limits: &Limits) -> Result<Submodule> {
        let forms = self.linear_forms();
        let k = self.coord_width();
        let rows = self.edge_constraints(&forms, limits)?;
        if rows.is_empty() {
            return Ok(Submodule::full(self.modulus, k));
        }
        kernel_submodule(&self.matrix_from_rows(rows, k))
    }

    /// B^1 in generator coordinates: w ↦ ((s - 1) w)_s.
    pub(crate) fn generator_coboundaries(&self) -> Result<Submodule> {
        let m = self.modulus;
        let r = self.rank;
        let k = self.coord_width();
        if k == 0 {
            return Ok(Submodule::zero(m, 0));
        }
        let mut map = ModMatrix::zero(m, k, r);
        for (s, &e) in self.group.generator_indices().iter().enumerate() {
            let d = self.action[e].minus_identity()?;
            for i in 0..r {
                for j in 0..r {
                    map.set(s * r + i, j, d.get(i, j));
                }
            }
        }
        image_submodule(&map)
    }

    /// Cocycles satisfying the local conditions, in generator coordinates:
    /// the z-part of the kernel of
    /// [ C 0 ... ; L_g -T_g ... ] over all chosen generators g, where the
    /// columns of T_g generate Im(g - 1).
    pub(crate) fn generator_local_cocycles(&self, limits: &Limits) -> Result<Submodule> {
        let m = self.modulus;
        let r = self.rank;
        let k = self.coord_width();
        let forms = self.linear_forms();
        let constraints = self.edge_constraints(&forms, limits)?;
        let chosen: Vec<usize> = self
            .group
            .cyclic_subgroups()
            .iter()
            .map(|c| c.generator)
            .collect();
        let images: Vec<Vec<ModVector>> = chosen
            .iter()
            .map(|&g| Ok(image_submodule(&self.action[g].minus_identity()?)?.generators()))
            .collect::<Result<_>>()?;
        let extra: usize = images.iter().map(|t| t.len()).sum();
        let width = k + extra;
        let height = constraints.len() + chosen.len() * r;
        limits.check_matrix(height, width)?;
        if height == 0 {
            return Ok(Submodule::full(m, k));
        }
        let mut rows: Vec<Vec<i64>> = constraints
            .into_iter()
            .map(|mut row| {
                row.resize(width, 0);
                row
            })
            .collect();
        let mut offset = k;
        for (&g, t) in chosen.iter().zip(&images) {
            for i in 0..r {
                let mut row = self.forms_matrix_rows(&forms, g, i).to_vec();
                row.resize(width, 0);
                for (c, tv) in t.iter().enumerate() {
                    row[offset + c] = m.neg(tv.entries()[i]);
                }
                rows.push(row);
            }
            offset += t.len();
        }
        let kernel = kernel_submodule(&self.matrix_from_rows(rows, width))?;
        let gens: Vec<ModVector> = kernel
            .generators()
            .into_iter()
            .map(|v| ModVector::new(m, v.entries()[..k].iter().copied()))
            .collect();
        Submodule::new(m, k, &gens)
    }

    /// The cocycle with the given generator values (assumed consistent).
    pub(crate) fn expand(&self, forms: &[Vec<i64>], z: &ModVector) -> Cocycle {
        let m = self.modulus;
        let r = self.rank;
        let k = self.coord_width();
        let values = forms
            .iter()
            .map(|f| {
                ModVector::new(
                    m,
                    (0..r).map(|i| {
                        f[i * k..(i + 1) * k]
                            .iter()
                            .zip(z.entries())
                            .fold(0i64, |acc, (&a, &b)| m.add(acc, m.mul(a, b)))
                    }),
                )
            })
            .collect();
        self.cocycle_unchecked(values)
    }

    fn expand_submodule(&self, s: &Submodule, limits: &Limits) -> Result<Submodule> {
        let n = self.group.order() * self.rank;
        limits.check_matrix(s.num_generators().max(1), n)?;
        let forms = self.linear_forms();
        let gens: Vec<ModVector> = s
            .generators()
            .iter()
            .map(|z| self.expand(&forms, z).to_flat())
            .collect();
        Submodule::new(self.modulus, n, &gens)
    }

    /// Z^1(G, M) as a submodule of M^|G| (element-major value tables).
    pub fn cocycle_space(&self, limits: &Limits) -> Result<Submodule> {
        let z = self.generator_cocycles(limits)?;
        self.expand_submodule(&z, limits)
    }

    /// B^1(G, M) as a submodule of M^|G|.
    pub fn coboundary_space(&self, limits: &Limits) -> Result<Submodule> {
        let n = self.group.order() * self.rank;
        limits.check_matrix(n, self.rank)?;
        let gens = (0..self.rank)
            .map(|i| {
                Ok(self
                    .coboundary(&ModVector::unit(self.modulus, self.rank, i))?
                    .to_flat())
            })
            .collect::<Result<Vec<_>>>()?;
        Submodule::new(self.modulus, n, &gens)
    }

    fn presentation(&self, cocycles: Submodule, coboundaries: Submodule) -> Result<H1Result> {
        let quotient = Quotient::new(&cocycles, &coboundaries)?;
        let forms = self.linear_forms();
        let basis = quotient
            .generators()
            .iter()
            .map(|z| self.expand(&forms, z))
            .collect();
        Ok(H1Result {
            modulus: self.modulus,
            rank: self.rank,
            generator_elements: self.group.generator_indices(),
            cocycles,
            coboundaries,
            quotient,
            basis,
        })
    }

    /// H^1(G, M) = Z^1 / B^1.
    pub fn h1(&self, limits: &Limits) -> Result<H1Result> {
        let z = self.generator_cocycles(limits)?;
        let b = self.generator_coboundaries()?;
        self.presentation(z, b)
    }

    /// H^1_loc(G, M): classes whose restriction to every cyclic subgroup is
    /// trivial.
    pub fn h1_loc(&self, limits: &Limits) -> Result<H1Result> {
        let l = self.generator_local_cocycles(limits)?;
        let b = self.generator_coboundaries()?;
        self.presentation(l, b)
    }
}
