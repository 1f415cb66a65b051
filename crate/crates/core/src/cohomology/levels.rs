use super::{GModule, H1Result, Limits};
use crate::error::{Error, Result};
use crate::matgroup::MatrixGroup;
use crate::modring::{ModVector, Submodule};

/// The maps induced on H^1_loc by 0 → M_p → M_{p^n} → M_{p^{n-1}} → 0,
/// where the first map is multiplication by p^(n-1) and the second is
/// reduction mod p^(n-1).
#[derive(Debug, Clone)]
pub struct LevelMaps {
    pub bottom: H1Result,
    pub middle: H1Result,
    pub top: H1Result,
    /// Coordinates in `middle` of the image of each basis class of `bottom`.
    pub iota: Vec<Vec<i64>>,
    /// Coordinates in `top` of the image of each basis class of `middle`.
    pub eps: Vec<Vec<i64>>,
    pub composition_is_zero: bool,
    /// ker(eps_*) = im(iota_*), compared as cocycle subgroups containing B^1.
    pub kernel_equals_image: bool,
}

fn apply(images: &[Vec<i64>], coords: &[i64], target: &H1Result) -> Vec<i64> {
    let exps = target.quotient().exponents();
    let m = target.modulus();
    (0..exps.len())
        .map(|j| {
            let q = m.p_pow(exps[j]);
            images
                .iter()
                .zip(coords)
                .fold(0i64, |acc, (img, &c)| (acc + m.mul(img[j], c)) % q)
        })
        .collect()
}

impl LevelMaps {
    pub fn iota_star(&self, coords: &[i64]) -> Vec<i64> {
        apply(&self.iota, coords, &self.middle)
    }

    pub fn eps_star(&self, coords: &[i64]) -> Vec<i64> {
        apply(&self.eps, coords, &self.top)
    }
}

pub fn level_maps(group: &MatrixGroup, limits: &Limits) -> Result<LevelMaps> {
    let n = group.modulus().n();
    if n < 2 {
        return Err(Error::Invalid("level maps need n >= 2".into()));
    }
    let m_bottom = GModule::reduced(group, 1)?;
    let m_middle = GModule::natural(group);
    let m_top = GModule::reduced(group, n - 1)?;
    let bottom = m_bottom.h1_loc(limits)?;
    let middle = m_middle.h1_loc(limits)?;
    let top = m_top.h1_loc(limits)?;

    let md = m_middle.modulus();
    let mt = m_top.modulus();
    let shift = md.p_pow(n - 1);
    let iota_vec = |v: &ModVector| ModVector::new(md, v.entries().iter().map(|&a| a * shift));
    let eps_vec = |v: &ModVector| v.reduce_to(mt);
    let iota_cocycle =
        |z: &super::Cocycle| m_middle.cocycle(z.values().iter().map(iota_vec).collect());
    let eps_cocycle = |z: &super::Cocycle| m_top.cocycle(z.values().iter().map(eps_vec).collect());

    let mut iota = Vec::new();
    let mut composition_is_zero = true;
    for b in bottom.basis() {
        let up = iota_cocycle(b)?;
        iota.push(
            middle
                .coordinates(&up)?
                .ok_or_else(|| Error::Invalid("iota left the local cocycles".into()))?,
        );
        let down = eps_cocycle(&up)?;
        let c = top
            .coordinates(&down)?
            .ok_or_else(|| Error::Invalid("eps left the local cocycles".into()))?;
        composition_is_zero &= c.iter().all(|&x| x == 0);
    }
    let mut eps = Vec::new();
    for b in middle.basis() {
        let down = eps_cocycle(b)?;
        eps.push(
            top.coordinates(&down)?
                .ok_or_else(|| Error::Invalid("eps left the local cocycles".into()))?,
        );
    }

    // ker(eps_*) lifted to cocycles: L_n ∩ (lift(B_{n-1}) + p^(n-1) M^S).
    let k = middle.cocycles().rank();
    let lifted = top
        .coboundaries()
        .generators()
        .iter()
        .map(|v| ModVector::new(md, v.entries().iter().copied()))
        .chain((0..k).map(|i| ModVector::unit(md, k, i).scale(shift)))
        .collect::<Vec<_>>();
    let preimage = Submodule::new(md, k, &lifted)?;
    let kernel = middle.cocycles().intersect(&preimage)?;
    // im(iota_*) lifted: iota(L_1) + B_n.
    let image_gens = bottom
        .cocycles()
        .generators()
        .iter()
        .map(iota_vec)
        .collect::<Vec<_>>();
    let image = Submodule::new(md, k, &image_gens)?.sum(middle.coboundaries())?;

    Ok(LevelMaps {
        kernel_equals_image: kernel == image,
        bottom,
        middle,
        top,
        iota,
        eps,
        composition_is_zero,
    })
}
