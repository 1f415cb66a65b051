use super::MatrixGroup;
use crate::error::{Error, Result};

/// The image of a group under reduction mod p^j.
#[derive(Debug, Clone)]
pub struct ReductionResult {
    pub image: MatrixGroup,
    /// Sorted indices of the kernel H^(j), the elements congruent to Id mod p^j.
    pub kernel: Vec<usize>,
    /// Element index in `image` of each element's reduction.
    pub projection: Vec<usize>,
}

impl MatrixGroup {
    pub fn reduce_mod(&self, j: u32, cap: usize) -> Result<ReductionResult> {
        if j == 0 || j > self.modulus().n() {
            return Err(Error::Invalid(format!(
                "reduction exponent {j} outside 1..={}",
                self.modulus().n()
            )));
        }
        let target = self.modulus().with_exponent(j)?;
        let gens = self
            .generators()
            .iter()
            .map(|g| g.reduce_to(target))
            .collect();
        let image = MatrixGroup::enumerate(target, self.dim(), gens, cap)?;
        let projection = self
            .elements()
            .iter()
            .map(|g| {
                image
                    .index_of(&g.reduce_to(target))
                    .ok_or_else(|| Error::Invalid("reduction left the image group".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        for a in 0..self.order() {
            for b in 0..self.order() {
                if projection[self.mul(a, b)] != image.mul(projection[a], projection[b]) {
                    return Err(Error::Invalid(format!(
                        "reduction is not multiplicative at ({a}, {b})"
                    )));
                }
            }
        }
        let kernel = (0..self.order()).filter(|&a| projection[a] == 0).collect();
        Ok(ReductionResult {
            image,
            kernel,
            projection,
        })
    }
}
