//! The norm-one torus of dimension p - 1 and its p^2-torsion module: the
//! matrices γ1 (coordinate shift) and γ2 ((p+1)·Id) on the basis
//! v, σv, ..., σ^(p-2)v of the sum-zero submodule, the cocycle they carry,
//! and its verification.

mod report;
mod verify;

use serde::Serialize;

use crate::cohomology::{Cocycle, GModule, Limits};
use crate::error::{Error, Result};
use crate::matgroup::MatrixGroup;
use crate::modring::{kernel_submodule, solve_linear, ModMatrix, ModVector, Modulus, Submodule};

pub use report::{Check, VerificationReport, REPORT_SCHEMA};
pub use verify::{theorem1a_check, verify_counterexample};

fn p_squared(p: i64) -> Result<Modulus> {
    Modulus::new(p, 2)
}

/// The shift σ·(x_0, ..., x_{p-1}) = (x_{p-1}, x_0, ..., x_{p-2}).
fn shift_matrix(m: Modulus, size: usize) -> ModMatrix {
    let mut s = ModMatrix::zero(m, size, size);
    for i in 0..size {
        s.set(i, (i + size - 1) % size, 1);
    }
    s
}

/// Subdiagonal ones and a last column of -1.
pub fn gamma1(p: i64) -> Result<ModMatrix> {
    let m = p_squared(p)?;
    let r = (p - 1) as usize;
    let mut g = ModMatrix::zero(m, r, r);
    for i in 0..r {
        if i + 1 < r {
            g.set(i + 1, i, 1);
        }
        g.set(i, r - 1, m.neg(1));
    }
    Ok(g)
}

pub fn gamma2(p: i64) -> Result<ModMatrix> {
    let m = p_squared(p)?;
    Ok(ModMatrix::scalar(m, (p - 1) as usize, p + 1))
}

/// (p-1, 0, ..., 0, 1).
pub fn v1(p: i64) -> Result<ModVector> {
    let m = p_squared(p)?;
    let r = (p - 1) as usize;
    Ok(ModVector::new(
        m,
        (0..r).map(|i| match i {
            0 => p - 1,
            i if i == r - 1 => 1,
            _ => 0,
        }),
    ))
}

/// (p, ..., p, 0).
pub fn v2(p: i64) -> Result<ModVector> {
    let m = p_squared(p)?;
    let r = (p - 1) as usize;
    Ok(ModVector::new(
        m,
        (0..r).map(|i| if i + 1 < r { p } else { 0 }),
    ))
}

/// V = {v : sum of coordinates ≡ 0 mod p}, of index p.
pub fn sum_zero_mod_p(p: i64) -> Result<Submodule> {
    let m = p_squared(p)?;
    let r = (p - 1) as usize;
    kernel_submodule(&ModMatrix::new(m, 1, r, vec![p; r])?)
}

/// The sum-zero submodule W of (Z/p^2Z)^p with the shift action, written
/// in the basis b_j = σ^j (1, -1, 0, ..., 0).
#[derive(Debug, Clone)]
pub struct NormTorusModule {
    pub p: i64,
    pub ambient_shift: ModMatrix,
    pub submodule: Submodule,
    pub basis: Vec<ModVector>,
    pub sigma: ModMatrix,
    pub eta: ModMatrix,
}

pub fn norm_torus_module(p: i64) -> Result<NormTorusModule> {
    let m = p_squared(p)?;
    let size = p as usize;
    let shift = shift_matrix(m, size);
    let submodule = kernel_submodule(&ModMatrix::new(m, 1, size, vec![1; size])?)?;
    let mut basis = vec![ModVector::new(
        m,
        (0..size).map(|i| match i {
            0 => 1,
            1 => -1,
            _ => 0,
        }),
    )];
    for _ in 1..size - 1 {
        let next = shift.mul_vec(basis.last().expect("nonempty"))?;
        basis.push(next);
    }
    let basis_matrix = ModMatrix::from_columns(m, size, &basis);
    let eta_ambient = ModMatrix::scalar(m, size, p + 1);

    // Column j of the restricted matrix holds the coordinates of g·b_j.
    let restrict = |g: &ModMatrix| -> Result<ModMatrix> {
        let cols = basis
            .iter()
            .map(|b| {
                let image = g.mul_vec(b)?;
                solve_linear(&basis_matrix, &image)?
                    .solution
                    .ok_or_else(|| Error::Invalid("W is not stable".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ModMatrix::from_columns(m, size - 1, &cols))
    };
    Ok(NormTorusModule {
        p,
        sigma: restrict(&shift)?,
        eta: restrict(&eta_ambient)?,
        ambient_shift: shift,
        submodule,
        basis,
    })
}

/// The data of the counterexample, possibly altered. Verification never
/// assumes these are the true matrices and vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CounterexampleInput {
    pub p: i64,
    pub gamma1: ModMatrix,
    pub gamma2: ModMatrix,
    pub v1: ModVector,
    pub v2: ModVector,
    /// Replaces the computed value of Z at γ1γ2^h in the local-condition
    /// check, indexed by h.
    pub local_targets: Option<Vec<ModVector>>,
}

impl CounterexampleInput {
    pub fn standard(p: i64) -> Result<Self> {
        Ok(CounterexampleInput {
            p,
            gamma1: gamma1(p)?,
            gamma2: gamma2(p)?,
            v1: v1(p)?,
            v2: v2(p)?,
            local_targets: None,
        })
    }
}

#[derive(Debug, Clone)]
pub struct CounterexampleData {
    pub group: MatrixGroup,
    pub gamma1: ModMatrix,
    pub gamma2: ModMatrix,
    pub v1: ModVector,
    pub v2: ModVector,
    pub cocycle: Cocycle,
}

/// Fails before anything of size p is built if |G_p| = p^2 exceeds the cap.
pub fn require_within_cap(p: i64, cap: usize) -> Result<Modulus> {
    let m = p_squared(p)?;
    if (p as u128) * (p as u128) > cap as u128 {
        return Err(Error::GroupTooLarge { cap });
    }
    Ok(m)
}

/// The group G_p = <γ1, γ2> of order p^2 together with the cocycle
/// extending γ1 ↦ v1, γ2 ↦ v2.
pub fn counterexample(p: i64, cap: usize) -> Result<CounterexampleData> {
    let m = require_within_cap(p, cap)?;
    let input = CounterexampleInput::standard(p)?;
    let group = MatrixGroup::enumerate(
        m,
        (p - 1) as usize,
        vec![input.gamma1.clone(), input.gamma2.clone()],
        cap,
    )?;
    if group.order() as i64 != p * p || group.elementary_abelian_profile() != Some(2) {
        return Err(Error::Invalid(format!(
            "<γ1, γ2> has order {}",
            group.order()
        )));
    }
    let cocycle =
        GModule::natural(&group).extend_from_generators(&[input.v1.clone(), input.v2.clone()])?;
    Ok(CounterexampleData {
        group,
        gamma1: input.gamma1,
        gamma2: input.gamma2,
        v1: input.v1,
        v2: input.v2,
        cocycle,
    })
}

/// Z at γ1γ2^h from the generator values: v1 + γ1 (1 + γ2 + ... + γ2^(h-1)) v2.
pub fn cocycle_at_gamma1_gamma2_pow(input: &CounterexampleInput, h: u64) -> Result<ModVector> {
    let mut acc = ModVector::zero(input.v2.modulus(), input.v2.len());
    let mut term = input.v2.clone();
    for _ in 0..h {
        acc = acc.add(&term)?;
        term = input.gamma2.mul_vec(&term)?;
    }
    input.v1.add(&input.gamma1.mul_vec(&acc)?)
}

/// The counterexample group times a split torus of dimension r - (p - 1).
pub fn extend_to_dimension(p: i64, r: usize, cap: usize) -> Result<MatrixGroup> {
    if p < 3 || r + 1 < p as usize {
        return Err(Error::Invalid(format!(
            "dimension {r} is below p - 1 = {}",
            p - 1
        )));
    }
    let base = counterexample(p, cap)?.group;
    base.block_sum(r + 1 - p as usize, cap)
}

/// A torus described by its torsion module at level p^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TorusSpec {
    /// The norm-one torus of dimension p - 1 at level p^2.
    NormCounterexample {
        p: i64,
    },
    Split {
        p: i64,
        n: u32,
        dim: usize,
    },
    Product {
        base: Box<TorusSpec>,
        extra: usize,
    },
}

impl TorusSpec {
    pub fn p(&self) -> i64 {
        match self {
            TorusSpec::NormCounterexample { p } | TorusSpec::Split { p, .. } => *p,
            TorusSpec::Product { base, .. } => base.p(),
        }
    }

    pub fn n(&self) -> u32 {
        match self {
            TorusSpec::NormCounterexample { .. } => 2,
            TorusSpec::Split { n, .. } => *n,
            TorusSpec::Product { base, .. } => base.n(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            TorusSpec::NormCounterexample { p } => (*p - 1) as usize,
            TorusSpec::Split { dim, .. } => *dim,
            TorusSpec::Product { base, extra } => base.dim() + extra,
        }
    }

    /// The image of Galois in GL_dim(Z/p^nZ).
    pub fn group(&self, limits: &Limits) -> Result<MatrixGroup> {
        match self {
            TorusSpec::NormCounterexample { p } => {
                Ok(counterexample(*p, limits.max_group_order)?.group)
            }
            TorusSpec::Split { p, n, dim } => MatrixGroup::trivial(Modulus::new(*p, *n)?, *dim),
            TorusSpec::Product { base, extra } => base
                .group(limits)?
                .block_sum(*extra, limits.max_group_order),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::DEFAULT_GROUP_CAP;

    #[test]
    fn p3_data() {
        let m = Modulus::new(3, 2).unwrap();
        assert_eq!(
            gamma1(3).unwrap(),
            ModMatrix::from_rows(m, &[vec![0, 8], vec![1, 8]]).unwrap()
        );
        assert_eq!(gamma2(3).unwrap(), ModMatrix::scalar(m, 2, 4));
        assert_eq!(v1(3).unwrap().entries(), &[2, 1]);
        assert_eq!(v2(3).unwrap().entries(), &[3, 0]);
    }

    #[test]
    fn shift_restricts_to_gamma1() {
        for p in [3, 5, 7] {
            let w = norm_torus_module(p).unwrap();
            assert_eq!(w.sigma, gamma1(p).unwrap());
            assert_eq!(w.eta, gamma2(p).unwrap());
            assert_eq!(w.submodule.index().unwrap(), (p * p) as u128);
            assert!(w.ambient_shift.pow(p as u64).unwrap().is_identity());
            for b in &w.basis {
                assert!(w.submodule.contains(b).unwrap());
            }
        }
    }

    #[test]
    fn counterexample_groups() {
        for p in [3, 5, 7] {
            let d = counterexample(p, DEFAULT_GROUP_CAP).unwrap();
            assert_eq!(d.group.order() as i64, p * p);
            assert_eq!(d.group.elementary_abelian_profile(), Some(2));
        }
        assert!(matches!(
            counterexample(101, DEFAULT_GROUP_CAP),
            Err(Error::GroupTooLarge { .. })
        ));
    }

    #[test]
    fn formula_matches_table() {
        let d = counterexample(5, DEFAULT_GROUP_CAP).unwrap();
        let input = CounterexampleInput::standard(5).unwrap();
        for h in 0..5u64 {
            let g = d.gamma1.mul(&d.gamma2.pow(h).unwrap()).unwrap();
            let e = d.group.index_of(&g).unwrap();
            assert_eq!(
                &cocycle_at_gamma1_gamma2_pow(&input, h).unwrap(),
                d.cocycle.value(e)
            );
        }
    }

    #[test]
    fn extension_dimensions() {
        assert_eq!(extend_to_dimension(3, 2, 100).unwrap().dim(), 2);
        let g = extend_to_dimension(3, 3, 100).unwrap();
        assert_eq!((g.dim(), g.order()), (3, 9));
        assert!(extend_to_dimension(3, 1, 100).is_err());
        let spec = TorusSpec::Product {
            base: Box::new(TorusSpec::NormCounterexample { p: 3 }),
            extra: 2,
        };
        assert_eq!(spec.dim(), 4);
        assert_eq!(spec.group(&Limits::default()).unwrap().order(), 9);
    }
}
