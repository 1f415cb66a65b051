use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::matrix::{ModMatrix, ModVector};
use super::snf::{big_smith, mod_smith, BigMatrix, SnfTracking};
use super::submodule::Submodule;
use crate::error::{Error, Result};

/// Outcome of `a * x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSolution {
    /// One solution, when the system is solvable.
    pub solution: Option<ModVector>,
    /// Kernel of `a`.
    pub kernel: Submodule,
}

fn check_system(a: &ModMatrix, b: &ModVector) -> Result<()> {
    if a.modulus() != b.modulus() {
        return Err(Error::ModulusMismatch {
            left: a.modulus().value(),
            right: b.modulus().value(),
        });
    }
    if a.rows() != b.len() {
        return Err(Error::Dimension(format!(
            "{}x{} system with right-hand side of length {}",
            a.rows(),
            a.cols(),
            b.len()
        )));
    }
    Ok(())
}

/// Kernel generators from a Smith form: column i of q scaled by p^(n - e_i).
fn kernel_from(q: &ModMatrix, exponents: &[u32], cols: usize) -> Submodule {
    let m = q.modulus();
    let mut gens = Vec::new();
    for i in 0..cols {
        let e = exponents.get(i).copied().unwrap_or(m.n());
        if e == 0 {
            continue;
        }
        let c = m.p_pow(m.n() - e);
        gens.push(q.column(i).scale(c).into_entries());
    }
    Submodule::from_raw(m, cols, gens)
}

/// Solves `a * x = b` over Z/p^nZ and returns the kernel of `a` alongside.
pub fn solve_linear(a: &ModMatrix, b: &ModVector) -> Result<LinearSolution> {
    check_system(a, b)?;
    let m = a.modulus();
    let snf = mod_smith(
        a,
        SnfTracking {
            p: true,
            q_inv: false,
        },
    );
    let pb = snf.p.as_ref().expect("tracked").mul_vec(b)?;
    let d = a.rows().min(a.cols());
    let mut y = vec![0i64; a.cols()];
    let mut solvable = pb.entries()[d..].iter().all(|&c| c == 0);
    for (i, (&c, &e)) in pb.entries()[..d].iter().zip(&snf.exponents).enumerate() {
        if c == 0 {
            continue;
        }
        if e == m.n() || m.valuation(c) < e {
            solvable = false;
            break;
        }
        y[i] = c / m.p_pow(e);
    }
    let solution = if solvable {
        Some(snf.q.mul_vec(&ModVector::new(m, y))?)
    } else {
        None
    };
    Ok(LinearSolution {
        solution,
        kernel: kernel_from(&snf.q, &snf.exponents, a.cols()),
    })
}

/// The solution set of the homogeneous system `a * x = 0`.
pub fn kernel_submodule(a: &ModMatrix) -> Result<Submodule> {
    let snf = mod_smith(a, SnfTracking::default());
    Ok(kernel_from(&snf.q, &snf.exponents, a.cols()))
}

/// The column span of `a`.
pub fn image_submodule(a: &ModMatrix) -> Result<Submodule> {
    let cols = (0..a.cols()).map(|j| a.column(j).into_entries()).collect();
    Ok(Submodule::from_raw(a.modulus(), a.rows(), cols))
}

/// The same system solved through the integers: lift `a`, adjoin the
/// relation columns p^n e_i, and read solvability off the integer Smith form.
///
/// Slower, since intermediate entries are unbounded; kept as an independent
/// route.
pub fn solve_linear_lifted(a: &ModMatrix, b: &ModVector) -> Result<LinearSolution> {
    check_system(a, b)?;
    let m = a.modulus();
    let (rows, cols) = (a.rows(), a.cols());
    let q = BigInt::from(m.value());
    let mut big = BigMatrix::zero(rows, cols + rows);
    for i in 0..rows {
        for j in 0..cols {
            big.set(i, j, BigInt::from(a.get(i, j)));
        }
        big.set(i, cols + i, q.clone());
    }
    let snf = big_smith(big, false)?;
    let rhs: Vec<BigInt> = b.entries().iter().map(|&x| BigInt::from(x)).collect();
    let ub = snf.u.mul_vec(&rhs);
    let mut z = vec![BigInt::zero(); cols + rows];
    let mut solvable = true;
    for i in 0..rows {
        let (c, s) = (&ub[i], &snf.invariant_factors[i]);
        if s.is_zero() {
            solvable &= c.is_zero();
        } else if !c.is_multiple_of(s) {
            solvable = false;
        } else {
            z[i] = c / s;
        }
    }
    let reduce = |x: &BigInt| x.mod_floor(&q).to_i64().expect("reduced below the modulus");
    let solution = solvable.then(|| {
        let y = snf.v.mul_vec(&z);
        ModVector::new(m, y[..cols].iter().map(reduce))
    });
    // [a | p^n I] has full row rank, so its integer kernel is spanned by the
    // last `cols` columns of v.
    let gens: Vec<Vec<i64>> = (rows..cols + rows)
        .map(|k| (0..cols).map(|j| reduce(snf.v.get(j, k))).collect())
        .collect();
    Ok(LinearSolution {
        solution,
        kernel: Submodule::from_raw(m, cols, gens),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modring::Modulus;

    fn m9() -> Modulus {
        Modulus::new(3, 2).unwrap()
    }

    fn gamma1() -> ModMatrix {
        ModMatrix::from_rows(m9(), &[vec![0, -1], vec![1, -1]]).unwrap()
    }

    #[test]
    fn identity_system() {
        let id = ModMatrix::identity(m9(), 2);
        let b = ModVector::new(m9(), [4, 7]);
        let s = solve_linear(&id, &b).unwrap();
        assert_eq!(s.solution, Some(b));
        assert!(s.kernel.is_zero());
        assert!(kernel_submodule(&id).unwrap().is_zero());
    }

    #[test]
    fn local_condition_at_gamma1() {
        let a = gamma1().minus_identity().unwrap();
        let b = ModVector::new(m9(), [2, 1]);
        for solve in [solve_linear, solve_linear_lifted] {
            let s = solve(&a, &b).unwrap();
            let x = s.solution.expect("solvable");
            assert_eq!(a.mul_vec(&x).unwrap(), b);
        }
        // w = (5, 2) is one witness
        assert_eq!(a.mul_vec(&ModVector::new(m9(), [5, 2])).unwrap(), b);
    }

    #[test]
    fn stacked_generator_system_is_unsolvable() {
        let a1 = gamma1().minus_identity().unwrap();
        let a2 = ModMatrix::scalar(m9(), 2, 4).minus_identity().unwrap();
        let a = a1.vstack(&a2).unwrap();
        let b = ModVector::new(m9(), [2, 1, 3, 0]);
        assert_eq!(solve_linear(&a, &b).unwrap().solution, None);
        assert_eq!(solve_linear_lifted(&a, &b).unwrap().solution, None);
    }

    #[test]
    fn images() {
        let pm = image_submodule(&ModMatrix::scalar(m9(), 2, 3)).unwrap();
        assert_eq!(pm.index().unwrap(), 9);
        let v = image_submodule(&gamma1().minus_identity().unwrap()).unwrap();
        assert_eq!(v.index().unwrap(), 3);
        let kernel = kernel_submodule(&ModMatrix::scalar(m9(), 2, 3)).unwrap();
        assert_eq!(kernel, pm);
    }

    #[test]
    fn shape_errors() {
        let id = ModMatrix::identity(m9(), 2);
        assert!(solve_linear(&id, &ModVector::zero(m9(), 3)).is_err());
    }
}
