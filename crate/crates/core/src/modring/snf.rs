//! Smith normal forms.
//!
//! The integer form runs on arbitrary-precision entries internally and hands
//! back `IntMatrix` results, failing with an overflow error only when a
//! result entry does not fit in i128. The modular form works over Z/p^nZ, a
//! local principal ideal ring, where a pivot of minimal p-adic valuation
//! always divides the rest of its row and column; it drives every kernel,
//! image and quotient computation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::{IntMatrix, ModMatrix};
use super::modulus::Modulus;
use crate::error::{Error, Result};

/// `u * a * v = s`, with `u` and `v` unimodular and `s` diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    /// The diagonal of `s`, nonnegative, each entry dividing the next.
    pub invariant_factors: Vec<i128>,
}

/// Row-major integer matrix with unbounded entries.
#[derive(Debug, Clone)]
pub(crate) struct BigMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl BigMatrix {
    pub(crate) fn zero(rows: usize, cols: usize) -> Self {
        BigMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub(crate) fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i * self.cols + j] = x;
    }

    fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub(crate) fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &x[j]).sum())
            .collect()
    }

    fn to_int(&self) -> Result<IntMatrix> {
        let entries = self
            .data
            .iter()
            .map(|x| x.to_i128().ok_or(Error::Overflow("Smith normal form")))
            .collect::<Result<_>>()?;
        IntMatrix::new(self.rows, self.cols, entries)
    }

    /// Rows (i, j) become (a·row_i + b·row_j, c·row_i + d·row_j).
    fn rows_2x2(&mut self, i: usize, j: usize, [a, b, c, d]: &[BigInt; 4]) {
        for col in 0..self.cols {
            let (x, y) = (self.get(i, col).clone(), self.get(j, col).clone());
            self.set(i, col, a * &x + b * &y);
            self.set(j, col, c * &x + d * &y);
        }
    }

    /// row_i -= q·row_j
    fn row_sub(&mut self, i: usize, j: usize, q: &BigInt) {
        for col in 0..self.cols {
            let t = q * self.get(j, col);
            self.data[i * self.cols + col] -= t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for col in 0..self.cols {
            let x = &mut self.data[i * self.cols + col];
            *x = -std::mem::take(x);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for col in 0..self.cols {
                self.data.swap(a * self.cols + col, b * self.cols + col);
            }
        }
    }

    fn dot(&self, i: usize, j: usize) -> BigInt {
        (0..self.cols)
            .map(|c| self.get(i, c) * self.get(j, c))
            .sum()
    }
}

impl From<&IntMatrix> for BigMatrix {
    fn from(a: &IntMatrix) -> Self {
        BigMatrix {
            rows: a.rows(),
            cols: a.cols(),
            data: a.entries().iter().map(|&x| BigInt::from(x)).collect(),
        }
    }
}

/// Nearest integer to a / b, ties toward zero.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = (a / b, a % b);
    if BigInt::from(2) * r.abs() > b.abs() {
        if r.is_negative() == b.is_negative() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Pairwise size reduction of rows `from..` of `u` among themselves, then of
/// rows `..from` against them. Only used on rows whose image under the
/// transform is zero, so adding them anywhere leaves the product unchanged.
const SIZE_REDUCTION_SWEEPS: usize = 16;

fn reduce_kernel_rows(u: &mut BigMatrix, from: usize) {
    let m = u.rows;
    let mut changed = from < m;
    for _ in 0..SIZE_REDUCTION_SWEEPS {
        if !changed {
            break;
        }
        changed = false;
        for i in 0..m {
            for j in from..m {
                if i == j {
                    continue;
                }
                let (nj, d) = (u.dot(j, j), u.dot(i, j));
                if nj.is_zero() || BigInt::from(2) * d.abs() <= nj {
                    continue;
                }
                u.row_sub(i, j, &round_div(&d, &nj));
                changed = true;
            }
        }
    }
}

/// Row Hermite form: echelon with positive pivots and the entries above each
/// pivot reduced into [0, pivot). Each column is cleared Euclid-style with
/// the smallest entry as pivot (ties by lowest row), and the zero rows that
/// remain have their transform rows size-reduced when `reduce` is set, so
/// entries stay near the size of the input's minors.
fn row_hermite(s: &mut BigMatrix, u: &mut BigMatrix, reduce: bool) {
    let (m, k) = (s.rows, s.cols);
    let mut r = 0;
    for c in 0..k {
        if r == m {
            break;
        }
        loop {
            let best = (r..m)
                .filter(|&i| !s.get(i, c).is_zero())
                .min_by(|&i, &j| s.get(i, c).abs().cmp(&s.get(j, c).abs()).then(i.cmp(&j)));
            let Some(b) = best else { break };
            s.swap_rows(r, b);
            u.swap_rows(r, b);
            let pivot = s.get(r, c).clone();
            let mut done = true;
            for i in r + 1..m {
                let q = round_div(s.get(i, c), &pivot);
                if !q.is_zero() {
                    s.row_sub(i, r, &q);
                    u.row_sub(i, r, &q);
                }
                done &= s.get(i, c).is_zero();
            }
            if done {
                break;
            }
        }
        if s.get(r, c).is_zero() {
            continue;
        }
        if s.get(r, c).is_negative() {
            s.negate_row(r);
            u.negate_row(r);
        }
        let pivot = s.get(r, c).clone();
        for i in 0..r {
            let q = s.get(i, c).div_floor(&pivot);
            if !q.is_zero() {
                s.row_sub(i, r, &q);
                u.row_sub(i, r, &q);
            }
        }
        r += 1;
    }
    if reduce {
        reduce_kernel_rows(u, r);
    }
}

fn is_diagonal(s: &BigMatrix) -> bool {
    (0..s.rows).all(|i| (0..s.cols).all(|j| i == j || s.get(i, j).is_zero()))
}

/// Integer Smith form with unbounded entries.
pub(crate) struct BigSnf {
    pub(crate) u: BigMatrix,
    pub(crate) s: BigMatrix,
    pub(crate) v: BigMatrix,
    pub(crate) invariant_factors: Vec<BigInt>,
}

/// With `reduce` unset the transforms are still correct but may be large.
pub(crate) fn big_smith(a: BigMatrix, reduce: bool) -> Result<BigSnf> {
    let (m, k) = (a.rows, a.cols);
    let mut s = a;
    let mut u = BigMatrix::identity(m);
    let mut v = BigMatrix::identity(k);
    let mut rounds = 0;
    while !is_diagonal(&s) {
        rounds += 1;
        if rounds > 64 * (m + k) {
            return Err(Error::Overflow("Smith normal form did not converge"));
        }
        row_hermite(&mut s, &mut u, reduce);
        if is_diagonal(&s) {
            break;
        }
        let (mut st, mut vt) = (s.transpose(), v.transpose());
        row_hermite(&mut st, &mut vt, reduce);
        s = st.transpose();
        v = vt.transpose();
    }
    let d = m.min(k);
    for i in 0..d {
        if s.get(i, i).is_negative() {
            s.negate_row(i);
            u.negate_row(i);
        }
    }
    // Hermite forms leave zero rows last, so nonzero diagonal entries come first.
    for i in 0..d {
        for j in i + 1..d {
            let (x, y) = (s.get(i, i).clone(), s.get(j, j).clone());
            if y.is_zero() || (!x.is_zero() && y.is_multiple_of(&x)) {
                continue;
            }
            let e = x.extended_gcd(&y);
            let (g, p, q) = (e.gcd, e.x, e.y);
            let (xg, yg) = (&x / &g, &y / &g);
            // [[p, q], [-y/g, x/g]] · diag(x, y) · [[1, -q·y/g], [1, p·x/g]] = diag(g, x·y/g)
            let left = [p.clone(), q.clone(), -yg.clone(), xg.clone()];
            s.rows_2x2(i, j, &left);
            u.rows_2x2(i, j, &left);
            let right = [BigInt::one(), BigInt::one(), -(q * yg), p * xg];
            let (mut st, mut vt) = (s.transpose(), v.transpose());
            st.rows_2x2(i, j, &right);
            vt.rows_2x2(i, j, &right);
            s = st.transpose();
            v = vt.transpose();
        }
    }
    let invariant_factors = (0..d).map(|i| s.get(i, i).clone()).collect();
    Ok(BigSnf {
        u,
        s,
        v,
        invariant_factors,
    })
}

/// Smith normal form over the integers.
///
/// Alternates row and column Hermite forms until the matrix is diagonal, then
/// replaces each pair of diagonal entries (a, b) that violates the divisibility
/// chain by (gcd, lcm). Every step is deterministic.
pub fn smith_normal_form(a: &IntMatrix) -> Result<SnfResult> {
    let big = big_smith(BigMatrix::from(a), true)?;
    let s = big.s.to_int()?;
    let invariant_factors = (0..big.invariant_factors.len())
        .map(|i| s.get(i, i))
        .collect();
    Ok(SnfResult {
        u: big.u.to_int()?,
        s,
        v: big.v.to_int()?,
        invariant_factors,
    })
}

/// p-adic valuations of the integer invariant factors of `a`, with `None`
/// for a zero factor. Needs no bound on the size of the factors.
pub fn invariant_factor_valuations(a: &IntMatrix, p: i64) -> Result<Vec<Option<u32>>> {
    let p = BigInt::from(p);
    let snf = big_smith(BigMatrix::from(a), false)?;
    Ok(snf
        .invariant_factors
        .into_iter()
        .map(|mut x| {
            if x.is_zero() {
                return None;
            }
            let mut v = 0;
            while x.is_multiple_of(&p) {
                x /= &p;
                v += 1;
            }
            Some(v)
        })
        .collect())
}

/// Smith form over Z/p^nZ: `p * a * q = diag(p^e_0, p^e_1, ...)`.
#[derive(Debug, Clone)]
pub struct ModSnf {
    /// Row transform, present when requested.
    pub p: Option<ModMatrix>,
    pub q: ModMatrix,
    /// Inverse of `q`, present when requested.
    pub q_inv: Option<ModMatrix>,
    /// Valuations of the diagonal, nondecreasing; `n` stands for a zero entry.
    /// Length is `min(rows, cols)`.
    pub exponents: Vec<u32>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SnfTracking {
    pub p: bool,
    pub q_inv: bool,
}

/// Dense scratch matrix with raw row-major access.
struct Dense {
    m: Modulus,
    rows: usize,
    cols: usize,
    a: Vec<i64>,
}

impl Dense {
    fn identity(m: Modulus, n: usize) -> Self {
        let mut a = vec![0; n * n];
        for i in 0..n {
            a[i * n + i] = 1;
        }
        Dense {
            m,
            rows: n,
            cols: n,
            a,
        }
    }

    fn swap_rows(&mut self, x: usize, y: usize) {
        if x != y {
            for j in 0..self.cols {
                self.a.swap(x * self.cols + j, y * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, x: usize, y: usize) {
        if x != y {
            for i in 0..self.rows {
                self.a.swap(i * self.cols + x, i * self.cols + y);
            }
        }
    }

    /// row[dst] -= c * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, c: i64) {
        if c == 0 {
            return;
        }
        let cols = self.cols;
        for j in 0..cols {
            let s = self.a[src * cols + j];
            if s != 0 {
                let d = &mut self.a[dst * cols + j];
                *d = self.m.sub(*d, self.m.mul(c, s));
            }
        }
    }

    /// col[dst] -= c * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, c: i64) {
        if c == 0 {
            return;
        }
        let cols = self.cols;
        for i in 0..self.rows {
            let s = self.a[i * cols + src];
            if s != 0 {
                let d = &mut self.a[i * cols + dst];
                *d = self.m.sub(*d, self.m.mul(c, s));
            }
        }
    }

    fn scale_row(&mut self, r: usize, c: i64) {
        for j in 0..self.cols {
            let x = &mut self.a[r * self.cols + j];
            *x = self.m.mul(*x, c);
        }
    }

    fn into_matrix(self) -> ModMatrix {
        ModMatrix::new(self.m, self.rows, self.cols, self.a).expect("shape")
    }
}

pub fn mod_smith(a: &ModMatrix, tracking: SnfTracking) -> ModSnf {
    let md = a.modulus();
    let (rows, cols) = (a.rows(), a.cols());
    let mut s = Dense {
        m: md,
        rows,
        cols,
        a: a.entries().to_vec(),
    };
    let mut p = tracking.p.then(|| Dense::identity(md, rows));
    let mut q = Dense::identity(md, cols);
    let mut q_inv = tracking.q_inv.then(|| Dense::identity(md, cols));
    let mut exponents = Vec::with_capacity(rows.min(cols));

    for t in 0..rows.min(cols) {
        let mut best: Option<(u32, usize, usize)> = None;
        'scan: for i in t..rows {
            for j in t..cols {
                let x = s.a[i * cols + j];
                if x != 0 {
                    let v = md.valuation(x);
                    if best.is_none_or(|(b, _, _)| v < b) {
                        best = Some((v, i, j));
                        if v == 0 {
                            break 'scan;
                        }
                    }
                }
            }
        }
        let Some((v, pi, pj)) = best else {
            exponents.resize(rows.min(cols), md.n());
            break;
        };
        s.swap_rows(t, pi);
        if let Some(p) = p.as_mut() {
            p.swap_rows(t, pi);
        }
        s.swap_cols(t, pj);
        q.swap_cols(t, pj);
        if let Some(qi) = q_inv.as_mut() {
            qi.swap_rows(t, pj);
        }
        let (_, uinv) = md.split_unit(s.a[t * cols + t]).expect("pivot");
        s.scale_row(t, uinv);
        if let Some(p) = p.as_mut() {
            p.scale_row(t, uinv);
        }
        let pv = md.p_pow(v);
        for i in t + 1..rows {
            let x = s.a[i * cols + t];
            if x != 0 {
                let c = x / pv;
                s.row_axpy(i, t, c);
                if let Some(p) = p.as_mut() {
                    p.row_axpy(i, t, c);
                }
            }
        }
        for j in t + 1..cols {
            let x = s.a[t * cols + j];
            if x != 0 {
                let c = x / pv;
                // Only row t of s is nonzero in column t now.
                s.a[t * cols + j] = 0;
                q.col_axpy(j, t, c);
                if let Some(qi) = q_inv.as_mut() {
                    // inverse of col_j -= c col_t is row_t += c row_j
                    qi.row_axpy(t, j, md.neg(c));
                }
            }
        }
        exponents.push(v);
    }
    ModSnf {
        p: p.map(Dense::into_matrix),
        q: q.into_matrix(),
        q_inv: q_inv.map(Dense::into_matrix),
        exponents,
    }
}
