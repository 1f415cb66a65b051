use std::fmt;

use serde::Serialize;

use super::modulus::Modulus;
use crate::error::{Error, Result};

fn check_same(a: &Modulus, b: &Modulus) -> Result<()> {
    if a != b {
        return Err(Error::ModulusMismatch {
            left: a.value(),
            right: b.value(),
        });
    }
    Ok(())
}

/// An element of (Z/p^nZ)^r with canonical entries in [0, p^n).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModVector {
    modulus: Modulus,
    entries: Vec<i64>,
}

impl Serialize for ModVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(s)
    }
}

impl ModVector {
    pub fn new(modulus: Modulus, entries: impl IntoIterator<Item = i64>) -> Self {
        let entries = entries
            .into_iter()
            .map(|a| modulus.reduce(a as i128))
            .collect();
        ModVector { modulus, entries }
    }

    pub fn zero(modulus: Modulus, len: usize) -> Self {
        ModVector {
            modulus,
            entries: vec![0; len],
        }
    }

    pub fn unit(modulus: Modulus, len: usize, i: usize) -> Self {
        let mut v = Self::zero(modulus, len);
        v.entries[i] = 1;
        v
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<i64> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&a| a == 0)
    }

    fn check(&self, other: &ModVector) -> Result<()> {
        check_same(&self.modulus, &other.modulus)?;
        if self.len() != other.len() {
            return Err(Error::Dimension(format!(
                "vectors of length {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &ModVector) -> Result<ModVector> {
        self.check(other)?;
        let m = self.modulus;
        Ok(ModVector {
            modulus: m,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| m.add(a, b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &ModVector) -> Result<ModVector> {
        self.check(other)?;
        let m = self.modulus;
        Ok(ModVector {
            modulus: m,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| m.sub(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, c: i64) -> ModVector {
        let m = self.modulus;
        ModVector {
            modulus: m,
            entries: self.entries.iter().map(|&a| m.mul(a, c)).collect(),
        }
    }

    /// Reinterprets the entries over a different modulus (lift, then reduce).
    pub fn reduce_to(&self, modulus: Modulus) -> ModVector {
        ModVector::new(modulus, self.entries.iter().copied())
    }

    pub fn concat(parts: &[ModVector], modulus: Modulus) -> ModVector {
        ModVector {
            modulus,
            entries: parts
                .iter()
                .flat_map(|v| v.entries.iter().copied())
                .collect(),
        }
    }
}

impl fmt::Display for ModVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// A dense row-major matrix over Z/p^nZ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModMatrix {
    modulus: Modulus,
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl Serialize for ModMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl ModMatrix {
    pub fn new(modulus: Modulus, rows: usize, cols: usize, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(ModMatrix {
            modulus,
            rows,
            cols,
            entries: entries
                .into_iter()
                .map(|a| modulus.reduce(a as i128))
                .collect(),
        })
    }

    pub fn from_rows(modulus: Modulus, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(
            modulus,
            rows.len(),
            cols,
            rows.iter().flatten().copied().collect(),
        )
    }

    /// Matrix whose columns are the given vectors (all of length `len`).
    pub fn from_columns(modulus: Modulus, len: usize, columns: &[ModVector]) -> Self {
        let mut m = Self::zero(modulus, len, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for i in 0..len {
                m.entries[i * m.cols + j] = c.entries[i];
            }
        }
        m
    }

    pub fn zero(modulus: Modulus, rows: usize, cols: usize) -> Self {
        ModMatrix {
            modulus,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(modulus: Modulus, n: usize) -> Self {
        Self::scalar(modulus, n, 1)
    }

    pub fn scalar(modulus: Modulus, n: usize, c: i64) -> Self {
        let mut m = Self::zero(modulus, n, n);
        let c = modulus.reduce(c as i128);
        for i in 0..n {
            m.entries[i * n + i] = c;
        }
        m
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, a: i64) {
        self.entries[i * self.cols + j] = self.modulus.reduce(a as i128);
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> ModVector {
        ModVector {
            modulus: self.modulus,
            entries: (0..self.rows).map(|i| self.get(i, j)).collect(),
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.modulus, self.rows)
    }

    pub fn mul(&self, other: &ModMatrix) -> Result<ModMatrix> {
        check_same(&self.modulus, &other.modulus)?;
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let m = self.modulus;
        let q = m.value() as i128;
        let mut out = vec![0i64; self.rows * other.cols];
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: i128 = 0;
                for k in 0..self.cols {
                    acc += self.entries[i * self.cols + k] as i128
                        * other.entries[k * other.cols + j] as i128;
                    if acc >= q * q {
                        acc %= q;
                    }
                }
                out[i * other.cols + j] = m.reduce(acc);
            }
        }
        Ok(ModMatrix {
            modulus: m,
            rows: self.rows,
            cols: other.cols,
            entries: out,
        })
    }

    pub fn mul_vec(&self, v: &ModVector) -> Result<ModVector> {
        check_same(&self.modulus, &v.modulus)?;
        if self.cols != v.len() {
            return Err(Error::Dimension(format!(
                "cannot apply {}x{} to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let m = self.modulus;
        Ok(ModVector {
            modulus: m,
            entries: (0..self.rows)
                .map(|i| {
                    let acc: i128 = self
                        .row(i)
                        .iter()
                        .zip(&v.entries)
                        .map(|(&a, &b)| a as i128 * b as i128)
                        .sum();
                    m.reduce(acc)
                })
                .collect(),
        })
    }

    fn zip_with(&self, other: &ModMatrix, f: impl Fn(i64, i64) -> i64) -> Result<ModMatrix> {
        check_same(&self.modulus, &other.modulus)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(ModMatrix {
            modulus: self.modulus,
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &ModMatrix) -> Result<ModMatrix> {
        let m = self.modulus;
        self.zip_with(other, |a, b| m.add(a, b))
    }

    pub fn sub(&self, other: &ModMatrix) -> Result<ModMatrix> {
        let m = self.modulus;
        self.zip_with(other, |a, b| m.sub(a, b))
    }

    /// `self - Id`, for square matrices.
    pub fn minus_identity(&self) -> Result<ModMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension("g - 1 needs a square matrix".into()));
        }
        self.sub(&Self::identity(self.modulus, self.rows))
    }

    pub fn scale(&self, c: i64) -> ModMatrix {
        let m = self.modulus;
        ModMatrix {
            modulus: m,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&a| m.mul(a, c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Result<ModMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.modulus, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> ModMatrix {
        let mut t = Self::zero(self.modulus, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &ModMatrix) -> Result<ModMatrix> {
        check_same(&self.modulus, &other.modulus)?;
        if self.cols != other.cols {
            return Err(Error::Dimension("vstack with different widths".into()));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(ModMatrix {
            modulus: self.modulus,
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Block-diagonal matrix diag(self, Id_s).
    pub fn block_with_identity(&self, s: usize) -> ModMatrix {
        let n = self.rows + s;
        let mut out = Self::identity(self.modulus, n);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[i * n + j] = self.get(i, j);
            }
        }
        out
    }

    /// Entrywise reduction (or re-interpretation) modulo another modulus.
    pub fn reduce_to(&self, modulus: Modulus) -> ModMatrix {
        ModMatrix {
            modulus,
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|&a| modulus.reduce(a as i128))
                .collect(),
        }
    }

    pub fn lift(&self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&a| a as i128).collect(),
        }
    }

    /// Determinant over Z/p^nZ by elimination with minimal-valuation pivots.
    pub fn det(&self) -> Result<i64> {
        if !self.is_square() {
            return Err(Error::Dimension(
                "determinant of a non-square matrix".into(),
            ));
        }
        let m = self.modulus;
        let n = self.rows;
        let mut a = self.entries.clone();
        let mut det = m.reduce(1);
        for t in 0..n {
            let piv = (t..n)
                .filter(|&i| a[i * n + t] != 0)
                .min_by_key(|&i| (m.valuation(a[i * n + t]), i));
            let Some(piv) = piv else {
                return Ok(0);
            };
            if piv != t {
                for j in 0..n {
                    a.swap(t * n + j, piv * n + j);
                }
                det = m.neg(det);
            }
            let pivot = a[t * n + t];
            let (v, uinv) = m.split_unit(pivot).expect("nonzero pivot");
            let pv = m.p_pow(v);
            for i in t + 1..n {
                let x = a[i * n + t];
                if x == 0 {
                    continue;
                }
                // x = pivot * (x / p^v) * u^-1
                let c = m.mul(x / pv, uinv);
                for j in t..n {
                    a[i * n + j] = m.sub(a[i * n + j], m.mul(c, a[t * n + j]));
                }
            }
            det = m.mul(det, pivot);
        }
        Ok(det)
    }

    pub fn is_invertible(&self) -> bool {
        self.det().map(|d| self.modulus.is_unit(d)).unwrap_or(false)
    }
}

impl fmt::Display for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// A dense integer matrix; entries are i128 and every operation checks overflow.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i128>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<i128>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(rows.len(), cols, rows.iter().flatten().copied().collect())
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[i128] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, a: i128) {
        self.entries[i * self.cols + j] = a;
    }

    pub fn to_rows(&self) -> Vec<Vec<i128>> {
        (0..self.rows)
            .map(|i| self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: i128 = 0;
                for k in 0..self.cols {
                    let t = self
                        .get(i, k)
                        .checked_mul(other.get(k, j))
                        .ok_or(Error::Overflow("integer matrix product"))?;
                    acc = acc
                        .checked_add(t)
                        .ok_or(Error::Overflow("integer matrix product"))?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<i128> {
        if self.rows != self.cols {
            return Err(Error::Dimension(
                "determinant of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let ovf = || Error::Overflow("Bareiss determinant");
        let mut a = self.entries.clone();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k * n + k] == 0 {
                let Some(i) = (k + 1..n).find(|&i| a[i * n + k] != 0) else {
                    return Ok(0);
                };
                for j in 0..n {
                    a.swap(k * n + j, i * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let x = a[i * n + j]
                        .checked_mul(a[k * n + k])
                        .ok_or_else(ovf)?
                        .checked_sub(a[i * n + k].checked_mul(a[k * n + j]).ok_or_else(ovf)?)
                        .ok_or_else(ovf)?;
                    a[i * n + j] = x / prev;
                }
            }
            prev = a[k * n + k];
        }
        Ok(sign * a[n * n - 1])
    }

    pub fn reduce(&self, modulus: Modulus) -> ModMatrix {
        ModMatrix {
            modulus,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&a| modulus.reduce(a)).collect(),
        }
    }
}
