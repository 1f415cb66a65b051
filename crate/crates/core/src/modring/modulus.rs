use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ring Z/p^nZ for an odd prime p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Modulus {
    p: i64,
    n: u32,
    value: i64,
}

pub fn is_prime(x: i64) -> bool {
    if x < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= x {
        if x % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Modulus {
    pub fn new(p: i64, n: u32) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if n == 0 {
            return Err(Error::ZeroExponent);
        }
        let value = p
            .checked_pow(n)
            .filter(|v| *v <= 1 << 62)
            .ok_or(Error::ModulusOverflow { p, n })?;
        Ok(Modulus { p, n, value })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn value(&self) -> i64 {
        self.value
    }

    /// Same prime, exponent `j`.
    pub fn with_exponent(&self, j: u32) -> Result<Modulus> {
        Modulus::new(self.p, j)
    }

    /// p^k as an integer, k <= n.
    pub fn p_pow(&self, k: u32) -> i64 {
        debug_assert!(k <= self.n);
        self.p.pow(k)
    }

    pub fn reduce(&self, a: i128) -> i64 {
        a.rem_euclid(self.value as i128) as i64
    }

    pub fn add(&self, a: i64, b: i64) -> i64 {
        self.reduce(a as i128 + b as i128)
    }

    pub fn sub(&self, a: i64, b: i64) -> i64 {
        self.reduce(a as i128 - b as i128)
    }

    pub fn mul(&self, a: i64, b: i64) -> i64 {
        self.reduce(a as i128 * b as i128)
    }

    pub fn neg(&self, a: i64) -> i64 {
        self.reduce(-(a as i128))
    }

    /// p-adic valuation of a canonical element; zero has valuation n.
    pub fn valuation(&self, a: i64) -> u32 {
        let mut a = self.reduce(a as i128);
        if a == 0 {
            return self.n;
        }
        let mut v = 0;
        while a % self.p == 0 {
            a /= self.p;
            v += 1;
        }
        v
    }

    pub fn is_unit(&self, a: i64) -> bool {
        self.reduce(a as i128) % self.p != 0
    }

    pub fn inverse(&self, a: i64) -> Option<i64> {
        let a = self.reduce(a as i128);
        if a % self.p == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.value as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.reduce(t0))
    }

    /// Writes a nonzero `a` as p^v * u and returns (v, u^-1).
    pub fn split_unit(&self, a: i64) -> Option<(u32, i64)> {
        let a = self.reduce(a as i128);
        if a == 0 {
            return None;
        }
        let v = self.valuation(a);
        let u = a / self.p_pow(v);
        Some((v, self.inverse(u).expect("unit part")))
    }

    pub fn pow(&self, base: i64, mut e: u64) -> i64 {
        let mut acc = self.reduce(1);
        let mut b = self.reduce(base as i128);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }
}

impl std::fmt::Display for Modulus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}^{}", self.p, self.n)
    }
}
