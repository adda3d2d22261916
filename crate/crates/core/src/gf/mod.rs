//! Prime fields, their quadratic extensions, and dense linear algebra over both.
//!
//! Elements are plain values; the field descriptor carries the modulus and the
//! defining relation and is passed to every operation.

mod matrix;

pub use matrix::{express, span_basis, Matrix, Rref};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arithmetic context for a field whose elements are `Copy` values.
pub trait Field {
    type Elem: Copy + Eq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: Self::Elem) -> Option<Self::Elem>;

    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// The prime field `F_p`, `2 <= p <= 251`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BaseField {
    p: u32,
}

impl BaseField {
    pub fn new(p: u32) -> Result<Self> {
        if p > 251 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(BaseField { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn size(&self) -> usize {
        self.p as usize
    }

    pub fn reduce(&self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.p
    }
}

impl Field for BaseField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }
    fn sub(&self, a: u32, b: u32) -> u32 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        a * b % self.p
    }
    fn neg(&self, a: u32) -> u32 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: u32) -> Option<u32> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(a, self.p as u64 - 2))
        }
    }
}

/// An element `c0 + c1·μ` of the quadratic extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[u32; 2]", into = "[u32; 2]")]
pub struct ExtElem {
    pub c0: u32,
    pub c1: u32,
}

impl ExtElem {
    pub const ZERO: ExtElem = ExtElem { c0: 0, c1: 0 };
    pub const ONE: ExtElem = ExtElem { c0: 1, c1: 0 };
    pub const MU: ExtElem = ExtElem { c0: 0, c1: 1 };

    pub const fn new(c0: u32, c1: u32) -> Self {
        ExtElem { c0, c1 }
    }

    pub const fn base(c0: u32) -> Self {
        ExtElem { c0, c1: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.c0 == 0 && self.c1 == 0
    }

    /// Lies in the prime field.
    pub fn is_base(&self) -> bool {
        self.c1 == 0
    }

    pub fn coords(&self) -> [u32; 2] {
        [self.c0, self.c1]
    }
}

impl From<[u32; 2]> for ExtElem {
    fn from(c: [u32; 2]) -> Self {
        ExtElem { c0: c[0], c1: c[1] }
    }
}

impl From<ExtElem> for [u32; 2] {
    fn from(e: ExtElem) -> Self {
        [e.c0, e.c1]
    }
}

impl fmt::Display for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.c0, self.c1) {
            (c0, 0) => write!(f, "{c0}"),
            (0, 1) => write!(f, "μ"),
            (0, c1) => write!(f, "{c1}μ"),
            (c0, 1) => write!(f, "{c0}+μ"),
            (c0, c1) => write!(f, "{c0}+{c1}μ"),
        }
    }
}

/// `E = F_p[μ]/(μ² − u·μ − v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExtField {
    base: BaseField,
    u: u32,
    v: u32,
}

impl ExtField {
    /// Rejects `p` not prime and polynomials `t² − ut − v` with a root in `F_p`.
    pub fn new(p: u32, u: u32, v: u32) -> Result<Self> {
        let base = BaseField::new(p)?;
        let (u, v) = (u % p, v % p);
        for t in base.elements() {
            // t^2 - u t - v
            let val = base.sub(base.sub(base.mul(t, t), base.mul(u, t)), v);
            if val == 0 {
                return Err(Error::ReduciblePolynomial { p, u, v, root: t });
            }
        }
        Ok(ExtField { base, u, v })
    }

    pub fn base(&self) -> BaseField {
        self.base
    }

    pub fn p(&self) -> u32 {
        self.base.p
    }

    /// Coefficients `(u, v)` of the relation `μ² = u·μ + v`.
    pub fn relation(&self) -> (u32, u32) {
        (self.u, self.v)
    }

    pub fn size(&self) -> usize {
        (self.base.p * self.base.p) as usize
    }

    pub fn elem(&self, c0: i64, c1: i64) -> ExtElem {
        ExtElem::new(self.base.reduce(c0), self.base.reduce(c1))
    }

    pub fn from_base(&self, c: u32) -> ExtElem {
        ExtElem::base(c % self.base.p)
    }

    pub fn mu(&self) -> ExtElem {
        ExtElem::MU
    }

    /// Enumeration index `c0 + p·c1`; zero first, then the nonzero elements of `F_p`.
    pub fn index(&self, a: ExtElem) -> usize {
        (a.c0 + self.base.p * a.c1) as usize
    }

    pub fn from_index(&self, i: usize) -> ExtElem {
        let p = self.base.p as usize;
        ExtElem::new((i % p) as u32, (i / p) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = ExtElem> + '_ {
        (0..self.size()).map(move |i| self.from_index(i))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = ExtElem> + '_ {
        (1..self.size()).map(move |i| self.from_index(i))
    }

    pub fn pow(&self, a: ExtElem, mut e: u64) -> ExtElem {
        let mut base = a;
        let mut acc = ExtElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The Frobenius conjugate `a^p`.
    pub fn conj(&self, a: ExtElem) -> ExtElem {
        self.pow(a, self.base.p as u64)
    }

    pub fn scale(&self, c: u32, a: ExtElem) -> ExtElem {
        ExtElem::new(self.base.mul(c, a.c0), self.base.mul(c, a.c1))
    }

    pub fn div(&self, a: ExtElem, b: ExtElem) -> Result<ExtElem> {
        let binv = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, binv))
    }

    pub fn try_inv(&self, a: ExtElem) -> Result<ExtElem> {
        self.inv(a).ok_or(Error::DivisionByZero)
    }

    /// Norm `a·a^p`, an element of the prime field.
    pub fn norm(&self, a: ExtElem) -> u32 {
        let n = self.mul(a, self.conj(a));
        debug_assert_eq!(n.c1, 0);
        n.c0
    }

    /// The `F_p`-matrix of `w ↦ w·a` on coordinates `(c0, c1)`, row convention.
    pub fn mul_matrix(&self, a: ExtElem) -> [[u32; 2]; 2] {
        let one = self.mul(ExtElem::ONE, a);
        let mu = self.mul(ExtElem::MU, a);
        [[one.c0, one.c1], [mu.c0, mu.c1]]
    }
}

impl Field for ExtField {
    type Elem = ExtElem;

    fn zero(&self) -> ExtElem {
        ExtElem::ZERO
    }
    fn one(&self) -> ExtElem {
        ExtElem::ONE
    }
    fn add(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        let f = &self.base;
        ExtElem::new(f.add(a.c0, b.c0), f.add(a.c1, b.c1))
    }
    fn sub(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        let f = &self.base;
        ExtElem::new(f.sub(a.c0, b.c0), f.sub(a.c1, b.c1))
    }
    fn mul(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        let f = &self.base;
        // (a0 + a1 μ)(b0 + b1 μ) with μ² = uμ + v
        let hi = f.mul(a.c1, b.c1);
        let c0 = f.add(f.mul(a.c0, b.c0), f.mul(self.v, hi));
        let c1 = f.add(
            f.add(f.mul(a.c0, b.c1), f.mul(a.c1, b.c0)),
            f.mul(self.u, hi),
        );
        ExtElem::new(c0, c1)
    }
    fn neg(&self, a: ExtElem) -> ExtElem {
        ExtElem::new(self.base.neg(a.c0), self.base.neg(a.c1))
    }
    fn inv(&self, a: ExtElem) -> Option<ExtElem> {
        if a.is_zero() {
            return None;
        }
        // a^{-1} = conj(a) / N(a)
        let c = self.conj(a);
        let n = self.mul(a, c).c0;
        let ninv = self.base.inv(n)?;
        Some(self.scale(ninv, c))
    }
}

/// A point of the projective line over `E`, stored normalized:
/// `(1 : λ)` when the first coordinate is nonzero, else `(0 : 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    pub a: ExtElem,
    pub b: ExtElem,
}

impl ProjPoint {
    pub fn normalize(field: &ExtField, a: ExtElem, b: ExtElem) -> Option<Self> {
        if !a.is_zero() {
            let inv = field.inv(a)?;
            Some(ProjPoint {
                a: ExtElem::ONE,
                b: field.mul(b, inv),
            })
        } else if !b.is_zero() {
            Some(ProjPoint {
                a: ExtElem::ZERO,
                b: ExtElem::ONE,
            })
        } else {
            None
        }
    }

    pub fn infinity() -> Self {
        ProjPoint {
            a: ExtElem::ZERO,
            b: ExtElem::ONE,
        }
    }

    pub fn is_infinity(&self) -> bool {
        self.a.is_zero()
    }

    /// All `|E| + 1` normalized points: `(1 : λ)` in element order, then `(0 : 1)`.
    pub fn all(field: &ExtField) -> Vec<ProjPoint> {
        field
            .elements()
            .map(|l| ProjPoint {
                a: ExtElem::ONE,
                b: l,
            })
            .chain(std::iter::once(ProjPoint::infinity()))
            .collect()
    }
}
