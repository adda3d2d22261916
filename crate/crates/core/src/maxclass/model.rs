//! Structure constants of a truncated algebra of maximal class, derived from the
//! adjoint pairs, and the exhaustive Jacobi check.
//!
//! Basis indices: `0 = x`, `1 = y`, `i = v_i` for `2 <= i <= n`. Every component of
//! degree at least 2 is one-dimensional, so `[e_a, e_b]` is a single scalar times
//! `v_{deg a + deg b}`. The table `coef[a][b]` stores that scalar; it is the unique
//! nonzero entry of column `a` of the matrix of `ad e_b`.

use std::fmt;

use serde::Serialize;

use crate::gf::{ExtElem, ExtField, Field, Matrix};

/// A basis element of `M`, by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisElem(pub usize);

impl BasisElem {
    pub const X: BasisElem = BasisElem(0);
    pub const Y: BasisElem = BasisElem(1);

    pub fn v(i: usize) -> Self {
        assert!(i >= 2, "v_i needs i >= 2");
        BasisElem(i)
    }

    pub fn degree(self) -> usize {
        self.0.max(1)
    }
}

impl fmt::Display for BasisElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "x"),
            1 => write!(f, "y"),
            i => write!(f, "v_{i}"),
        }
    }
}

impl Serialize for BasisElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Why a presentation is not a Lie algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum JacobiFailure {
    /// `[[u,w],g] + [[w,g],u] + [[g,u],w] = value·v_D ≠ 0`.
    Jacobi {
        triple: [BasisElem; 3],
        value: ExtElem,
    },
    /// `[a,b] + [b,a] ≠ 0`, or `[a,a] ≠ 0`.
    Antisymmetry { pair: [BasisElem; 2] },
}

impl fmt::Display for JacobiFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JacobiFailure::Jacobi { triple, value } => write!(
                f,
                "J({}, {}, {}) = {}",
                triple[0], triple[1], triple[2], value
            ),
            JacobiFailure::Antisymmetry { pair } => {
                write!(f, "[{0},{1}] + [{1},{0}] != 0", pair[0], pair[1])
            }
        }
    }
}

/// Layer-by-layer construction of the structure constants. Layer `D` holds all
/// brackets landing in degree `D` and depends on the pairs of degree `< D` only,
/// which is what lets the search extend and prune prefixes.
#[derive(Debug, Clone)]
pub(crate) struct ModelBuilder {
    field: ExtField,
    n: usize,
    pairs: Vec<(ExtElem, ExtElem)>,
    coef: Vec<ExtElem>,
    built: usize,
}

impl ModelBuilder {
    pub(crate) fn new(field: ExtField, n: usize) -> Self {
        let size = n + 1;
        let mut b = ModelBuilder {
            field,
            n,
            pairs: vec![(ExtElem::ZERO, ExtElem::ZERO); size],
            coef: vec![ExtElem::ZERO; size * size],
            built: 1,
        };
        // layer 2: [y, x] = v_2
        let one = ExtElem::ONE;
        b.set(1, 0, one);
        b.set(0, 1, field.neg(one));
        b.built = 2;
        b
    }

    pub(crate) fn built(&self) -> usize {
        self.built
    }

    pub(crate) fn class(&self) -> usize {
        self.n
    }

    fn at(&self, a: usize, b: usize) -> ExtElem {
        self.coef[a * (self.n + 1) + b]
    }

    fn set(&mut self, a: usize, b: usize, v: ExtElem) {
        self.coef[a * (self.n + 1) + b] = v;
    }

    fn index_of_degree(d: usize) -> usize {
        debug_assert!(d >= 2);
        d
    }

    /// Scalar `c` with `[e_a, e_b] = c·v_{deg a + deg b}`; caller guarantees the
    /// total degree is already built.
    fn br(&self, a: usize, b: usize) -> ExtElem {
        self.at(a, b)
    }

    /// Generator used to define `v_{k+1}` from `v_k`, and its coefficient.
    fn step(&self, k: usize) -> (usize, ExtElem) {
        let (a, b) = self.pairs[k];
        if !a.is_zero() {
            (0, a)
        } else {
            (1, b)
        }
    }

    /// Sets the pair of degree `built` and computes layer `built + 1`.
    pub(crate) fn push(&mut self, pair: (ExtElem, ExtElem)) {
        let j = self.built;
        assert!(j < self.n, "model already complete");
        assert!(!(pair.0.is_zero() && pair.1.is_zero()), "zero pair");
        self.pairs[j] = pair;
        let d = j + 1;
        let f = self.field;
        // brackets with x and y
        self.set(j, 0, pair.0);
        self.set(j, 1, pair.1);
        // brackets [e_a, v_k] with deg a + k = d, by increasing k
        for k in 2..d {
            let deg_a = d - k;
            let sources: &[usize] = if deg_a == 1 { &[0, 1] } else { &[deg_a] };
            for &a in sources {
                let val = if k == 2 {
                    // [e_a, [y, x]] = [[e_a, y], x] − [[e_a, x], y]
                    let t = Self::index_of_degree(deg_a + 1);
                    f.sub(
                        f.mul(self.br(a, 1), self.br(t, 0)),
                        f.mul(self.br(a, 0), self.br(t, 1)),
                    )
                } else {
                    // v_k = c⁻¹[v_{k−1}, g]
                    let (g, c) = self.step(k - 1);
                    let cinv = f.inv(c).expect("nonzero step coefficient");
                    let first = f.mul(self.br(a, k - 1), self.br(d - 1, g));
                    let mid = Self::index_of_degree(deg_a + 1);
                    let second = f.mul(self.br(a, g), self.br(mid, k - 1));
                    f.mul(cinv, f.sub(first, second))
                };
                self.set(a, k, val);
            }
        }
        self.built = d;
    }

    /// Rolls back to the state where layer `d` is the last one built.
    pub(crate) fn truncate(&mut self, d: usize) {
        assert!(d >= 2 && d <= self.built);
        self.built = d;
    }

    /// Basis indices of total degree `d` pairs `(a, b)`, `a` and `b` arbitrary.
    fn pairs_of_degree(d: usize) -> impl Iterator<Item = (usize, usize)> {
        (0..d).flat_map(move |a| {
            let da = a.max(1);
            (0..d).filter_map(move |b| (da + b.max(1) == d).then_some((a, b)))
        })
    }

    /// Checks all Jacobi triples and antisymmetry relations landing in degree `d`.
    pub(crate) fn check_layer(&self, d: usize) -> Result<usize, JacobiFailure> {
        assert!(d <= self.built);
        let f = &self.field;
        let mut checked = 0;
        // distinct index triples i < j < k with degree sum d, lexicographic
        for i in 0..d {
            for j in i + 1..d {
                let used = i.max(1) + j.max(1);
                if used >= d {
                    continue;
                }
                let rest = d - used;
                let (first, second) = if rest == 1 { (0, Some(1)) } else { (rest, None) };
                for k in std::iter::once(first).chain(second).filter(|&k| k > j) {
                    checked += 1;
                    let val = self.jacobi(i, j, k);
                    if !f.is_zero(val) {
                        // cyclic rotation, same value of J
                        return Err(JacobiFailure::Jacobi {
                            triple: [BasisElem(k), BasisElem(i), BasisElem(j)],
                            value: val,
                        });
                    }
                }
            }
        }
        for (a, b) in Self::pairs_of_degree(d) {
            if a > b {
                continue;
            }
            // [a, a] = 0 must be checked directly: in characteristic 2 the sum
            // [a, a] + [a, a] vanishes regardless
            let s = if a == b {
                self.br(a, a)
            } else {
                f.add(self.br(a, b), self.br(b, a))
            };
            if !f.is_zero(s) {
                return Err(JacobiFailure::Antisymmetry {
                    pair: [BasisElem(a), BasisElem(b)],
                });
            }
        }
        Ok(checked)
    }

    /// Coefficient of `J(e_u, e_w, e_g)` on `v_{deg u + deg w + deg g}`.
    fn jacobi(&self, u: usize, w: usize, g: usize) -> ExtElem {
        let f = &self.field;
        let term = |a: usize, b: usize, c: usize| {
            let inner = a.max(1) + b.max(1);
            f.mul(self.br(a, b), self.br(Self::index_of_degree(inner), c))
        };
        f.add(f.add(term(u, w, g), term(w, g, u)), term(g, u, w))
    }

    pub(crate) fn finish(self) -> AdjointModel {
        assert_eq!(self.built, self.n, "model incomplete");
        AdjointModel {
            field: self.field,
            n: self.n,
            coef: self.coef,
        }
    }

    pub(crate) fn pairs(&self) -> &[(ExtElem, ExtElem)] {
        &self.pairs[2..self.built]
    }
}

/// Complete bracket table of a validated class-`n` presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjointModel {
    field: ExtField,
    n: usize,
    coef: Vec<ExtElem>,
}

impl AdjointModel {
    pub fn class(&self) -> usize {
        self.n
    }

    /// `[e_a, e_b] = c·v_{deg a + deg b}`; `None` when the degree exceeds the class.
    pub fn bracket_basis(&self, a: BasisElem, b: BasisElem) -> Option<(BasisElem, ExtElem)> {
        let d = a.degree() + b.degree();
        if d > self.n {
            return None;
        }
        Some((BasisElem(d), self.coef[a.0 * (self.n + 1) + b.0]))
    }

    /// Coefficient of `[e_a, e_b]`, zero beyond the window.
    pub fn coef(&self, a: BasisElem, b: BasisElem) -> ExtElem {
        self.bracket_basis(a, b).map_or(ExtElem::ZERO, |(_, c)| c)
    }

    /// Matrix of `ad e_b: w ↦ [w, e_b]` on the basis `(x, y, v_2, …, v_n)`, row
    /// convention (row `a` is the image of `e_a`).
    pub fn ad_matrix(&self, b: BasisElem) -> Matrix<ExtElem> {
        let size = self.n + 1;
        let mut m = Matrix::zeros(&self.field, size, size);
        for a in 0..size {
            if let Some((t, c)) = self.bracket_basis(BasisElem(a), b) {
                m.set(a, t.0, c);
            }
        }
        m
    }

    /// Checks `ad [e_w, e_g] = ad e_w · ad e_g − ad e_g · ad e_w` (row convention)
    /// for every pair of basis elements whose bracket stays in the window.
    pub fn check_ad_homomorphism(&self) -> Option<[BasisElem; 2]> {
        let f = &self.field;
        let size = self.n + 1;
        let ads: Vec<_> = (0..size).map(|b| self.ad_matrix(BasisElem(b))).collect();
        for w in 0..size {
            for g in 0..size {
                let (we, ge) = (BasisElem(w), BasisElem(g));
                let Some((t, c)) = self.bracket_basis(we, ge) else {
                    continue;
                };
                let lhs = ads[t.0].scale(f, c);
                let rhs = ads[w].commutator(f, &ads[g]);
                if lhs != rhs {
                    return Some([we, ge]);
                }
            }
        }
        None
    }
}
