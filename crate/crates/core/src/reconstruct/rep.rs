//! The representations `ρ` (adjoint on `E·z ⊕ I`) and `ρ′` (adjoint on
//! `E·Y ⊕ E·[Y, X] ⊕ T³`).
//!
//! In both cases the representation space has exactly one `E`-basis vector per
//! degree in a range `[lo, window]`, so the image of a homogeneous element of
//! degree `d` is a weighted shift: slot `j` goes to `c_j` times slot `j + d`. Such
//! maps are stored as their weight vectors.

use serde::Serialize;

use crate::endo::EndoRing;
use crate::error::{Error, Result};
use crate::gf::{express, span_basis, ExtElem, ExtField, Field, Matrix};
use crate::maxclass::{HomElem, MaxClassAlgebra};
use crate::subfield::{to_f_coords, SubalgebraAnalysis};

/// Weighted shift on the representation space, row convention: slot `s` (degree
/// `lo + s`) maps to `coeffs[s]` times slot `s + shift`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ShiftMap {
    pub shift: usize,
    pub coeffs: Vec<ExtElem>,
}

impl ShiftMap {
    pub fn zero(shift: usize, dim: usize) -> Self {
        ShiftMap {
            shift,
            coeffs: vec![ExtElem::ZERO; dim],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// `self · other` (apply `self` first).
    pub fn compose(&self, field: &ExtField, other: &ShiftMap) -> ShiftMap {
        let n = self.dim();
        let coeffs = (0..n)
            .map(|s| {
                let mid = s + self.shift;
                if mid < n {
                    field.mul(self.coeffs[s], other.coeffs[mid])
                } else {
                    ExtElem::ZERO
                }
            })
            .collect();
        ShiftMap {
            shift: self.shift + other.shift,
            coeffs,
        }
        .truncated()
    }

    /// `self·other − other·self`.
    pub fn bracket(&self, field: &ExtField, other: &ShiftMap) -> ShiftMap {
        let a = self.compose(field, other);
        let b = other.compose(field, self);
        a.sub(field, &b)
    }

    pub fn add(&self, field: &ExtField, other: &ShiftMap) -> ShiftMap {
        assert_eq!(self.shift, other.shift, "adding maps of different degree");
        ShiftMap {
            shift: self.shift,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| field.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, field: &ExtField, other: &ShiftMap) -> ShiftMap {
        self.add(field, &other.scale(field, field.neg(ExtElem::ONE)))
    }

    pub fn scale(&self, field: &ExtField, c: ExtElem) -> ShiftMap {
        ShiftMap {
            shift: self.shift,
            coeffs: self.coeffs.iter().map(|&a| field.mul(c, a)).collect(),
        }
    }

    /// Zeroes weights whose target slot lies outside the space.
    fn truncated(mut self) -> Self {
        let n = self.dim();
        for s in n.saturating_sub(self.shift)..n {
            self.coeffs[s] = ExtElem::ZERO;
        }
        self
    }

    /// The full matrix over `E`, row convention.
    pub fn to_matrix(&self, field: &ExtField) -> Matrix<ExtElem> {
        let n = self.dim();
        let mut m = Matrix::zeros(field, n, n);
        for s in 0..n {
            if s + self.shift < n {
                m.set(s, s + self.shift, self.coeffs[s]);
            }
        }
        m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    #[serde(rename = "rho")]
    Rho,
    #[serde(rename = "rho_prime")]
    RhoPrime,
}

/// Where a homomorphism check failed: `ρ([t, t′]) ≠ [ρ(t), ρ(t′)]` for the basis
/// elements `t = T_a[i]`, `t′ = T_b[j]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HomFailure {
    pub a: usize,
    pub i: usize,
    pub b: usize,
    pub j: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoRep {
    pub branch: Branch,
    /// `I = T^k`; 2 for `ρ′`.
    pub k: usize,
    /// Degree of the lowest slot.
    pub lo: usize,
    pub window: usize,
    /// `images[d − 1][m]`: image of the `m`-th basis vector of `T_d`.
    pub images: Vec<Vec<ShiftMap>>,
    field: ExtField,
}

/// `E`-coordinates on `T_i`, `i >= 3`, relative to `w_i` (the first basis vector),
/// with `μ` acting through the endomorphism ring.
struct ECoords {
    /// `[w_i, μ̂ w_i]` in ambient coordinates, indexed by degree.
    frames: Vec<Vec<Vec<u32>>>,
}

impl ECoords {
    fn new(ring: &EndoRing, mu: &[u32], analysis: &SubalgebraAnalysis, from: usize) -> Result<Self> {
        let mut frames = vec![Vec::new(); analysis.window + 1];
        for (i, frame) in frames.iter_mut().enumerate().skip(from) {
            let w = analysis.basis_elems(i)[0].clone();
            let mw = ring.scalar_action(mu, &w)?;
            let pair = vec![to_f_coords(&w), to_f_coords(&mw)];
            if span_basis(&ring_base(ring), 2, &pair).len() != 2 {
                return Err(Error::NotEStable(i));
            }
            *frame = pair;
        }
        Ok(ECoords { frames })
    }

    fn coord(&self, ring: &EndoRing, u: &HomElem) -> ExtElem {
        let c = express(&ring_base(ring), &self.frames[u.degree], &to_f_coords(u))
            .expect("T_i is two-dimensional over F");
        ExtElem::new(c[0], c[1])
    }
}

fn ring_base(ring: &EndoRing) -> crate::gf::BaseField {
    ring.field().base()
}

/// Builds `ρ` (`branch = Rho`, `I = T^k`, `z` the first basis vector of `T_{k−1}`)
/// or `ρ′` (`branch = RhoPrime`). `mu` is the endomorphism playing the role of `μ`.
pub fn build_rep(
    alg: &MaxClassAlgebra,
    analysis: &SubalgebraAnalysis,
    ring: &EndoRing,
    mu: &[u32],
    branch: Branch,
    k: usize,
) -> Result<RhoRep> {
    let f = *alg.field();
    let window = analysis.window;
    let (lo, ideal_from) = match branch {
        Branch::Rho => (k - 1, k),
        Branch::RhoPrime => (1, 3),
    };
    if ideal_from < ring.view.k0 {
        return Err(Error::Precondition(format!(
            "ideal starts in degree {ideal_from}, below the module"
        )));
    }
    let ecoords = ECoords::new(ring, mu, analysis, ideal_from)?;
    let dim = window - lo + 1;
    let gx = analysis.pair.x_elem();
    let gy = analysis.pair.y_elem();
    let yx = alg.bracket(&gy, &gx).expect("degree 2 inside window");
    let fb = f.base();
    let l1 = [to_f_coords(&gx), to_f_coords(&gy)];
    let bracket_coord = |u: &HomElem, t: &HomElem| -> ExtElem {
        match alg.bracket(u, t) {
            Some(v) if v.degree <= window => ecoords.coord(ring, &v),
            _ => ExtElem::ZERO,
        }
    };
    let mut images = Vec::with_capacity(window);
    for d in 1..=window {
        let mut per = Vec::new();
        for t in analysis.basis_elems(d) {
            let mut map = ShiftMap::zero(d, dim);
            for s in 0..dim {
                let slot_deg = lo + s;
                if slot_deg + d > window {
                    break;
                }
                let c = if slot_deg >= ideal_from {
                    let w = analysis.basis_elems(slot_deg)[0].clone();
                    bracket_coord(&w, &t)
                } else {
                    match branch {
                        // z-slot
                        Branch::Rho => {
                            let z = analysis.basis_elems(k - 1)[0].clone();
                            bracket_coord(&z, &t)
                        }
                        Branch::RhoPrime if slot_deg == 1 => {
                            if d == 1 {
                                // t = αX + βY: the slot of Y goes to α times the slot of [Y, X]
                                let c = express(&fb, &l1, &to_f_coords(&t)).expect("t in L_1");
                                f.from_base(c[0])
                            } else {
                                bracket_coord(&gy, &t)
                            }
                        }
                        Branch::RhoPrime => bracket_coord(&yx, &t),
                    }
                };
                map.coeffs[s] = c;
            }
            per.push(map);
        }
        images.push(per);
    }
    Ok(RhoRep {
        branch,
        k,
        lo,
        window,
        images,
        field: f,
    })
}

impl RhoRep {
    pub fn dim(&self) -> usize {
        self.window - self.lo + 1
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    /// `ρ(u)` for `u ∈ T_d`, by `F`-linearity.
    pub fn image(&self, analysis: &SubalgebraAnalysis, u: &HomElem) -> Result<ShiftMap> {
        let fb = self.field.base();
        let d = u.degree;
        let c = express(&fb, analysis.basis(d), &to_f_coords(u))
            .ok_or_else(|| Error::Precondition(format!("element of degree {d} outside T")))?;
        let mut out = ShiftMap::zero(d, self.dim());
        for (&ci, img) in c.iter().zip(&self.images[d - 1]) {
            out = out.add(&self.field, &img.scale(&self.field, self.field.from_base(ci)));
        }
        Ok(out)
    }

    /// Checks `ρ([t, t′]) = ρ(t)ρ(t′) − ρ(t′)ρ(t)` for all basis pairs with
    /// `deg t + deg t′ <= window`.
    pub fn check_homomorphism(&self, alg: &MaxClassAlgebra, analysis: &SubalgebraAnalysis) -> Result<Option<HomFailure>> {
        let window = self.window;
        for a in 1..window {
            let ta = analysis.basis_elems(a);
            for b in 1..=window - a {
                let tb = analysis.basis_elems(b);
                for (i, t) in ta.iter().enumerate() {
                    for (j, t2) in tb.iter().enumerate() {
                        let prod = alg.bracket(t, t2).expect("inside window");
                        let lhs = self.image(analysis, &prod)?;
                        let rhs = self.images[a - 1][i].bracket(&self.field, &self.images[b - 1][j]);
                        if lhs != rhs {
                            return Ok(Some(HomFailure { a, i, b, j }));
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    /// First degree `d <= upto` where `ρ` restricted to `T_d` has a kernel.
    pub fn faithfulness_failure(&self, upto: usize) -> Option<usize> {
        let fb = self.field.base();
        (1..=upto.min(self.window)).find(|&d| {
            let rows: Vec<Vec<u32>> = self.images[d - 1]
                .iter()
                .map(|m| m.coeffs.iter().flat_map(|c| [c.c0, c.c1]).collect())
                .collect();
            span_basis(&fb, 2 * self.dim(), &rows).len() != rows.len()
        })
    }
}
