//! Truncated graded Lie algebras of maximal class over `E`, generated in degree 1.
//!
//! A presentation lists, for each degree `2 <= i < n`, the pair `(a_i, b_i)` with
//! `[v_i, x] = a_i·v_{i+1}` and `[v_i, y] = b_i·v_{i+1}`; the relation `[y, x] = v_2`
//! is fixed. Everything above degree `n` is zero.

mod model;
mod search;

pub use model::{AdjointModel, BasisElem, JacobiFailure};
pub use search::{search_sequences, SEARCH_WINDOW_LIMIT};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{ExtElem, ExtField, Field, ProjPoint};
use model::ModelBuilder;

/// Degree-1 base change: row `r` holds the `(x, y)`-coordinates of the new
/// generator (`x'` for `r = 0`, `y'` for `r = 1`).
pub type Transform = [[ExtElem; 2]; 2];

pub const IDENTITY_TRANSFORM: Transform = [[ExtElem::ONE, ExtElem::ZERO], [ExtElem::ZERO, ExtElem::ONE]];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxClassPresentation {
    field: ExtField,
    class_n: usize,
    adjoint: Vec<(ExtElem, ExtElem)>,
}

impl MaxClassPresentation {
    /// `adjoint[i - 2]` is the pair of degree `i`; its length must be `class_n − 2`.
    pub fn new(field: ExtField, class_n: usize, adjoint: Vec<(ExtElem, ExtElem)>) -> Result<Self> {
        if class_n < 4 {
            return Err(Error::BadBound {
                bound: class_n,
                min: 4,
                max: usize::MAX,
            });
        }
        if adjoint.len() != class_n - 2 {
            return Err(Error::Schema(format!(
                "class {class_n} needs {} adjoint pairs, got {}",
                class_n - 2,
                adjoint.len()
            )));
        }
        let p = field.p();
        if adjoint
            .iter()
            .any(|(a, b)| a.c0 >= p || a.c1 >= p || b.c0 >= p || b.c1 >= p)
        {
            return Err(Error::Schema(format!("coordinates must be reduced mod {p}")));
        }
        Ok(MaxClassPresentation {
            field,
            class_n,
            adjoint,
        })
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn class(&self) -> usize {
        self.class_n
    }

    pub fn adjoint(&self) -> &[(ExtElem, ExtElem)] {
        &self.adjoint
    }

    /// `(a_i, b_i)` for `2 <= i < class`.
    pub fn pair(&self, i: usize) -> (ExtElem, ExtElem) {
        self.adjoint[i - 2]
    }

    /// Same algebra with each `v_{i+1}` rescaled so every pair reads `(1, λ)` or `(0, 1)`.
    pub fn normalize_pairs(&self) -> Self {
        let f = &self.field;
        let adjoint = self
            .adjoint
            .iter()
            .map(|&(a, b)| {
                let p = ProjPoint::normalize(f, a, b).unwrap_or(ProjPoint {
                    a: ExtElem::ZERO,
                    b: ExtElem::ZERO,
                });
                (p.a, p.b)
            })
            .collect();
        MaxClassPresentation {
            field: self.field,
            class_n: self.class_n,
            adjoint,
        }
    }

    /// Presentation with respect to the generators `x' = t00·x + t01·y`,
    /// `y' = t10·x + t11·y`. With `v'_i = det·v_i` the pairs transform linearly:
    /// `(a'_i, b'_i) = (t00·a_i + t01·b_i, t10·a_i + t11·b_i)`.
    pub fn rebase(&self, t: &Transform) -> Result<Self> {
        let f = &self.field;
        let det = f.sub(f.mul(t[0][0], t[1][1]), f.mul(t[0][1], t[1][0]));
        if det.is_zero() {
            return Err(Error::DegenerateGenerators);
        }
        let adjoint = self
            .adjoint
            .iter()
            .map(|&(a, b)| {
                (
                    f.add(f.mul(t[0][0], a), f.mul(t[0][1], b)),
                    f.add(f.mul(t[1][0], a), f.mul(t[1][1], b)),
                )
            })
            .collect();
        Ok(MaxClassPresentation {
            field: self.field,
            class_n: self.class_n,
            adjoint,
        })
    }
}

/// Homogeneous element: coordinates in `(x, y)` for degree 1, in `v_degree` otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct HomElem {
    pub degree: usize,
    pub coords: Vec<ExtElem>,
}

impl HomElem {
    pub fn deg1(alpha: ExtElem, beta: ExtElem) -> Self {
        HomElem {
            degree: 1,
            coords: vec![alpha, beta],
        }
    }

    pub fn x() -> Self {
        Self::deg1(ExtElem::ONE, ExtElem::ZERO)
    }

    pub fn y() -> Self {
        Self::deg1(ExtElem::ZERO, ExtElem::ONE)
    }

    /// `c·v_i`, `i >= 2`.
    pub fn v(i: usize, c: ExtElem) -> Self {
        assert!(i >= 2);
        HomElem {
            degree: i,
            coords: vec![c],
        }
    }

    pub fn zero(degree: usize) -> Self {
        HomElem {
            degree,
            coords: vec![ExtElem::ZERO; if degree == 1 { 2 } else { 1 }],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    fn terms(&self) -> impl Iterator<Item = (BasisElem, ExtElem)> + '_ {
        let base = if self.degree == 1 { 0 } else { self.degree };
        self.coords
            .iter()
            .enumerate()
            .map(move |(k, &c)| (BasisElem(base + k), c))
    }

    pub fn scale(&self, field: &ExtField, c: ExtElem) -> Self {
        HomElem {
            degree: self.degree,
            coords: self.coords.iter().map(|&a| field.mul(c, a)).collect(),
        }
    }
}

/// Validation outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JacobiReport {
    pub ok: bool,
    pub first_failure: Option<JacobiFailure>,
    pub checked_triples: usize,
}

/// Builds the bracket table and checks every Jacobi triple and antisymmetry
/// relation of total degree at most the class.
pub fn validate(pres: &MaxClassPresentation) -> Result<JacobiReport> {
    Ok(build_model(pres)?.1)
}

fn build_model(pres: &MaxClassPresentation) -> Result<(Option<AdjointModel>, JacobiReport)> {
    if let Some(i) = pres
        .adjoint
        .iter()
        .position(|(a, b)| a.is_zero() && b.is_zero())
    {
        return Err(Error::ZeroPair(i + 2));
    }
    let mut builder = ModelBuilder::new(pres.field, pres.class_n);
    let mut checked = 0;
    for &pair in &pres.adjoint {
        builder.push(pair);
        match builder.check_layer(builder.built()) {
            Ok(c) => checked += c,
            Err(failure) => {
                return Ok((
                    None,
                    JacobiReport {
                        ok: false,
                        first_failure: Some(failure),
                        checked_triples: checked,
                    },
                ))
            }
        }
    }
    Ok((
        Some(builder.finish()),
        JacobiReport {
            ok: true,
            first_failure: None,
            checked_triples: checked,
        },
    ))
}

/// A presentation that passed [`validate`], with its bracket table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxClassAlgebra {
    pres: MaxClassPresentation,
    model: AdjointModel,
}

impl MaxClassAlgebra {
    pub fn new(pres: MaxClassPresentation) -> Result<Self> {
        match build_model(&pres)? {
            (Some(model), _) => Ok(MaxClassAlgebra { pres, model }),
            (None, report) => Err(Error::NotLie(
                report
                    .first_failure
                    .map(|f| f.to_string())
                    .unwrap_or_default(),
            )),
        }
    }

    pub fn presentation(&self) -> &MaxClassPresentation {
        &self.pres
    }

    pub fn model(&self) -> &AdjointModel {
        &self.model
    }

    pub fn field(&self) -> &ExtField {
        &self.pres.field
    }

    pub fn class(&self) -> usize {
        self.pres.class_n
    }

    /// `[u, w]`, or `None` when `deg u + deg w` exceeds the class (the bracket is zero).
    pub fn bracket(&self, u: &HomElem, w: &HomElem) -> Option<HomElem> {
        let d = u.degree + w.degree;
        if d > self.class() {
            return None;
        }
        let f = self.field();
        let mut acc = ExtElem::ZERO;
        for (a, ca) in u.terms() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in w.terms() {
                if cb.is_zero() {
                    continue;
                }
                let c = self.model.coef(a, b);
                acc = f.add(acc, f.mul(f.mul(ca, cb), c));
            }
        }
        Some(HomElem::v(d, acc))
    }

    /// Scalar `s` with `[v_i, αx + βy] = s·v_{i+1}`, i.e. `α·a_i + β·b_i`.
    pub fn step_scalar(&self, i: usize, alpha: ExtElem, beta: ExtElem) -> ExtElem {
        let f = self.field();
        let (a, b) = self.pres.pair(i);
        f.add(f.mul(alpha, a), f.mul(beta, b))
    }
}

/// The unique metabelian algebra: every pair is `(1, 0)`.
pub fn make_metabelian(field: ExtField, n: usize) -> Result<MaxClassPresentation> {
    if n < 4 {
        return Err(Error::BadBound {
            bound: n,
            min: 4,
            max: usize::MAX,
        });
    }
    MaxClassPresentation::new(field, n, vec![(ExtElem::ONE, ExtElem::ZERO); n - 2])
}

/// `C_i` for `i = 2..class−1`, as normalized projective points `(α : β)` with
/// `[αx + βy, M_i] = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralizerSequence {
    pub points: Vec<ProjPoint>,
}

impl CentralizerSequence {
    /// `C_i`, `i >= 2`.
    pub fn at(&self, i: usize) -> ProjPoint {
        self.points[i - 2]
    }

    /// Last degree covered.
    pub fn last_degree(&self) -> usize {
        self.points.len() + 1
    }

    /// Degrees `i` with `C_i ≠ Ey`.
    pub fn deviations(&self) -> Vec<usize> {
        self.points
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_infinity())
            .map(|(k, _)| k + 2)
            .collect()
    }
}

/// Kernel of `(α, β) ↦ α·a_i + β·b_i`: the point `(b_i : −a_i)`, normalized.
pub fn two_step_centralizers(pres: &MaxClassPresentation) -> CentralizerSequence {
    let f = &pres.field;
    CentralizerSequence {
        points: pres
            .adjoint
            .iter()
            .map(|&(a, b)| ProjPoint::normalize(f, b, f.neg(a)).expect("nonzero pair"))
            .collect(),
    }
}

fn point_vector(p: ProjPoint) -> [ExtElem; 2] {
    [p.a, p.b]
}

/// Chooses `y'` spanning `C_2` and `x'` spanning the first centralizer different
/// from `C_2` (or an independent vector when there is none), and rewrites the
/// presentation in the new generators.
pub fn standard_generators(pres: &MaxClassPresentation) -> Result<(Transform, MaxClassPresentation)> {
    let cents = two_step_centralizers(pres);
    let c2 = cents.at(2);
    let deviation = cents.points.iter().copied().find(|&p| p != c2);
    let y_new = point_vector(c2);
    let x_new = match deviation {
        Some(p) => point_vector(p),
        None => {
            if c2.is_infinity() {
                [ExtElem::ONE, ExtElem::ZERO]
            } else {
                [ExtElem::ZERO, ExtElem::ONE]
            }
        }
    };
    let t = [x_new, y_new];
    let rebased = pres.rebase(&t)?;
    Ok((t, rebased))
}

/// Centralizers in the projective frame fixed by `C_2 = Ey`, first deviating
/// centralizer `= Ex` and first centralizer outside both `= E(x + y)`. Two
/// presentations of isomorphic algebras give the same sequence.
pub fn canonical_centralizers(pres: &MaxClassPresentation) -> Result<CentralizerSequence> {
    let (_, std) = standard_generators(pres)?;
    let f = &pres.field;
    let cents = two_step_centralizers(&std);
    let scale = cents
        .points
        .iter()
        .find(|p| !p.is_infinity() && !p.b.is_zero())
        .map(|p| f.inv(p.b).expect("nonzero"));
    Ok(match scale {
        None => cents,
        Some(s) => CentralizerSequence {
            points: cents
                .points
                .iter()
                .map(|&p| {
                    if p.is_infinity() {
                        p
                    } else {
                        ProjPoint {
                            a: ExtElem::ONE,
                            b: f.mul(p.b, s),
                        }
                    }
                })
                .collect(),
        },
    })
}

/// Occurrence data of one centralizer inside the window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralizerStat {
    /// `[α, β]` with the normalized point `(α : β)`.
    pub point: [ExtElem; 2],
    pub first_occurrence: usize,
    pub first_is_two_p_power: bool,
    pub occurrences: Vec<usize>,
    pub max_gap: Option<usize>,
    pub gaps_within_first: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagnosticsReport {
    pub window: usize,
    pub centralizers: Vec<CentralizerStat>,
}

fn is_two_p_power(m: usize, p: usize) -> bool {
    if m < 2 || !m.is_multiple_of(2) {
        return false;
    }
    let mut q = m / 2;
    while q.is_multiple_of(p) {
        q /= p;
    }
    q == 1
}

/// Per distinct centralizer: first occurrence `m`, whether `m = 2p^k`, and the
/// largest gap between successive occurrences compared against `m`. Diagnostic
/// only; a truncated algebra need not extend.
pub fn centralizer_stats(alg: &MaxClassAlgebra) -> DiagnosticsReport {
    let cents = two_step_centralizers(alg.presentation());
    let p = alg.field().p() as usize;
    let mut order: Vec<ProjPoint> = Vec::new();
    for &c in &cents.points {
        if !order.contains(&c) {
            order.push(c);
        }
    }
    let centralizers = order
        .into_iter()
        .map(|c| {
            let occurrences: Vec<usize> = cents
                .points
                .iter()
                .enumerate()
                .filter(|(_, &q)| q == c)
                .map(|(k, _)| k + 2)
                .collect();
            let m = occurrences[0];
            let max_gap = occurrences.windows(2).map(|w| w[1] - w[0]).max();
            CentralizerStat {
                point: point_vector(c),
                first_occurrence: m,
                first_is_two_p_power: is_two_p_power(m, p),
                gaps_within_first: max_gap.is_none_or(|g| g <= m),
                max_gap,
                occurrences,
            }
        })
        .collect();
    DiagnosticsReport {
        window: alg.class(),
        centralizers,
    }
}

/// The class-`n'` quotient `M / M^{n'+1}`.
pub fn quotient(pres: &MaxClassPresentation, n_new: usize) -> Result<MaxClassPresentation> {
    if n_new < 4 || n_new > pres.class_n {
        return Err(Error::BadBound {
            bound: n_new,
            min: 4,
            max: pres.class_n,
        });
    }
    MaxClassPresentation::new(pres.field, n_new, pres.adjoint[..n_new - 2].to_vec())
}
