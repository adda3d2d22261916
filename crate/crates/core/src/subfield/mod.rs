//! Restriction of scalars: the `F`-subalgebra `L = ⟨X, Y⟩` of an algebra of maximal
//! class over `E`, its invariants `d_i = dim_F(C_i ∩ L_1)`, and the resulting
//! classification as thin, of maximal class, or ideally r-constrained.
//!
//! Fixed `F`-coordinates: `M_1 ≅ F⁴` via `(x, μx, y, μy)` and `M_i ≅ F²` via
//! `(v_i, μv_i)`. Every verdict is qualified by the window it was computed in.

mod brute;
mod line;
mod normalize;

pub use brute::{
    check_centralizer_lemma, verify_covering, verify_ideal_sandwich, CoveringFailure, CoveringReport,
    LemmaReport, SandwichReport, SandwichWitness, BRUTE_FORCE_LIMIT,
};
pub use line::{
    forbidden_lambdas, normalized_pairs, scan, thin_by_lines, thin_line_criterion, LineCriterionResult,
    ScanMode, ScanTable,
};
pub use normalize::{normalize_generators, NormalizedPair};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{span_basis, BaseField, ExtElem, ExtField, Field, Matrix};
use crate::maxclass::{two_step_centralizers, HomElem, MaxClassAlgebra};

/// Two elements of `M_1`: `X = αx + βy` and `Y = γx + δy`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeneratorPair {
    /// `[α, β]`
    pub x: [ExtElem; 2],
    /// `[γ, δ]`
    pub y: [ExtElem; 2],
}

impl GeneratorPair {
    pub fn new(alpha: ExtElem, beta: ExtElem, gamma: ExtElem, delta: ExtElem) -> Self {
        GeneratorPair {
            x: [alpha, beta],
            y: [gamma, delta],
        }
    }

    pub fn alpha(&self) -> ExtElem {
        self.x[0]
    }

    pub fn beta(&self) -> ExtElem {
        self.x[1]
    }

    pub fn gamma(&self) -> ExtElem {
        self.y[0]
    }

    pub fn delta(&self) -> ExtElem {
        self.y[1]
    }

    /// `αδ − βγ`.
    pub fn determinant(&self, field: &ExtField) -> ExtElem {
        field.sub(
            field.mul(self.alpha(), self.delta()),
            field.mul(self.beta(), self.gamma()),
        )
    }

    pub fn is_degenerate(&self, field: &ExtField) -> bool {
        self.determinant(field).is_zero()
    }

    pub fn x_elem(&self) -> HomElem {
        HomElem::deg1(self.x[0], self.x[1])
    }

    pub fn y_elem(&self) -> HomElem {
        HomElem::deg1(self.y[0], self.y[1])
    }
}

/// `F`-coordinates of a homogeneous element.
pub fn to_f_coords(e: &HomElem) -> Vec<u32> {
    e.coords.iter().flat_map(|c| [c.c0, c.c1]).collect()
}

/// Inverse of [`to_f_coords`].
pub fn from_f_coords(degree: usize, coords: &[u32]) -> HomElem {
    HomElem {
        degree,
        coords: coords.chunks(2).map(|c| ExtElem::new(c[0], c[1])).collect(),
    }
}

/// `F`-dimension of `M_i`.
pub fn f_dim(degree: usize) -> usize {
    if degree == 1 {
        4
    } else {
        2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Thin,
    #[serde(rename = "maximal")]
    MaximalClass,
    #[serde(rename = "rconstrained")]
    RConstrained,
    Degenerate,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Thin => "thin",
            Verdict::MaximalClass => "maximal",
            Verdict::RConstrained => "rconstrained",
            Verdict::Degenerate => "degenerate",
        }
    }
}

/// Verdict on a `d`-sequence, with the data of the ideally r-constrained case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    /// First degree with `d_i = 0`.
    pub t1: Option<usize>,
    /// Largest gap between successive zeros of `d`; a lower bound for `r`.
    pub r_observed: Option<usize>,
    /// `2 <= r_observed <= t1`, when both are known.
    pub r_within_bounds: Option<bool>,
}

/// Classifies a `d`-sequence starting at degree 2.
pub fn classify(d: &[u8]) -> Classification {
    let zeros: Vec<usize> = d
        .iter()
        .enumerate()
        .filter(|(_, &x)| x == 0)
        .map(|(k, _)| k + 2)
        .collect();
    if zeros.len() == d.len() {
        return Classification {
            verdict: Verdict::Thin,
            t1: zeros.first().copied(),
            r_observed: None,
            r_within_bounds: None,
        };
    }
    if zeros.is_empty() {
        return Classification {
            verdict: Verdict::MaximalClass,
            t1: None,
            r_observed: None,
            r_within_bounds: None,
        };
    }
    let t1 = zeros[0];
    let r_observed = zeros.windows(2).map(|w| w[1] - w[0]).max();
    Classification {
        verdict: Verdict::RConstrained,
        t1: Some(t1),
        r_observed,
        r_within_bounds: r_observed.map(|r| 2 <= r && r <= t1),
    }
}

/// The subalgebra `L` inside a window, degree by degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubalgebraAnalysis {
    pub pair: GeneratorPair,
    pub window: usize,
    /// `bases[i − 1]`: canonical `F`-basis of `L_i` in the fixed coordinates.
    pub bases: Vec<Vec<Vec<u32>>>,
    /// `dim_F L_i` for `i = 1..=window`.
    pub dims: Vec<usize>,
    /// `d_i` for `i = 2..window`; empty when degenerate.
    pub d: Vec<u8>,
    pub classification: Classification,
}

/// Serialized form of an analysis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub dims: Vec<usize>,
    pub d: Vec<u8>,
    pub verdict: Verdict,
    pub r_observed: Option<usize>,
    pub t1: Option<usize>,
    pub window: usize,
}

impl SubalgebraAnalysis {
    pub fn verdict(&self) -> Verdict {
        self.classification.verdict
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.dims[degree - 1]
    }

    pub fn basis(&self, degree: usize) -> &[Vec<u32>] {
        &self.bases[degree - 1]
    }

    /// `d_i`, `2 <= i < window`.
    pub fn d_at(&self, degree: usize) -> u8 {
        self.d[degree - 2]
    }

    /// Degrees with `d_i = 0`.
    pub fn zeros(&self) -> Vec<usize> {
        (2..self.window).filter(|&i| self.d_at(i) == 0).collect()
    }

    /// Basis of `L_i` as homogeneous elements.
    pub fn basis_elems(&self, degree: usize) -> Vec<HomElem> {
        self.basis(degree)
            .iter()
            .map(|c| from_f_coords(degree, c))
            .collect()
    }

    /// `dim L_2 = 1` and `dim L_i = 2` for `3 <= i <= window`.
    pub fn has_thin_dimensions(&self) -> bool {
        self.dims.len() >= 2
            && self.dims[1] == 1
            && self.dims[2..].iter().all(|&x| x == 2)
    }

    pub fn report(&self) -> AnalysisReport {
        AnalysisReport {
            dims: self.dims.clone(),
            d: self.d.clone(),
            verdict: self.verdict(),
            r_observed: self.classification.r_observed,
            t1: self.classification.t1,
            window: self.window,
        }
    }
}

fn check_window(alg: &MaxClassAlgebra, window: usize) -> Result<()> {
    if window < 4 || window > alg.class() {
        return Err(Error::BadBound {
            bound: window,
            min: 4,
            max: alg.class(),
        });
    }
    Ok(())
}

/// `F`-span of `[b, X]` and `[b, Y]` over the given elements `b` of degree `i`.
pub(crate) fn bracket_span(
    alg: &MaxClassAlgebra,
    pair: &GeneratorPair,
    elems: &[HomElem],
) -> Vec<Vec<u32>> {
    let fb = alg.field().base();
    let (gx, gy) = (pair.x_elem(), pair.y_elem());
    let Some(first) = elems.first() else {
        return Vec::new();
    };
    let degree = first.degree + 1;
    let mut images = Vec::with_capacity(2 * elems.len());
    for b in elems {
        for g in [&gx, &gy] {
            if let Some(img) = alg.bracket(b, g) {
                images.push(to_f_coords(&img));
            }
        }
    }
    span_basis(&fb, f_dim(degree), &images)
}

/// Builds `L_1 = F·X + F·Y` and `L_{i+1} = [L_i, X] + [L_i, Y]` up to the window.
pub fn generate_subalgebra(alg: &MaxClassAlgebra, pair: GeneratorPair, window: usize) -> Result<SubalgebraAnalysis> {
    check_window(alg, window)?;
    let f = alg.field();
    let fb = f.base();
    let l1 = span_basis(&fb, 4, &[to_f_coords(&pair.x_elem()), to_f_coords(&pair.y_elem())]);
    let degenerate = pair.is_degenerate(f);
    let mut bases = vec![l1];
    for i in 1..window {
        let next = if degenerate {
            Vec::new()
        } else {
            let elems: Vec<HomElem> = bases[i - 1].iter().map(|c| from_f_coords(i, c)).collect();
            bracket_span(alg, &pair, &elems)
        };
        bases.push(next);
    }
    let dims = bases.iter().map(Vec::len).collect();
    let (d, classification) = if degenerate {
        (
            Vec::new(),
            Classification {
                verdict: Verdict::Degenerate,
                t1: None,
                r_observed: None,
                r_within_bounds: None,
            },
        )
    } else {
        let d = d_values(alg, &pair, window);
        let c = classify(&d);
        (d, c)
    };
    Ok(SubalgebraAnalysis {
        pair,
        window,
        bases,
        dims,
        d,
        classification,
    })
}

fn d_values(alg: &MaxClassAlgebra, pair: &GeneratorPair, window: usize) -> Vec<u8> {
    let f = alg.field();
    let fb = f.base();
    let cents = two_step_centralizers(alg.presentation());
    let gx = to_f_coords(&pair.x_elem());
    let gy = to_f_coords(&pair.y_elem());
    (2..window)
        .map(|i| {
            let c = cents.at(i);
            let cv = to_f_coords(&HomElem::deg1(c.a, c.b));
            let mc = to_f_coords(&HomElem::deg1(f.mul(f.mu(), c.a), f.mul(f.mu(), c.b)));
            let rank = Matrix::from_rows(4, &[gx.clone(), gy.clone(), cv, mc]).rank(&fb);
            (4 - rank) as u8
        })
        .collect()
}

/// `d_i = dim_F(C_i ∩ (F·X + F·Y))` for `2 <= i < window`.
pub fn d_sequence(alg: &MaxClassAlgebra, pair: GeneratorPair, window: usize) -> Result<Vec<u8>> {
    check_window(alg, window)?;
    if pair.is_degenerate(alg.field()) {
        return Err(Error::DegenerateGenerators);
    }
    Ok(d_values(alg, &pair, window))
}

/// Every vector of the `F`-span of `basis`, zero excluded, with the first nonzero
/// coefficient equal to 1 (one representative per `F`-line).
pub(crate) fn projective_combinations(fb: &BaseField, basis: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let k = basis.len();
    if k == 0 {
        return Vec::new();
    }
    let p = fb.p() as usize;
    let n = basis[0].len();
    let mut out = Vec::new();
    for lead in 0..k {
        let tail = k - lead - 1;
        for mut idx in 0..p.pow(tail as u32) {
            let mut v = basis[lead].clone();
            for b in &basis[lead + 1..] {
                let c = (idx % p) as u32;
                idx /= p;
                for t in 0..n {
                    v[t] = fb.add(v[t], fb.mul(c, b[t]));
                }
            }
            out.push(v);
        }
    }
    out
}
