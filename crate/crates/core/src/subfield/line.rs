//! Thinness read off the centralizer data, without computing `L`.
//!
//! With `X = αx + βy` and `Y = γx + δy`, the element `sX + tY` (`s, t ∈ F`) lies in
//! `Ey` iff `sα + tγ = 0`, and otherwise in `E(x + λy)` for
//! `λ = (sβ + tδ)/(sα + tγ)`. So `L` is thin within the window iff this `F`-subline
//! of `P¹(E)` misses every observed centralizer.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{generate_subalgebra, GeneratorPair, Verdict};
use crate::error::{Error, Result};
use crate::gf::{ExtElem, ExtField, Field};
use crate::maxclass::{two_step_centralizers, MaxClassAlgebra};

/// `(𝓛, Ey occurs)` over the centralizers `C_2, …, C_{window−1}`, `𝓛` sorted.
pub fn forbidden_lambdas(alg: &MaxClassAlgebra, window: usize) -> (Vec<ExtElem>, bool) {
    let cents = two_step_centralizers(alg.presentation());
    let mut lambdas = Vec::new();
    let mut ey = false;
    for i in 2..window.min(alg.class()) {
        let c = cents.at(i);
        if c.is_infinity() {
            ey = true;
        } else if !lambdas.contains(&c.b) {
            lambdas.push(c.b);
        }
    }
    lambdas.sort();
    (lambdas, ey)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineCriterionResult {
    /// The set `𝓛` of `λ` with `E(x + λy)` among the observed centralizers.
    pub script_l: Vec<ExtElem>,
    pub ey_occurs: bool,
    /// Finite points `λ` of the subline `{(sX + tY)}`, sorted.
    pub subline: Vec<ExtElem>,
    /// Whether the subline contains `Ey`, i.e. `sα + tγ = 0` has a solution.
    pub subline_meets_ey: bool,
    /// `F·X + F·Y` meets no observed centralizer.
    pub avoided: bool,
    /// The affine line `{tα⁻¹β + (1 − t)γ⁻¹δ}` when `α, γ ≠ 0`.
    pub lambda_line: Option<Vec<ExtElem>>,
    /// The avoidance test with the affine line in place of the subline.
    pub lambda_line_avoided: bool,
}

fn subline(field: &ExtField, pair: &GeneratorPair) -> (Vec<ExtElem>, bool) {
    let p = field.p();
    let mut points = Vec::new();
    let mut meets_ey = false;
    // one representative per point of P¹(F): (1 : t) and (0 : 1)
    let reps = (0..p).map(|t| (1, t)).chain(std::iter::once((0, 1)));
    for (s, t) in reps {
        let (s, t) = (field.from_base(s), field.from_base(t));
        let a = field.add(field.mul(s, pair.alpha()), field.mul(t, pair.gamma()));
        let b = field.add(field.mul(s, pair.beta()), field.mul(t, pair.delta()));
        if a.is_zero() {
            meets_ey = true;
        } else {
            let lambda = field.mul(b, field.inv(a).expect("nonzero"));
            if !points.contains(&lambda) {
                points.push(lambda);
            }
        }
    }
    points.sort();
    (points, meets_ey)
}

fn lambda_line(field: &ExtField, pair: &GeneratorPair) -> Option<Vec<ExtElem>> {
    let ai = field.inv(pair.alpha())?;
    let gi = field.inv(pair.gamma())?;
    let a = field.mul(ai, pair.beta());
    let g = field.mul(gi, pair.delta());
    let mut pts: Vec<ExtElem> = (0..field.p())
        .map(|t| {
            let t = field.from_base(t);
            field.add(field.mul(t, a), field.mul(field.sub(ExtElem::ONE, t), g))
        })
        .collect();
    pts.sort();
    pts.dedup();
    Some(pts)
}

/// Decides thinness within the window from the centralizers alone.
pub fn thin_line_criterion(alg: &MaxClassAlgebra, pair: GeneratorPair, window: usize) -> Result<LineCriterionResult> {
    let f = alg.field();
    if pair.is_degenerate(f) {
        return Err(Error::DegenerateGenerators);
    }
    let (script_l, ey_occurs) = forbidden_lambdas(alg, window);
    let (sub, meets_ey) = subline(f, &pair);
    let avoided = !(meets_ey && ey_occurs) && !sub.iter().any(|l| script_l.contains(l));
    let line = lambda_line(f, &pair);
    let lambda_line_avoided = match &line {
        Some(pts) => {
            let genuine = pts.len() == f.p() as usize;
            genuine && !meets_ey && !pts.iter().any(|l| script_l.contains(l))
        }
        None => false,
    };
    Ok(LineCriterionResult {
        script_l,
        ey_occurs,
        subline: sub,
        subline_meets_ey: meets_ey,
        avoided,
        lambda_line: line,
        lambda_line_avoided,
    })
}

/// Pairs `X = x + βy`, `Y = μx + δy` with `δ ≠ μβ`, in element order of `(β, δ)`.
pub fn normalized_pairs(field: &ExtField) -> Vec<GeneratorPair> {
    let mut out = Vec::new();
    for beta in field.elements() {
        for delta in field.elements() {
            if delta != field.mul(field.mu(), beta) {
                out.push(GeneratorPair::new(ExtElem::ONE, beta, field.mu(), delta));
            }
        }
    }
    out
}

/// Thin test on a normalized pair by counting only: `sX + tY ∈ E(x + λy)` iff
/// `s(β − λ) + t(δ − λμ) = 0`, so the pair is thin iff `β − λ` and `δ − λμ` are
/// `F`-independent for every `λ ∈ 𝓛`. (`Ey` is never met since `μ ∉ F`.)
pub fn thin_by_lines(field: &ExtField, script_l: &[ExtElem], beta: ExtElem, delta: ExtElem) -> bool {
    let p = field.p();
    script_l.iter().all(|&l| {
        let u = field.sub(beta, l);
        let w = field.sub(delta, field.mul(l, field.mu()));
        !(u.c0 * w.c1 % p + p - u.c1 * w.c0 % p).is_multiple_of(p)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanMode {
    Normalized,
    Raw,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanTable {
    pub window: usize,
    pub mode: ScanMode,
    pub script_l: Vec<ExtElem>,
    pub pairs: usize,
    pub thin: usize,
    pub maximal: usize,
    /// Keyed by `r_observed` (`"?"` when fewer than two zeros were seen).
    pub rconstrained: BTreeMap<String, usize>,
    pub degenerate: usize,
    /// Thin count from the line combinatorics alone.
    pub thin_by_lines: usize,
    pub counts_agree: bool,
}

/// Classifies every pair of the chosen family and counts thin pairs a second way.
/// Normalized mode uses [`normalized_pairs`] and [`thin_by_lines`]; raw mode runs
/// over all of `M_1 × M_1` and uses the subline test of [`thin_line_criterion`].
pub fn scan(alg: &MaxClassAlgebra, window: usize, mode: ScanMode) -> Result<ScanTable> {
    let f = *alg.field();
    let (script_l, ey) = forbidden_lambdas(alg, window);
    let pairs: Vec<GeneratorPair> = match mode {
        ScanMode::Normalized => normalized_pairs(&f),
        ScanMode::Raw => {
            let elems: Vec<ExtElem> = f.elements().collect();
            let mut v = Vec::with_capacity(elems.len().pow(4));
            for &a in &elems {
                for &b in &elems {
                    for &c in &elems {
                        for &d in &elems {
                            v.push(GeneratorPair::new(a, b, c, d));
                        }
                    }
                }
            }
            v
        }
    };
    let results: Vec<(Verdict, Option<usize>, bool)> = pairs
        .par_iter()
        .map(|&pair| {
            let a = generate_subalgebra(alg, pair, window)?;
            let by_lines = match mode {
                ScanMode::Normalized => thin_by_lines(&f, &script_l, pair.beta(), pair.delta()),
                ScanMode::Raw => {
                    !pair.is_degenerate(&f) && {
                        let (sub, meets_ey) = subline(&f, &pair);
                        !(meets_ey && ey) && !sub.iter().any(|l| script_l.contains(l))
                    }
                }
            };
            Ok((a.verdict(), a.classification.r_observed, by_lines))
        })
        .collect::<Result<_>>()?;
    let mut table = ScanTable {
        window,
        mode,
        script_l,
        pairs: pairs.len(),
        thin: 0,
        maximal: 0,
        rconstrained: BTreeMap::new(),
        degenerate: 0,
        thin_by_lines: 0,
        counts_agree: false,
    };
    for (verdict, r, by_lines) in results {
        match verdict {
            Verdict::Thin => table.thin += 1,
            Verdict::MaximalClass => table.maximal += 1,
            Verdict::Degenerate => table.degenerate += 1,
            Verdict::RConstrained => {
                let key = r.map_or_else(|| "?".to_string(), |r| r.to_string());
                *table.rconstrained.entry(key).or_default() += 1;
            }
        }
        if by_lines {
            table.thin_by_lines += 1;
        }
    }
    table.counts_agree = table.thin == table.thin_by_lines;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxclass::make_metabelian;

    #[test]
    fn metabelian_line_examples() {
        let e = ExtField::new(3, 0, 2).unwrap();
        let alg = MaxClassAlgebra::new(make_metabelian(e, 12).unwrap()).unwrap();
        let thin = GeneratorPair::new(ExtElem::ONE, ExtElem::ONE, e.mu(), e.add(e.mu(), ExtElem::ONE));
        let r = thin_line_criterion(&alg, thin, 12).unwrap();
        assert!(r.script_l.is_empty());
        assert!(r.ey_occurs);
        assert!(r.avoided);
        assert!(r.lambda_line_avoided);

        let xy = GeneratorPair::new(ExtElem::ONE, ExtElem::ZERO, ExtElem::ZERO, ExtElem::ONE);
        let r = thin_line_criterion(&alg, xy, 12).unwrap();
        assert!(!r.avoided);
        assert!(r.subline_meets_ey);
    }

    #[test]
    fn metabelian_scan_counts_agree() {
        for (p, u, v) in [(3, 0, 2), (2, 1, 1)] {
            let e = ExtField::new(p, u, v).unwrap();
            let alg = MaxClassAlgebra::new(make_metabelian(e, 12).unwrap()).unwrap();
            let t = scan(&alg, 12, ScanMode::Normalized).unwrap();
            assert!(t.counts_agree);
            // every normalized pair avoids Ey, so all are thin
            assert_eq!(t.thin, t.pairs);
        }
    }
}
