//! Exhaustive checks over the elements of each `L_i`.

use serde::Serialize;

use super::{bracket_span, from_f_coords, projective_combinations, SubalgebraAnalysis};
use crate::error::{Error, Result};
use crate::maxclass::{HomElem, MaxClassAlgebra};

/// Largest number of bracket evaluations a brute-force check may perform.
pub const BRUTE_FORCE_LIMIT: usize = 1 << 24;

fn check_cost(alg: &MaxClassAlgebra, analysis: &SubalgebraAnalysis, per_element: usize) -> Result<()> {
    let p = alg.field().p() as usize;
    let mut total = 0usize;
    for &dim in &analysis.dims {
        total = total.saturating_add(p.saturating_pow(dim as u32).saturating_mul(per_element));
    }
    if total > BRUTE_FORCE_LIMIT {
        return Err(Error::WindowTooLargeForBruteForce {
            window: analysis.window,
            field_size: alg.field().size(),
        });
    }
    Ok(())
}

fn require_nondegenerate(analysis: &SubalgebraAnalysis) -> Result<()> {
    if analysis.d.is_empty() {
        return Err(Error::DegenerateGenerators);
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoveringFailure {
    pub degree: usize,
    pub element: HomElem,
    /// `dim_F [u, L_1]`
    pub image_dim: usize,
    /// `dim_F L_{i+1}`
    pub target_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoveringReport {
    pub ok: bool,
    pub first_failure: Option<CoveringFailure>,
}

/// Checks `[u, L_1] = L_{i+1}` for every nonzero `u ∈ L_i`, `1 <= i < window`.
/// Scalar multiples give the same image, so one element per `F`-line is tested.
pub fn verify_covering(alg: &MaxClassAlgebra, analysis: &SubalgebraAnalysis) -> Result<CoveringReport> {
    require_nondegenerate(analysis)?;
    check_cost(alg, analysis, 2)?;
    let fb = alg.field().base();
    for i in 1..analysis.window {
        let target_dim = analysis.dim(i + 1);
        for u in projective_combinations(&fb, analysis.basis(i)) {
            let elem = from_f_coords(i, &u);
            let image_dim = bracket_span(alg, &analysis.pair, std::slice::from_ref(&elem)).len();
            if image_dim != target_dim {
                return Ok(CoveringReport {
                    ok: false,
                    first_failure: Some(CoveringFailure {
                        degree: i,
                        element: elem,
                        image_dim,
                        target_dim,
                    }),
                });
            }
        }
    }
    Ok(CoveringReport {
        ok: true,
        first_failure: None,
    })
}

/// A nonzero `l ∈ L_degree` whose ideal misses part of `L_missing`, with
/// `missing >= degree + r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SandwichWitness {
    pub degree: usize,
    pub element: HomElem,
    pub missing: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SandwichReport {
    pub r: usize,
    pub ok: bool,
    pub witness: Option<SandwichWitness>,
}

/// For every degree `i <= window − r` and nonzero `l ∈ L_i`, checks that the ideal
/// generated by `l` contains `L_h` for `i + r <= h <= window`. The ideal is the
/// closure of `F·l` under `ad X` and `ad Y`, which suffices because `L` is
/// generated in degree 1.
pub fn verify_ideal_sandwich(alg: &MaxClassAlgebra, analysis: &SubalgebraAnalysis, r: usize) -> Result<SandwichReport> {
    require_nondegenerate(analysis)?;
    if r == 0 {
        return Err(Error::BadBound {
            bound: r,
            min: 1,
            max: analysis.window,
        });
    }
    check_cost(alg, analysis, 2 * analysis.window)?;
    let fb = alg.field().base();
    let window = analysis.window;
    for i in 1..=window.saturating_sub(r) {
        for l in projective_combinations(&fb, analysis.basis(i)) {
            let elem = from_f_coords(i, &l);
            let mut layer = vec![elem.clone()];
            for h in i + 1..=window {
                let span = bracket_span(alg, &analysis.pair, &layer);
                if h >= i + r && span.len() < analysis.dim(h) {
                    return Ok(SandwichReport {
                        r,
                        ok: false,
                        witness: Some(SandwichWitness {
                            degree: i,
                            element: elem,
                            missing: h,
                        }),
                    });
                }
                layer = span.iter().map(|c| from_f_coords(h, c)).collect();
            }
        }
    }
    Ok(SandwichReport {
        r,
        ok: true,
        witness: None,
    })
}

/// The five items of the lemma on centralizers in `L`, each evaluated over the
/// window; items 4 and 5 by brute force over `L_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub items: [bool; 5],
    pub first_failure: Option<String>,
}

impl LemmaReport {
    pub fn ok(&self) -> bool {
        self.items.iter().all(|&b| b)
    }
}

pub fn check_centralizer_lemma(alg: &MaxClassAlgebra, analysis: &SubalgebraAnalysis) -> Result<LemmaReport> {
    require_nondegenerate(analysis)?;
    check_cost(alg, analysis, 2)?;
    let fb = alg.field().base();
    let mut items = [true; 5];
    let mut first_failure = None;
    let mut fail = |k: usize, msg: String, items: &mut [bool; 5]| {
        items[k] = false;
        first_failure.get_or_insert(msg);
    };
    if analysis.dim(2) != 1 {
        fail(0, format!("dim L_2 = {}", analysis.dim(2)), &mut items);
    }
    for i in 2..analysis.window {
        if analysis.dim(i + 1) < analysis.dim(i) {
            fail(1, format!("dim L_{} < dim L_{i}", i + 1), &mut items);
        }
        let d = analysis.d_at(i);
        if d > 1 {
            fail(2, format!("d_{i} = {d}"), &mut items);
            continue;
        }
        let expected = 2 - d as usize;
        let item = if d == 0 { 3 } else { 4 };
        for l in projective_combinations(&fb, analysis.basis(i)) {
            let elem = from_f_coords(i, &l);
            let got = bracket_span(alg, &analysis.pair, std::slice::from_ref(&elem)).len();
            if got != expected {
                fail(
                    item,
                    format!("dim [l, L_1] = {got} for l in L_{i} with d_{i} = {d}"),
                    &mut items,
                );
                break;
            }
        }
    }
    Ok(LemmaReport { items, first_failure })
}
