use serde::Serialize;

use super::GeneratorPair;
use crate::error::{Error, Result};
use crate::gf::{ExtElem, ExtField, Field};
use crate::maxclass::{MaxClassPresentation, Transform, IDENTITY_TRANSFORM};

/// A generator pair brought as far as possible towards `X = x' + y'`,
/// `Y = μx' + δ'y'`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalizedPair {
    #[serde(skip)]
    pub pair: GeneratorPair,
    #[serde(skip)]
    pub presentation: MaxClassPresentation,
    /// Degree-1 base change from `(x, y)` to `(x', y')`.
    pub transform: Transform,
    /// `α` when the automorphism `v ↦ α^{-i}v` on `M_i` was applied.
    pub scale: Option<ExtElem>,
    /// All steps applied; false when `F·X + F·Y` meets `Ey` or `Ex`.
    pub complete: bool,
}

fn f_independent(a: ExtElem, b: ExtElem, field: &ExtField) -> bool {
    let p = field.p();
    !(a.c0 * b.c1 % p + p - a.c1 * b.c0 % p).is_multiple_of(p)
}

/// Normalizes `(X, Y)` on a presentation in standard form:
/// 1. apply the automorphism multiplying `M_i` by `α^{-i}`, so `X = x + βy`;
/// 2. replace `Y` by an `F`-combination of `X` and `Y` so that `γ = μ`;
/// 3. when `β` and `δ` are `F`-independent, rescale `y' = βy`.
///
/// Steps 1 and 2 need `(α : γ) ∉ P¹(F)`; step 3 needs `β, δ` independent. The
/// span `F·X + F·Y` is unchanged by step 2 and the other steps are isomorphisms,
/// so the `d`-sequence is preserved.
pub fn normalize_generators(pres: &MaxClassPresentation, pair: GeneratorPair) -> Result<NormalizedPair> {
    let f = pres.field();
    if pair.is_degenerate(f) {
        return Err(Error::DegenerateGenerators);
    }
    let unchanged = |scale| NormalizedPair {
        pair,
        presentation: pres.clone(),
        transform: IDENTITY_TRANSFORM,
        scale,
        complete: false,
    };
    let (alpha, gamma) = (pair.alpha(), pair.gamma());
    // (α : γ) ∈ P¹(F) exactly when α, γ are F-dependent
    if alpha.is_zero() || gamma.is_zero() || !f_independent(alpha, gamma, f) {
        return Ok(unchanged(None));
    }
    let ainv = f.inv(alpha).expect("alpha nonzero");
    let beta = f.mul(ainv, pair.beta());
    let gamma = f.mul(ainv, gamma);
    let delta = f.mul(ainv, pair.delta());
    // γ = g0 + g1·μ with g1 ≠ 0; Y ← (Y − g0·X) / g1
    let fb = f.base();
    let g0 = f.from_base(gamma.c0);
    let g1inv = f.from_base(fb.inv(gamma.c1).expect("gamma outside F"));
    let delta = f.mul(g1inv, f.sub(delta, f.mul(g0, beta)));
    let partial = GeneratorPair::new(ExtElem::ONE, beta, f.mu(), delta);
    if beta.is_zero() || delta.is_zero() || !f_independent(beta, delta, f) {
        return Ok(NormalizedPair {
            pair: partial,
            presentation: pres.clone(),
            transform: IDENTITY_TRANSFORM,
            scale: Some(alpha),
            complete: false,
        });
    }
    let transform = [[ExtElem::ONE, ExtElem::ZERO], [ExtElem::ZERO, beta]];
    let presentation = pres.rebase(&transform)?;
    let binv = f.inv(beta).expect("beta nonzero");
    Ok(NormalizedPair {
        pair: GeneratorPair::new(ExtElem::ONE, ExtElem::ONE, f.mu(), f.mul(delta, binv)),
        presentation,
        transform,
        scale: Some(alpha),
        complete: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxclass::make_metabelian;

    #[test]
    fn thin_pair_is_fixed() {
        let e = ExtField::new(3, 0, 2).unwrap();
        let m = make_metabelian(e, 12).unwrap();
        let mu1 = e.add(e.mu(), ExtElem::ONE);
        let pair = GeneratorPair::new(ExtElem::ONE, ExtElem::ONE, e.mu(), mu1);
        let n = normalize_generators(&m, pair).unwrap();
        assert!(n.complete);
        assert_eq!(n.pair, pair);
        assert_eq!(n.presentation, m);

        let mu2 = e.mul(e.mu(), e.mu());
        let scaled = GeneratorPair::new(e.mu(), e.mu(), mu2, e.add(mu2, e.mu()));
        let n2 = normalize_generators(&m, scaled).unwrap();
        assert_eq!(n2.pair, pair);
        assert_eq!(n2.scale, Some(e.mu()));
    }

    #[test]
    fn ey_meeting_pair_is_partial() {
        let e = ExtField::new(3, 0, 2).unwrap();
        let m = make_metabelian(e, 8).unwrap();
        let pair = GeneratorPair::new(ExtElem::ONE, ExtElem::ZERO, ExtElem::ZERO, ExtElem::ONE);
        assert!(!normalize_generators(&m, pair).unwrap().complete);
    }
}
