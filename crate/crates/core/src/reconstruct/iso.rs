use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{ExtElem, ExtField, Field};
use crate::maxclass::{validate, MaxClassPresentation, Transform};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoResult {
    pub found: bool,
    /// Images of `x_A, y_A` in the basis `(x_B, y_B)`, rows.
    pub g1: Option<Transform>,
}

fn proj_eq(f: &ExtField, p: (ExtElem, ExtElem), q: (ExtElem, ExtElem)) -> bool {
    f.sub(f.mul(p.0, q.1), f.mul(p.1, q.0)).is_zero()
}

/// Matrices up to scalars: the first nonzero entry in reading order is 1.
fn projective_matrices(f: &ExtField) -> impl Iterator<Item = Transform> + '_ {
    let elems: Vec<ExtElem> = f.elements().collect();
    let q = elems.len();
    (0..q.pow(4)).filter_map(move |code| {
        let e = [code / q.pow(3), (code / q.pow(2)) % q, (code / q) % q, code % q].map(|i| elems[i]);
        let lead = e.iter().find(|c| !c.is_zero())?;
        if *lead != ExtElem::ONE {
            return None;
        }
        let det = f.sub(f.mul(e[0], e[3]), f.mul(e[1], e[2]));
        (!det.is_zero()).then_some([[e[0], e[1]], [e[2], e[3]]])
    })
}

/// Searches a graded isomorphism `A → B` on degrees `<= window`. Once `g1` is
/// fixed, `v_2 ↦ det·v_2` and each later scalar is forced by `[v_i, x]` or
/// `[v_i, y]`, so `g1` extends iff every pair of `A` is proportional to the
/// matching pair of `B` rebased along `g1`.
pub fn iso_search(a: &MaxClassPresentation, b: &MaxClassPresentation, window: usize) -> Result<IsoResult> {
    let f = *a.field();
    if *b.field() != f {
        return Err(Error::Precondition("presentations over different fields".into()));
    }
    let max = a.class().min(b.class());
    if window < 2 || window > max {
        return Err(Error::BadBound {
            bound: window,
            min: 2,
            max,
        });
    }
    if f.size() > 9 && window > 20 {
        return Err(Error::WindowTooLargeForBruteForce {
            window,
            field_size: f.size(),
        });
    }
    for p in [a, b] {
        if !validate(p)?.ok {
            return Err(Error::NotLie("iso_search input".into()));
        }
    }
    for t in projective_matrices(&f) {
        let rb = b.rebase(&t)?;
        if (2..window).all(|i| proj_eq(&f, a.pair(i), rb.pair(i))) {
            return Ok(IsoResult { found: true, g1: Some(t) });
        }
    }
    Ok(IsoResult { found: false, g1: None })
}
