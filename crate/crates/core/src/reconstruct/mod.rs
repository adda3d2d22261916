//! Rebuilding an algebra of maximal class over `E` from a thin `F`-algebra `T`:
//! represent `T` faithfully by `ρ` or `ρ′`, take `N = E·ρ(T)`, and compare `N` with
//! the algebra `T` was cut from.

mod iso;
mod rep;

pub use iso::{iso_search, IsoResult};
pub use rep::{build_rep, Branch, HomFailure, RhoRep, ShiftMap};

use serde::Serialize;

use crate::endo::{compute_grend0, identify_field, EndoRing, FieldId, DEFAULT_K0};
use crate::error::{Error, Result};
use crate::gf::{ExtElem, ExtField, Field, Matrix};
use crate::maxclass::{
    canonical_centralizers, quotient, validate, HomElem, MaxClassAlgebra, MaxClassPresentation,
};
use crate::subfield::{generate_subalgebra, GeneratorPair, SubalgebraAnalysis, Verdict};

/// Metabelian test and abelian ideal window of `T`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureFlags {
    pub metabelian: bool,
    /// `I = T^k`; 2 when metabelian.
    pub k: usize,
    /// No abelian `T^k` was seen; `k = 3` is used and faithfulness decides.
    pub inconclusive: bool,
    /// First nonzero `[T_i, T_j]` with `i, j >= 2`, if any.
    pub witness: Option<(usize, usize)>,
}

impl StructureFlags {
    pub fn z_degree(&self) -> usize {
        self.k - 1
    }

    pub fn branch(&self) -> Branch {
        if self.metabelian {
            Branch::RhoPrime
        } else {
            Branch::Rho
        }
    }
}

/// First pair of degrees `(i, j)`, `lo <= i < j`, `i + j <= window`, with
/// `[T_i, T_j] ≠ 0`. Pairs `i = j` are skipped: `T_i` is one-dimensional over `E`.
fn nonabelian_witness(alg: &MaxClassAlgebra, analysis: &SubalgebraAnalysis, lo: usize) -> Option<(usize, usize)> {
    let window = analysis.window;
    for s in 2 * lo + 1..=window {
        for i in lo..s.div_ceil(2) {
            let j = s - i;
            for a in analysis.basis_elems(i) {
                for b in analysis.basis_elems(j) {
                    if !alg.bracket(&a, &b).expect("inside window").is_zero() {
                        return Some((i, j));
                    }
                }
            }
        }
    }
    None
}

/// Decides the branch. `k` is the least value `>= 3` with `[T_i, T_j] = 0` for all
/// `i, j >= k` in the window, accepted only when `3k <= window` so that the test
/// covers a range of degrees beyond `2k`; otherwise `k = 3` and the result is
/// flagged inconclusive.
pub fn detect_structure(alg: &MaxClassAlgebra, analysis: &SubalgebraAnalysis) -> Result<StructureFlags> {
    if analysis.verdict() != Verdict::Thin {
        return Err(Error::Precondition("structure detection needs a thin pair".into()));
    }
    let window = analysis.window;
    let witness = nonabelian_witness(alg, analysis, 2);
    if witness.is_none() {
        return Ok(StructureFlags {
            metabelian: true,
            k: 2,
            inconclusive: false,
            witness: None,
        });
    }
    for k in 3..=window / 3 {
        if nonabelian_witness(alg, analysis, k).is_none() {
            return Ok(StructureFlags {
                metabelian: false,
                k,
                inconclusive: false,
                witness,
            });
        }
    }
    if nonabelian_witness(alg, analysis, 3).is_none() {
        return Err(Error::WindowTooSmall(window));
    }
    Ok(StructureFlags {
        metabelian: false,
        k: 3,
        inconclusive: true,
        witness,
    })
}

fn checked_rep(
    alg: &MaxClassAlgebra,
    analysis: &SubalgebraAnalysis,
    ring: &EndoRing,
    mu: &[u32],
    branch: Branch,
    k: usize,
) -> Result<RhoRep> {
    let rep = build_rep(alg, analysis, ring, mu, branch, k)?;
    if let Some(fail) = rep.check_homomorphism(alg, analysis)? {
        return Err(Error::NotLie(format!(
            "representation is not a homomorphism on T_{}[{}] x T_{}[{}]",
            fail.a, fail.i, fail.b, fail.j
        )));
    }
    if let Some(d) = rep.faithfulness_failure(usable_window(analysis.window, k)) {
        return Err(Error::NotFaithful(d));
    }
    Ok(rep)
}

/// `ρ` on `E·z ⊕ T^k`, for non-metabelian `T`.
pub fn build_rho(
    alg: &MaxClassAlgebra,
    analysis: &SubalgebraAnalysis,
    ring: &EndoRing,
    mu: &[u32],
    flags: &StructureFlags,
) -> Result<RhoRep> {
    if flags.metabelian {
        return Err(Error::Precondition("metabelian algebras use the modified representation".into()));
    }
    checked_rep(alg, analysis, ring, mu, Branch::Rho, flags.k)
}

/// `ρ′` on `E·Y ⊕ E·[Y, X] ⊕ T³`, for metabelian `T`.
pub fn build_rho_prime(
    alg: &MaxClassAlgebra,
    analysis: &SubalgebraAnalysis,
    ring: &EndoRing,
    mu: &[u32],
) -> Result<RhoRep> {
    if nonabelian_witness(alg, analysis, 2).is_some() {
        return Err(Error::NotMetabelian);
    }
    checked_rep(alg, analysis, ring, mu, Branch::RhoPrime, 2)
}

/// Degrees on which the reconstruction is trusted: `window − k − 1`.
pub fn usable_window(window: usize, k: usize) -> usize {
    window.saturating_sub(k + 1)
}

/// `E`-rank of a family of weighted shifts of one degree.
fn e_rank(field: &ExtField, maps: &[ShiftMap]) -> usize {
    if maps.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<ExtElem>> = maps.iter().map(|m| m.coeffs.clone()).collect();
    Matrix::from_rows(maps[0].dim(), &rows).rank(field)
}

/// `c` with `a = c·b`, if any.
fn ratio(field: &ExtField, a: &ShiftMap, b: &ShiftMap) -> Option<ExtElem> {
    let pos = b.coeffs.iter().position(|c| !c.is_zero())?;
    let c = field.mul(a.coeffs[pos], field.inv(b.coeffs[pos])?);
    (b.scale(field, c) == *a).then_some(c)
}

/// `N = E·ρ(T)` on the usable window and the presentation read off from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconstructedAlgebra {
    pub usable_window: usize,
    /// `dim_E N_i`, `i = 1..=usable_window`.
    pub dims: Vec<usize>,
    /// `n_1 = ρ(X)`, `n_1′ = ρ(Y)`, `n_2 = [n_1′, n_1]`, then `n_{i+1}` from `n_i`.
    pub n_x: ShiftMap,
    pub n_y: ShiftMap,
    pub chain: Vec<ShiftMap>,
    pub presentation: MaxClassPresentation,
}

/// Checks the maximal-class pattern of `N` and extracts a presentation with
/// generators `ρ(X)`, `ρ(Y)`. The pairs are then rescaled to the normal form.
pub fn assemble_n(rep: &RhoRep, analysis: &SubalgebraAnalysis) -> Result<ReconstructedAlgebra> {
    let f = *rep.field();
    let usable = usable_window(rep.window, rep.k);
    if usable < 4 {
        return Err(Error::WindowTooSmall(rep.window));
    }
    let dims: Vec<usize> = (1..=usable).map(|d| e_rank(&f, &rep.images[d - 1])).collect();
    for (i, &dim) in dims.iter().enumerate() {
        let expected = if i == 0 { 2 } else { 1 };
        if dim != expected {
            return Err(Error::DimensionAnomaly {
                degree: i + 1,
                dim,
                expected,
            });
        }
    }
    let n_x = rep.image(analysis, &analysis.pair.x_elem())?;
    let n_y = rep.image(analysis, &analysis.pair.y_elem())?;
    if e_rank(&f, &[n_x.clone(), n_y.clone()]) != 2 {
        return Err(Error::DimensionAnomaly {
            degree: 1,
            dim: 1,
            expected: 2,
        });
    }
    let mut chain = vec![n_y.bracket(&f, &n_x)];
    let mut adjoint = Vec::with_capacity(usable - 2);
    for i in 2..usable {
        let cur = chain.last().expect("nonempty");
        let bx = cur.bracket(&f, &n_x);
        let by = cur.bracket(&f, &n_y);
        let next = if !bx.is_zero() { bx.clone() } else { by.clone() };
        // [N_i, N_1] = N_{i+1}: the images must span the degree-(i+1) component
        let mut family = rep.images[i].clone();
        family.push(next.clone());
        if next.is_zero() || e_rank(&f, &family) != 1 {
            return Err(Error::DimensionAnomaly {
                degree: i + 1,
                dim: if next.is_zero() { 0 } else { 2 },
                expected: 1,
            });
        }
        let a = ratio(&f, &bx, &next).unwrap_or(ExtElem::ZERO);
        let b = ratio(&f, &by, &next).ok_or_else(|| Error::DimensionAnomaly {
            degree: i + 1,
            dim: 2,
            expected: 1,
        })?;
        adjoint.push((a, b));
        chain.push(next);
    }
    let presentation = MaxClassPresentation::new(f, usable, adjoint)?.normalize_pairs();
    Ok(ReconstructedAlgebra {
        usable_window: usable,
        dims,
        n_x,
        n_y,
        chain,
        presentation,
    })
}

/// Output of [`verify_roundtrip`]; serializes to the report fields.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundtripReport {
    pub branch: Branch,
    pub k: usize,
    pub usable_window: usize,
    pub iso: bool,
    pub first_failure: Option<String>,
    #[serde(skip)]
    pub flags: StructureFlags,
    #[serde(skip)]
    pub field_id: FieldId,
    #[serde(skip)]
    pub reconstructed: ReconstructedAlgebra,
}

/// Full pipeline from `(M, X, Y)` to `N`, then the comparison `M ≅ N` through
/// `φ(λ·l) = λ·ρ(l)` on `E`-bases `{X, Y}` and `{l_i}` (`l_i` the first basis vector
/// of `L_i`).
pub fn verify_roundtrip(alg: &MaxClassAlgebra, pair: GeneratorPair, window: usize) -> Result<RoundtripReport> {
    let analysis = generate_subalgebra(alg, pair, window)?;
    if analysis.verdict() != Verdict::Thin {
        return Err(Error::Precondition(format!(
            "pair is {} within the window, not thin",
            analysis.verdict().as_str()
        )));
    }
    let ring = compute_grend0(alg, &analysis, DEFAULT_K0)?;
    let field_id = identify_field(&ring)?;
    if field_id.degree != 2 {
        return Err(Error::Precondition("endomorphism field has degree 1".into()));
    }
    let mu = ring
        .mu_element(&field_id)
        .unwrap_or_else(|| field_id.generator.clone());
    let flags = detect_structure(alg, &analysis)?;
    let rep = match flags.branch() {
        Branch::Rho => build_rho(alg, &analysis, &ring, &mu, &flags)?,
        Branch::RhoPrime => build_rho_prime(alg, &analysis, &ring, &mu)?,
    };
    let reconstructed = assemble_n(&rep, &analysis)?;
    let first_failure = compare(alg, &analysis, &rep, &reconstructed)?;
    Ok(RoundtripReport {
        branch: rep.branch,
        k: rep.k,
        usable_window: reconstructed.usable_window,
        iso: first_failure.is_none(),
        first_failure,
        flags,
        field_id,
        reconstructed,
    })
}

/// `c ∈ E` with `u = c·l` for elements of `M_i`, `i >= 2`.
fn scalar_ratio(field: &ExtField, u: &HomElem, l: &HomElem) -> Option<ExtElem> {
    Some(field.mul(u.coords[0], field.inv(l.coords[0])?))
}

fn compare(
    alg: &MaxClassAlgebra,
    analysis: &SubalgebraAnalysis,
    rep: &RhoRep,
    rec: &ReconstructedAlgebra,
) -> Result<Option<String>> {
    let f = *alg.field();
    let usable = rec.usable_window;
    let report = validate(&rec.presentation)?;
    if !report.ok {
        return Ok(Some(format!(
            "extracted presentation fails validation: {}",
            report.first_failure.map(|x| x.to_string()).unwrap_or_default()
        )));
    }
    // well-defined: ρ is E-semilinear-free, ρ(c·l_i) = c·ρ(l_i) on the rest of L_i
    let mut basis: Vec<(HomElem, ShiftMap)> = vec![
        (analysis.pair.x_elem(), rec.n_x.clone()),
        (analysis.pair.y_elem(), rec.n_y.clone()),
    ];
    for i in 2..=usable {
        let elems = analysis.basis_elems(i);
        let l = elems[0].clone();
        let rl = rep.image(analysis, &l)?;
        if rl.is_zero() {
            return Ok(Some(format!("phi vanishes on M_{i}")));
        }
        for u in &elems[1..] {
            let c = scalar_ratio(&f, u, &l).expect("l nonzero");
            if rep.image(analysis, u)? != rl.scale(&f, c) {
                return Ok(Some(format!("phi is not well defined on M_{i}")));
            }
        }
        basis.push((l, rl));
    }
    // homomorphism on E-basis pairs
    for (u, ru) in &basis {
        for (w, rw) in &basis {
            let deg = u.degree + w.degree;
            if deg > usable {
                continue;
            }
            let prod = alg.bracket(u, w).expect("inside window");
            let image = if deg == 1 {
                unreachable!("degree at least 2")
            } else {
                let (l, rl) = &basis[deg];
                rl.scale(&f, scalar_ratio(&f, &prod, l).expect("l nonzero"))
            };
            if image != ru.bracket(&f, rw) {
                return Ok(Some(format!(
                    "phi([u, w]) != [phi(u), phi(w)] in degrees {} and {}",
                    u.degree, w.degree
                )));
            }
        }
    }
    let cut = quotient(alg.presentation(), usable)?;
    if canonical_centralizers(&cut)? != canonical_centralizers(&rec.presentation)? {
        return Ok(Some("centralizer sequences of M and N differ".into()));
    }
    Ok(None)
}
