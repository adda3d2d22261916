//! Graded degree-0 endomorphisms of the `L`-module `V = L^{k0} = ⊕_{i >= k0} L_i`.
//!
//! An endomorphism is fixed by its restriction to `V_{k0}` and propagated upward
//! by `f([b, g]) = [f(b), g]` for `g ∈ {X, Y}`. A product `[b, g]` that is linearly
//! dependent on the products chosen as a basis of the next degree yields linear
//! constraints; the solution space is the endomorphism ring. Propagation is forced
//! because each `V_{i+1}` is spanned by `[V_i, X] + [V_i, Y]`, which is checked.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{express, BaseField, ExtField, Field, Matrix};
use crate::maxclass::{HomElem, MaxClassAlgebra};
use crate::subfield::{f_dim, from_f_coords, to_f_coords, GeneratorPair, SubalgebraAnalysis};

/// Default lowest degree of the module.
pub const DEFAULT_K0: usize = 3;

/// Bases of `V_i`, `k0 <= i <= window`, in ambient `F`-coordinates. The basis of
/// `V_{i+1}` is the first independent subset of `[b_0, X], [b_0, Y], [b_1, X], …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedModuleView {
    pub k0: usize,
    pub window: usize,
    pub pair: GeneratorPair,
    bases: Vec<Vec<Vec<u32>>>,
    /// For each degree above `k0` and each dependent product `(j, g)`, its
    /// coefficients on the chosen products.
    relations: Vec<Vec<Relation>>,
    /// `(j, g)` of each chosen product, per degree above `k0`.
    chosen: Vec<Vec<(usize, usize)>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Relation {
    j: usize,
    g: usize,
    coeffs: Vec<u32>,
}

impl GradedModuleView {
    /// The module `L^{k0}` cut at the analysis window.
    pub fn new(alg: &MaxClassAlgebra, analysis: &SubalgebraAnalysis, k0: usize) -> Result<Self> {
        let window = analysis.window;
        if k0 < 1 || k0 > window {
            return Err(Error::OutOfWindow {
                degree: k0,
                lo: 1,
                hi: window,
            });
        }
        if analysis.dim(k0) == 0 {
            return Err(Error::Precondition(format!("module component of degree {k0} is zero")));
        }
        let fb = alg.field().base();
        let gens = [analysis.pair.x_elem(), analysis.pair.y_elem()];
        let mut bases = vec![analysis.basis(k0).to_vec()];
        let mut relations = Vec::new();
        let mut chosen = Vec::new();
        for i in k0..window {
            let current = bases.last().expect("nonempty");
            let mut basis: Vec<Vec<u32>> = Vec::new();
            let mut picks = Vec::new();
            let mut rels = Vec::new();
            for (j, b) in current.iter().enumerate() {
                let b = from_f_coords(i, b);
                for (g, gen) in gens.iter().enumerate() {
                    let prod = to_f_coords(&alg.bracket(&b, gen).expect("inside window"));
                    match express(&fb, &basis, &prod) {
                        Some(coeffs) => rels.push(Relation { j, g, coeffs }),
                        None => {
                            basis.push(prod);
                            picks.push((j, g));
                        }
                    }
                }
            }
            if basis.len() != analysis.dim(i + 1) {
                return Err(Error::CoveringFails(i + 1));
            }
            bases.push(basis);
            relations.push(rels);
            chosen.push(picks);
        }
        Ok(GradedModuleView {
            k0,
            window,
            pair: analysis.pair,
            bases,
            relations,
            chosen,
        })
    }

    pub fn basis(&self, degree: usize) -> &[Vec<u32>] {
        &self.bases[degree - self.k0]
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.basis(degree).len()
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<usize> {
        self.k0..=self.window
    }

    fn check_degree(&self, degree: usize) -> Result<()> {
        if degree < self.k0 || degree > self.window {
            return Err(Error::OutOfWindow {
                degree,
                lo: self.k0,
                hi: self.window,
            });
        }
        Ok(())
    }

    /// Coordinates of `v` in the basis of `V_{deg v}`.
    pub fn coords_of(&self, v: &HomElem, fb: &BaseField) -> Result<Vec<u32>> {
        self.check_degree(v.degree)?;
        express(fb, self.basis(v.degree), &to_f_coords(v))
            .ok_or_else(|| Error::Precondition(format!("element of degree {} outside the module", v.degree)))
    }

    /// Element with the given coordinates.
    pub fn elem(&self, degree: usize, coords: &[u32], fb: &BaseField) -> HomElem {
        let basis = self.basis(degree);
        let mut v = vec![0; f_dim(degree)];
        for (c, b) in coords.iter().zip(basis) {
            for (t, x) in v.iter_mut().zip(b) {
                *t = fb.add(*t, fb.mul(*c, *x));
            }
        }
        from_f_coords(degree, &v)
    }
}

/// Images of the basis vectors of every `V_i` under a degree-`shift` map given by
/// its restriction to `V_{k0}`, plus the residuals of all dependency constraints.
fn propagate(
    alg: &MaxClassAlgebra,
    view: &GradedModuleView,
    shift: usize,
    start: Vec<Vec<u32>>,
) -> (Vec<Vec<Vec<u32>>>, Vec<u32>) {
    let fb = alg.field().base();
    let gens = [view.pair.x_elem(), view.pair.y_elem()];
    let mut images = vec![start];
    let mut residual = Vec::new();
    let top = view.window - shift;
    for i in view.k0..top {
        let current = images.last().expect("nonempty");
        let target = i + shift + 1;
        let image_of = |j: usize, g: usize| -> Vec<u32> {
            let img = from_f_coords(i + shift, &current[j]);
            alg.bracket(&img, &gens[g])
                .map(|e| to_f_coords(&e))
                .unwrap_or_else(|| vec![0; f_dim(target)])
        };
        let chosen_images: Vec<Vec<u32>> = view.chosen[i - view.k0]
            .iter()
            .map(|&(j, g)| image_of(j, g))
            .collect();
        for rel in &view.relations[i - view.k0] {
            let mut r = image_of(rel.j, rel.g);
            for (c, img) in rel.coeffs.iter().zip(&chosen_images) {
                for (t, x) in r.iter_mut().zip(img) {
                    *t = fb.sub(*t, fb.mul(*c, *x));
                }
            }
            residual.extend(r);
        }
        images.push(chosen_images);
    }
    (images, residual)
}

/// Solution space of the degree-`shift` endomorphism problem: each solution is the
/// list of per-degree images of the basis vectors (ambient coordinates), for
/// degrees `k0..=window − shift`.
fn solve(alg: &MaxClassAlgebra, view: &GradedModuleView, shift: usize) -> Result<Vec<Vec<Vec<Vec<u32>>>>> {
    if view.k0 + shift > view.window {
        return Err(Error::OutOfWindow {
            degree: view.k0 + shift,
            lo: view.k0,
            hi: view.window,
        });
    }
    let fb = alg.field().base();
    let d0 = view.dim(view.k0);
    let target_basis = view.basis(view.k0 + shift);
    let dt = target_basis.len();
    // unknown (j, l): coefficient of target basis vector l in f(b_j)
    let mut unit_runs = Vec::with_capacity(d0 * dt);
    for j in 0..d0 {
        for target in target_basis {
            let start: Vec<Vec<u32>> = (0..d0)
                .map(|jj| {
                    if jj == j {
                        target.clone()
                    } else {
                        vec![0; f_dim(view.k0 + shift)]
                    }
                })
                .collect();
            unit_runs.push(propagate(alg, view, shift, start));
        }
    }
    let neq = unit_runs.first().map_or(0, |r| r.1.len());
    let mut constraints = Matrix::zeros(&fb, neq, unit_runs.len());
    for (m, (_, res)) in unit_runs.iter().enumerate() {
        for (r, &x) in res.iter().enumerate() {
            constraints.set(r, m, x);
        }
    }
    let kernel = constraints.rref(&fb).kernel;
    Ok(kernel
        .iter()
        .map(|theta| {
            let mut combined = unit_runs[0].0.clone();
            for deg in combined.iter_mut() {
                for v in deg.iter_mut() {
                    v.iter_mut().for_each(|x| *x = 0);
                }
            }
            for (&c, (imgs, _)) in theta.iter().zip(&unit_runs) {
                if c == 0 {
                    continue;
                }
                for (cd, id) in combined.iter_mut().zip(imgs) {
                    for (cv, iv) in cd.iter_mut().zip(id) {
                        for (t, x) in cv.iter_mut().zip(iv) {
                            *t = fb.add(*t, fb.mul(c, *x));
                        }
                    }
                }
            }
            combined
        })
        .collect())
}

/// `F`-algebra of degree-0 graded `L`-endomorphisms of the module window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoRing {
    pub view: GradedModuleView,
    field: ExtField,
    /// `mats[e][i − k0]`: matrix of basis endomorphism `e` on `V_i`, row convention.
    mats: Vec<Vec<Matrix<u32>>>,
    /// `mult_table[a][b]`: coordinates of `e_a ∘ e_b`.
    pub mult_table: Vec<Vec<Vec<u32>>>,
    pub identity: Vec<u32>,
}

/// Computes the endomorphism ring of `L^{k0}` over the analysis window.
pub fn compute_grend0(alg: &MaxClassAlgebra, analysis: &SubalgebraAnalysis, k0: usize) -> Result<EndoRing> {
    let view = GradedModuleView::new(alg, analysis, k0)?;
    let fb = alg.field().base();
    let sols = solve(alg, &view, 0)?;
    let mats: Vec<Vec<Matrix<u32>>> = sols
        .iter()
        .map(|sol| {
            view.degrees()
                .zip(sol)
                .map(|(deg, imgs)| {
                    let rows: Vec<Vec<u32>> = imgs
                        .iter()
                        .map(|img| express(&fb, view.basis(deg), img).expect("image inside the module"))
                        .collect();
                    Matrix::from_rows(view.dim(deg), &rows)
                })
                .collect()
        })
        .collect();
    let flat = |m: &Matrix<u32>| -> Vec<u32> { m.to_rows().concat() };
    let basis_k0: Vec<Vec<u32>> = mats.iter().map(|m| flat(&m[0])).collect();
    let identity = express(&fb, &basis_k0, &flat(&Matrix::identity(&fb, view.dim(k0))))
        .ok_or_else(|| Error::Precondition("identity is not an endomorphism".into()))?;
    let table_at = |level: usize| -> Option<Vec<Vec<Vec<u32>>>> {
        let basis: Vec<Vec<u32>> = mats.iter().map(|m| flat(&m[level])).collect();
        let mut table = Vec::new();
        for a in &mats {
            let mut row = Vec::new();
            for b in &mats {
                // e_a ∘ e_b has matrix B·A in row convention
                let prod = b[level].mul(&fb, &a[level]);
                row.push(express(&fb, &basis, &flat(&prod))?);
            }
            table.push(row);
        }
        Some(table)
    };
    let mult_table = table_at(0).ok_or_else(|| Error::NotAField("not closed under composition".into()))?;
    if view.window > k0 && table_at(1).as_ref() != Some(&mult_table) {
        return Err(Error::NotAField(format!(
            "composition differs between degrees {k0} and {}",
            k0 + 1
        )));
    }
    Ok(EndoRing {
        view,
        field: *alg.field(),
        mats,
        mult_table,
        identity,
    })
}

impl EndoRing {
    pub fn dim(&self) -> usize {
        self.mats.len()
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    fn fb(&self) -> BaseField {
        self.field.base()
    }

    /// Matrix of `Σ c_e e` on `V_degree`.
    pub fn matrix(&self, elem: &[u32], degree: usize) -> Result<Matrix<u32>> {
        self.view.check_degree(degree)?;
        let fb = self.fb();
        let d = self.view.dim(degree);
        let mut m = Matrix::zeros(&fb, d, d);
        for (&c, mats) in elem.iter().zip(&self.mats) {
            m = m.add(&fb, &mats[degree - self.view.k0].scale(&fb, c));
        }
        Ok(m)
    }

    /// `a ∘ b` via the multiplication table.
    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let fb = self.fb();
        let mut out = vec![0; self.dim()];
        for (i, &ca) in a.iter().enumerate() {
            for (j, &cb) in b.iter().enumerate() {
                let c = fb.mul(ca, cb);
                if c == 0 {
                    continue;
                }
                for (o, &t) in out.iter_mut().zip(&self.mult_table[i][j]) {
                    *o = fb.add(*o, fb.mul(c, t));
                }
            }
        }
        out
    }

    /// Every element of the ring, coordinates in base-`p` order.
    pub fn elements(&self) -> Vec<Vec<u32>> {
        let p = self.field.p() as usize;
        (0..p.pow(self.dim() as u32))
            .map(|mut idx| {
                (0..self.dim())
                    .map(|_| {
                        let c = (idx % p) as u32;
                        idx /= p;
                        c
                    })
                    .collect()
            })
            .collect()
    }

    /// Applies the endomorphism `elem` to `v`.
    pub fn scalar_action(&self, elem: &[u32], v: &HomElem) -> Result<HomElem> {
        let fb = self.fb();
        let coords = self.view.coords_of(v, &fb)?;
        let m = self.matrix(elem, v.degree)?;
        let out = m.apply_row(&fb, &coords);
        Ok(self.view.elem(v.degree, &out, &fb))
    }

    /// `a ∘ b = b ∘ a` on the basis.
    pub fn is_commutative(&self) -> bool {
        (0..self.dim()).all(|a| (0..a).all(|b| self.mult_table[a][b] == self.mult_table[b][a]))
    }

    /// First nonzero element acting singularly on some `V_i`, as `(element, degree)`.
    pub fn schur_failure(&self) -> Option<(Vec<u32>, usize)> {
        let fb = self.fb();
        for e in self.elements().into_iter().skip(1) {
            for deg in self.view.degrees() {
                let m = self.matrix(&e, deg).expect("degree in window");
                if m.determinant(&fb) == 0 {
                    return Some((e, deg));
                }
            }
        }
        None
    }
}

/// Which root of `t² − ut − v` the chosen generator is, relative to scalars of `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Embedding {
    #[serde(rename = "mu")]
    Mu,
    #[serde(rename = "mu_conj")]
    MuConj,
    #[serde(rename = "n/a")]
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldId {
    /// `[E : F]`.
    pub degree: usize,
    /// Coordinates of the generator in the ring basis.
    pub generator: Vec<u32>,
    /// Minimal polynomial of the generator, constant term first.
    pub min_poly: Vec<u32>,
    pub is_field: bool,
    pub embedding: Embedding,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EndoReport {
    pub dim: usize,
    pub min_poly: Vec<u32>,
    pub is_field: bool,
    pub embedding: Embedding,
}

impl FieldId {
    pub fn report(&self) -> EndoReport {
        EndoReport {
            dim: self.degree,
            min_poly: self.min_poly.clone(),
            is_field: self.is_field,
            embedding: self.embedding,
        }
    }
}

fn has_root(fb: &BaseField, poly: &[u32]) -> bool {
    fb.elements().any(|t| {
        let mut acc = 0;
        for &c in poly.iter().rev() {
            acc = fb.add(fb.mul(acc, t), c);
        }
        acc == 0
    })
}

/// Checks that the ring is a commutative field and identifies it. In degree 2 the
/// generator is the first root (in element order) of `t² − ut − v`, the relation
/// of `E`, so an isomorphism with `E` is explicit; the embedding records whether it
/// acts on the module as `μ` or as its conjugate `μ^p`.
pub fn identify_field(ring: &EndoRing) -> Result<FieldId> {
    let fb = ring.fb();
    let e = ring.field;
    if !ring.is_commutative() {
        return Err(Error::NotCommutative);
    }
    if let Some((elem, deg)) = ring.schur_failure() {
        return Err(Error::NotAField(format!("{elem:?} is singular on degree {deg}")));
    }
    match ring.dim() {
        1 => Ok(FieldId {
            degree: 1,
            generator: ring.identity.clone(),
            min_poly: vec![fb.neg(1), 1],
            is_field: true,
            embedding: Embedding::NotApplicable,
        }),
        2 => {
            let (u, v) = e.relation();
            let one = &ring.identity;
            let root = ring.elements().into_iter().find(|t| {
                let t2 = ring.mul(t, t);
                (0..2).all(|k| t2[k] == fb.add(fb.mul(u, t[k]), fb.mul(v, one[k])))
            });
            let generator = root.ok_or_else(|| Error::NotAField("t^2 - ut - v has no root".into()))?;
            let min_poly = vec![fb.neg(v), fb.neg(u), 1];
            if has_root(&fb, &min_poly) {
                return Err(Error::NotAField("minimal polynomial is reducible".into()));
            }
            let embedding = scalar_map(ring, &generator);
            Ok(FieldId {
                degree: 2,
                generator,
                min_poly,
                is_field: true,
                embedding,
            })
        }
        d => Err(Error::NotAField(format!("degree {d} exceeds dim V_i"))),
    }
}

/// Compares the action of `elem` on `V_{k0}` with multiplication by `μ` and by
/// `μ^p` in the ambient algebra.
fn scalar_map(ring: &EndoRing, elem: &[u32]) -> Embedding {
    let e = ring.field;
    let k0 = ring.view.k0;
    let basis: Vec<HomElem> = ring
        .view
        .basis(k0)
        .iter()
        .map(|c| from_f_coords(k0, c))
        .collect();
    let images: Vec<HomElem> = basis
        .iter()
        .map(|b| ring.scalar_action(elem, b).expect("in window"))
        .collect();
    let conj = e.conj(e.mu());
    for (scalar, tag) in [(e.mu(), Embedding::Mu), (conj, Embedding::MuConj)] {
        if basis
            .iter()
            .zip(&images)
            .all(|(b, img)| &b.scale(&e, scalar) == img)
        {
            return tag;
        }
    }
    Embedding::NotApplicable
}

impl EndoRing {
    /// The element acting as multiplication by `μ`, when the embedding is resolved.
    pub fn mu_element(&self, id: &FieldId) -> Option<Vec<u32>> {
        let fb = self.fb();
        match id.embedding {
            Embedding::Mu => Some(id.generator.clone()),
            // the two roots of t² − ut − v sum to u
            Embedding::MuConj => {
                let (u, _) = self.field.relation();
                Some(
                    self.identity
                        .iter()
                        .zip(&id.generator)
                        .map(|(&i, &g)| fb.sub(fb.mul(u, i), g))
                        .collect(),
                )
            }
            Embedding::NotApplicable => None,
        }
    }
}

/// Dimension of the degree-`d` graded endomorphisms and the bound
/// `min_i dim V_{d+i}` over the window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrendDimension {
    pub d: usize,
    pub dim: usize,
    pub bound: usize,
    pub bound_holds: bool,
}

pub fn grend_d_dimension(
    alg: &MaxClassAlgebra,
    analysis: &SubalgebraAnalysis,
    k0: usize,
    d: usize,
) -> Result<GrendDimension> {
    let view = GradedModuleView::new(alg, analysis, k0)?;
    let dim = solve(alg, &view, d)?.len();
    let bound = (k0..=view.window - d)
        .map(|i| view.dim(i + d))
        .min()
        .expect("nonempty range");
    Ok(GrendDimension {
        d,
        dim,
        bound,
        bound_holds: dim <= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::ExtElem;
    use crate::maxclass::make_metabelian;
    use crate::subfield::generate_subalgebra;

    fn setup(pair: GeneratorPair) -> (MaxClassAlgebra, SubalgebraAnalysis) {
        let e = ExtField::new(3, 0, 2).unwrap();
        let alg = MaxClassAlgebra::new(make_metabelian(e, 12).unwrap()).unwrap();
        let a = generate_subalgebra(&alg, pair, 12).unwrap();
        (alg, a)
    }

    #[test]
    fn thin_metabelian_gives_f9() {
        let e = ExtField::new(3, 0, 2).unwrap();
        let (alg, a) = setup(GeneratorPair::new(ExtElem::ONE, ExtElem::ONE, e.mu(), e.add(e.mu(), ExtElem::ONE)));
        let ring = compute_grend0(&alg, &a, DEFAULT_K0).unwrap();
        assert_eq!(ring.dim(), 2);
        let id = identify_field(&ring).unwrap();
        assert_eq!(id.degree, 2);
        assert_eq!(id.min_poly, vec![1, 0, 1]);
        assert_ne!(id.embedding, Embedding::NotApplicable);
        let mu = ring.mu_element(&id).unwrap();
        let v3 = HomElem::v(3, ExtElem::ONE);
        assert_eq!(ring.scalar_action(&mu, &v3).unwrap(), HomElem::v(3, e.mu()));
        assert_eq!(ring.scalar_action(&ring.identity, &v3).unwrap(), v3);
        assert!(matches!(
            ring.scalar_action(&mu, &HomElem::v(2, ExtElem::ONE)),
            Err(Error::OutOfWindow { .. })
        ));
    }

    #[test]
    fn maximal_pair_gives_prime_field() {
        let (alg, a) = setup(GeneratorPair::new(ExtElem::ONE, ExtElem::ZERO, ExtElem::ZERO, ExtElem::ONE));
        let ring = compute_grend0(&alg, &a, DEFAULT_K0).unwrap();
        assert_eq!(ring.dim(), 1);
        assert_eq!(identify_field(&ring).unwrap().degree, 1);
        assert_eq!(grend_d_dimension(&alg, &a, DEFAULT_K0, 0).unwrap().dim, 1);
    }
}
