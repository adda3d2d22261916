mod common;

use common::{deviating_presentations, f25, f4, f9, Quad};
use thinlie::endo::{compute_grend0, grend_d_dimension, identify_field, Embedding, DEFAULT_K0};
use thinlie::gf::{ExtElem, Field};
use thinlie::maxclass::{make_metabelian, HomElem, MaxClassAlgebra, MaxClassPresentation};
use thinlie::subfield::{generate_subalgebra, normalized_pairs, GeneratorPair, Verdict};

/// One pair of each verdict and value of d_2 that occurs, per presentation.
fn sample(pres: &MaxClassPresentation, window: usize) -> Vec<(GeneratorPair, Verdict)> {
    let e = *pres.field();
    let alg = MaxClassAlgebra::new(pres.clone()).unwrap();
    let mut out: Vec<(GeneratorPair, Verdict)> = Vec::new();
    let mut seen = Vec::new();
    let mut pairs = normalized_pairs(&e);
    pairs.push(GeneratorPair::new(ExtElem::ONE, ExtElem::ZERO, ExtElem::ZERO, ExtElem::ONE));
    // X = y lies in C_2, so d_2 = 1
    pairs.push(GeneratorPair::new(ExtElem::ZERO, ExtElem::ONE, ExtElem::ONE, e.mu()));
    for pair in pairs {
        let a = generate_subalgebra(&alg, pair, window).unwrap();
        let v = a.verdict();
        let key = (v, a.d.first().copied());
        if !seen.contains(&key) {
            seen.push(key);
            out.push((pair, v));
        }
    }
    out
}

fn cases() -> Vec<MaxClassPresentation> {
    let mut out = vec![
        make_metabelian(f9(), 14).unwrap(),
        make_metabelian(f4(), 14).unwrap(),
        make_metabelian(f25(), 10).unwrap(),
    ];
    out.extend(deviating_presentations(f9(), 14).into_iter().take(2));
    out.extend(deviating_presentations(f4(), 14).into_iter().take(2));
    out
}

#[test]
fn ring_by_verdict() {
    let mut seen_thin = 0;
    let mut seen_rc = 0;
    for pres in cases() {
        let window = pres.class();
        let alg = MaxClassAlgebra::new(pres.clone()).unwrap();
        let k = Quad::of(pres.field());
        for (pair, verdict) in sample(&pres, window) {
            let a = generate_subalgebra(&alg, pair, window).unwrap();
            let ring = compute_grend0(&alg, &a, DEFAULT_K0).unwrap();
            assert!(ring.is_commutative());
            assert_eq!(ring.schur_failure(), None);
            let id = identify_field(&ring).unwrap();
            match verdict {
                Verdict::Thin => {
                    seen_thin += 1;
                    assert_eq!(ring.dim(), 2);
                    assert_eq!(id.min_poly.len(), 3);
                    // t² + c1·t + c0 = t² − ut − v, irreducible by the reference
                    let (p, u, v) = (k.p, (k.p - id.min_poly[1]) % k.p, (k.p - id.min_poly[0]) % k.p);
                    assert!(Quad { p, u, v }.is_irreducible());
                    assert_ne!(id.embedding, Embedding::NotApplicable);
                }
                Verdict::MaximalClass => {
                    assert_eq!(ring.dim(), 1);
                    assert_eq!(id.embedding, Embedding::NotApplicable);
                }
                Verdict::RConstrained if a.d[0] == 1 => {
                    // the infinite shape: dim L_i = 1 up to t1, zeros among ones
                    seen_rc += 1;
                    assert_eq!(ring.dim(), 1);
                    assert_eq!(id.embedding, Embedding::NotApplicable);
                }
                Verdict::RConstrained => {
                    // an isolated 1 in an otherwise zero d-sequence: L^3 = M^3
                    // in the window, so E still acts
                    assert!(a.dims[2..].iter().all(|&x| x == 2));
                    assert_eq!(ring.dim(), 2);
                }
                Verdict::Degenerate => unreachable!(),
            }
            for d in [0, 1] {
                let g = grend_d_dimension(&alg, &a, DEFAULT_K0, d).unwrap();
                assert!(g.bound_holds, "{g:?}");
            }
        }
    }
    assert!(seen_thin > 0 && seen_rc > 0);
}

#[test]
fn endomorphisms_commute_with_the_action() {
    let e = f9();
    let pres = deviating_presentations(e, 14).remove(0);
    let alg = MaxClassAlgebra::new(pres.clone()).unwrap();
    for (pair, _) in sample(&pres, 14) {
        let a = generate_subalgebra(&alg, pair, 14).unwrap();
        let ring = compute_grend0(&alg, &a, DEFAULT_K0).unwrap();
        for elem in ring.elements() {
            for i in DEFAULT_K0..14 {
                for b in a.basis_elems(i) {
                    for g in [pair.x_elem(), pair.y_elem()] {
                        let lhs = ring.scalar_action(&elem, &alg.bracket(&b, &g).unwrap()).unwrap();
                        let rhs = alg.bracket(&ring.scalar_action(&elem, &b).unwrap(), &g).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}

#[test]
fn mu_element_acts_as_mu() {
    for e in [f4(), f9(), f25()] {
        let alg = MaxClassAlgebra::new(make_metabelian(e, 10).unwrap()).unwrap();
        let thin = normalized_pairs(&e)
            .into_iter()
            .find(|&p| generate_subalgebra(&alg, p, 10).unwrap().verdict() == Verdict::Thin)
            .unwrap();
        let a = generate_subalgebra(&alg, thin, 10).unwrap();
        let ring = compute_grend0(&alg, &a, DEFAULT_K0).unwrap();
        let id = identify_field(&ring).unwrap();
        let mu = ring.mu_element(&id).unwrap();
        for i in DEFAULT_K0..=10 {
            let v = HomElem::v(i, ExtElem::ONE);
            assert_eq!(ring.scalar_action(&mu, &v).unwrap(), HomElem::v(i, e.mu()));
        }
        // μ² = uμ + v inside the ring
        let (u, v) = e.relation();
        let fb = e.base();
        let sq = ring.mul(&mu, &mu);
        let rhs: Vec<u32> = mu
            .iter()
            .zip(&ring.identity)
            .map(|(&m, &one)| fb.add(fb.mul(u, m), fb.mul(v, one)))
            .collect();
        assert_eq!(sq, rhs);
    }
}
