//! One line per acceptance criterion. Arithmetic is exact, so every
//! comparison is an equality with zero tolerance.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{adjoint_q, deviating_presentations, f25, f4, f9, q, reference_dims, Quad};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thinlie::endo::{compute_grend0, grend_d_dimension, identify_field, DEFAULT_K0};
use thinlie::gf::{ExtElem, ExtField, Field};
use thinlie::maxclass::{
    canonical_centralizers, make_metabelian, quotient, search_sequences, two_step_centralizers, validate, BasisElem,
    HomElem, JacobiFailure, MaxClassAlgebra, MaxClassPresentation,
};
use thinlie::reconstruct::{iso_search, verify_roundtrip, Branch};
use thinlie::subfield::{
    check_centralizer_lemma, generate_subalgebra, normalized_pairs, scan, thin_line_criterion, verify_covering,
    verify_ideal_sandwich, GeneratorPair, ScanMode, Verdict,
};

fn thin_pair(e: &ExtField) -> GeneratorPair {
    // X = x + y, Y = μx + (μ+1)y
    GeneratorPair::new(ExtElem::ONE, ExtElem::ONE, e.mu(), e.add(e.mu(), ExtElem::ONE))
}

fn with_deviations(e: ExtField, n: usize, devs: &[usize]) -> MaxClassPresentation {
    deviating_presentations(e, n)
        .into_iter()
        .find(|p| two_step_centralizers(p).deviations() == devs)
        .expect("searched presentation")
}

fn reference_of(pres: &MaxClassPresentation, pair: GeneratorPair, window: usize) -> (Vec<usize>, Vec<usize>) {
    reference_dims(
        &Quad::of(pres.field()),
        &adjoint_q(pres),
        (q(pair.alpha()), q(pair.beta())),
        (q(pair.gamma()), q(pair.delta())),
        window,
    )
}

fn c1() -> Vec<Duration> {
    let e = f9();
    let t = Instant::now();
    let pres = make_metabelian(e, 40).unwrap();
    let alg = MaxClassAlgebra::new(pres.clone()).unwrap();
    let pair = thin_pair(&e);
    let a = generate_subalgebra(&alg, pair, 40).unwrap();
    assert_eq!(a.verdict(), Verdict::Thin);
    assert_eq!(a.dim(2), 1);
    assert!((3..=40).all(|i| a.dim(i) == 2));
    assert!(verify_covering(&alg, &a).unwrap().ok);
    let elapsed = t.elapsed();
    assert_eq!(a.dims, reference_of(&pres, pair, 40).0);
    vec![elapsed]
}

fn c2() -> Vec<Duration> {
    let e = f9();
    let t = Instant::now();
    let pres = make_metabelian(e, 40).unwrap();
    let alg = MaxClassAlgebra::new(pres.clone()).unwrap();
    let pair = GeneratorPair::new(ExtElem::ONE, ExtElem::ZERO, ExtElem::ZERO, ExtElem::ONE);
    let a = generate_subalgebra(&alg, pair, 40).unwrap();
    assert_eq!(a.verdict(), Verdict::MaximalClass);
    assert!((2..40).all(|i| a.d_at(i) == 1));
    assert!((2..=40).all(|i| a.dim(i) == 1));
    let elapsed = t.elapsed();
    let (dims, d) = reference_of(&pres, pair, 40);
    assert_eq!(a.dims, dims);
    assert!(d.iter().all(|&x| x == 1));
    vec![elapsed]
}

fn c3() -> Vec<Duration> {
    let t = Instant::now();
    for e in [f4(), f9()] {
        let devs = deviating_presentations(e, 12);
        assert!(!devs.is_empty());
        for pres in std::iter::once(make_metabelian(e, 12).unwrap()).chain(devs) {
            let alg = MaxClassAlgebra::new(pres).unwrap();
            for pair in normalized_pairs(&e) {
                let a = generate_subalgebra(&alg, pair, 12).unwrap();
                let thin = a.verdict() == Verdict::Thin;
                let cov = a.has_thin_dimensions() && verify_covering(&alg, &a).unwrap().ok;
                let line = thin_line_criterion(&alg, pair, 12).unwrap().avoided;
                assert_eq!((thin, thin), (cov, line), "{pair:?}");
            }
        }
    }
    vec![t.elapsed()]
}

fn c4() -> Vec<Duration> {
    let e = f9();
    let pres = with_deviations(e, 14, &[6, 9, 12]);
    let t = Instant::now();
    let alg = MaxClassAlgebra::new(pres.clone()).unwrap();
    let pair = GeneratorPair::new(ExtElem::ZERO, ExtElem::ONE, ExtElem::ONE, e.mu());
    let a = generate_subalgebra(&alg, pair, 14).unwrap();
    assert_eq!(a.verdict(), Verdict::RConstrained);
    assert_eq!(a.zeros(), two_step_centralizers(&pres).deviations());
    let t1 = a.classification.t1.unwrap();
    assert_eq!(t1, 6);
    assert!((2..=t1).all(|i| a.dim(i) == 1));
    assert!((t1 + 1..=14).all(|i| a.dim(i) == 2));
    let r = a.classification.r_observed.unwrap();
    assert_eq!(r, 3);
    assert!(verify_ideal_sandwich(&alg, &a, r).unwrap().ok);
    let w = verify_ideal_sandwich(&alg, &a, r - 1).unwrap();
    assert!(!w.ok);
    // zeros 6, 9, 12: the gap of 3 first closes after t_{j0-1} = 6
    assert_eq!(w.witness.unwrap().degree, 7);
    let elapsed = t.elapsed();
    let (dims, d) = reference_of(&pres, pair, 14);
    assert_eq!(a.dims, dims);
    assert_eq!(a.d.iter().map(|&x| x as usize).collect::<Vec<_>>(), d);
    vec![elapsed]
}

fn c5() -> Vec<Duration> {
    let mut times = Vec::new();
    let mut seen = [0usize; 3];
    for (e, n) in [(f4(), 14), (f9(), 14), (f25(), 10)] {
        let mut cases = vec![make_metabelian(e, n).unwrap()];
        if e.size() < 25 {
            cases.extend(deviating_presentations(e, n).into_iter().take(2));
        }
        for pres in cases {
            let alg = MaxClassAlgebra::new(pres.clone()).unwrap();
            let mut pairs = vec![
                thin_pair(&e),
                GeneratorPair::new(ExtElem::ONE, ExtElem::ZERO, ExtElem::ZERO, ExtElem::ONE),
                GeneratorPair::new(ExtElem::ZERO, ExtElem::ONE, ExtElem::ONE, e.mu()),
            ];
            pairs.extend(normalized_pairs(&e).into_iter().take(4));
            for pair in pairs {
                let t = Instant::now();
                let a = generate_subalgebra(&alg, pair, n).unwrap();
                let ring = compute_grend0(&alg, &a, DEFAULT_K0).unwrap();
                assert!(ring.is_commutative());
                assert_eq!(ring.schur_failure(), None);
                let id = identify_field(&ring).unwrap();
                assert!(id.is_field);
                match a.verdict() {
                    Verdict::Thin => {
                        seen[0] += 1;
                        assert_eq!(ring.dim(), 2);
                        let k = Quad::of(&e);
                        let (u, v) = ((k.p - id.min_poly[1]) % k.p, (k.p - id.min_poly[0]) % k.p);
                        assert!(Quad { p: k.p, u, v }.is_irreducible());
                    }
                    Verdict::MaximalClass => {
                        seen[1] += 1;
                        assert_eq!(ring.dim(), 1);
                    }
                    // the shape of the infinite case: d_2 = 1, so dim L_i = 1 up to t1
                    Verdict::RConstrained if a.d[0] == 1 => {
                        seen[2] += 1;
                        assert_eq!(ring.dim(), 1);
                    }
                    // an isolated 1 among zeros: L^3 = M^3 in the window and E acts
                    Verdict::RConstrained => assert_eq!(ring.dim(), 2),
                    Verdict::Degenerate => unreachable!(),
                }
                for d in [0, 1] {
                    assert!(grend_d_dimension(&alg, &a, DEFAULT_K0, d).unwrap().bound_holds);
                }
                times.push(t.elapsed());
            }
        }
    }
    assert!(seen.iter().all(|&s| s > 0), "{seen:?}");
    times
}

fn c6() -> Vec<Duration> {
    let e = f9();
    let mut times = Vec::new();
    for (pres, branch) in [
        (make_metabelian(e, 16).unwrap(), Branch::RhoPrime),
        (with_deviations(e, 16, &[6, 9, 12, 15]), Branch::Rho),
        (with_deviations(e, 16, &[6, 9, 14]), Branch::Rho),
    ] {
        let alg = MaxClassAlgebra::new(pres.clone()).unwrap();
        let pair = thin_pair(&e);
        assert_eq!(generate_subalgebra(&alg, pair, 16).unwrap().verdict(), Verdict::Thin);
        let t = Instant::now();
        let r = verify_roundtrip(&alg, pair, 16).unwrap();
        times.push(t.elapsed());
        assert!(r.iso, "{:?}", r.first_failure);
        assert_eq!(r.branch, branch);
        let n = &r.reconstructed;
        assert_eq!(n.dims[0], 2);
        assert!(n.dims[1..].iter().all(|&x| x == 1));
        assert!(validate(&n.presentation).unwrap().ok);
        let m = quotient(&pres, r.usable_window).unwrap();
        assert_eq!(canonical_centralizers(&m).unwrap(), canonical_centralizers(&n.presentation).unwrap());
        assert!(iso_search(&m, &n.presentation, r.usable_window).unwrap().found);
    }
    times
}

fn c7() -> Vec<Duration> {
    let t = Instant::now();
    let mut rng = StdRng::seed_from_u64(2024);
    let mut pool: Vec<MaxClassPresentation> = Vec::new();
    for e in [f4(), f9(), f25()] {
        pool.push(make_metabelian(e, 12).unwrap());
        pool.extend(search_sequences(e, 12, 200).unwrap().into_iter().take(6));
    }
    let algs: Vec<MaxClassAlgebra> = pool.into_iter().map(|p| MaxClassAlgebra::new(p).unwrap()).collect();
    let mut samples = 0;
    while samples < 200 {
        let alg = &algs[rng.gen_range(0..algs.len())];
        let e = *alg.field();
        let k = Quad::of(&e);
        let p = e.p();
        let mut el = || ExtElem::new(rng.gen_range(0..p), rng.gen_range(0..p));
        let pair = GeneratorPair::new(el(), el(), el(), el());
        let (alpha, beta, c) = (el(), el(), el());
        if pair.is_degenerate(&e) || (alpha.is_zero() && beta.is_zero()) {
            continue;
        }
        let i = rng.gen_range(2..12);
        // v ↦ [v, ℓ] on M_i: E-linear, and bijective iff α a_i + β b_i ≠ 0
        let l = HomElem::deg1(alpha, beta);
        let image = alg.bracket(&HomElem::v(i, ExtElem::ONE), &l).unwrap();
        let scaled = alg.bracket(&HomElem::v(i, c), &l).unwrap();
        assert_eq!(scaled, image.scale(&e, c));
        let (a, b) = adjoint_q(alg.presentation())[i - 2];
        let s = k.add(k.mul(q(alpha), a), k.mul(q(beta), b));
        assert_eq!(image.is_zero(), s == (0, 0));
        let analysis = generate_subalgebra(alg, pair, 12).unwrap();
        let lemma = check_centralizer_lemma(alg, &analysis).unwrap();
        assert!(lemma.ok(), "{:?}", lemma.first_failure);
        samples += 1;
    }
    vec![t.elapsed()]
}

fn c8() -> Vec<Duration> {
    let t = Instant::now();
    for e in [f4(), f9(), f25()] {
        for n in 4..=40 {
            assert!(validate(&make_metabelian(e, n).unwrap()).unwrap().ok, "n = {n}");
        }
        for pres in search_sequences(e, 12, 300).unwrap() {
            assert!(validate(&pres).unwrap().ok);
        }
    }
    let mut adj = vec![(ExtElem::ONE, ExtElem::ZERO); 4];
    adj[1] = (ExtElem::ZERO, ExtElem::ONE);
    let mutated = MaxClassPresentation::new(f9(), 6, adj).unwrap();
    let r = validate(&mutated).unwrap();
    assert!(!r.ok);
    assert!(matches!(
        r.first_failure,
        Some(JacobiFailure::Jacobi { triple, .. }) if triple == [BasisElem::v(2), BasisElem::X, BasisElem::Y]
    ));
    vec![t.elapsed()]
}

fn c9() -> Vec<Duration> {
    let mut times = Vec::new();
    for pres in [
        make_metabelian(f4(), 12).unwrap(),
        make_metabelian(f9(), 12).unwrap(),
        with_deviations(f9(), 14, &[6, 9, 12]),
    ] {
        let t = Instant::now();
        let alg = MaxClassAlgebra::new(pres).unwrap();
        let table = scan(&alg, 12, ScanMode::Normalized).unwrap();
        times.push(t.elapsed());
        assert!(table.counts_agree);
        assert_eq!(table.thin, table.thin_by_lines);
        assert!(table.thin > 0);
    }
    times
}

type Criterion = (usize, &'static str, fn() -> Vec<Duration>, Duration);

fn main() -> ExitCode {
    let s = Duration::from_secs;
    let criteria: [Criterion; 9] = [
        (1, "metabelian thin pair over F_9, n = 40", c1, s(1)),
        (2, "X = x, Y = y is of maximal class", c2, s(1)),
        (3, "thin iff covering iff line avoidance, p = 2, 3", c3, s(60)),
        (4, "r-constrained pair and ideal sandwich", c4, s(30)),
        (5, "endomorphism ring by verdict", c5, s(5)),
        (6, "roundtrip M -> N, both branches", c6, s(10)),
        (7, "lemma suite on 200 random samples", c7, s(30)),
        (8, "Jacobi validator", c8, s(10)),
        (9, "scan counts agree", c9, s(60)),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, name, run, budget) in criteria {
        let t = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run));
        let total = t.elapsed();
        match outcome {
            Ok(times) => {
                let worst = times.iter().max().copied().unwrap_or_default();
                if worst <= budget {
                    println!("criterion {n}: PASS  {name}  ({:.2?}, worst case {worst:.2?}, budget {budget:.0?})", total);
                } else {
                    failed += 1;
                    println!("criterion {n}: FAIL  {name}  (worst case {worst:.2?} over budget {budget:.0?})");
                }
            }
            Err(err) => {
                failed += 1;
                let msg = err
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| err.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {n}: FAIL  {name}  ({msg})");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
