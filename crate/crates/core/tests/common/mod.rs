//! Reference computations written directly from the definitions, sharing no code
//! with the library beyond its input types.

#![allow(dead_code)]

use std::collections::BTreeSet;

use thinlie::gf::{ExtElem, ExtField};
use thinlie::maxclass::{search_sequences, standard_generators, two_step_centralizers, MaxClassPresentation};

/// `F_p[μ]/(μ² − uμ − v)` on plain pairs.
#[derive(Clone, Copy, Debug)]
pub struct Quad {
    pub p: u32,
    pub u: u32,
    pub v: u32,
}

pub type Q = (u32, u32);

impl Quad {
    pub fn of(e: &ExtField) -> Self {
        let (u, v) = e.relation();
        Quad { p: e.p(), u, v }
    }

    pub fn add(&self, a: Q, b: Q) -> Q {
        ((a.0 + b.0) % self.p, (a.1 + b.1) % self.p)
    }

    pub fn neg(&self, a: Q) -> Q {
        ((self.p - a.0) % self.p, (self.p - a.1) % self.p)
    }

    pub fn sub(&self, a: Q, b: Q) -> Q {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Q, b: Q) -> Q {
        let p = self.p as u64;
        let (a0, a1, b0, b1) = (a.0 as u64, a.1 as u64, b.0 as u64, b.1 as u64);
        // (a0 + a1μ)(b0 + b1μ) with μ² = uμ + v
        let m2 = a1 * b1 % p;
        let c0 = (a0 * b0 + m2 * self.v as u64) % p;
        let c1 = (a0 * b1 + a1 * b0 + m2 * self.u as u64) % p;
        (c0 as u32, c1 as u32)
    }

    pub fn scale(&self, s: u32, a: Q) -> Q {
        self.mul((s % self.p, 0), a)
    }

    pub fn elements(&self) -> Vec<Q> {
        (0..self.p).flat_map(|a| (0..self.p).map(move |b| (a, b))).collect()
    }

    pub fn is_irreducible(&self) -> bool {
        (0..self.p).all(|t| {
            let p = self.p as u64;
            let t = t as u64;
            !(t * t + (p - self.u as u64) * t + (p - self.v as u64)).is_multiple_of(p)
        })
    }
}

pub fn q(e: ExtElem) -> Q {
    (e.c0, e.c1)
}

/// `F`-span of a set of elements of `E`, as a set.
pub fn f_span(k: &Quad, gens: &[Q]) -> BTreeSet<Q> {
    let mut span: BTreeSet<Q> = [(0, 0)].into();
    for &g in gens {
        let current: Vec<Q> = span.iter().copied().collect();
        for s in 0..k.p {
            for &c in &current {
                span.insert(k.add(c, k.scale(s, g)));
            }
        }
    }
    span
}

pub fn log_p(p: u32, n: usize) -> usize {
    let mut k = 0;
    let mut m = 1usize;
    while m < n {
        m *= p as usize;
        k += 1;
    }
    assert_eq!(m, n, "not a power of p");
    k
}

/// `dim_F L_i` for `i = 1..=window` and `d_i` for `i = 2..window`, with `L_i ⊆ E·v_i`
/// stored as the set of its coefficients. Uses only `[y, x] = v_2` and
/// `[c·v_i, αx + βy] = c(α a_i + β b_i)·v_{i+1}`.
pub fn reference_dims(
    k: &Quad,
    adjoint: &[(Q, Q)],
    x: (Q, Q),
    y: (Q, Q),
    window: usize,
) -> (Vec<usize>, Vec<usize>) {
    let (alpha, beta) = x;
    let (gamma, delta) = y;
    // [X, Y] = (αδ − βγ)[x, y] = (βγ − αδ)·v_2
    let c2 = k.sub(k.mul(beta, gamma), k.mul(alpha, delta));
    let mut dims = vec![2];
    let mut layer = f_span(k, &[c2]);
    dims.push(log_p(k.p, layer.len()));
    let mut d = Vec::new();
    for i in 2..window {
        let (a, b) = adjoint[i - 2];
        let on_x = k.add(k.mul(alpha, a), k.mul(beta, b));
        let on_y = k.add(k.mul(gamma, a), k.mul(delta, b));
        let solutions = (0..k.p)
            .flat_map(|s| (0..k.p).map(move |t| (s, t)))
            .filter(|&(s, t)| k.add(k.scale(s, on_x), k.scale(t, on_y)) == (0, 0))
            .count();
        d.push(log_p(k.p, solutions));
        let gens: Vec<Q> = layer
            .iter()
            .flat_map(|&c| [k.mul(c, on_x), k.mul(c, on_y)])
            .collect();
        layer = f_span(k, &gens);
        dims.push(log_p(k.p, layer.len()));
    }
    (dims, d)
}

pub fn adjoint_q(pres: &MaxClassPresentation) -> Vec<(Q, Q)> {
    pres.adjoint().iter().map(|&(a, b)| (q(a), q(b))).collect()
}

/// Standardized searched presentations with a nonempty deviation list, first
/// one per deviation pattern, in search order.
pub fn deviating_presentations(e: ExtField, n: usize) -> Vec<MaxClassPresentation> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for pres in search_sequences(e, n, 100_000).unwrap() {
        let (_, std) = standard_generators(&pres).unwrap();
        let devs = two_step_centralizers(&std).deviations();
        if !devs.is_empty() && seen.insert(devs) {
            out.push(std);
        }
    }
    out
}

pub fn f4() -> ExtField {
    ExtField::new(2, 1, 1).unwrap()
}

pub fn f9() -> ExtField {
    ExtField::new(3, 0, 2).unwrap()
}

pub fn f25() -> ExtField {
    ExtField::new(5, 0, 2).unwrap()
}
