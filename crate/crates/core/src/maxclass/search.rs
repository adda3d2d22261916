use rayon::prelude::*;

use super::model::ModelBuilder;
use super::MaxClassPresentation;
use crate::error::{Error, Result};
use crate::gf::{ExtElem, ExtField, ProjPoint};

/// Largest class accepted by [`search_sequences`].
pub const SEARCH_WINDOW_LIMIT: usize = 24;

/// Depth-first enumeration of class-`n` presentations with normalized pairs
/// `(1, λ)` / `(0, 1)`, pruning every prefix whose Jacobi check fails. Results come
/// in lexicographic order of the pair sequence (`(1, 0)` first, so the metabelian
/// algebra leads), at most `limit` of them.
pub fn search_sequences(field: ExtField, n: usize, limit: usize) -> Result<Vec<MaxClassPresentation>> {
    if n > SEARCH_WINDOW_LIMIT {
        return Err(Error::WindowTooLarge {
            window: n,
            limit: SEARCH_WINDOW_LIMIT,
        });
    }
    if n < 4 {
        return Err(Error::BadBound {
            bound: n,
            min: 4,
            max: SEARCH_WINDOW_LIMIT,
        });
    }
    if limit == 0 {
        return Ok(Vec::new());
    }
    let candidates: Vec<(ExtElem, ExtElem)> = ProjPoint::all(&field).into_iter().map(|p| (p.a, p.b)).collect();
    // each top-level branch is searched independently; concatenating in branch
    // order and truncating gives the same answer as a sequential search
    let per_branch: Vec<Vec<Vec<(ExtElem, ExtElem)>>> = candidates
        .par_iter()
        .map(|&first| {
            let mut builder = ModelBuilder::new(field, n);
            builder.push(first);
            let mut found = Vec::new();
            if builder.check_layer(3).is_ok() {
                dfs(&mut builder, &candidates, limit, &mut found);
            }
            found
        })
        .collect();
    per_branch
        .into_iter()
        .flatten()
        .take(limit)
        .map(|adj| MaxClassPresentation::new(field, n, adj))
        .collect()
}

fn dfs(
    builder: &mut ModelBuilder,
    candidates: &[(ExtElem, ExtElem)],
    limit: usize,
    found: &mut Vec<Vec<(ExtElem, ExtElem)>>,
) {
    let d = builder.built();
    if d == builder.class() {
        found.push(builder.pairs().to_vec());
        return;
    }
    for &pair in candidates {
        if found.len() >= limit {
            return;
        }
        builder.push(pair);
        if builder.check_layer(d + 1).is_ok() {
            dfs(builder, candidates, limit, found);
        }
        builder.truncate(d);
    }
}
