//! Isomorphism testing and brute-force canonical forms for small structures.

use thiserror::Error;

use super::Structure;
use crate::hom::{search_map, HomError, MapMode, SearchConfig};

pub const DEFAULT_ISO_BOUND: usize = 16;
const CANONICAL_FORM_BOUND: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsoError {
    #[error("structure has {size} vertices, above the bound {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error(transparent)]
    Hom(#[from] HomError),
}

fn degree_profile(s: &Structure) -> Vec<Vec<usize>> {
    // per vertex: number of appearances in each (symbol, position)
    let mut prof = vec![Vec::new(); s.len()];
    for (si, sym) in s.signature().symbols().iter().enumerate() {
        for p in 0..sym.arity {
            let mut cnt = vec![0; s.len()];
            for t in s.relation(si) {
                cnt[t[p]] += 1;
            }
            for (v, c) in cnt.into_iter().enumerate() {
                prof[v].push(c);
            }
        }
    }
    prof.sort();
    prof
}

/// Returns an isomorphism `a -> b` as a vertex map, or `None`.
pub fn iso_check(
    a: &Structure,
    b: &Structure,
    bound: usize,
    cfg: &SearchConfig,
) -> Result<Option<Vec<usize>>, IsoError> {
    let size = a.len().max(b.len());
    if size > bound {
        return Err(IsoError::TooLarge { size, bound });
    }
    if !a.same_signature(b) {
        return Err(HomError::SignatureMismatch.into());
    }
    if a.len() != b.len()
        || a.relations().iter().zip(b.relations()).any(|(x, y)| x.len() != y.len())
        || degree_profile(a) != degree_profile(b)
    {
        return Ok(None);
    }
    // an injective tuple-reflecting map between equal-size structures is a bijection
    Ok(search_map(a, b, MapMode::Embed, &[], cfg)?.map(|m| m.assignment))
}

/// Isomorphism-invariant key: the lexicographically least tuple encoding
/// over all vertex permutations. Only for structures with at most 8 vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<usize>);

pub fn canonical_form(s: &Structure) -> Result<CanonicalForm, IsoError> {
    let n = s.len();
    if n > CANONICAL_FORM_BOUND {
        return Err(IsoError::TooLarge {
            size: n,
            bound: CANONICAL_FORM_BOUND,
        });
    }
    let encode = |perm: &[usize]| -> Vec<usize> {
        let mut key = vec![n];
        for rel in s.relations() {
            let mut ts: Vec<Vec<usize>> = rel
                .iter()
                .map(|t| t.iter().map(|&v| perm[v]).collect())
                .collect();
            ts.sort_unstable();
            key.push(ts.len());
            key.extend(ts.into_iter().flatten());
        }
        key
    };
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = encode(&perm);
    // Heap's algorithm
    let mut c = vec![0; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            let k = encode(&perm);
            if k < best {
                best = k;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(CanonicalForm(best))
}
