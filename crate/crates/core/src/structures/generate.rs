//! Named structure families. Vertices are always named `0..n`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{is_canonical_orientation, Signature, Structure, StructureError};

#[derive(Clone, Debug, PartialEq)]
pub enum Generator {
    /// Undirected path on `n` vertices.
    Path { n: usize },
    Cycle { n: usize },
    Clique { n: usize },
    /// Directed path on `n` vertices (`n - 1` arcs).
    OrientedPath { n: usize },
    TransitiveTournament { n: usize },
    Petersen,
    /// G(n, p) without loops; `directed` selects the digraph signature.
    Random { n: usize, p: f64, directed: bool },
}

pub fn generate(g: &Generator, seed: u64) -> Result<Structure, StructureError> {
    let bad = |m: &str| Err(StructureError::InvalidParams(m.to_string()));
    Ok(match *g {
        Generator::Path { n } => {
            let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            Structure::from_edges(Signature::graph(), n, &edges)
        }
        Generator::Cycle { n } => {
            if n < 3 {
                return bad("cycle needs n >= 3");
            }
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            Structure::from_edges(Signature::graph(), n, &edges)
        }
        Generator::Clique { n } => {
            let edges: Vec<_> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .collect();
            Structure::from_edges(Signature::graph(), n, &edges)
        }
        Generator::OrientedPath { n } => {
            let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            Structure::from_edges(Signature::digraph(), n, &edges)
        }
        Generator::TransitiveTournament { n } => {
            let edges: Vec<_> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .collect();
            Structure::from_edges(Signature::digraph(), n, &edges)
        }
        Generator::Petersen => {
            // outer 5-cycle 0..5, inner pentagram 5..10, spokes i -- i+5
            let mut edges = Vec::new();
            for i in 0..5 {
                edges.push((i, (i + 1) % 5));
                edges.push((5 + i, 5 + (i + 2) % 5));
                edges.push((i, i + 5));
            }
            Structure::from_edges(Signature::graph(), 10, &edges)
        }
        Generator::Random { n, p, directed } => {
            if !(0.0..=1.0).contains(&p) {
                return bad("p must lie in [0, 1]");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i == j || (!directed && j < i) {
                        continue;
                    }
                    if rng.gen_bool(p) {
                        edges.push((i, j));
                    }
                }
            }
            let sig = if directed {
                Signature::digraph()
            } else {
                Signature::graph()
            };
            Structure::from_edges(sig, n, &edges)
        }
    })
}

/// Random structure on `0..n`: every possible tuple (one orientation for
/// symmetric symbols, repeated entries included) is present with probability `p`.
pub fn random_structure<R: Rng>(sig: &Arc<Signature>, n: usize, p: f64, rng: &mut R) -> Structure {
    let mut s = Structure::numbered(sig.clone(), n);
    for (si, sym) in sig.symbols().iter().enumerate() {
        for_each_tuple(n, sym.arity, |t| {
            if sym.symmetric && !is_canonical_orientation(t) {
                return;
            }
            if rng.gen_bool(p) {
                s.add_tuple(si, t.to_vec()).expect("valid tuple");
            }
        });
    }
    s
}

/// Calls `f` on every tuple in `0..n` of length `k`, in lexicographic order.
pub(crate) fn for_each_tuple(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if n == 0 && k > 0 {
        return;
    }
    let mut t = vec![0; k];
    loop {
        f(&t);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < n {
                break;
            }
            t[i] = 0;
        }
    }
}
