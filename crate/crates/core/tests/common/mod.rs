//! Reference implementations used to check the library. They only read
//! structures through their tuple sets and never call into the search,
//! cut or lift code under test.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use relift::hom::MapMode;
use relift::pieces::PieceCatalog;
use relift::structures::Structure;

/// `f` checked against the definitions directly.
pub fn is_map_oracle(a: &Structure, b: &Structure, f: &[usize], mode: MapMode) -> bool {
    for (s, t) in a.tuples() {
        let img: Vec<usize> = t.iter().map(|&v| f[v]).collect();
        if !b.relation(s).contains(&img) {
            return false;
        }
    }
    if mode == MapMode::Hom {
        return true;
    }
    let image: BTreeSet<usize> = f.iter().copied().collect();
    if image.len() != f.len() {
        return false;
    }
    if mode == MapMode::Embed {
        let mut inv = vec![usize::MAX; b.len()];
        for (v, &w) in f.iter().enumerate() {
            inv[w] = v;
        }
        for (s, t) in b.tuples() {
            if t.iter().all(|w| image.contains(w)) {
                let pre: Vec<usize> = t.iter().map(|&w| inv[w]).collect();
                if !a.relation(s).contains(&pre) {
                    return false;
                }
            }
        }
    }
    true
}

/// Runs `visit` on every function `[m] -> [n]` in lexicographic order.
pub fn for_each_function(m: usize, n: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    if m > 0 && n == 0 {
        return;
    }
    let mut f = vec![0usize; m];
    loop {
        if !visit(&f) {
            return;
        }
        let mut i = 0;
        loop {
            if i == m {
                return;
            }
            f[i] += 1;
            if f[i] < n {
                break;
            }
            f[i] = 0;
            i += 1;
        }
    }
}

/// Exhaustive enumeration of all `|B|^|A|` maps.
pub fn exhaustive_exists(a: &Structure, b: &Structure, mode: MapMode) -> bool {
    let mut found = false;
    for_each_function(a.len(), b.len(), |f| {
        found = is_map_oracle(a, b, f, mode);
        !found
    });
    found
}

/// Plain backtracking homomorphism test: assign vertices in index order and
/// check every tuple as soon as its entries are assigned.
pub fn naive_hom_exists(a: &Structure, b: &Structure) -> bool {
    let mut closing: Vec<Vec<(usize, Vec<usize>)>> = vec![Vec::new(); a.len()];
    for (s, t) in a.tuples() {
        if let Some(&last) = t.iter().max() {
            closing[last].push((s, t.clone()));
        }
    }
    fn go(v: usize, f: &mut Vec<usize>, a: &Structure, b: &Structure, closing: &[Vec<(usize, Vec<usize>)>]) -> bool {
        if v == a.len() {
            return true;
        }
        for w in 0..b.len() {
            f[v] = w;
            let ok = closing[v].iter().all(|(s, t)| {
                let img: Vec<usize> = t.iter().map(|&u| f[u]).collect();
                b.relation(*s).contains(&img)
            });
            if ok && go(v + 1, f, a, b, closing) {
                return true;
            }
        }
        false
    }
    if a.is_empty() {
        return true;
    }
    let mut f = vec![0; a.len()];
    go(0, &mut f, a, b, &closing)
}

/// Root tuples of every homomorphism from each catalog piece into `a`.
pub fn brute_lift(a: &Structure, cat: &PieceCatalog) -> Vec<BTreeSet<Vec<usize>>> {
    cat.entries()
        .iter()
        .map(|e| {
            let p = &e.piece;
            let mut out = BTreeSet::new();
            for_each_function(p.base.len(), a.len(), |f| {
                if is_map_oracle(&p.base, a, f, MapMode::Hom) {
                    out.insert(p.roots.iter().map(|&r| f[r]).collect());
                }
                true
            });
            out
        })
        .collect()
}

/// Gaifman adjacency recomputed from the tuples.
pub fn adjacency(a: &Structure) -> Vec<BTreeSet<usize>> {
    let mut adj = vec![BTreeSet::new(); a.len()];
    for (_, t) in a.tuples() {
        for &u in t {
            for &w in t {
                if u != w {
                    adj[u].insert(w);
                }
            }
        }
    }
    adj
}

/// Number of components among vertices with `keep[v]`.
pub fn component_count(adj: &[BTreeSet<usize>], keep: &[bool]) -> usize {
    let mut seen = vec![false; adj.len()];
    let mut count = 0;
    for s in 0..adj.len() {
        if !keep[s] || seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if keep[w] && !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    count
}

pub fn connected(a: &Structure) -> bool {
    component_count(&adjacency(a), &vec![true; a.len()]) == 1
}

/// All inclusion-minimal separating vertex sets, from all `2^n` subsets.
pub fn subset_minimal_cuts(a: &Structure) -> BTreeSet<Vec<usize>> {
    let n = a.len();
    assert!(n <= 16);
    let adj = adjacency(a);
    let cuts: Vec<u32> = (0..1u32 << n)
        .filter(|&m| {
            let keep: Vec<bool> = (0..n).map(|v| m >> v & 1 == 0).collect();
            component_count(&adj, &keep) >= 2
        })
        .collect();
    cuts.iter()
        .filter(|&&m| !cuts.iter().any(|&s| s != m && s & !m == 0))
        .map(|&m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
        .collect()
}

/// Backtracking proper colouring of the Gaifman graph.
pub fn colorable(a: &Structure, colors: usize) -> bool {
    let adj = adjacency(a);
    fn go(v: usize, c: &mut Vec<usize>, adj: &[BTreeSet<usize>], k: usize) -> bool {
        if v == adj.len() {
            return true;
        }
        for col in 0..k {
            if adj[v].iter().all(|&w| w >= v || c[w] != col) {
                c[v] = col;
                if go(v + 1, c, adj, k) {
                    return true;
                }
            }
        }
        false
    }
    go(0, &mut vec![0; a.len()], &adj, colors)
}

pub fn has_triangle(a: &Structure) -> bool {
    let adj = adjacency(a);
    (0..a.len()).any(|u| {
        adj[u]
            .iter()
            .any(|&v| v > u && adj[v].iter().any(|&w| w > v && adj[u].contains(&w)))
    })
}

pub fn edge_count(a: &Structure) -> usize {
    adjacency(a).iter().map(BTreeSet::len).sum::<usize>() / 2
}
