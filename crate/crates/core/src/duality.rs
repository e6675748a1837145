//! Relational trees, dual pairs, restricted dualities and finite
//! homomorphism universality, all checked on explicit finite scopes.

use std::collections::HashSet;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::hom::{exists_map, in_forb_h, minimize_family, search_map, HomError, MapMode, SearchConfig};
use crate::structures::{
    canonical_form, for_each_tuple, is_canonical_orientation, serialize, IsoError, Signature, Structure,
};

/// Enumeration refuses more candidate tuples than this (2^20 subsets).
pub const MAX_ENUMERATION_SLOTS: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualityError {
    #[error("{slots} candidate tuples on {size} vertices exceed the enumeration cap {cap}")]
    EnumerationTooLarge { size: usize, slots: usize, cap: usize },
    #[error("empty family")]
    EmptyFamily,
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Iso(#[from] IsoError),
}

/// Connected and acyclic incidence graph: one node per vertex and one per
/// tuple (a symmetric pair counts once), tuple nodes joined to their
/// entries. Tuples with a repeated entry disqualify. The empty structure is
/// not a tree.
pub fn is_relational_tree(a: &Structure) -> bool {
    if a.is_empty() {
        return false;
    }
    let mut tuple_nodes = 0;
    let mut edges = 0;
    for (s, t) in a.tuples() {
        let distinct: HashSet<usize> = t.iter().copied().collect();
        if distinct.len() != t.len() {
            return false;
        }
        if a.signature().symbol(s).symmetric && !is_canonical_orientation(t) {
            continue;
        }
        tuple_nodes += 1;
        edges += t.len();
    }
    // a graph is a tree iff it is connected with one edge fewer than nodes
    a.is_connected() && edges + 1 == a.len() + tuple_nodes
}

/// A finite hom-universal structure exists for `Forb_h(family)` iff the
/// minimized family consists of relational trees.
pub fn has_finite_hom_universal(family: &[Structure], cfg: &SearchConfig) -> Result<bool, DualityError> {
    Ok(minimize_family(family, cfg)?.iter().all(is_relational_tree))
}

/// All structures over `sig` on `1..=max_size` vertices up to isomorphism,
/// ordered by size. Tuples with repeated entries only when `loops` is set.
pub fn enumerate_structures(sig: &Arc<Signature>, max_size: usize, loops: bool) -> Result<Vec<Structure>, DualityError> {
    let mut out = Vec::new();
    for n in 1..=max_size {
        let mut slots = Vec::new();
        for (si, sym) in sig.symbols().iter().enumerate() {
            for_each_tuple(n, sym.arity, |t| {
                let distinct = t.iter().collect::<HashSet<_>>().len() == t.len();
                if (loops || distinct) && (!sym.symmetric || is_canonical_orientation(t)) {
                    slots.push((si, t.to_vec()));
                }
            });
        }
        if slots.len() > MAX_ENUMERATION_SLOTS {
            return Err(DualityError::EnumerationTooLarge {
                size: n,
                slots: slots.len(),
                cap: MAX_ENUMERATION_SLOTS,
            });
        }
        let mut seen = HashSet::new();
        for mask in 0u64..1 << slots.len() {
            let mut s = Structure::numbered(sig.clone(), n);
            for (i, (si, t)) in slots.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    s.add_tuple(*si, t.clone()).expect("valid tuple");
                }
            }
            if seen.insert(canonical_form(&s)?) {
                out.push(s);
            }
        }
    }
    Ok(out)
}

/// All forests (simple undirected graphs without cycles) on `1..=max_size`
/// vertices up to isomorphism.
pub fn forests(max_size: usize) -> Result<Vec<Structure>, DualityError> {
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    fn rec(
        n: usize,
        pairs: &[(usize, usize)],
        from: usize,
        parent: &mut Vec<usize>,
        chosen: &mut Vec<(usize, usize)>,
        seen: &mut HashSet<crate::structures::CanonicalForm>,
        out: &mut Vec<Structure>,
    ) -> Result<(), DualityError> {
        let s = Structure::from_edges(Signature::graph(), n, chosen);
        if seen.insert(canonical_form(&s)?) {
            out.push(s);
        }
        for i in from..pairs.len() {
            let (u, v) = pairs[i];
            let (ru, rv) = (find(parent, u), find(parent, v));
            if ru == rv {
                continue;
            }
            let saved = parent.clone();
            parent[ru] = rv;
            chosen.push((u, v));
            rec(n, pairs, i + 1, parent, chosen, seen, out)?;
            chosen.pop();
            *parent = saved;
        }
        Ok(())
    }
    let mut out = Vec::new();
    for n in 1..=max_size {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let mut seen = HashSet::new();
        rec(n, &pairs, 0, &mut (0..n).collect(), &mut Vec::new(), &mut seen, &mut out)?;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureSide {
    /// No family member maps in, yet there is no homomorphism to the dual.
    ForbiddenFreeWithoutHomToDual,
    /// Maps to the dual, yet the family member with this index maps in.
    HomToDualButContains { member: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub structure: Structure,
    pub side: FailureSide,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualVerdict {
    pub checked: usize,
    pub counterexample: Option<Counterexample>,
}

impl DualVerdict {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "pass": self.passed(),
            "checked": self.checked,
            "counterexample": self.counterexample.as_ref().map(|c| serde_json::json!({
                "structure": serialize(&c.structure),
                "side": c.side,
            })),
        })
    }
}

#[derive(Clone, Debug)]
pub enum Scope {
    Exhaustive { max_size: usize, loops: bool },
    Corpus(Vec<Structure>),
}

/// Checks `(∀F: F ↛ G) ⟺ G → D` for every `G` in scope; stops at the
/// first counterexample.
pub fn verify_dual_pair(
    family: &[Structure],
    dual: &Structure,
    scope: &Scope,
    cfg: &SearchConfig,
) -> Result<DualVerdict, DualityError> {
    match scope {
        Scope::Exhaustive { max_size, loops } => {
            let all = enumerate_structures(dual.signature(), *max_size, *loops)?;
            verify_restricted_duality(family, dual, &all, cfg)
        }
        Scope::Corpus(corpus) => verify_restricted_duality(family, dual, corpus, cfg),
    }
}

/// The duality biconditional relativized to `corpus`.
pub fn verify_restricted_duality(
    family: &[Structure],
    dual: &Structure,
    corpus: &[Structure],
    cfg: &SearchConfig,
) -> Result<DualVerdict, DualityError> {
    for (i, g) in corpus.iter().enumerate() {
        let maps_to_dual = exists_map(g, dual, MapMode::Hom, cfg)?;
        let mut member_in = None;
        for (j, f) in family.iter().enumerate() {
            if exists_map(f, g, MapMode::Hom, cfg)? {
                member_in = Some(j);
                break;
            }
        }
        let side = match (member_in, maps_to_dual) {
            (None, false) => Some(FailureSide::ForbiddenFreeWithoutHomToDual),
            (Some(member), true) => Some(FailureSide::HomToDualButContains { member }),
            _ => None,
        };
        if let Some(side) = side {
            return Ok(DualVerdict {
                checked: i + 1,
                counterexample: Some(Counterexample {
                    structure: g.clone(),
                    side,
                }),
            });
        }
    }
    Ok(DualVerdict {
        checked: corpus.len(),
        counterexample: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniversalVerdict {
    pub checked: usize,
    /// Corpus indices with no homomorphism into the target.
    pub failures: Vec<usize>,
    /// Corpus indices whose search ran out of budget.
    pub unknown: Vec<usize>,
}

impl UniversalVerdict {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.unknown.is_empty()
    }
}

/// Whether every corpus member maps homomorphically into `target`.
pub fn hom_universal_check(
    target: &Structure,
    corpus: &[Structure],
    cfg: &SearchConfig,
) -> Result<UniversalVerdict, DualityError> {
    let mut v = UniversalVerdict {
        checked: corpus.len(),
        failures: Vec::new(),
        unknown: Vec::new(),
    };
    for (i, g) in corpus.iter().enumerate() {
        match search_map(g, target, MapMode::Hom, &[], cfg) {
            Ok(Some(_)) => {}
            Ok(None) => v.failures.push(i),
            Err(HomError::BudgetExhausted { .. }) => v.unknown.push(i),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(v)
}

/// Random planar graph on `n` vertices: a stacked triangulation (each new
/// vertex is placed in a random face and joined to its three corners),
/// after which every edge is deleted with probability `delete_p`.
pub fn random_planar<R: Rng>(n: usize, delete_p: f64, rng: &mut R) -> Structure {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    if n >= 2 {
        edges.push((0, 1));
    }
    if n >= 3 {
        edges.push((1, 2));
        edges.push((0, 2));
    }
    let mut faces: Vec<[usize; 3]> = if n >= 3 { vec![[0, 1, 2], [0, 1, 2]] } else { Vec::new() };
    for v in 3..n {
        let fi = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(fi);
        edges.extend([(a, v), (b, v), (c, v)]);
        faces.extend([[a, b, v], [b, c, v], [a, c, v]]);
    }
    edges.retain(|_| !rng.gen_bool(delete_p));
    Structure::from_edges(Signature::graph(), n, &edges)
}

/// The subset of `structures` lying in `Forb_h(family)`.
pub fn forb_fragment(
    family: &[Structure],
    structures: &[Structure],
    cfg: &SearchConfig,
) -> Result<Vec<Structure>, DualityError> {
    let mut out = Vec::new();
    for s in structures {
        if in_forb_h(s, family, cfg)? {
            out.push(s.clone());
        }
    }
    Ok(out)
}
