//! Minimal cuts, pieces, rooted piece isomorphism and the piece catalog of
//! a forbidden family.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::hom::{search_map, HomError, MapMode, SearchConfig};
use crate::structures::{
    parse_documents, serialize_rooted, CodecError, RootedStructure, Signature, Structure, StructureError,
};

pub const DEFAULT_CUT_BOUND: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PieceError {
    #[error("structure is disconnected")]
    Disconnected,
    #[error("structure has {size} vertices, above the cut enumeration bound {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("provenance mismatch: {0}")]
    ProvenanceMismatch(String),
    #[error("piece of a piece is not a piece: {0}")]
    PieceOfPieceViolation(String),
    #[error("family members must share one signature")]
    SignatureMismatch,
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

fn masks(a: &Structure) -> Vec<u64> {
    a.gaifman_adjacency()
        .iter()
        .map(|nb| nb.iter().fold(0u64, |m, &w| m | 1 << w))
        .collect()
}

fn reach(adj: &[u64], allowed: u64, start: usize) -> u64 {
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & allowed & !seen;
        seen |= new;
        frontier |= new;
    }
    seen
}

/// Inclusion-minimal vertex cuts of the Gaifman graph, each listed in
/// canonical vertex order; the list is sorted by size, then canonically.
pub fn minimal_cuts(a: &Structure) -> Result<Vec<Vec<usize>>, PieceError> {
    minimal_cuts_bounded(a, DEFAULT_CUT_BOUND)
}

pub fn minimal_cuts_bounded(a: &Structure, bound: usize) -> Result<Vec<Vec<usize>>, PieceError> {
    let n = a.len();
    let bound = bound.min(63);
    if n > bound {
        return Err(PieceError::TooLarge { size: n, bound });
    }
    if !a.is_connected() {
        return Err(PieceError::Disconnected);
    }
    let adj = masks(a);
    let all: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let mut found: Vec<u64> = Vec::new();
    // subsets by increasing size, so every proper sub-cut is seen first
    for k in 1..n.saturating_sub(1) {
        let mut c: u64 = (1u64 << k) - 1;
        while c <= all {
            if !found.iter().any(|&f| f & !c == 0) {
                let rest = all & !c;
                let start = rest.trailing_zeros() as usize;
                if reach(&adj, rest, start) != rest {
                    found.push(c);
                }
            }
            // Gosper's hack: next subset of the same size
            let low = c & c.wrapping_neg();
            let ripple = c + low;
            c = (((ripple ^ c) >> 2) / low) | ripple;
        }
    }
    let rank = a.canonical_ranks();
    let mut cuts: Vec<Vec<usize>> = found
        .into_iter()
        .map(|m| {
            let mut vs: Vec<usize> = (0..n).filter(|&v| m >> v & 1 == 1).collect();
            vs.sort_by_key(|&v| rank[v]);
            vs
        })
        .collect();
    cuts.sort_by_key(|c| (c.len(), c.iter().map(|&v| rank[v]).collect::<Vec<_>>()));
    Ok(cuts)
}

/// Where a piece came from: family member, cut (by vertex name), component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub member: usize,
    pub cut: Vec<String>,
    pub component: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedPiece {
    pub piece: RootedStructure,
    pub origin: Provenance,
}

/// The piece on `cut` plus `component`, rooted at the cut in canonical order.
fn make_piece(a: &Structure, rank: &[usize], cut: &[usize], component: &[usize]) -> RootedStructure {
    let mut verts: Vec<usize> = cut.iter().chain(component).copied().collect();
    verts.sort_by_key(|&v| rank[v]);
    let base = a.induced(&verts).expect("vertices of a");
    let roots = cut
        .iter()
        .map(|r| verts.iter().position(|v| v == r).expect("cut vertex in piece"))
        .collect();
    RootedStructure { base, roots }
}

fn components_without(a: &Structure, cut: &[usize]) -> Vec<Vec<usize>> {
    let mut allowed = vec![true; a.len()];
    for &c in cut {
        allowed[c] = false;
    }
    a.components_within(&allowed)
}

/// All pieces of a connected structure, by cut then by component.
pub fn pieces(a: &Structure) -> Result<Vec<RootedPiece>, PieceError> {
    pieces_of_member(a, 0)
}

pub fn pieces_of_member(a: &Structure, member: usize) -> Result<Vec<RootedPiece>, PieceError> {
    let rank = a.canonical_ranks();
    let mut out = Vec::new();
    for cut in minimal_cuts(a)? {
        for (ci, comp) in components_without(a, &cut).iter().enumerate() {
            out.push(RootedPiece {
                piece: make_piece(a, &rank, &cut, comp),
                origin: Provenance {
                    member,
                    cut: cut.iter().map(|&v| a.name(v).to_string()).collect(),
                    component: ci,
                },
            });
        }
    }
    Ok(out)
}

/// Isomorphism of the underlying structures sending the root tuple of `p`
/// onto the root tuple of `q` in order.
pub fn piece_iso(
    p: &RootedStructure,
    q: &RootedStructure,
    cfg: &SearchConfig,
) -> Result<Option<Vec<usize>>, HomError> {
    if !p.base.same_signature(&q.base) {
        return Err(HomError::SignatureMismatch);
    }
    if p.roots.len() != q.roots.len()
        || p.base.len() != q.base.len()
        || p.base
            .relations()
            .iter()
            .zip(q.base.relations())
            .any(|(x, y)| x.len() != y.len())
    {
        return Ok(None);
    }
    let partial: Vec<(usize, usize)> = p.roots.iter().copied().zip(q.roots.iter().copied()).collect();
    Ok(search_map(&p.base, &q.base, MapMode::Embed, &partial, cfg)?.map(|m| m.assignment))
}

/// Serialization after renaming roots to `0..k` (in root order) and the
/// remaining vertices to `k..n` (in index order).
fn relabeled_key(p: &RootedStructure) -> (usize, String) {
    let n = p.base.len();
    let mut order: Vec<usize> = p.roots.clone();
    order.extend((0..n).filter(|v| !p.roots.contains(v)));
    let mut perm = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    let base = p.base.permuted(&perm);
    let base = base
        .renamed((0..n).map(|i| i.to_string()).collect())
        .expect("numeric names");
    let roots = (0..p.roots.len()).collect();
    (n, serialize_rooted(&RootedStructure { base, roots }))
}

/// All pieces of all family members, deduplicated up to rooted isomorphism.
///
/// Entries are grouped by the member that first contributed them; within a
/// group they are ordered by (size, relabeled serialization). Extending the
/// family only appends entries.
#[derive(Clone, Debug, Default)]
pub struct PieceCatalog {
    entries: Vec<RootedPiece>,
    members: usize,
    signature: Option<Arc<Signature>>,
}

impl PartialEq for PieceCatalog {
    fn eq(&self, other: &Self) -> bool {
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.piece == b.piece)
    }
}

impl Eq for PieceCatalog {}

impl PieceCatalog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_family(family: &[Structure], cfg: &SearchConfig) -> Result<Self, PieceError> {
        let mut cat = PieceCatalog::new();
        for f in family {
            cat.extend(f, cfg)?;
        }
        Ok(cat)
    }

    /// Adds the pieces of one more family member; returns the new entry indices.
    pub fn extend(&mut self, member: &Structure, cfg: &SearchConfig) -> Result<Vec<usize>, PieceError> {
        match &self.signature {
            Some(sig) if **sig != **member.signature() => return Err(PieceError::SignatureMismatch),
            None => self.signature = Some(member.signature().clone()),
            _ => {}
        }
        let mut fresh: Vec<RootedPiece> = Vec::new();
        for p in pieces_of_member(member, self.members)? {
            if self.find(&p.piece, cfg)?.is_some() {
                continue;
            }
            let mut dup = false;
            for q in &fresh {
                if piece_iso(&p.piece, &q.piece, cfg)?.is_some() {
                    dup = true;
                    break;
                }
            }
            if !dup {
                fresh.push(p);
            }
        }
        fresh.sort_by_cached_key(|p| relabeled_key(&p.piece));
        self.members += 1;
        let start = self.entries.len();
        self.entries.extend(fresh);
        Ok((start..self.entries.len()).collect())
    }

    /// Index of the entry rooted-isomorphic to `piece`.
    pub fn find(&self, piece: &RootedStructure, cfg: &SearchConfig) -> Result<Option<usize>, HomError> {
        for (i, e) in self.entries.iter().enumerate() {
            if e.piece.base.same_signature(&piece.base) && piece_iso(piece, &e.piece, cfg)?.is_some() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn entries(&self) -> &[RootedPiece] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &RootedPiece {
        &self.entries[i]
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of family members folded in so far (the family prefix length).
    pub fn members(&self) -> usize {
        self.members
    }

    pub fn arities(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.piece.arity()).collect()
    }

    /// Catalog file: rooted `.rel` documents with `# piece <i> arity <k>` headers.
    pub fn to_text(&self) -> String {
        let mut out = format!("# catalog members {}\n", self.members);
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                out.push_str("---\n");
            }
            out.push_str(&format!("# piece {i} arity {}\n", e.piece.arity()));
            out.push_str(&format!(
                "# origin member {} component {} cut {}\n",
                e.origin.member,
                e.origin.component,
                e.origin.cut.join(" ")
            ));
            out.push_str(&serialize_rooted(&e.piece));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, CodecError> {
        let bad = |m: String| CodecError::Syntax { line: 1, message: m };
        let docs = parse_documents(text)?;
        let mut entries = Vec::new();
        let mut members = 0;
        let mut signature: Option<Arc<Signature>> = None;
        for (i, d) in docs.into_iter().enumerate() {
            let roots = d.roots.ok_or_else(|| bad(format!("catalog entry {i} has no roots")))?;
            let mut origin = Provenance {
                member: 0,
                cut: Vec::new(),
                component: 0,
            };
            for c in &d.comments {
                let toks: Vec<&str> = c.split_whitespace().collect();
                match toks.as_slice() {
                    ["catalog", "members", m] => members = m.parse().map_err(|_| bad(c.clone()))?,
                    ["piece", idx, "arity", k] => {
                        let idx: usize = idx.parse().map_err(|_| bad(c.clone()))?;
                        let k: usize = k.parse().map_err(|_| bad(c.clone()))?;
                        if idx != i || k != roots.len() {
                            return Err(bad(format!("header {c:?} does not match entry {i}")));
                        }
                    }
                    ["origin", "member", m, "component", ci, "cut", rest @ ..] => {
                        origin.member = m.parse().map_err(|_| bad(c.clone()))?;
                        origin.component = ci.parse().map_err(|_| bad(c.clone()))?;
                        origin.cut = rest.iter().map(|s| s.to_string()).collect();
                    }
                    _ => {}
                }
            }
            match &signature {
                Some(s) if **s != **d.structure.signature() => {
                    return Err(bad("catalog entries use different signatures".into()))
                }
                None => signature = Some(d.structure.signature().clone()),
                _ => {}
            }
            members = members.max(origin.member + 1);
            entries.push(RootedPiece {
                piece: RootedStructure {
                    base: d.structure,
                    roots,
                },
                origin,
            });
        }
        Ok(PieceCatalog {
            entries,
            members,
            signature,
        })
    }
}

pub fn catalog_family(family: &[Structure], cfg: &SearchConfig) -> Result<PieceCatalog, PieceError> {
    PieceCatalog::from_family(family, cfg)
}

/// Checks that `p` is literally a piece of `a` (vertex names shared).
fn check_piece_of(a: &Structure, p: &RootedStructure) -> Result<(), String> {
    let idx = a
        .indices_of(p.base.names())
        .map_err(|e| format!("{e} in the host structure"))?;
    if a.induced(&idx).map_err(|e| e.to_string())?.relations() != p.base.relations() {
        return Err("piece is not an induced substructure".into());
    }
    let cut: BTreeSet<usize> = p.roots.iter().map(|&r| idx[r]).collect();
    let cuts = minimal_cuts(a).map_err(|e| e.to_string())?;
    if !cuts.iter().any(|c| c.iter().copied().collect::<BTreeSet<_>>() == cut) {
        return Err("roots do not form a minimal cut".into());
    }
    let rest: BTreeSet<usize> = idx.iter().copied().filter(|v| !cut.contains(v)).collect();
    let cutv: Vec<usize> = cut.into_iter().collect();
    if !components_without(a, &cutv)
        .iter()
        .any(|c| c.iter().copied().collect::<BTreeSet<_>>() == rest)
    {
        return Err("non-root vertices are not a component".into());
    }
    Ok(())
}

/// Executable form of the piece-of-a-piece lemma. Returns whether the
/// hypothesis `R1 ∩ P2 ⊆ R2` holds; when it does, `p2` must be a piece of
/// `a` up to rooted isomorphism, otherwise [`PieceError::PieceOfPieceViolation`].
pub fn lemma1_check(
    a: &Structure,
    p1: &RootedStructure,
    p2: &RootedStructure,
    cfg: &SearchConfig,
) -> Result<bool, PieceError> {
    check_piece_of(a, p1).map_err(|m| PieceError::ProvenanceMismatch(format!("P1: {m}")))?;
    check_piece_of(&p1.base, p2).map_err(|m| PieceError::ProvenanceMismatch(format!("P2: {m}")))?;
    let r1: BTreeSet<&str> = p1.root_names().into_iter().collect();
    let r2: BTreeSet<&str> = p2.root_names().into_iter().collect();
    let hypothesis = p2
        .base
        .names()
        .iter()
        .filter(|n| r1.contains(n.as_str()))
        .all(|n| r2.contains(n.as_str()));
    if !hypothesis {
        return Ok(false);
    }
    for q in pieces(a)? {
        if q.piece.base.same_signature(&p2.base) && piece_iso(p2, &q.piece, cfg)?.is_some() {
            return Ok(true);
        }
    }
    Err(PieceError::PieceOfPieceViolation(format!(
        "piece rooted at ({}) is not a piece of the host",
        p2.root_names().join(" ")
    )))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyPredicates {
    pub max_min_cut_size: usize,
    pub all_cuts_singleton: bool,
    pub cuts_induce_irreducible: bool,
}

/// Cut-size and cut-irreducibility predicates over all members.
pub fn family_predicates(family: &[Structure]) -> Result<FamilyPredicates, PieceError> {
    let mut out = FamilyPredicates {
        max_min_cut_size: 0,
        all_cuts_singleton: true,
        cuts_induce_irreducible: true,
    };
    for f in family {
        for cut in minimal_cuts(f)? {
            out.max_min_cut_size = out.max_min_cut_size.max(cut.len());
            out.all_cuts_singleton &= cut.len() == 1;
            out.cuts_induce_irreducible &= f.induced(&cut)?.is_irreducible();
        }
    }
    Ok(out)
}
