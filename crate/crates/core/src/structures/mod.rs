//! Finite relational structures over a fixed signature.
//!
//! Vertices are indexed `0..len()` in declaration order and carry string
//! names. Tuples are stored as index vectors in one ordered set per symbol.
//! Symbols flagged symmetric are kept closed under tuple reversal.

mod codec;
mod generate;
mod iso;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::Arc;

use thiserror::Error;

pub use codec::{
    parse_document, parse_documents, parse_rooted, parse_structure, serialize, serialize_rooted,
    CodecError, Document,
};
pub use generate::{generate, random_structure, Generator};
pub(crate) use generate::for_each_tuple;
pub use iso::{canonical_form, iso_check, CanonicalForm, IsoError, DEFAULT_ISO_BOUND};

pub type Tuple = Vec<usize>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("duplicate symbol {0}")]
    DuplicateSymbol(String),
    #[error("symbol {0} must have positive arity")]
    ZeroArity(String),
    #[error("invalid identifier {0:?}")]
    InvalidName(String),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("unknown symbol {0}")]
    UnknownSymbol(String),
    #[error("symbol {symbol} has arity {expected}, got a tuple of length {found}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("signature mismatch")]
    SignatureMismatch,
    #[error("roots must be pairwise distinct")]
    RootsNotDistinct,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
    /// Undirected semantics: the tuple set is closed under reversal.
    pub symmetric: bool,
}

impl Symbol {
    pub fn new(name: impl Into<String>, arity: usize, symmetric: bool) -> Self {
        Symbol {
            name: name.into(),
            arity,
            symmetric,
        }
    }
}

/// The relational type: an ordered list of symbols with arities.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Signature {
    symbols: Vec<Symbol>,
}

impl Signature {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self, StructureError> {
        let mut seen = BTreeSet::new();
        for s in &symbols {
            if !valid_name(&s.name) || s.name.contains('/') {
                return Err(StructureError::InvalidName(s.name.clone()));
            }
            if s.arity == 0 {
                return Err(StructureError::ZeroArity(s.name.clone()));
            }
            if !seen.insert(s.name.as_str()) {
                return Err(StructureError::DuplicateSymbol(s.name.clone()));
            }
        }
        Ok(Signature { symbols })
    }

    /// One symmetric binary symbol `E`.
    pub fn graph() -> Arc<Self> {
        Arc::new(Signature {
            symbols: vec![Symbol::new("E", 2, true)],
        })
    }

    /// One plain binary symbol `E`.
    pub fn digraph() -> Arc<Self> {
        Arc::new(Signature {
            symbols: vec![Symbol::new("E", 2, false)],
        })
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn symbol(&self, i: usize) -> &Symbol {
        &self.symbols[i]
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }

    pub fn max_arity(&self) -> usize {
        self.symbols.iter().map(|s| s.arity).max().unwrap_or(0)
    }
}

pub(crate) fn valid_name(name: &str) -> bool {
    !name.is_empty() && !name.starts_with('#') && !name.chars().any(char::is_whitespace)
}

/// Lexicographic order where maximal digit runs compare numerically,
/// so `v2 < v10`.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (mut x, mut y) = (a.as_bytes(), b.as_bytes());
    loop {
        match (x.first(), y.first()) {
            (None, None) => return a.cmp(b),
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(c), Some(d)) if c.is_ascii_digit() && d.is_ascii_digit() => {
                let rx = x.iter().take_while(|c| c.is_ascii_digit()).count();
                let ry = y.iter().take_while(|c| c.is_ascii_digit()).count();
                let nx = trim_zeros(&x[..rx]);
                let ny = trim_zeros(&y[..ry]);
                let ord = nx.len().cmp(&ny.len()).then_with(|| nx.cmp(ny));
                if ord != Ordering::Equal {
                    return ord;
                }
                x = &x[rx..];
                y = &y[ry..];
            }
            (Some(c), Some(d)) => {
                if c != d {
                    return c.cmp(d);
                }
                x = &x[1..];
                y = &y[1..];
            }
        }
    }
}

fn trim_zeros(s: &[u8]) -> &[u8] {
    let z = s.iter().take_while(|&&c| c == b'0').count();
    &s[z..]
}

/// A finite relational structure.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Structure {
    signature: Arc<Signature>,
    names: Vec<String>,
    relations: Vec<BTreeSet<Tuple>>,
}

impl Structure {
    pub fn empty(signature: Arc<Signature>) -> Self {
        let relations = vec![BTreeSet::new(); signature.len()];
        Structure {
            signature,
            names: Vec::new(),
            relations,
        }
    }

    /// Structure with the given vertex names and no tuples.
    pub fn with_vertices<S: AsRef<str>>(
        signature: Arc<Signature>,
        names: &[S],
    ) -> Result<Self, StructureError> {
        let mut s = Structure::empty(signature);
        for n in names {
            s.add_vertex(n.as_ref())?;
        }
        Ok(s)
    }

    /// Vertices named `0..n`.
    pub fn numbered(signature: Arc<Signature>, n: usize) -> Self {
        let relations = vec![BTreeSet::new(); signature.len()];
        Structure {
            signature,
            names: (0..n).map(|i| i.to_string()).collect(),
            relations,
        }
    }

    /// Convenience constructor for graphs and digraphs on vertices `0..n`.
    pub fn from_edges(signature: Arc<Signature>, n: usize, edges: &[(usize, usize)]) -> Self {
        let mut s = Structure::numbered(signature, n);
        for &(u, v) in edges {
            s.add_tuple(0, vec![u, v]).expect("edge endpoints in range");
        }
        s
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize, StructureError> {
        if !valid_name(name) {
            return Err(StructureError::InvalidName(name.to_string()));
        }
        if self.names.iter().any(|n| n == name) {
            return Err(StructureError::DuplicateVertex(name.to_string()));
        }
        self.names.push(name.to_string());
        Ok(self.names.len() - 1)
    }

    /// Inserts a tuple (and its reversal for symmetric symbols).
    pub fn add_tuple(&mut self, symbol: usize, tuple: Tuple) -> Result<(), StructureError> {
        let sym = self
            .signature
            .symbols
            .get(symbol)
            .ok_or_else(|| StructureError::UnknownSymbol(format!("#{symbol}")))?;
        if tuple.len() != sym.arity {
            return Err(StructureError::ArityMismatch {
                symbol: sym.name.clone(),
                expected: sym.arity,
                found: tuple.len(),
            });
        }
        if let Some(&bad) = tuple.iter().find(|&&v| v >= self.names.len()) {
            return Err(StructureError::VertexOutOfRange(bad));
        }
        if sym.symmetric {
            let mut rev = tuple.clone();
            rev.reverse();
            self.relations[symbol].insert(rev);
        }
        self.relations[symbol].insert(tuple);
        Ok(())
    }

    pub fn add_tuple_named(&mut self, symbol: &str, names: &[&str]) -> Result<(), StructureError> {
        let si = self
            .signature
            .index_of(symbol)
            .ok_or_else(|| StructureError::UnknownSymbol(symbol.to_string()))?;
        let t = names
            .iter()
            .map(|n| {
                self.index_of(n)
                    .ok_or_else(|| StructureError::UnknownVertex(n.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.add_tuple(si, t)
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.signature
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn indices_of<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>, StructureError> {
        names
            .iter()
            .map(|n| {
                self.index_of(n.as_ref())
                    .ok_or_else(|| StructureError::UnknownVertex(n.as_ref().to_string()))
            })
            .collect()
    }

    pub fn relation(&self, symbol: usize) -> &BTreeSet<Tuple> {
        &self.relations[symbol]
    }

    pub fn relations(&self) -> &[BTreeSet<Tuple>] {
        &self.relations
    }

    pub fn contains(&self, symbol: usize, tuple: &[usize]) -> bool {
        self.relations[symbol].contains(tuple)
    }

    /// All stored tuples with their symbol index.
    pub fn tuples(&self) -> impl Iterator<Item = (usize, &Tuple)> {
        self.relations
            .iter()
            .enumerate()
            .flat_map(|(s, r)| r.iter().map(move |t| (s, t)))
    }

    /// Number of stored tuples, counting both orientations of symmetric ones.
    pub fn tuple_count(&self) -> usize {
        self.relations.iter().map(BTreeSet::len).sum()
    }

    /// Number of tuples counting a symmetric tuple and its reversal once.
    pub fn distinct_tuple_count(&self) -> usize {
        self.relations
            .iter()
            .enumerate()
            .map(|(s, r)| {
                if self.signature.symbols[s].symmetric {
                    r.iter().filter(|t| is_canonical_orientation(t)).count()
                } else {
                    r.len()
                }
            })
            .sum()
    }

    pub fn same_signature(&self, other: &Structure) -> bool {
        Arc::ptr_eq(&self.signature, &other.signature) || self.signature == other.signature
    }

    /// Vertex indices sorted by natural name order.
    pub fn canonical_order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by(|&a, &b| natural_cmp(&self.names[a], &self.names[b]));
        idx
    }

    /// Position of each vertex in the canonical order.
    pub fn canonical_ranks(&self) -> Vec<usize> {
        let mut rank = vec![0; self.len()];
        for (r, v) in self.canonical_order().into_iter().enumerate() {
            rank[v] = r;
        }
        rank
    }

    /// Adjacency lists of the Gaifman graph, sorted by index.
    pub fn gaifman_adjacency(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut adj = vec![BTreeSet::new(); n];
        for (_, t) in self.tuples() {
            for (i, &x) in t.iter().enumerate() {
                for &y in &t[i + 1..] {
                    if x != y {
                        adj[x].insert(y);
                        adj[y].insert(x);
                    }
                }
            }
        }
        adj.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    /// The Gaifman graph (2-section) as a structure over [`Signature::graph`].
    pub fn gaifman(&self) -> Structure {
        let mut g = Structure {
            signature: Signature::graph(),
            names: self.names.clone(),
            relations: vec![BTreeSet::new()],
        };
        for (u, nbrs) in self.gaifman_adjacency().into_iter().enumerate() {
            for v in nbrs {
                g.relations[0].insert(vec![u, v]);
            }
        }
        g
    }

    /// Connected components of the Gaifman graph restricted to `allowed`,
    /// each sorted canonically and ordered by least vertex.
    pub(crate) fn components_within(&self, allowed: &[bool]) -> Vec<Vec<usize>> {
        let adj = self.gaifman_adjacency();
        let rank = self.canonical_ranks();
        let mut seen = vec![false; self.len()];
        let mut comps = Vec::new();
        for start in self.canonical_order() {
            if seen[start] || !allowed[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &adj[u] {
                    if allowed[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_by_key(|&v| rank[v]);
            comps.push(comp);
        }
        comps
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_within(&vec![true; self.len()])
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Every two distinct vertices share a tuple (equivalently: no cut).
    pub fn is_irreducible(&self) -> bool {
        let adj = self.gaifman_adjacency();
        adj.iter().all(|a| a.len() + 1 == self.len())
    }

    /// Induced substructure on `subset`, keeping vertices in the given order.
    pub fn induced(&self, subset: &[usize]) -> Result<Structure, StructureError> {
        let mut pos = vec![usize::MAX; self.len()];
        for (i, &v) in subset.iter().enumerate() {
            if v >= self.len() {
                return Err(StructureError::VertexOutOfRange(v));
            }
            if pos[v] != usize::MAX {
                return Err(StructureError::DuplicateVertex(self.names[v].clone()));
            }
            pos[v] = i;
        }
        let relations = self
            .relations
            .iter()
            .map(|r| {
                r.iter()
                    .filter(|t| t.iter().all(|&v| pos[v] != usize::MAX))
                    .map(|t| t.iter().map(|&v| pos[v]).collect())
                    .collect()
            })
            .collect();
        Ok(Structure {
            signature: self.signature.clone(),
            names: subset.iter().map(|&v| self.names[v].clone()).collect(),
            relations,
        })
    }

    pub fn induced_by_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Structure, StructureError> {
        let idx = self.indices_of(names)?;
        self.induced(&idx)
    }

    /// Disjoint union; vertices are tagged `0.x` (left) and `1.x` (right).
    pub fn disjoint_union(&self, other: &Structure) -> Result<Structure, StructureError> {
        if !self.same_signature(other) {
            return Err(StructureError::SignatureMismatch);
        }
        let off = self.len();
        let names = self
            .names
            .iter()
            .map(|n| format!("0.{n}"))
            .chain(other.names.iter().map(|n| format!("1.{n}")))
            .collect();
        let relations = self
            .relations
            .iter()
            .zip(&other.relations)
            .map(|(a, b)| {
                a.iter()
                    .cloned()
                    .chain(b.iter().map(|t| t.iter().map(|&v| v + off).collect()))
                    .collect()
            })
            .collect();
        Ok(Structure {
            signature: self.signature.clone(),
            names,
            relations,
        })
    }

    /// Copy with vertices renamed; `names` must be distinct and valid.
    pub fn renamed(&self, names: Vec<String>) -> Result<Structure, StructureError> {
        if names.len() != self.len() {
            return Err(StructureError::InvalidParams("name count mismatch".into()));
        }
        let mut seen = BTreeSet::new();
        for n in &names {
            if !valid_name(n) {
                return Err(StructureError::InvalidName(n.clone()));
            }
            if !seen.insert(n.as_str()) {
                return Err(StructureError::DuplicateVertex(n.clone()));
            }
        }
        Ok(Structure {
            signature: self.signature.clone(),
            names,
            relations: self.relations.clone(),
        })
    }

    /// Image of the structure under a vertex permutation: vertex `v` becomes
    /// `perm[v]` in the result, which keeps the names in the new positions.
    pub fn permuted(&self, perm: &[usize]) -> Structure {
        let mut names = vec![String::new(); self.len()];
        for (v, &p) in perm.iter().enumerate() {
            names[p] = self.names[v].clone();
        }
        let relations = self
            .relations
            .iter()
            .map(|r| r.iter().map(|t| t.iter().map(|&v| perm[v]).collect()).collect())
            .collect();
        Structure {
            signature: self.signature.clone(),
            names,
            relations,
        }
    }
}

/// A tuple is in canonical orientation if it is not lexicographically larger
/// than its reversal.
pub(crate) fn is_canonical_orientation(t: &[usize]) -> bool {
    t.iter().le(t.iter().rev())
}

/// A structure with an ordered tuple of distinct root vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootedStructure {
    pub base: Structure,
    pub roots: Vec<usize>,
}

impl RootedStructure {
    pub fn new(base: Structure, roots: Vec<usize>) -> Result<Self, StructureError> {
        if let Some(&bad) = roots.iter().find(|&&r| r >= base.len()) {
            return Err(StructureError::VertexOutOfRange(bad));
        }
        let distinct: BTreeSet<_> = roots.iter().collect();
        if distinct.len() != roots.len() {
            return Err(StructureError::RootsNotDistinct);
        }
        Ok(RootedStructure { base, roots })
    }

    pub fn root_names(&self) -> Vec<&str> {
        self.roots.iter().map(|&r| self.base.name(r)).collect()
    }

    pub fn arity(&self) -> usize {
        self.roots.len()
    }
}
