//! Canonical lifts, shadows, induced lifts, lift maps and bounded witness
//! search for membership in the lifted class.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::hom::{in_forb_h, is_map, HomError, MapMode, SearchConfig, Solver};
use crate::pieces::PieceCatalog;
use crate::structures::{serialize, Document, Structure, StructureError, Tuple};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiftError {
    #[error("lifts refer to different catalogs")]
    CatalogMismatch,
    #[error("catalog has no entry {0}")]
    UnknownEntry(usize),
    #[error("ext tuple for entry {entry} has length {found}, expected {expected}")]
    ArityMismatch { entry: usize, expected: usize, found: usize },
    #[error("ext tuple for entry {entry} mentions vertex {vertex} outside the base")]
    VertexOutOfRange { entry: usize, vertex: usize },
    #[error("base signature differs from the catalog signature")]
    SignatureMismatch,
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// A base structure with one extra relation per catalog entry.
#[derive(Clone, Debug)]
pub struct Lift {
    base: Structure,
    catalog: Arc<PieceCatalog>,
    ext: Vec<BTreeSet<Tuple>>,
}

impl PartialEq for Lift {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.ext == other.ext && same_catalog(&self.catalog, &other.catalog)
    }
}

impl Eq for Lift {}

fn same_catalog(a: &Arc<PieceCatalog>, b: &Arc<PieceCatalog>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Lift {
    /// The lift of `base` with every ext relation empty.
    pub fn bare(base: Structure, catalog: Arc<PieceCatalog>) -> Self {
        let ext = vec![BTreeSet::new(); catalog.len()];
        Lift { base, catalog, ext }
    }

    pub fn new(
        base: Structure,
        catalog: Arc<PieceCatalog>,
        ext: impl IntoIterator<Item = (usize, Tuple)>,
    ) -> Result<Self, LiftError> {
        let mut lift = Lift::bare(base, catalog);
        for (i, t) in ext {
            lift.add_ext(i, t)?;
        }
        Ok(lift)
    }

    /// Builds a lift from a parsed document; `doc.catalog` is not resolved here.
    pub fn from_document(doc: Document, catalog: Arc<PieceCatalog>) -> Result<Self, LiftError> {
        Lift::new(doc.structure, catalog, doc.ext)
    }

    pub fn add_ext(&mut self, entry: usize, tuple: Tuple) -> Result<(), LiftError> {
        let e = self.catalog.entries().get(entry).ok_or(LiftError::UnknownEntry(entry))?;
        if tuple.len() != e.piece.arity() {
            return Err(LiftError::ArityMismatch {
                entry,
                expected: e.piece.arity(),
                found: tuple.len(),
            });
        }
        if let Some(&vertex) = tuple.iter().find(|&&v| v >= self.base.len()) {
            return Err(LiftError::VertexOutOfRange { entry, vertex });
        }
        self.ext[entry].insert(tuple);
        Ok(())
    }

    pub fn base(&self) -> &Structure {
        &self.base
    }

    pub fn catalog(&self) -> &Arc<PieceCatalog> {
        &self.catalog
    }

    pub fn ext(&self, entry: usize) -> &BTreeSet<Tuple> {
        &self.ext[entry]
    }

    pub fn exts(&self) -> &[BTreeSet<Tuple>] {
        &self.ext
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn ext_count(&self) -> usize {
        self.ext.iter().map(BTreeSet::len).sum()
    }

    /// Same tuples and ext relations, vertex names ignored.
    pub fn same_up_to_names(&self, other: &Lift) -> bool {
        self.base.len() == other.base.len()
            && self.base.same_signature(&other.base)
            && self.base.relations() == other.base.relations()
            && self.ext == other.ext
            && same_catalog(&self.catalog, &other.catalog)
    }

    /// Lift file text: `catalog <path>` header, base, then `ext` lines.
    pub fn to_text(&self, catalog_path: &str) -> String {
        let mut out = format!("catalog {catalog_path}\n");
        out.push_str(&serialize(&self.base));
        for (i, ts) in self.ext.iter().enumerate() {
            for t in ts {
                out.push_str(&format!("ext {i}"));
                for &v in t {
                    out.push(' ');
                    out.push_str(self.base.name(v));
                }
                out.push('\n');
            }
        }
        out
    }
}

/// Root tuples of every homomorphic image of `piece` in `a`.
fn root_images(
    piece: &crate::structures::RootedStructure,
    a: &Structure,
    cfg: &SearchConfig,
) -> Result<BTreeSet<Tuple>, HomError> {
    let mut solver = Solver::new(&piece.base, a, MapMode::Hom, cfg)?;
    let mut out = BTreeSet::new();
    let mut partial = Vec::with_capacity(piece.roots.len());
    extend_roots(&mut solver, &piece.roots, &mut partial, &mut out)?;
    Ok(out)
}

/// Assigns roots one at a time, pruning with arc consistency, and confirms
/// complete placements with a search.
fn extend_roots(
    solver: &mut Solver<'_>,
    roots: &[usize],
    partial: &mut Vec<(usize, usize)>,
    out: &mut BTreeSet<Tuple>,
) -> Result<(), HomError> {
    let Some(domains) = solver.initial_domains(partial)? else {
        return Ok(());
    };
    let depth = partial.len();
    if depth == roots.len() {
        let mut found = false;
        solver.run(partial, &mut |_| {
            found = true;
            false
        })?;
        if found {
            out.insert(partial.iter().map(|&(_, y)| y).collect());
        }
        return Ok(());
    }
    let r = roots[depth];
    for y in domains[r].iter() {
        partial.push((r, y));
        extend_roots(solver, roots, partial, out)?;
        partial.pop();
    }
    Ok(())
}

/// `L(a)`: entry `i` holds `v` iff some homomorphism of piece `i` into `a`
/// sends its root tuple to `v`.
pub fn canonical_lift(a: &Structure, catalog: &Arc<PieceCatalog>, cfg: &SearchConfig) -> Result<Lift, LiftError> {
    let mut lift = Lift::bare(a.clone(), catalog.clone());
    for (i, e) in catalog.entries().iter().enumerate() {
        if !e.piece.base.same_signature(a) {
            return Err(LiftError::SignatureMismatch);
        }
        lift.ext[i] = root_images(&e.piece, a, cfg)?;
    }
    Ok(lift)
}

/// The forgetful map: drops the ext relations.
pub fn shadow(x: &Lift) -> Structure {
    x.base.clone()
}

/// Restriction of a lift to `subset` (kept in the given order).
pub fn induced_lift(x: &Lift, subset: &[usize]) -> Result<Lift, LiftError> {
    let base = x.base.induced(subset)?;
    let mut pos = vec![usize::MAX; x.base.len()];
    for (i, &v) in subset.iter().enumerate() {
        pos[v] = i;
    }
    let ext = x
        .ext
        .iter()
        .map(|ts| {
            ts.iter()
                .filter(|t| t.iter().all(|&v| pos[v] != usize::MAX))
                .map(|t| t.iter().map(|&v| pos[v]).collect())
                .collect()
        })
        .collect();
    Ok(Lift {
        base,
        catalog: x.catalog.clone(),
        ext,
    })
}

pub fn induced_lift_by_names<S: AsRef<str>>(x: &Lift, names: &[S]) -> Result<Lift, LiftError> {
    let idx = x.base.indices_of(names)?;
    induced_lift(x, &idx)
}

/// Whether `f` is a map of the given mode on bases that also preserves
/// (and for embeddings reflects) every ext relation.
pub fn lift_map_check(f: &[usize], x: &Lift, y: &Lift, mode: MapMode) -> Result<bool, LiftError> {
    if !same_catalog(&x.catalog, &y.catalog) {
        return Err(LiftError::CatalogMismatch);
    }
    if !x.base.same_signature(&y.base) {
        return Err(LiftError::Hom(HomError::SignatureMismatch));
    }
    if !is_map(&x.base, &y.base, f, mode) {
        return Ok(false);
    }
    for (xs, ys) in x.ext.iter().zip(&y.ext) {
        let preserved = xs
            .iter()
            .all(|t| ys.contains(&t.iter().map(|&v| f[v]).collect::<Vec<_>>()));
        if !preserved {
            return Ok(false);
        }
    }
    if mode == MapMode::Embed {
        let mut inverse = vec![usize::MAX; y.base.len()];
        for (v, &w) in f.iter().enumerate() {
            inverse[w] = v;
        }
        for (xs, ys) in x.ext.iter().zip(&y.ext) {
            for u in ys {
                if u.iter().all(|&w| inverse[w] != usize::MAX) {
                    let pre: Vec<usize> = u.iter().map(|&w| inverse[w]).collect();
                    if !xs.contains(&pre) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MembershipVerdict {
    /// `placement[v]` is the witness vertex carrying lift vertex `v`.
    Member {
        #[serde(skip)]
        witness: Structure,
        placement: Vec<usize>,
    },
    NonMemberUpTo { bound: usize },
    Unknown { reason: String },
}

impl MembershipVerdict {
    pub fn is_member(&self) -> bool {
        matches!(self, MembershipVerdict::Member { .. })
    }
}

/// Checks that `witness` is in `Forb_h(family)` and that the lift of the
/// witness restricted to `placement` is exactly `x`.
pub fn verify_witness(
    x: &Lift,
    witness: &Structure,
    placement: &[usize],
    family: &[Structure],
    cfg: &SearchConfig,
) -> Result<bool, LiftError> {
    if placement.len() != x.len() || !in_forb_h(witness, family, cfg)? {
        return Ok(false);
    }
    let mut seen = BTreeSet::new();
    if placement.iter().any(|&w| w >= witness.len() || !seen.insert(w)) {
        return Ok(false);
    }
    let lw = canonical_lift(witness, &x.catalog, cfg)?;
    Ok(induced_lift(&lw, placement)?.same_up_to_names(x))
}

/// Bounded search for a witness `A ∈ Forb_h(family)`, `|A| ≤ size_bound`,
/// whose canonical lift contains `x` as an induced sublift.
///
/// Witnesses are built as `x.base` plus extra vertices and extra tuples
/// touching them. Adding tuples only grows the lift and only adds
/// homomorphisms, so a branch is cut as soon as the shadow leaves
/// `Forb_h(family)` or the lift on `x`'s vertices exceeds `x`.
pub fn membership_in_l(
    x: &Lift,
    family: &[Structure],
    size_bound: usize,
    cfg: &SearchConfig,
) -> Result<MembershipVerdict, LiftError> {
    let n = x.len();
    if n > size_bound {
        return Ok(MembershipVerdict::NonMemberUpTo { bound: size_bound });
    }
    let identity: Vec<usize> = (0..n).collect();
    let fits = |a: &Structure| -> Result<Option<bool>, LiftError> {
        // Some(true): exact; Some(false): contained but short; None: overshoot
        if !in_forb_h(a, family, cfg)? {
            return Ok(None);
        }
        let la = canonical_lift(a, &x.catalog, cfg)?;
        let restricted = induced_lift(&la, &identity)?;
        let mut exact = true;
        for (have, want) in restricted.ext.iter().zip(&x.ext) {
            if !have.is_subset(want) {
                return Ok(None);
            }
            exact &= have == want;
        }
        Ok(Some(exact))
    };
    match fits(&x.base) {
        Ok(None) => return Ok(MembershipVerdict::NonMemberUpTo { bound: size_bound }),
        Ok(Some(true)) => {
            return Ok(MembershipVerdict::Member {
                witness: x.base.clone(),
                placement: identity,
            })
        }
        Ok(Some(false)) => {}
        Err(LiftError::Hom(HomError::BudgetExhausted { nodes })) => {
            return Ok(MembershipVerdict::Unknown {
                reason: format!("search budget exhausted after {nodes} nodes"),
            })
        }
        Err(e) => return Err(e),
    }
    let mut steps: u64 = 0;
    for extra in 1..=size_bound - n {
        let mut a = x.base.clone();
        for j in 0..extra {
            let name = fresh_name(&a, j);
            a.add_vertex(&name)?;
        }
        let candidates = extension_tuples(&a, n);
        let result = extend_witness(&mut a, &candidates, 0, &fits, &mut steps, cfg.node_budget);
        match result {
            Ok(true) => {
                return Ok(MembershipVerdict::Member {
                    witness: a,
                    placement: identity,
                })
            }
            Ok(false) => {}
            Err(LiftError::Hom(HomError::BudgetExhausted { nodes })) => {
                return Ok(MembershipVerdict::Unknown {
                    reason: format!("search budget exhausted after {nodes} nodes"),
                })
            }
            Err(e) => return Err(e),
        }
    }
    Ok(MembershipVerdict::NonMemberUpTo { bound: size_bound })
}

fn fresh_name(a: &Structure, j: usize) -> String {
    let mut k = j;
    loop {
        let name = format!("w{k}");
        if a.index_of(&name).is_none() {
            return name;
        }
        k += 1;
    }
}

/// Tuples touching at least one vertex with index `>= first_extra`
/// (one orientation for symmetric symbols).
fn extension_tuples(a: &Structure, first_extra: usize) -> Vec<(usize, Tuple)> {
    let mut out = Vec::new();
    for (si, sym) in a.signature().symbols().iter().enumerate() {
        crate::structures::for_each_tuple(a.len(), sym.arity, |t| {
            if t.iter().any(|&v| v >= first_extra)
                && (!sym.symmetric || crate::structures::is_canonical_orientation(t))
            {
                out.push((si, t.to_vec()));
            }
        });
    }
    out
}

fn extend_witness(
    a: &mut Structure,
    candidates: &[(usize, Tuple)],
    from: usize,
    fits: &dyn Fn(&Structure) -> Result<Option<bool>, LiftError>,
    steps: &mut u64,
    budget: u64,
) -> Result<bool, LiftError> {
    *steps += 1;
    if *steps > budget {
        return Err(LiftError::Hom(HomError::BudgetExhausted { nodes: *steps - 1 }));
    }
    match fits(a)? {
        None => return Ok(false),
        Some(true) => return Ok(true),
        Some(false) => {}
    }
    for i in from..candidates.len() {
        let (s, t) = &candidates[i];
        let mut next = a.clone();
        next.add_tuple(*s, t.clone())?;
        if extend_witness(&mut next, candidates, i + 1, fits, steps, budget)? {
            *a = next;
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::{for_each_map, search_map};
    use crate::pieces::catalog_family;
    use crate::structures::{generate, parse_structure, random_structure, Generator, Signature};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    fn c5_catalog() -> Arc<PieceCatalog> {
        let c5 = generate(&Generator::Cycle { n: 5 }, 0).unwrap();
        Arc::new(catalog_family(&[c5], &cfg()).unwrap())
    }

    fn k2() -> Structure {
        parse_structure("signature E/2 sym\nvertices x y\nE x y\n").unwrap()
    }

    /// Reference lift: every total vertex map piece -> a, filtered to homs.
    fn brute_lift(a: &Structure, cat: &PieceCatalog) -> Vec<BTreeSet<Tuple>> {
        cat.entries()
            .iter()
            .map(|e| {
                let p = &e.piece.base;
                let mut out = BTreeSet::new();
                let total = a.len().pow(p.len() as u32);
                for code in 0..total {
                    let mut c = code;
                    let f: Vec<usize> = (0..p.len())
                        .map(|_| {
                            let v = c % a.len();
                            c /= a.len();
                            v
                        })
                        .collect();
                    if is_map(p, a, &f, MapMode::Hom) {
                        out.insert(e.piece.roots.iter().map(|&r| f[r]).collect());
                    }
                }
                out
            })
            .collect()
    }

    #[test]
    fn k2_lift_over_c5_catalog() {
        let cat = c5_catalog();
        let l = canonical_lift(&k2(), &cat, &cfg()).unwrap();
        let pairs = |v: &[[usize; 2]]| v.iter().map(|p| p.to_vec()).collect::<BTreeSet<_>>();
        assert_eq!(l.ext(0), &pairs(&[[0, 0], [1, 1]]));
        assert_eq!(l.ext(1), &pairs(&[[0, 1], [1, 0]]));
        assert_eq!(l.exts(), brute_lift(&k2(), &cat).as_slice());
    }

    #[test]
    fn empty_catalog_and_tupleless_base() {
        let k3 = generate(&Generator::Clique { n: 3 }, 0).unwrap();
        let cat = Arc::new(catalog_family(&[k3], &cfg()).unwrap());
        let l = canonical_lift(&k2(), &cat, &cfg()).unwrap();
        assert!(l.exts().is_empty());

        let cat = c5_catalog();
        let edgeless = Structure::numbered(Signature::graph(), 3);
        let l = canonical_lift(&edgeless, &cat, &cfg()).unwrap();
        assert_eq!(l.ext_count(), 0);
        assert_eq!(l.exts(), brute_lift(&edgeless, &cat).as_slice());
    }

    #[test]
    fn lift_matches_brute_force_on_random_structures() {
        let sig = Arc::new(
            Signature::new(vec![
                crate::structures::Symbol::new("E", 2, false),
                crate::structures::Symbol::new("T", 3, false),
            ])
            .unwrap(),
        );
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let fam: Vec<Structure> = (0..2)
            .map(|_| loop {
                let s = random_structure(&sig, 4, 0.15, &mut rng);
                if s.is_connected() && !s.is_irreducible() {
                    break s;
                }
            })
            .collect();
        let cat = Arc::new(catalog_family(&fam, &cfg()).unwrap());
        assert!(!cat.is_empty());
        for _ in 0..30 {
            let a = random_structure(&sig, 4, 0.2, &mut rng);
            let l = canonical_lift(&a, &cat, &cfg()).unwrap();
            assert_eq!(l.exts(), brute_lift(&a, &cat).as_slice());
        }
    }

    #[test]
    fn shadow_and_induced() {
        let cat = c5_catalog();
        let c5 = generate(&Generator::Cycle { n: 5 }, 0).unwrap();
        let l = canonical_lift(&c5, &cat, &cfg()).unwrap();
        assert_eq!(shadow(&l), c5);
        assert_eq!(induced_lift(&l, &[0, 1, 2, 3, 4]).unwrap(), l);
        let empty = Lift::bare(Structure::empty(Signature::graph()), cat.clone());
        assert!(shadow(&empty).is_empty());

        let lk = canonical_lift(&k2(), &cat, &cfg()).unwrap();
        let x = induced_lift_by_names(&lk, &["x"]).unwrap();
        assert_eq!(x.ext(0), &[vec![0, 0]].into_iter().collect());
        assert!(x.ext(1).is_empty());

        let hand = Lift::new(k2(), cat.clone(), [(1, vec![0, 0])]).unwrap();
        assert_eq!(shadow(&hand), k2());
        // every ext tuple of `hand` needs both endpoints except (x, x)
        assert!(induced_lift(&lk, &[1]).unwrap().ext(1).is_empty());
    }

    #[test]
    fn ext_validation() {
        let cat = c5_catalog();
        assert!(matches!(
            Lift::new(k2(), cat.clone(), [(0, vec![0])]),
            Err(LiftError::ArityMismatch { .. })
        ));
        assert!(matches!(Lift::new(k2(), cat.clone(), [(7, vec![0, 0])]), Err(LiftError::UnknownEntry(7))));
        assert!(matches!(
            Lift::new(k2(), cat, [(0, vec![0, 5])]),
            Err(LiftError::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn lift_maps() {
        let cat = c5_catalog();
        let lk = canonical_lift(&k2(), &cat, &cfg()).unwrap();
        assert!(lift_map_check(&[0, 1], &lk, &lk, MapMode::Hom).unwrap());
        assert!(lift_map_check(&[0, 1], &lk, &lk, MapMode::Embed).unwrap());
        // the identity on bases into a lift that lacks an ext tuple
        let mut thin = lk.clone();
        thin.ext[1].remove(&vec![0, 1]);
        assert!(!lift_map_check(&[0, 1], &lk, &thin, MapMode::Hom).unwrap());
        assert!(!lift_map_check(&[0, 1], &thin, &lk, MapMode::Embed).unwrap());
        assert!(lift_map_check(&[0, 1], &thin, &lk, MapMode::Hom).unwrap());

        let other = Arc::new(PieceCatalog::new());
        let lo = canonical_lift(&k2(), &other, &cfg()).unwrap();
        assert_eq!(lift_map_check(&[0, 1], &lk, &lo, MapMode::Hom), Err(LiftError::CatalogMismatch));
    }

    #[test]
    fn homs_lift_to_lift_homs() {
        let cat = c5_catalog();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut checked = 0;
        while checked < 40 {
            let a = generate(&Generator::Random { n: rng.gen_range(2..6), p: 0.5, directed: false }, rng.gen())
                .unwrap();
            let b = generate(&Generator::Random { n: rng.gen_range(2..6), p: 0.6, directed: false }, rng.gen())
                .unwrap();
            let Some(f) = search_map(&a, &b, MapMode::Hom, &[], &SearchConfig { seed: Some(rng.gen()), ..cfg() })
                .unwrap()
            else {
                continue;
            };
            checked += 1;
            let la = canonical_lift(&a, &cat, &cfg()).unwrap();
            let lb = canonical_lift(&b, &cat, &cfg()).unwrap();
            assert!(lift_map_check(&f.assignment, &la, &lb, MapMode::Hom).unwrap());
        }
    }

    #[test]
    fn induced_substructures_have_smaller_lifts() {
        let cat = c5_catalog();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..30 {
            let b = generate(&Generator::Random { n: 6, p: 0.4, directed: false }, rng.gen()).unwrap();
            let keep: Vec<usize> = (0..6).filter(|_| rng.gen_bool(0.6)).collect();
            let a = b.induced(&keep).unwrap();
            let la = canonical_lift(&a, &cat, &cfg()).unwrap();
            let lb = induced_lift(&canonical_lift(&b, &cat, &cfg()).unwrap(), &keep).unwrap();
            for (x, y) in la.exts().iter().zip(lb.exts()) {
                assert!(x.is_subset(y));
            }
        }
    }

    #[test]
    fn membership_examples() {
        let c5 = generate(&Generator::Cycle { n: 5 }, 0).unwrap();
        let fam = vec![c5];
        let cat = c5_catalog();
        let p3 = generate(&Generator::Path { n: 3 }, 0).unwrap();
        let lp = canonical_lift(&p3, &cat, &cfg()).unwrap();
        let v = membership_in_l(&lp, &fam, 5, &cfg()).unwrap();
        assert_eq!(
            v,
            MembershipVerdict::Member {
                witness: p3.clone(),
                placement: vec![0, 1, 2]
            }
        );

        // forbidding edges rules out any lift with a base edge
        let edge = vec![k2()];
        let kcat = Arc::new(catalog_family(&edge, &cfg()).unwrap());
        let x = Lift::bare(k2(), kcat);
        assert_eq!(
            membership_in_l(&x, &edge, 6, &cfg()).unwrap(),
            MembershipVerdict::NonMemberUpTo { bound: 6 }
        );

        // a closed 3-walk at v needs a triangle or a loop, and C5 maps to both
        let single = Structure::numbered(Signature::graph(), 1);
        let x = Lift::new(single, cat.clone(), [(1, vec![0, 0])]).unwrap();
        assert_eq!(
            membership_in_l(&x, &fam, 4, &cfg()).unwrap(),
            MembershipVerdict::NonMemberUpTo { bound: 4 }
        );
    }

    #[test]
    fn membership_needs_extra_vertices() {
        // a single vertex with (v, v) on the 2-edge entry: witnessed by an edge
        let fam = vec![generate(&Generator::Cycle { n: 5 }, 0).unwrap()];
        let cat = c5_catalog();
        let x = Lift::new(Structure::numbered(Signature::graph(), 1), cat.clone(), [(0, vec![0, 0])]).unwrap();
        let v = membership_in_l(&x, &fam, 3, &cfg()).unwrap();
        let MembershipVerdict::Member { witness, placement } = v else {
            panic!("expected a witness, got {v:?}");
        };
        assert_eq!(witness.len(), 2);
        assert!(verify_witness(&x, &witness, &placement, &fam, &cfg()).unwrap());
    }

    #[test]
    fn heredity_of_lifted_class() {
        let fam = vec![generate(&Generator::Cycle { n: 5 }, 0).unwrap()];
        let cat = c5_catalog();
        let p4 = generate(&Generator::Path { n: 4 }, 0).unwrap();
        let l = canonical_lift(&p4, &cat, &cfg()).unwrap();
        for keep in [vec![0, 1], vec![1, 3], vec![0, 2, 3]] {
            let sub = induced_lift(&l, &keep).unwrap();
            assert!(verify_witness(&sub, &p4, &keep, &fam, &cfg()).unwrap());
        }
    }

    #[test]
    fn lift_file_round_trip() {
        let cat = c5_catalog();
        let l = canonical_lift(&k2(), &cat, &cfg()).unwrap();
        let text = l.to_text("c5.cat");
        assert!(text.starts_with("catalog c5.cat\n"));
        let doc = crate::structures::parse_document(&text).unwrap();
        assert_eq!(doc.catalog.as_deref(), Some("c5.cat"));
        assert_eq!(Lift::from_document(doc, cat).unwrap(), l);
    }

    #[test]
    fn seeded_search_does_not_change_lifts() {
        let cat = c5_catalog();
        let g = generate(&Generator::Petersen, 0).unwrap();
        let a = canonical_lift(&g, &cat, &cfg()).unwrap();
        let b = canonical_lift(&g, &cat, &SearchConfig { seed: Some(4), ..cfg() }).unwrap();
        assert_eq!(a, b);
        // Petersen has girth 5: every pair at distance <= 2 is a 2-walk end pair
        let mut count = 0;
        for_each_map(&cat.entry(0).piece.base, &g, MapMode::Hom, &[], &cfg(), |_| {
            count += 1;
            true
        })
        .unwrap();
        assert_eq!(count, 10 * 3 * 3);
        assert_eq!(a.ext(0).len(), 10 + 30 + 30);
    }
}
