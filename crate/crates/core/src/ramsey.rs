//! The Ramsey set-system structure, the indicator construction and the
//! counterexample gadget for families with a minimal cut of size above one.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::hom::{core_of, is_map, minimize_family, search_map, HomError, MapMode, SearchConfig};
use crate::pieces::{minimal_cuts, pieces, PieceError};
use crate::structures::{iso_check, IsoError, RootedStructure, Signature, Structure, StructureError, Symbol};

/// Exhaustive property-3 checks refuse more than this many colorings.
pub const DEFAULT_COLORING_CAP: u128 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RamseyError {
    #[error("infeasible parameters: {0}")]
    InfeasibleParams(String),
    #[error("{colorings} colorings exceed the exhaustive cap {cap}")]
    CapExceeded { colorings: u128, cap: u128 },
    #[error("pattern has {found} roots, the structure has arity {expected}")]
    RootArityMismatch { expected: usize, found: usize },
    #[error("the family member has no minimal cut")]
    NoCuts,
    #[error("not a minimal cut of the member")]
    NotAMinimalCut,
    #[error("gadget inapplicable: cuts of size 1 admit a monadic lift")]
    GadgetInapplicable,
    #[error("cut leaves {0} components; only the two-component case is implemented")]
    TooManyComponents(usize),
    #[error("member is not in the minimized family")]
    NotMinimal,
    #[error("no N up to {0} passed the sampled check")]
    SearchFailed(usize),
    #[error(transparent)]
    Pieces(#[from] PieceError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Iso(#[from] IsoError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// How the set system of the construction is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Reading {
    /// Points are (2n-1)-subsets of `[N]`, members are the 2n-subsets, so
    /// every member set has 2n points.
    #[default]
    Corrected,
    /// Points are (n-1)-subsets and member sets have n points, which cannot
    /// fill tuples of arity 2n; kept only to report that.
    Literal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamseyParams {
    pub n: usize,
    pub k: usize,
    pub big_n: usize,
    pub reading: Reading,
}

/// One relation `R` of arity `2n`; `levels[v]` is the level (1-based) of `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamseyStructure {
    pub base: Structure,
    pub levels: Vec<usize>,
    pub params: RamseyParams,
}

impl RamseyStructure {
    /// Wraps an arbitrary structure with one `2n`-ary symbol.
    pub fn from_parts(base: Structure, levels: Vec<usize>, params: RamseyParams) -> Result<Self, RamseyError> {
        let sig = base.signature();
        if sig.len() != 1 || sig.symbol(0).arity != 2 * params.n || levels.len() != base.len() {
            return Err(RamseyError::InfeasibleParams("expected one relation of arity 2n and a level per vertex".into()));
        }
        Ok(RamseyStructure { base, levels, params })
    }

    pub fn arity(&self) -> usize {
        2 * self.params.n
    }

    pub fn tuples(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.base.relation(0).iter()
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] != i + n - k) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// The structure `S(n, k, N)`. Points of the set system are ordered
/// lexicographically; each member set, listed in increasing order
/// `x_1 < … < x_2n`, yields the tuple `((x_1,1),(x_2,1),(x_3,2),(x_4,2),…)`.
/// Vertices in no tuple are dropped. `k` only matters for verification.
pub fn build_ramsey_structure(n: usize, k: usize, big_n: usize, reading: Reading) -> Result<RamseyStructure, RamseyError> {
    if n == 0 {
        return Err(RamseyError::InfeasibleParams("n must be at least 1".into()));
    }
    if reading == Reading::Literal {
        return Err(RamseyError::InfeasibleParams(format!(
            "literal reading: member sets have {n} points but tuples have arity {}",
            2 * n
        )));
    }
    if big_n < 2 * n {
        return Err(RamseyError::InfeasibleParams(format!("N = {big_n} < 2n = {}: no member sets", 2 * n)));
    }
    let sig = Arc::new(Signature::new(vec![Symbol::new("R", 2 * n, false)])?);
    let mut base = Structure::empty(sig);
    let mut levels = Vec::new();
    let mut index = std::collections::HashMap::new();
    for y in combinations(big_n, 2 * n) {
        // members: y minus one element; lexicographic order on sorted lists
        let mut members: Vec<Vec<usize>> = (0..2 * n)
            .map(|skip| y.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &e)| e).collect())
            .collect();
        members.sort();
        let mut tuple = Vec::with_capacity(2 * n);
        for (pos, m) in members.into_iter().enumerate() {
            let level = pos / 2 + 1;
            let key = (m, level);
            let v = match index.get(&key) {
                Some(&v) => v,
                None => {
                    let name = format!(
                        "{}.{level}",
                        key.0.iter().map(|e| (e + 1).to_string()).collect::<Vec<_>>().join("_")
                    );
                    let v = base.add_vertex(&name)?;
                    levels.push(level);
                    index.insert(key, v);
                    v
                }
            };
            tuple.push(v);
        }
        base.add_tuple(0, tuple)?;
    }
    Ok(RamseyStructure {
        base,
        levels,
        params: RamseyParams { n, k, big_n, reading },
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    Exhaustive { cap: u128 },
    Sampled { trials: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamseyReport {
    /// Levels in order, two per level, no repeated vertex.
    pub property_1: bool,
    /// Distinct tuples share at most one vertex.
    pub property_2: bool,
    /// Every coloring with 2^k colors has a tuple with equal colors within
    /// every level pair.
    pub property_3: bool,
    /// No isolated vertices.
    pub property_4: bool,
    pub colorings_checked: u64,
    /// A coloring (color per vertex) defeating property 3.
    pub counterexample: Option<Vec<usize>>,
    pub exhaustive: bool,
}

impl RamseyReport {
    pub fn all_pass(&self) -> bool {
        self.property_1 && self.property_2 && self.property_3 && self.property_4
    }
}

fn good_tuple(t: &[usize], color: &[usize]) -> bool {
    t.chunks(2).all(|p| color[p[0]] == color[p[1]])
}

pub fn verify_ramsey_properties(s: &RamseyStructure, mode: &VerifyMode) -> Result<RamseyReport, RamseyError> {
    let n = s.params.n;
    let tuples: Vec<&Vec<usize>> = s.tuples().collect();
    let property_1 = tuples.iter().all(|t| {
        t.iter().collect::<BTreeSet<_>>().len() == t.len()
            && t.iter().enumerate().all(|(p, &v)| s.levels[v] == p / 2 + 1)
    }) && tuples.iter().all(|t| t.len() == 2 * n);
    let mut property_2 = true;
    for (i, a) in tuples.iter().enumerate() {
        let sa: BTreeSet<_> = a.iter().collect();
        for b in &tuples[i + 1..] {
            if b.iter().filter(|v| sa.contains(v)).count() > 1 {
                property_2 = false;
            }
        }
    }
    let mut touched = vec![false; s.base.len()];
    for t in &tuples {
        for &v in t.iter() {
            touched[v] = true;
        }
    }
    let property_4 = touched.iter().all(|&b| b);

    let colors = 1usize << s.params.k;
    let size = s.base.len();
    let mut report = RamseyReport {
        property_1,
        property_2,
        property_3: true,
        property_4,
        colorings_checked: 0,
        counterexample: None,
        exhaustive: matches!(mode, VerifyMode::Exhaustive { .. }),
    };
    match *mode {
        VerifyMode::Exhaustive { cap } => {
            let total = (colors as f64).powi(size as i32);
            if total > cap as f64 {
                return Err(RamseyError::CapExceeded {
                    colorings: if total >= u128::MAX as f64 { u128::MAX } else { total as u128 },
                    cap,
                });
            }
            // tuples whose last vertex (in index order) is v are checked once v is colored
            let mut closing: Vec<Vec<usize>> = vec![Vec::new(); size];
            for (i, t) in tuples.iter().enumerate() {
                if let Some(&last) = t.iter().max() {
                    closing[last].push(i);
                }
            }
            let mut color = vec![0; size];
            let mut nodes = 0u64;
            if let Some(bad) = find_bad_coloring(&tuples, &closing, colors, 0, &mut color, &mut nodes) {
                report.property_3 = false;
                report.counterexample = Some(bad);
            }
            report.colorings_checked = nodes;
        }
        VerifyMode::Sampled { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..trials {
                report.colorings_checked += 1;
                let color: Vec<usize> = (0..size).map(|_| rng.gen_range(0..colors)).collect();
                if !tuples.iter().any(|t| good_tuple(t, &color)) {
                    report.property_3 = false;
                    report.counterexample = Some(color);
                    break;
                }
            }
        }
    }
    Ok(report)
}

/// Backtracking over colorings; a branch dies as soon as a completed tuple
/// is good. Returns a coloring with no good tuple.
fn find_bad_coloring(
    tuples: &[&Vec<usize>],
    closing: &[Vec<usize>],
    colors: usize,
    v: usize,
    color: &mut Vec<usize>,
    nodes: &mut u64,
) -> Option<Vec<usize>> {
    if v == color.len() {
        return Some(color.clone());
    }
    for c in 0..colors {
        *nodes += 1;
        color[v] = c;
        if closing[v].iter().any(|&i| good_tuple(tuples[i], color)) {
            continue;
        }
        if let Some(bad) = find_bad_coloring(tuples, closing, colors, v + 1, color, nodes) {
            return Some(bad);
        }
    }
    None
}

/// Smallest `N` in `start..=max_n` whose structure passes sampled property-3
/// verification.
pub fn search_ramsey_n(
    n: usize,
    k: usize,
    start: usize,
    max_n: usize,
    trials: usize,
    seed: u64,
) -> Result<RamseyStructure, RamseyError> {
    for big_n in start.max(2 * n)..=max_n {
        let s = build_ramsey_structure(n, k, big_n, Reading::Corrected)?;
        if verify_ramsey_properties(&s, &VerifyMode::Sampled { trials, seed })?.all_pass() {
            return Ok(s);
        }
    }
    Err(RamseyError::SearchFailed(max_n))
}

/// Result of `S * (A, R)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Indicator {
    pub structure: Structure,
    /// Vertex of the product corresponding to each vertex of `S`
    /// (`None` for vertices in no tuple).
    pub correspondence: Vec<Option<usize>>,
    /// `copies[t][a]`: product vertex carrying pattern vertex `a` in the copy for tuple `t`.
    pub copies: Vec<Vec<usize>>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // the least pair represents the class
        if ra < rb {
            self.0[rb] = ra;
        } else {
            self.0[ra] = rb;
        }
    }
}

/// The indicator construction: one copy of `pattern` per tuple of `S`,
/// with the root in position `p` of the copy for tuple `t` identified with
/// the copy root in position `q` for tuple `u` whenever `t[p] = u[q]`.
pub fn indicator_product(s: &RamseyStructure, pattern: &RootedStructure) -> Result<Indicator, RamseyError> {
    if pattern.roots.len() != s.arity() {
        return Err(RamseyError::RootArityMismatch {
            expected: s.arity(),
            found: pattern.roots.len(),
        });
    }
    let tuples: Vec<&Vec<usize>> = s.tuples().collect();
    let m = pattern.base.len();
    let pair = |t: usize, a: usize| t * m + a;
    let mut uf = UnionFind((0..tuples.len() * m).collect());
    let mut first_seen: Vec<Option<usize>> = vec![None; s.base.len()];
    for (t, tup) in tuples.iter().enumerate() {
        for (p, &sv) in tup.iter().enumerate() {
            let here = pair(t, pattern.roots[p]);
            match first_seen[sv] {
                Some(prev) => uf.union(prev, here),
                None => first_seen[sv] = Some(here),
            }
        }
    }
    // root classes first in S-vertex order, then the rest by (tuple, pattern vertex)
    let mut class_vertex = vec![usize::MAX; tuples.len() * m];
    let mut b = Structure::empty(pattern.base.signature().clone());
    let mut correspondence = vec![None; s.base.len()];
    for (sv, first) in first_seen.iter().enumerate() {
        if let Some(&p) = first.as_ref() {
            let r = uf.find(p);
            let v = b.add_vertex(s.base.name(sv))?;
            class_vertex[r] = v;
            correspondence[sv] = Some(v);
        }
    }
    let mut copies = vec![vec![0; m]; tuples.len()];
    for (t, copy) in copies.iter_mut().enumerate() {
        for (a, slot) in copy.iter_mut().enumerate() {
            let r = uf.find(pair(t, a));
            if class_vertex[r] == usize::MAX {
                class_vertex[r] = b.add_vertex(&format!("t{t}:{}", pattern.base.name(a)))?;
            }
            *slot = class_vertex[r];
        }
    }
    for copy in &copies {
        for (sym, tup) in pattern.base.tuples() {
            b.add_tuple(sym, tup.iter().map(|&a| copy[a]).collect())?;
        }
    }
    Ok(Indicator {
        structure: b,
        correspondence,
        copies,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GadgetReport {
    pub d_vertices: usize,
    pub d_tuples: usize,
    pub copies: usize,
    /// The projection onto the member is a homomorphism.
    pub projection_is_hom: bool,
    /// Per family member: whether it maps into `D` (all must be false).
    pub member_maps_into_d: Vec<bool>,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct Gadget {
    /// The two pieces over the cut, disjointly united, with interleaved roots.
    pub h: RootedStructure,
    pub indicator: Indicator,
    /// `D -> member`, sending every copy of a piece vertex to that vertex.
    pub projection: Vec<usize>,
    pub report: GadgetReport,
}

/// Builds `D = S * (H, R)` for a family member and one of its minimal cuts
/// (given as member vertex indices) and checks by search that no family
/// member maps into `D`.
pub fn build_counterexample(
    family: &[Structure],
    member: &Structure,
    cut: &[usize],
    ramsey: &RamseyStructure,
    cfg: &SearchConfig,
) -> Result<Gadget, RamseyError> {
    let cuts = minimal_cuts(member)?;
    if cuts.is_empty() {
        return Err(RamseyError::NoCuts);
    }
    let want: BTreeSet<usize> = cut.iter().copied().collect();
    let Some(cut) = cuts.iter().find(|c| c.iter().copied().collect::<BTreeSet<_>>() == want) else {
        return Err(RamseyError::NotAMinimalCut);
    };
    if cut.len() == 1 {
        return Err(RamseyError::GadgetInapplicable);
    }
    let cut_names: Vec<String> = cut.iter().map(|&v| member.name(v).to_string()).collect();
    let ps: Vec<RootedStructure> = pieces(member)?
        .into_iter()
        .filter(|p| p.origin.cut == cut_names)
        .map(|p| p.piece)
        .collect();
    if ps.len() != 2 {
        return Err(RamseyError::TooManyComponents(ps.len()));
    }
    let minimal = minimize_family(family, cfg)?;
    let mut found = false;
    for f in &minimal {
        if f.same_signature(member) && iso_check(f, member, usize::MAX, cfg)?.is_some() {
            found = true;
            break;
        }
    }
    if !found || core_of(member, cfg)?.structure.len() != member.len() {
        return Err(RamseyError::NotMinimal);
    }
    if ramsey.arity() != 2 * cut.len() {
        return Err(RamseyError::RootArityMismatch {
            expected: 2 * cut.len(),
            found: ramsey.arity(),
        });
    }
    let base = ps[0].base.disjoint_union(&ps[1].base)?;
    let offset = ps[0].base.len();
    let roots: Vec<usize> = ps[0]
        .roots
        .iter()
        .zip(&ps[1].roots)
        .flat_map(|(&r1, &r2)| [r1, offset + r2])
        .collect();
    let h = RootedStructure::new(base, roots)?;
    // H vertex -> member vertex
    let to_member: Vec<usize> = ps
        .iter()
        .flat_map(|p| p.base.names().iter().map(|nm| member.index_of(nm).expect("piece vertex")))
        .collect();
    let indicator = indicator_product(ramsey, &h)?;
    let d = &indicator.structure;
    let mut projection = vec![usize::MAX; d.len()];
    for copy in &indicator.copies {
        for (a, &dv) in copy.iter().enumerate() {
            projection[dv] = to_member[a];
        }
    }
    let projection_is_hom = projection.iter().all(|&v| v != usize::MAX) && is_map(d, member, &projection, MapMode::Hom);
    let mut member_maps_into_d = Vec::with_capacity(family.len());
    for f in family {
        member_maps_into_d.push(search_map(f, d, MapMode::Hom, &[], cfg)?.is_some());
    }
    let report = GadgetReport {
        d_vertices: d.len(),
        d_tuples: d.distinct_tuple_count(),
        copies: indicator.copies.len(),
        projection_is_hom,
        pass: projection_is_hom && member_maps_into_d.iter().all(|&m| !m),
        member_maps_into_d,
    };
    Ok(Gadget {
        h,
        indicator,
        projection,
        report,
    })
}
