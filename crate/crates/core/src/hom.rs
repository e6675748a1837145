//! Homomorphism, monomorphism and embedding search.
//!
//! Source vertices are CSP variables over the target's vertices. Each source
//! tuple is a table constraint against the target relation of the same
//! symbol; generalized arc consistency is maintained after every assignment.
//! Variables are picked smallest-domain-first, values in canonical vertex
//! order (or a seeded shuffle of it). Running out of nodes is reported as
//! [`HomError::BudgetExhausted`], never as "no map".

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::structures::{Structure, Tuple};

pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapMode {
    Hom,
    /// Injective homomorphism.
    Mono,
    /// Injective homomorphism that also reflects tuples.
    Embed,
}

impl std::str::FromStr for MapMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "hom" => Ok(MapMode::Hom),
            "mono" => Ok(MapMode::Mono),
            "embed" => Ok(MapMode::Embed),
            other => Err(format!("unknown mode {other:?} (expected hom, mono or embed)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of search nodes (value trials) per call.
    pub node_budget: u64,
    /// `None` tries values in canonical order; `Some` shuffles that order.
    pub seed: Option<u64>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_budget: DEFAULT_NODE_BUDGET,
            seed: None,
        }
    }
}

impl SearchConfig {
    pub fn with_budget(node_budget: u64) -> Self {
        SearchConfig {
            node_budget,
            seed: None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomError {
    #[error("signature mismatch")]
    SignatureMismatch,
    #[error("inconsistent partial assignment: {0}")]
    InconsistentPartial(String),
    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },
}

/// A total vertex map `assignment[source] = target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    pub mode: MapMode,
    pub assignment: Vec<usize>,
}

impl VertexMap {
    /// `{source name: target name}`.
    pub fn to_named(&self, source: &Structure, target: &Structure) -> BTreeMap<String, String> {
        self.assignment
            .iter()
            .enumerate()
            .map(|(v, &w)| (source.name(v).to_string(), target.name(w).to_string()))
            .collect()
    }
}

/// Checks `f` against the definition of `mode` directly.
pub fn is_map(a: &Structure, b: &Structure, f: &[usize], mode: MapMode) -> bool {
    if f.len() != a.len() || f.iter().any(|&w| w >= b.len()) || !a.same_signature(b) {
        return false;
    }
    for (s, t) in a.tuples() {
        let img: Vec<usize> = t.iter().map(|&v| f[v]).collect();
        if !b.contains(s, &img) {
            return false;
        }
    }
    if mode == MapMode::Hom {
        return true;
    }
    let mut inv = vec![usize::MAX; b.len()];
    for (v, &w) in f.iter().enumerate() {
        if inv[w] != usize::MAX {
            return false;
        }
        inv[w] = v;
    }
    if mode == MapMode::Embed {
        for (s, u) in b.tuples() {
            if u.iter().all(|&w| inv[w] != usize::MAX) {
                let pre: Vec<usize> = u.iter().map(|&w| inv[w]).collect();
                if !a.contains(s, &pre) {
                    return false;
                }
            }
        }
    }
    true
}

struct Constraint {
    symbol: usize,
    vars: Vec<usize>,
    /// `first[q]` = first position holding the same variable as position `q`.
    first: Vec<usize>,
}

pub(crate) struct Solver<'a> {
    a: &'a Structure,
    b: &'a Structure,
    mode: MapMode,
    constraints: Vec<Constraint>,
    var_constraints: Vec<Vec<usize>>,
    targets: Vec<Vec<Tuple>>,
    /// per symbol, per target vertex: indices into `targets[symbol]`
    incident: Vec<Vec<Vec<usize>>>,
    value_order: Vec<usize>,
    nodes: u64,
    budget: u64,
}

type Domains = Vec<BitSet>;

impl<'a> Solver<'a> {
    pub(crate) fn new(
        a: &'a Structure,
        b: &'a Structure,
        mode: MapMode,
        cfg: &SearchConfig,
    ) -> Result<Self, HomError> {
        if !a.same_signature(b) {
            return Err(HomError::SignatureMismatch);
        }
        let mut constraints = Vec::new();
        let mut var_constraints = vec![Vec::new(); a.len()];
        for (s, t) in a.tuples() {
            let first = (0..t.len())
                .map(|q| t.iter().position(|&x| x == t[q]).expect("present"))
                .collect();
            let id = constraints.len();
            let mut seen = Vec::new();
            for &v in t {
                if !seen.contains(&v) {
                    var_constraints[v].push(id);
                    seen.push(v);
                }
            }
            constraints.push(Constraint {
                symbol: s,
                vars: t.clone(),
                first,
            });
        }
        let targets: Vec<Vec<Tuple>> = b
            .relations()
            .iter()
            .map(|r| r.iter().cloned().collect())
            .collect();
        let incident = if mode == MapMode::Embed {
            targets
                .iter()
                .map(|ts| {
                    let mut inc = vec![Vec::new(); b.len()];
                    for (i, t) in ts.iter().enumerate() {
                        let mut seen = Vec::new();
                        for &w in t {
                            if !seen.contains(&w) {
                                inc[w].push(i);
                                seen.push(w);
                            }
                        }
                    }
                    inc
                })
                .collect()
        } else {
            Vec::new()
        };
        let mut value_order = b.canonical_order();
        if let Some(seed) = cfg.seed {
            value_order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        }
        Ok(Solver {
            a,
            b,
            mode,
            constraints,
            var_constraints,
            targets,
            incident,
            value_order,
            nodes: 0,
            budget: cfg.node_budget,
        })
    }

    /// Domains after applying `partial` and propagating; `None` on wipeout.
    pub(crate) fn initial_domains(&self, partial: &[(usize, usize)]) -> Result<Option<Domains>, HomError> {
        let n = self.a.len();
        let nb = self.b.len();
        let mut fixed = vec![None; n];
        for &(x, y) in partial {
            if x >= n || y >= nb {
                return Err(HomError::InconsistentPartial(format!("pair ({x}, {y}) out of range")));
            }
            match fixed[x] {
                Some(prev) if prev != y => {
                    return Err(HomError::InconsistentPartial(format!(
                        "{} assigned twice",
                        self.a.name(x)
                    )))
                }
                _ => fixed[x] = Some(y),
            }
        }
        if self.mode != MapMode::Hom {
            let mut used = vec![false; nb];
            for &y in fixed.iter().flatten() {
                if std::mem::replace(&mut used[y], true) {
                    return Err(HomError::InconsistentPartial(format!(
                        "{} used twice in an injective map",
                        self.b.name(y)
                    )));
                }
            }
            if n > nb {
                return Ok(None);
            }
        }
        let mut domains: Domains = (0..n)
            .map(|x| match fixed[x] {
                Some(y) => {
                    let mut d = BitSet::new(nb);
                    d.insert(y);
                    d
                }
                None => BitSet::full(nb),
            })
            .collect();
        let all: Vec<usize> = (0..self.constraints.len()).collect();
        Ok(self.propagate(&mut domains, all).then_some(domains))
    }

    /// GAC over the table constraints, plus all-different forward checking
    /// for injective modes. Returns false on wipeout.
    fn propagate(&self, domains: &mut Domains, initial: Vec<usize>) -> bool {
        let nb = self.b.len();
        let mut queue = initial;
        let mut queued = vec![false; self.constraints.len()];
        for &c in &queue {
            queued[c] = true;
        }
        loop {
            while let Some(ci) = queue.pop() {
                queued[ci] = false;
                let c = &self.constraints[ci];
                let k = c.vars.len();
                let mut support = vec![BitSet::new(nb); k];
                for u in &self.targets[c.symbol] {
                    let ok = (0..k).all(|q| {
                        domains[c.vars[q]].contains(u[q]) && u[c.first[q]] == u[q]
                    });
                    if ok {
                        for q in 0..k {
                            support[q].insert(u[q]);
                        }
                    }
                }
                for q in 0..k {
                    if c.first[q] != q {
                        continue;
                    }
                    let v = c.vars[q];
                    if domains[v].intersect_with(&support[q]) {
                        if domains[v].is_empty() {
                            return false;
                        }
                        for &other in &self.var_constraints[v] {
                            if other != ci && !queued[other] {
                                queued[other] = true;
                                queue.push(other);
                            }
                        }
                    }
                }
            }
            if self.mode == MapMode::Hom {
                return true;
            }
            // all-different: singleton values leave every other domain
            let mut changed = false;
            for x in 0..domains.len() {
                if domains[x].len() != 1 {
                    continue;
                }
                let y = domains[x].first().expect("singleton");
                for z in 0..domains.len() {
                    if z != x && domains[z].contains(y) {
                        domains[z].remove(y);
                        if domains[z].is_empty() {
                            return false;
                        }
                        changed = true;
                        for &c in &self.var_constraints[z] {
                            if !queued[c] {
                                queued[c] = true;
                                queue.push(c);
                            }
                        }
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    /// Tuple reflection for embeddings: every target tuple whose entries
    /// are all images must have its preimage in the source.
    fn reflects(&self, inverse: &[usize], y: usize) -> bool {
        for (s, inc) in self.incident.iter().enumerate() {
            for &ti in &inc[y] {
                let u = &self.targets[s][ti];
                if u.iter().all(|&w| inverse[w] != usize::MAX) {
                    let pre: Vec<usize> = u.iter().map(|&w| inverse[w]).collect();
                    if !self.a.contains(s, &pre) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Depth-first enumeration; `visit` returns false to stop.
    fn dfs(
        &mut self,
        domains: Domains,
        assigned: &mut Vec<usize>,
        inverse: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Result<bool, HomError> {
        let var = (0..domains.len())
            .filter(|&x| assigned[x] == usize::MAX)
            .min_by_key(|&x| (domains[x].len(), x));
        let Some(var) = var else {
            debug_assert!(is_map(self.a, self.b, assigned, self.mode));
            return Ok(visit(assigned));
        };
        let order = self.value_order.clone();
        for y in order {
            if !domains[var].contains(y) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(HomError::BudgetExhausted { nodes: self.nodes - 1 });
            }
            assigned[var] = y;
            let injective = self.mode != MapMode::Hom;
            if injective {
                inverse[y] = var;
            }
            let reflect_ok = self.mode != MapMode::Embed || self.reflects(inverse, y);
            if reflect_ok {
                let mut d = domains.clone();
                d[var].clear();
                d[var].insert(y);
                let queue = self.var_constraints[var].clone();
                // for injective modes, y leaves the other domains inside propagate
                let consistent = self.propagate(&mut d, queue);
                if consistent && !self.dfs(d, assigned, inverse, visit)? {
                    assigned[var] = usize::MAX;
                    if injective {
                        inverse[y] = usize::MAX;
                    }
                    return Ok(false);
                }
            }
            assigned[var] = usize::MAX;
            if injective {
                inverse[y] = usize::MAX;
            }
        }
        Ok(true)
    }

    /// Runs the search from `partial`; returns the number of nodes used.
    pub(crate) fn run(
        &mut self,
        partial: &[(usize, usize)],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Result<(), HomError> {
        let Some(domains) = self.initial_domains(partial)? else {
            return Ok(());
        };
        let mut assigned = vec![usize::MAX; self.a.len()];
        let mut inverse = vec![usize::MAX; self.b.len()];
        self.dfs(domains, &mut assigned, &mut inverse, visit)?;
        Ok(())
    }
}

/// Finds a map of the given mode extending `partial`, or `None` if none exists.
pub fn search_map(
    a: &Structure,
    b: &Structure,
    mode: MapMode,
    partial: &[(usize, usize)],
    cfg: &SearchConfig,
) -> Result<Option<VertexMap>, HomError> {
    let mut solver = Solver::new(a, b, mode, cfg)?;
    let mut found = None;
    solver.run(partial, &mut |f| {
        found = Some(f.to_vec());
        false
    })?;
    Ok(found.map(|assignment| VertexMap { mode, assignment }))
}

pub fn exists_map(a: &Structure, b: &Structure, mode: MapMode, cfg: &SearchConfig) -> Result<bool, HomError> {
    Ok(search_map(a, b, mode, &[], cfg)?.is_some())
}

/// Calls `visit` on every map of the given mode until it returns false.
pub fn for_each_map(
    a: &Structure,
    b: &Structure,
    mode: MapMode,
    partial: &[(usize, usize)],
    cfg: &SearchConfig,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> Result<(), HomError> {
    let mut solver = Solver::new(a, b, mode, cfg)?;
    solver.run(partial, &mut visit)
}

/// Exact number of maps of the given mode.
pub fn count_maps(a: &Structure, b: &Structure, mode: MapMode, cfg: &SearchConfig) -> Result<u64, HomError> {
    let mut count = 0;
    for_each_map(a, b, mode, &[], cfg, |_| {
        count += 1;
        true
    })?;
    Ok(count)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForbVerdict {
    pub member: bool,
    /// Index of the violating family member and the map into the tested structure.
    pub violation: Option<(usize, VertexMap)>,
}

/// Membership in `Forb_h(family)` (mode `Hom`) or `Forb_e(family)` (mode `Embed`).
pub fn forb_membership(
    a: &Structure,
    family: &[Structure],
    mode: MapMode,
    cfg: &SearchConfig,
) -> Result<ForbVerdict, HomError> {
    for (i, f) in family.iter().enumerate() {
        if let Some(m) = search_map(f, a, mode, &[], cfg)? {
            return Ok(ForbVerdict {
                member: false,
                violation: Some((i, m)),
            });
        }
    }
    Ok(ForbVerdict {
        member: true,
        violation: None,
    })
}

pub fn in_forb_h(a: &Structure, family: &[Structure], cfg: &SearchConfig) -> Result<bool, HomError> {
    Ok(forb_membership(a, family, MapMode::Hom, cfg)?.member)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Core {
    pub structure: Structure,
    /// Indices in the original structure of the core's vertices.
    pub kept: Vec<usize>,
    /// Retraction: original vertex -> core vertex index; identity on `kept`.
    pub retraction: Vec<usize>,
}

/// Core of `a` as an induced substructure together with a retraction onto it.
pub fn core_of(a: &Structure, cfg: &SearchConfig) -> Result<Core, HomError> {
    // current[i] = original index of the i-th vertex of `cur`
    let mut current: Vec<usize> = a.canonical_order();
    let mut cur = a.induced(&current).expect("valid subset");
    // map: original vertex -> index into `current`
    let mut to_cur: Vec<usize> = {
        let mut m = vec![0; a.len()];
        for (i, &v) in current.iter().enumerate() {
            m[v] = i;
        }
        m
    };
    let mut i = 0;
    while i < current.len() {
        let rest: Vec<usize> = (0..current.len()).filter(|&j| j != i).collect();
        let smaller = cur.induced(&rest).expect("valid subset");
        if let Some(f) = search_map(&cur, &smaller, MapMode::Hom, &[], cfg)? {
            // f: cur -> smaller; re-express everything over `smaller`
            to_cur = to_cur.iter().map(|&c| f.assignment[c]).collect();
            current = rest.iter().map(|&j| current[j]).collect();
            cur = smaller;
            i = 0;
        } else {
            i += 1;
        }
    }
    // to_cur restricted to the core is an automorphism; undo it
    let k = current.len();
    let on_core: Vec<usize> = current.iter().map(|&v| to_cur[v]).collect();
    let mut inv = vec![0; k];
    for (j, &img) in on_core.iter().enumerate() {
        inv[img] = j;
    }
    let retraction = to_cur.iter().map(|&c| inv[c]).collect();
    let structure = a.induced(&current).expect("valid subset");
    Ok(Core {
        structure,
        kept: current,
        retraction,
    })
}

fn serialization_key(s: &Structure) -> (usize, String) {
    (s.len(), crate::structures::serialize(s))
}

/// Cores of the members with every member receiving a map from another
/// member removed; hom-equivalent members keep the least serialization.
/// Output is sorted by (size, serialization).
pub fn minimize_family(family: &[Structure], cfg: &SearchConfig) -> Result<Vec<Structure>, HomError> {
    let mut cores: Vec<Structure> = family
        .iter()
        .map(|f| core_of(f, cfg).map(|c| c.structure))
        .collect::<Result<_, _>>()?;
    cores.sort_by_key(serialization_key);
    let n = cores.len();
    let mut maps_to = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                maps_to[i][j] = exists_map(&cores[i], &cores[j], MapMode::Hom, cfg)?;
            }
        }
    }
    let keep: Vec<bool> = (0..n)
        .map(|j| {
            (0..n).all(|i| {
                if i == j || !maps_to[i][j] {
                    return true;
                }
                // equivalent pair: the earlier (smaller key) one survives
                maps_to[j][i] && j < i
            })
        })
        .collect();
    Ok(cores
        .into_iter()
        .zip(keep)
        .filter_map(|(c, k)| k.then_some(c))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{generate, parse_structure, Generator, Signature};

    fn g(gen: Generator) -> Structure {
        generate(&gen, 0).unwrap()
    }

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    /// Reference: all |B|^|A| maps checked against the definition.
    fn brute_count(a: &Structure, b: &Structure, mode: MapMode) -> u64 {
        let (n, m) = (a.len(), b.len());
        let total = (m as u64).pow(n as u32);
        let mut f = vec![0; n];
        let mut count = 0;
        for mut code in 0..total {
            for x in f.iter_mut() {
                *x = (code % m as u64) as usize;
                code /= m as u64;
            }
            if is_map(a, b, &f, mode) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn k3_to_k3() {
        let k3 = g(Generator::Clique { n: 3 });
        assert!(search_map(&k3, &k3, MapMode::Hom, &[], &cfg()).unwrap().is_some());
        assert_eq!(brute_count(&k3, &k3, MapMode::Hom), 6);
        assert_eq!(count_maps(&k3, &k3, MapMode::Hom, &cfg()).unwrap(), 6);
    }

    #[test]
    fn odd_cycle_not_bipartite() {
        let c5 = g(Generator::Cycle { n: 5 });
        let k2 = g(Generator::Clique { n: 2 });
        assert_eq!(brute_count(&c5, &k2, MapMode::Hom), 0);
        assert!(search_map(&c5, &k2, MapMode::Hom, &[], &cfg()).unwrap().is_none());
    }

    #[test]
    fn partial_assignment_is_extended() {
        let p3 = parse_structure("signature E/2 sym\nvertices a b c\nE a b\nE b c\n").unwrap();
        let c5 = g(Generator::Cycle { n: 5 });
        let m = search_map(&p3, &c5, MapMode::Hom, &[(0, 0)], &cfg()).unwrap().unwrap();
        assert_eq!(m.assignment[0], 0);
        assert!(is_map(&p3, &c5, &m.assignment, MapMode::Hom));
        assert_eq!(m.assignment, vec![0, 1, 0]);
        let named = m.to_named(&p3, &c5);
        assert_eq!(named["b"], "1");
    }

    #[test]
    fn inconsistent_partial_is_an_error() {
        let k2 = g(Generator::Clique { n: 2 });
        let k3 = g(Generator::Clique { n: 3 });
        assert!(matches!(
            search_map(&k2, &k3, MapMode::Hom, &[(0, 0), (0, 1)], &cfg()),
            Err(HomError::InconsistentPartial(_))
        ));
        assert!(matches!(
            search_map(&k2, &k3, MapMode::Mono, &[(0, 0), (1, 0)], &cfg()),
            Err(HomError::InconsistentPartial(_))
        ));
        assert!(matches!(
            search_map(&k2, &k3, MapMode::Hom, &[(5, 0)], &cfg()),
            Err(HomError::InconsistentPartial(_))
        ));
        // violating a tuple is simply "no map"
        assert!(search_map(&k2, &k3, MapMode::Hom, &[(0, 0), (1, 0)], &cfg()).unwrap().is_none());
    }

    #[test]
    fn counting_examples() {
        let k2 = g(Generator::Clique { n: 2 });
        let k3 = g(Generator::Clique { n: 3 });
        assert_eq!(brute_count(&k2, &k3, MapMode::Hom), 6);
        assert_eq!(count_maps(&k2, &k3, MapMode::Hom, &cfg()).unwrap(), 6);
        assert_eq!(count_maps(&k2, &k2, MapMode::Embed, &cfg()).unwrap(), 2);
        assert_eq!(count_maps(&k3, &k2, MapMode::Hom, &cfg()).unwrap(), 0);
    }

    #[test]
    fn budget_is_a_third_outcome() {
        let k4 = g(Generator::Clique { n: 4 });
        let k3 = g(Generator::Clique { n: 3 });
        let tiny = SearchConfig::with_budget(3);
        assert!(matches!(
            search_map(&k4, &k3, MapMode::Hom, &[], &tiny),
            Err(HomError::BudgetExhausted { .. })
        ));
        assert!(matches!(count_maps(&k3, &k3, MapMode::Hom, &tiny), Err(HomError::BudgetExhausted { .. })));
    }

    #[test]
    fn signature_mismatch() {
        let k2 = g(Generator::Clique { n: 2 });
        let d = g(Generator::OrientedPath { n: 2 });
        assert_eq!(search_map(&k2, &d, MapMode::Hom, &[], &cfg()), Err(HomError::SignatureMismatch));
    }

    #[test]
    fn embed_versus_mono() {
        let p3 = g(Generator::Path { n: 3 });
        let k3 = g(Generator::Clique { n: 3 });
        assert!(exists_map(&p3, &k3, MapMode::Mono, &cfg()).unwrap());
        assert!(!exists_map(&p3, &k3, MapMode::Embed, &cfg()).unwrap());
        let c4 = g(Generator::Cycle { n: 4 });
        assert_eq!(count_maps(&p3, &c4, MapMode::Embed, &cfg()).unwrap(), brute_count(&p3, &c4, MapMode::Embed));
    }

    #[test]
    fn forb_examples() {
        let c5 = g(Generator::Cycle { n: 5 });
        let k3 = g(Generator::Clique { n: 3 });
        let k4 = g(Generator::Clique { n: 4 });
        assert_eq!(brute_count(&k3, &c5, MapMode::Hom), 0);
        assert!(forb_membership(&c5, &[k3.clone()], MapMode::Hom, &cfg()).unwrap().member);
        let v = forb_membership(&k4, &[k3.clone()], MapMode::Hom, &cfg()).unwrap();
        assert!(!v.member);
        let (i, m) = v.violation.unwrap();
        assert_eq!(i, 0);
        assert!(is_map(&k3, &k4, &m.assignment, MapMode::Hom));
        let c6 = g(Generator::Cycle { n: 6 });
        let c3 = g(Generator::Cycle { n: 3 });
        assert_eq!(brute_count(&c3, &c6, MapMode::Hom), 0);
        assert_eq!(brute_count(&c3, &c6, MapMode::Embed), 0);
        assert!(forb_membership(&c6, &[c3.clone()], MapMode::Embed, &cfg()).unwrap().member);
        assert!(forb_membership(&c6, &[c3], MapMode::Hom, &cfg()).unwrap().member);
    }

    #[test]
    fn cores() {
        let c6 = g(Generator::Cycle { n: 6 });
        let core = core_of(&c6, &cfg()).unwrap();
        assert_eq!(core.structure.len(), 2);
        assert_eq!(core.structure.distinct_tuple_count(), 1);
        assert!(is_map(&c6, &core.structure, &core.retraction, MapMode::Hom));
        for (i, &v) in core.kept.iter().enumerate() {
            assert_eq!(core.retraction[v], i);
        }
        let c5 = g(Generator::Cycle { n: 5 });
        // every endomorphism of C5 is an automorphism: 10 of them, all bijective
        assert_eq!(brute_count(&c5, &c5, MapMode::Hom), 10);
        assert_eq!(brute_count(&c5, &c5, MapMode::Embed), 10);
        assert_eq!(core_of(&c5, &cfg()).unwrap().structure, c5);
        let one = Structure::numbered(Signature::graph(), 1);
        assert_eq!(core_of(&one, &cfg()).unwrap().structure, one);
    }

    #[test]
    fn core_is_idempotent() {
        let s = parse_structure("signature E/2\nvertices a b c d e\nE a b\nE b c\nE a c\nE d e\nE c d\n").unwrap();
        let c = core_of(&s, &cfg()).unwrap().structure;
        let cc = core_of(&c, &cfg()).unwrap().structure;
        assert_eq!(c, cc);
    }

    #[test]
    fn minimize_examples() {
        let k3 = g(Generator::Clique { n: 3 });
        let c6 = g(Generator::Cycle { n: 6 });
        let m = minimize_family(&[k3, c6], &cfg()).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!((m[0].len(), m[0].distinct_tuple_count()), (2, 1));
        let c5 = g(Generator::Cycle { n: 5 });
        assert_eq!(minimize_family(&[c5.clone()], &cfg()).unwrap(), vec![c5]);
        assert!(minimize_family(&[], &cfg()).unwrap().is_empty());
    }

    #[test]
    fn minimize_drops_equivalent_duplicates() {
        let k2 = g(Generator::Clique { n: 2 });
        let c4 = g(Generator::Cycle { n: 4 });
        let m = minimize_family(&[c4, k2.clone()], &cfg()).unwrap();
        assert_eq!(m, vec![k2]);
    }

    #[test]
    fn seeded_value_order_keeps_existence() {
        let c7 = g(Generator::Cycle { n: 7 });
        let c5 = g(Generator::Cycle { n: 5 });
        for seed in 0..5 {
            let cfg = SearchConfig {
                seed: Some(seed),
                ..SearchConfig::default()
            };
            let a = search_map(&c7, &c5, MapMode::Hom, &[], &cfg).unwrap().unwrap();
            let b = search_map(&c7, &c5, MapMode::Hom, &[], &cfg).unwrap().unwrap();
            assert_eq!(a, b);
            assert!(search_map(&c5, &c7, MapMode::Hom, &[], &cfg).unwrap().is_none());
        }
    }
}
