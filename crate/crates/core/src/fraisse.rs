//! Finite approximations of the generic lift, grown one vertex at a time by
//! realizing one-point extension demands through lifted amalgams.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::amalgamation::{lift_amalgam, AmalgamError, AmalgamProblem, Witness};
use crate::hom::{exists_map, in_forb_h, HomError, MapMode, SearchConfig};
use crate::lifting::{canonical_lift, induced_lift, Lift, LiftError};
use crate::pieces::{PieceCatalog, PieceError};
use crate::structures::{
    for_each_tuple, is_canonical_orientation, parse_document, CodecError, Signature, Structure, StructureError, Tuple,
};

#[derive(Debug, Error)]
pub enum FraisseError {
    #[error("empty family: the signature is unknown")]
    EmptyFamily,
    #[error("bad checkpoint: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Amalgam(#[from] AmalgamError),
    #[error(transparent)]
    Lift(#[from] LiftError),
    #[error(transparent)]
    Pieces(#[from] PieceError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    pub max_vertices: usize,
    pub rounds: usize,
    /// Largest base set of a demand; `None` means no limit.
    pub max_demand_size: Option<usize>,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_vertices: 12,
            rounds: 64,
            max_demand_size: None,
        }
    }
}

/// A realized one-point extension: base vertex names and the tuples added
/// with the new vertex (named `*`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DemandRecord {
    pub round: usize,
    pub base: Vec<String>,
    pub tuples: Vec<(String, Vec<String>)>,
    pub new_vertex: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StopReason {
    Rounds,
    Vertices,
    Saturated,
}

#[derive(Clone, Debug)]
pub struct GrowthState {
    pub current: Lift,
    pub round: usize,
    pub realized: Vec<DemandRecord>,
    /// Demands skipped because a search ran out of budget.
    pub skipped: usize,
    /// Vertex counts after each round; the shadow is re-checked against the
    /// family every round.
    pub history: Vec<usize>,
    pub seed: u64,
    pub budgets: Budgets,
    pub stop: Option<StopReason>,
}

#[derive(Serialize, Deserialize)]
struct Metadata {
    round: usize,
    realized: Vec<DemandRecord>,
    skipped: usize,
    history: Vec<usize>,
    seed: u64,
    budgets: Budgets,
    stop: Option<StopReason>,
}

impl GrowthState {
    pub fn new(catalog: Arc<PieceCatalog>, signature: Arc<Signature>, budgets: Budgets, seed: u64) -> Self {
        GrowthState {
            current: Lift::bare(Structure::empty(signature), catalog),
            round: 0,
            realized: Vec::new(),
            skipped: 0,
            history: Vec::new(),
            seed,
            budgets,
            stop: None,
        }
    }

    pub fn shadow(&self) -> &Structure {
        self.current.base()
    }

    /// Checkpoint as a lift file and a JSON metadata document.
    pub fn checkpoint(&self, catalog_path: &str) -> (String, String) {
        let meta = Metadata {
            round: self.round,
            realized: self.realized.clone(),
            skipped: self.skipped,
            history: self.history.clone(),
            seed: self.seed,
            budgets: self.budgets.clone(),
            stop: self.stop.clone(),
        };
        (
            self.current.to_text(catalog_path),
            serde_json::to_string_pretty(&meta).expect("serializable"),
        )
    }

    pub fn restore(lift_text: &str, metadata: &str, catalog: Arc<PieceCatalog>) -> Result<Self, FraisseError> {
        let meta: Metadata =
            serde_json::from_str(metadata).map_err(|e| FraisseError::Checkpoint(e.to_string()))?;
        let current = Lift::from_document(parse_document(lift_text)?, catalog.clone())?;
        let expected = canonical_lift(current.base(), &catalog, &SearchConfig::default())?;
        if expected != current {
            return Err(FraisseError::Checkpoint("lift is not the canonical lift of its base".into()));
        }
        Ok(GrowthState {
            current,
            round: meta.round,
            realized: meta.realized,
            skipped: meta.skipped,
            history: meta.history,
            seed: meta.seed,
            budgets: meta.budgets,
            stop: meta.stop,
        })
    }
}

/// Extension type: tuples over `base + v` containing `v`, one orientation
/// for symmetric symbols. `v` has index `base.len()`.
fn extension_slots(sig: &Signature, k: usize) -> Vec<(usize, Tuple)> {
    let mut out = Vec::new();
    for (si, sym) in sig.symbols().iter().enumerate() {
        crate::structures::for_each_tuple(k + 1, sym.arity, |t| {
            if t.contains(&k) && (!sym.symmetric || is_canonical_orientation(t)) {
                out.push((si, t.to_vec()));
            }
        });
    }
    out
}

fn subsets_of_size(n: usize, k: usize, out: &mut Vec<Vec<usize>>) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), out);
}

struct Demand {
    base: Vec<usize>,
    structure: Structure,
    lift: Lift,
}

/// The least unrealized valid demand, if any.
fn next_demand(
    state: &GrowthState,
    family: &[Structure],
    rng: &mut ChaCha8Rng,
    cfg: &SearchConfig,
) -> Result<Option<Demand>, FraisseError> {
    let a = state.current.base();
    let n = a.len();
    let catalog = state.current.catalog();
    let sig = a.signature().clone();
    let limit = state.budgets.max_demand_size.unwrap_or(n).min(n);
    let fresh = fresh_name(a);
    for k in 0..=limit {
        let mut bases = Vec::new();
        subsets_of_size(n, k, &mut bases);
        let slots = extension_slots(&sig, k);
        let mut candidates: Vec<(usize, u64)> = Vec::new();
        for bi in 0..bases.len() {
            for mask in 0..1u64 << slots.len().min(63) {
                candidates.push((bi, mask));
            }
        }
        candidates.shuffle(rng);
        for (bi, mask) in candidates {
            let base = &bases[bi];
            let mut b = a.induced(base)?;
            b.add_vertex(&fresh)?;
            for (i, (s, t)) in slots.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    b.add_tuple(*s, t.clone())?;
                }
            }
            let step = (|| -> Result<Option<Lift>, FraisseError> {
                if !in_forb_h(&b, family, cfg)? {
                    return Ok(None);
                }
                let y = canonical_lift(&b, catalog, cfg)?;
                let on_base: Vec<usize> = (0..k).collect();
                if !induced_lift(&y, &on_base)?.same_up_to_names(&induced_lift(&state.current, base)?) {
                    return Ok(None);
                }
                let mut probe = base.clone();
                probe.push(0);
                for w in (0..n).filter(|w| !base.contains(w)) {
                    probe[k] = w;
                    if induced_lift(&state.current, &probe)?.same_up_to_names(&y) {
                        return Ok(None);
                    }
                }
                Ok(Some(y))
            })();
            match step {
                Ok(Some(lift)) => {
                    return Ok(Some(Demand {
                        base: base.clone(),
                        structure: b,
                        lift,
                    }))
                }
                Ok(None) => {}
                Err(e) if is_budget(&e) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(None)
}

fn is_budget(e: &FraisseError) -> bool {
    match e {
        FraisseError::Hom(HomError::BudgetExhausted { .. })
        | FraisseError::Lift(LiftError::Hom(HomError::BudgetExhausted { .. })) => true,
        FraisseError::Amalgam(a) => a.is_budget(),
        _ => false,
    }
}

fn fresh_name(a: &Structure) -> String {
    let mut i = a.len();
    loop {
        let name = format!("u{i}");
        if a.index_of(&name).is_none() {
            return name;
        }
        i += 1;
    }
}

/// Grows from the empty lift over the catalog of `family`.
pub fn grow_generic(
    family: &[Structure],
    catalog: Arc<PieceCatalog>,
    budgets: Budgets,
    seed: u64,
    cfg: &SearchConfig,
) -> Result<GrowthState, FraisseError> {
    let sig = family.first().ok_or(FraisseError::EmptyFamily)?.signature().clone();
    let mut state = GrowthState::new(catalog, sig, budgets, seed);
    continue_growth(&mut state, family, cfg)?;
    Ok(state)
}

/// Runs rounds until a budget is hit or every demand is realized.
pub fn continue_growth(state: &mut GrowthState, family: &[Structure], cfg: &SearchConfig) -> Result<(), FraisseError> {
    state.stop = None;
    loop {
        if state.round >= state.budgets.rounds {
            state.stop = Some(StopReason::Rounds);
            return Ok(());
        }
        if state.current.len() >= state.budgets.max_vertices {
            state.stop = Some(StopReason::Vertices);
            return Ok(());
        }
        // one generator per round keeps longer runs extensions of shorter ones
        let mut rng = ChaCha8Rng::seed_from_u64(state.seed ^ (state.round as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let Some(demand) = next_demand(state, family, &mut rng, cfg)? else {
            state.stop = Some(StopReason::Saturated);
            return Ok(());
        };
        let k = demand.base.len();
        let z = induced_lift(&state.current, &demand.base)?;
        let prob = AmalgamProblem {
            x: state.current.clone(),
            y: demand.lift.clone(),
            z,
            z_in_x: demand.base.clone(),
            z_in_y: (0..k).collect(),
            wx: Witness {
                structure: state.current.base().clone(),
                placement: (0..state.current.len()).collect(),
            },
            wy: Witness {
                structure: demand.structure.clone(),
                placement: (0..=k).collect(),
            },
        };
        let out = match lift_amalgam(&prob, family, cfg) {
            Ok(out) => out,
            Err(e) if e.is_budget() => {
                state.skipped += 1;
                state.round += 1;
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let b = &demand.structure;
        state.realized.push(DemandRecord {
            round: state.round,
            base: demand.base.iter().map(|&v| state.current.base().name(v).to_string()).collect(),
            tuples: b
                .tuples()
                .filter(|(_, t)| t.contains(&k))
                .map(|(s, t)| {
                    (
                        b.signature().symbol(s).name.clone(),
                        t.iter().map(|&v| b.name(v).to_string()).collect(),
                    )
                })
                .collect(),
            new_vertex: b.name(k).to_string(),
        });
        state.current = out.lift;
        state.round += 1;
        state.history.push(state.current.len());
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub sample_size: usize,
    pub successes: usize,
    pub fraction: f64,
    /// Sample indices with no homomorphism into the shadow.
    pub failures: Vec<usize>,
    /// Sample indices whose search ran out of budget (counted as failures).
    pub unknown: Vec<usize>,
}

/// A fixed random sample of `Forb_h(family)` with sizes in `1..=max_test_size`.
///
/// Each member comes from a random greedy process: candidate tuples are
/// visited in random order and each one is kept, with a per-structure
/// probability, when the result stays in `Forb_h(family)`. Plain rejection
/// sampling would mostly return near-empty structures.
pub fn probe_sample(
    family: &[Structure],
    sample_size: usize,
    max_test_size: usize,
    seed: u64,
    cfg: &SearchConfig,
) -> Result<Vec<Structure>, FraisseError> {
    let sig = family.first().ok_or(FraisseError::EmptyFamily)?.signature().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..sample_size)
        .map(|_| {
            let n = rng.gen_range(1..=max_test_size.max(1));
            let keep = rng.gen_range(0.3..1.0);
            greedy_forb_h(family, &sig, n, keep, &mut rng, cfg)
        })
        .collect()
}

fn greedy_forb_h(
    family: &[Structure],
    sig: &Arc<Signature>,
    n: usize,
    keep: f64,
    rng: &mut ChaCha8Rng,
    cfg: &SearchConfig,
) -> Result<Structure, FraisseError> {
    let mut candidates = Vec::new();
    for (s, sym) in sig.symbols().iter().enumerate() {
        for_each_tuple(n, sym.arity, |t| {
            if !sym.symmetric || is_canonical_orientation(t) {
                candidates.push((s, t.to_vec()));
            }
        });
    }
    candidates.shuffle(rng);
    let mut g = Structure::numbered(sig.clone(), n);
    for (s, t) in candidates {
        if !rng.gen_bool(keep) {
            continue;
        }
        let mut next = g.clone();
        next.add_tuple(s, t)?;
        if in_forb_h(&next, family, cfg)? {
            g = next;
        }
    }
    Ok(g)
}

/// Fraction of `sample` admitting a homomorphism into `target`.
pub fn probe_against(target: &Structure, sample: &[Structure], cfg: &SearchConfig) -> Result<ProbeReport, FraisseError> {
    let mut report = ProbeReport {
        sample_size: sample.len(),
        successes: 0,
        fraction: 1.0,
        failures: Vec::new(),
        unknown: Vec::new(),
    };
    for (i, s) in sample.iter().enumerate() {
        match exists_map(s, target, MapMode::Hom, cfg) {
            Ok(true) => report.successes += 1,
            Ok(false) => report.failures.push(i),
            Err(HomError::BudgetExhausted { .. }) => report.unknown.push(i),
            Err(e) => return Err(e.into()),
        }
    }
    if !sample.is_empty() {
        report.fraction = report.successes as f64 / sample.len() as f64;
    }
    Ok(report)
}

/// Samples `Forb_h(family)` and reports how much of it maps into the
/// shadow of `state`.
pub fn universality_probe(
    state: &GrowthState,
    family: &[Structure],
    sample_size: usize,
    max_test_size: usize,
    seed: u64,
    cfg: &SearchConfig,
) -> Result<ProbeReport, FraisseError> {
    let sample = probe_sample(family, sample_size, max_test_size, seed, cfg)?;
    probe_against(state.shadow(), &sample, cfg)
}
