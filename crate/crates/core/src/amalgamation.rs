//! Free amalgams and the lifted amalgam `V = L(D)`, with the two claims of
//! the amalgamation argument checked on every run.

use std::collections::HashSet;
use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::hom::{in_forb_h, is_map, HomError, MapMode, SearchConfig};
use crate::lifting::{canonical_lift, induced_lift, lift_map_check, verify_witness, Lift, LiftError};
use crate::pieces::PieceCatalog;
use crate::structures::{random_structure, Structure, StructureError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AmalgamError {
    #[error("not an embedding: {0}")]
    NotAnEmbedding(String),
    #[error("invalid witness for {0}")]
    InvalidWitness(&'static str),
    #[error("amalgamation claim failed: {0:?}")]
    ClaimViolation(Box<AmalgamReport>),
    #[error("could not sample a structure in the forbidden class after {0} attempts")]
    SamplerFailed(usize),
    #[error(transparent)]
    Lift(#[from] LiftError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

impl AmalgamError {
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            AmalgamError::Hom(HomError::BudgetExhausted { .. })
                | AmalgamError::Lift(LiftError::Hom(HomError::BudgetExhausted { .. }))
        )
    }
}

/// `a` and `b` glued along a common substructure; `left`/`right` send
/// vertices of `a`/`b` to vertices of `structure`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Amalgam {
    pub structure: Structure,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// Free amalgam of `a` and `b` over `c`, given embeddings `c -> a` and
/// `c -> b`. Vertices of `b` outside the image of `c` whose names clash
/// with `a` get a `'` suffix.
pub fn free_amalgam(
    a: &Structure,
    b: &Structure,
    c: &Structure,
    c_in_a: &[usize],
    c_in_b: &[usize],
) -> Result<Amalgam, AmalgamError> {
    if !a.same_signature(b) || !a.same_signature(c) {
        return Err(HomError::SignatureMismatch.into());
    }
    if c_in_a.len() != c.len() || !is_map(c, a, c_in_a, MapMode::Embed) {
        return Err(AmalgamError::NotAnEmbedding("common part into the left structure".into()));
    }
    if c_in_b.len() != c.len() || !is_map(c, b, c_in_b, MapMode::Embed) {
        return Err(AmalgamError::NotAnEmbedding("common part into the right structure".into()));
    }
    let mut d = a.clone();
    let left: Vec<usize> = (0..a.len()).collect();
    let mut right = vec![usize::MAX; b.len()];
    for (ci, &bv) in c_in_b.iter().enumerate() {
        right[bv] = c_in_a[ci];
    }
    let mut used: HashSet<String> = a.names().iter().cloned().collect();
    for (v, slot) in right.iter_mut().enumerate() {
        if *slot != usize::MAX {
            continue;
        }
        let mut name = b.name(v).to_string();
        while used.contains(&name) {
            name.push('\'');
        }
        used.insert(name.clone());
        *slot = d.add_vertex(&name)?;
    }
    for (s, t) in b.tuples() {
        d.add_tuple(s, t.iter().map(|&v| right[v]).collect())?;
    }
    Ok(Amalgam {
        structure: d,
        left,
        right,
    })
}

/// A structure in `Forb_h(F)` whose canonical lift contains a lift as an
/// induced sublift; `placement[v]` carries lift vertex `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub structure: Structure,
    pub placement: Vec<usize>,
}

/// Lifts `x`, `y` over a common `z`, with witnesses.
#[derive(Clone, Debug)]
pub struct AmalgamProblem {
    pub x: Lift,
    pub y: Lift,
    pub z: Lift,
    pub z_in_x: Vec<usize>,
    pub z_in_y: Vec<usize>,
    pub wx: Witness,
    pub wy: Witness,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Pass,
    Fail,
}

impl Check {
    fn of(ok: bool) -> Self {
        if ok {
            Check::Pass
        } else {
            Check::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Check::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmalgamSizes {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub d: usize,
    pub d_tuples: usize,
    pub v_ext: usize,
}

/// Verification report. Timings are wall-clock milliseconds and are the
/// only nondeterministic field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmalgamReport {
    /// Restricting `L(D)` to either side gives back that side's lift.
    pub claim_i: Check,
    /// `D` is in `Forb_h(F)`.
    pub claim_ii: Check,
    pub sizes: AmalgamSizes,
    pub timings_ms: Timings,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Timings {
    pub lift: u128,
    pub claim_i: u128,
    pub claim_ii: u128,
}

#[derive(Clone, Debug)]
pub struct LiftAmalgam {
    pub lift: Lift,
    pub x_in_v: Vec<usize>,
    pub y_in_v: Vec<usize>,
    pub report: AmalgamReport,
}

impl LiftAmalgam {
    /// `D` witnesses its own lift.
    pub fn witness(&self) -> Witness {
        Witness {
            structure: self.lift.base().clone(),
            placement: (0..self.lift.len()).collect(),
        }
    }
}

fn compose(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&v| outer[v]).collect()
}

/// Builds `D` as the free amalgam of the witnesses over the shadow of `z`
/// and returns `V = L(D)`. Both claims are verified; a failure is returned
/// as [`AmalgamError::ClaimViolation`].
pub fn lift_amalgam(
    prob: &AmalgamProblem,
    family: &[Structure],
    cfg: &SearchConfig,
) -> Result<LiftAmalgam, AmalgamError> {
    let catalog = prob.x.catalog();
    if !lift_map_check(&prob.z_in_x, &prob.z, &prob.x, MapMode::Embed)? {
        return Err(AmalgamError::NotAnEmbedding("Z into X".into()));
    }
    if !lift_map_check(&prob.z_in_y, &prob.z, &prob.y, MapMode::Embed)? {
        return Err(AmalgamError::NotAnEmbedding("Z into Y".into()));
    }
    if !verify_witness(&prob.x, &prob.wx.structure, &prob.wx.placement, family, cfg)? {
        return Err(AmalgamError::InvalidWitness("X"));
    }
    if !verify_witness(&prob.y, &prob.wy.structure, &prob.wy.placement, family, cfg)? {
        return Err(AmalgamError::InvalidWitness("Y"));
    }
    let c = prob.z.base();
    let am = free_amalgam(
        &prob.wx.structure,
        &prob.wy.structure,
        c,
        &compose(&prob.wx.placement, &prob.z_in_x),
        &compose(&prob.wy.placement, &prob.z_in_y),
    )?;
    let t0 = Instant::now();
    let v = canonical_lift(&am.structure, catalog, cfg)?;
    let t1 = Instant::now();

    let x_in_v = compose(&am.left, &prob.wx.placement);
    let y_in_v = compose(&am.right, &prob.wy.placement);
    let mut claim_i = induced_lift(&v, &x_in_v)?.same_up_to_names(&prob.x)
        && induced_lift(&v, &y_in_v)?.same_up_to_names(&prob.y);
    // whole witnesses keep their lifts too
    for (w, side) in [(&prob.wx.structure, &am.left), (&prob.wy.structure, &am.right)] {
        if claim_i {
            let lw = canonical_lift(w, catalog, cfg)?;
            claim_i = induced_lift(&v, side)?.same_up_to_names(&lw);
        }
    }
    claim_i &= compose(&x_in_v, &prob.z_in_x) == compose(&y_in_v, &prob.z_in_y);
    let t2 = Instant::now();
    let claim_ii = in_forb_h(&am.structure, family, cfg)?;
    let t3 = Instant::now();

    let report = AmalgamReport {
        claim_i: Check::of(claim_i),
        claim_ii: Check::of(claim_ii),
        sizes: AmalgamSizes {
            x: prob.x.len(),
            y: prob.y.len(),
            z: prob.z.len(),
            d: am.structure.len(),
            d_tuples: am.structure.distinct_tuple_count(),
            v_ext: v.ext_count(),
        },
        timings_ms: Timings {
            lift: (t1 - t0).as_millis(),
            claim_i: (t2 - t1).as_millis(),
            claim_ii: (t3 - t2).as_millis(),
        },
    };
    if !(claim_i && claim_ii) {
        return Err(AmalgamError::ClaimViolation(Box::new(report)));
    }
    Ok(LiftAmalgam {
        lift: v,
        x_in_v,
        y_in_v,
        report,
    })
}

/// Rejection-samples a structure on `n` vertices in `Forb_h(family)`,
/// starting at tuple density `p`.
pub fn sample_forb_h<R: Rng>(
    family: &[Structure],
    n: usize,
    p: f64,
    attempts: usize,
    rng: &mut R,
    cfg: &SearchConfig,
) -> Result<Structure, AmalgamError> {
    let sig = family
        .first()
        .map(|f| f.signature().clone())
        .ok_or(AmalgamError::SamplerFailed(0))?;
    // the density decays so sparse classes are still reached
    let mut p = p;
    for _ in 0..attempts {
        let s = random_structure(&sig, n, p, rng);
        if in_forb_h(&s, family, cfg)? {
            return Ok(s);
        }
        p *= 0.95;
    }
    Err(AmalgamError::SamplerFailed(attempts))
}

fn random_subset<R: Rng>(n: usize, keep: f64, rng: &mut R) -> Vec<usize> {
    (0..n).filter(|_| rng.gen_bool(keep)).collect()
}

/// Random superset of `core` inside `0..n`, listed with `core` first.
fn superset<R: Rng>(core: &[usize], n: usize, rng: &mut R) -> Vec<usize> {
    let mut out = core.to_vec();
    let mut rest: Vec<usize> = (0..n).filter(|v| !core.contains(v)).collect();
    rest.shuffle(rng);
    let take = rng.gen_range(0..=rest.len());
    out.extend_from_slice(&rest[..take]);
    out
}

/// Random amalgamation problem over `catalog` with witnesses of at most
/// `max_size` vertices.
///
/// `A` is sampled from `Forb_h(F)` and `Z` is the lift of `A` on a random
/// subset `C`. `B` is sampled to contain `A[C]` with the same lift on `C`;
/// after a few misses a renamed copy of `A` is used instead.
pub fn sample_problem<R: Rng>(
    family: &[Structure],
    catalog: &Arc<PieceCatalog>,
    max_size: usize,
    rng: &mut R,
    cfg: &SearchConfig,
) -> Result<AmalgamProblem, AmalgamError> {
    let n = rng.gen_range(1..=max_size.max(1));
    let p = rng.gen_range(0.1..0.5);
    let a = sample_forb_h(family, n, p, 200, rng, cfg)?;
    let la = canonical_lift(&a, catalog, cfg)?;
    let c = random_subset(n, 0.5, rng);
    let z = induced_lift(&la, &c)?;
    let ac = a.induced(&c)?;

    let mut b = None;
    for _ in 0..20 {
        let extra = rng.gen_range(0..=max_size.saturating_sub(c.len()));
        let mut cand = ac.renamed((0..c.len()).map(|i| format!("c{i}")).collect())?;
        for j in 0..extra {
            cand.add_vertex(&format!("b{j}"))?;
        }
        let sig = cand.signature().clone();
        let noise = random_structure(&sig, cand.len(), p, rng);
        for (s, t) in noise.tuples() {
            if t.iter().any(|&v| v >= c.len()) {
                cand.add_tuple(s, t.clone())?;
            }
        }
        if !in_forb_h(&cand, family, cfg)? {
            continue;
        }
        let lc = canonical_lift(&cand, catalog, cfg)?;
        let on_c: Vec<usize> = (0..c.len()).collect();
        if induced_lift(&lc, &on_c)?.same_up_to_names(&z) {
            b = Some((cand, on_c));
            break;
        }
    }
    let (b, c_in_b) = match b {
        Some(found) => found,
        None => {
            let copy = a.renamed((0..n).map(|i| format!("b{i}")).collect())?;
            (copy, c.clone())
        }
    };
    let lb = canonical_lift(&b, catalog, cfg)?;

    let sx = superset(&c, a.len(), rng);
    let sy = superset(&c_in_b, b.len(), rng);
    let x = induced_lift(&la, &sx)?;
    let y = induced_lift(&lb, &sy)?;
    // `c` is a prefix of both supersets
    let z_in: Vec<usize> = (0..c.len()).collect();
    Ok(AmalgamProblem {
        x,
        y,
        z,
        z_in_x: z_in.clone(),
        z_in_y: z_in,
        wx: Witness {
            structure: a,
            placement: sx,
        },
        wy: Witness {
            structure: b,
            placement: sy,
        },
    })
}
