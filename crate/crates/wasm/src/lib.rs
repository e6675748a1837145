//! Browser bindings. Every export takes `.rel` text and returns a JSON
//! string; failures come back as `{"error": "..."}` so the page never has
//! to catch exceptions.

use std::sync::Arc;

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use relift::hom::{search_map, MapMode, SearchConfig};
use relift::lifting::canonical_lift;
use relift::pieces::{catalog_family, minimal_cuts, pieces};
use relift::structures::{parse_documents, parse_structure, serialize_rooted, Structure};

/// Keeps a single call well under a second in the browser.
const DEMO_BUDGET: u64 = 2_000_000;

fn cfg() -> SearchConfig {
    SearchConfig::with_budget(DEMO_BUDGET)
}

fn wrap(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn names(s: &Structure, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| s.name(v).to_string()).collect()
}

/// Vertices and Gaifman edges, for drawing.
fn drawing(s: &Structure) -> Value {
    let adj = s.gaifman_adjacency();
    let edges: Vec<[&str; 2]> = adj
        .iter()
        .enumerate()
        .flat_map(|(u, ns)| ns.iter().filter(move |&&w| u < w).map(move |&w| [s.name(u), s.name(w)]))
        .collect();
    json!({ "vertices": s.names(), "edges": edges })
}

pub fn analyze_json(text: &str) -> String {
    wrap((|| {
        let a = parse_structure(text).map_err(|e| e.to_string())?;
        let cuts = minimal_cuts(&a).map_err(|e| e.to_string())?;
        let ps = pieces(&a).map_err(|e| e.to_string())?;
        Ok(json!({
            "graph": drawing(&a),
            "cuts": cuts.iter().map(|c| names(&a, c)).collect::<Vec<_>>(),
            "pieces": ps.iter().map(|p| json!({
                "cut": p.origin.cut,
                "vertices": p.piece.base.names(),
                "text": serialize_rooted(&p.piece),
            })).collect::<Vec<_>>(),
        }))
    })())
}

pub fn lift_json(structure: &str, family: &str) -> String {
    wrap((|| {
        let a = parse_structure(structure).map_err(|e| format!("structure: {e}"))?;
        let fam: Vec<Structure> = parse_documents(family)
            .map_err(|e| format!("family: {e}"))?
            .into_iter()
            .map(|d| d.structure)
            .collect();
        let catalog = Arc::new(catalog_family(&fam, &cfg()).map_err(|e| e.to_string())?);
        let x = canonical_lift(&a, &catalog, &cfg()).map_err(|e| e.to_string())?;
        let entries: Vec<Value> = catalog
            .entries()
            .iter()
            .enumerate()
            .map(|(i, e)| {
                json!({
                    "index": i,
                    "arity": e.piece.roots.len(),
                    "piece": serialize_rooted(&e.piece),
                    "tuples": x.ext(i).iter().map(|t| names(&a, t)).collect::<Vec<_>>(),
                })
            })
            .collect();
        Ok(json!({ "graph": drawing(&a), "entries": entries, "ext_tuples": x.ext_count() }))
    })())
}

pub fn hom_json(a: &str, b: &str, mode: &str) -> String {
    wrap((|| {
        let a = parse_structure(a).map_err(|e| format!("A: {e}"))?;
        let b = parse_structure(b).map_err(|e| format!("B: {e}"))?;
        let mode: MapMode = mode.parse()?;
        let found = search_map(&a, &b, mode, &[], &cfg()).map_err(|e| e.to_string())?;
        Ok(json!({
            "found": found.is_some(),
            "map": found.map(|m| m.to_named(&a, &b)),
            "a": drawing(&a),
            "b": drawing(&b),
        }))
    })())
}

/// Cuts and pieces of a connected structure.
#[wasm_bindgen]
pub fn analyze(text: &str) -> String {
    analyze_json(text)
}

/// Canonical lift of `structure` over the catalog of `family` (multi-document text).
#[wasm_bindgen]
pub fn lift(structure: &str, family: &str) -> String {
    lift_json(structure, family)
}

/// Searches a map `a -> b`; `mode` is hom, mono or embed.
#[wasm_bindgen]
pub fn hom(a: &str, b: &str, mode: &str) -> String {
    hom_json(a, b, mode)
}
