//! Loading structures, families, catalogs and lifts from arguments.
//!
//! An input argument is a path to a `.rel` file, `-` for stdin, or an
//! inline generator such as `gen:cycle:5`, `gen:petersen` or
//! `gen:random:8:0.3` (seeded by `--seed`).

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use relift::hom::SearchConfig;
use relift::lifting::Lift;
use relift::pieces::{catalog_family, PieceCatalog};
use relift::structures::{generate, parse_document, parse_documents, Document, Generator, RootedStructure, Structure};

use crate::report::{input, CliError};

pub fn read_text(arg: &str) -> Result<String, CliError> {
    if arg == "-" {
        return std::io::read_to_string(std::io::stdin()).map_err(|e| input(format!("stdin: {e}")));
    }
    fs::read_to_string(arg).map_err(|e| input(format!("{arg}: {e}")))
}

pub fn parse_generator(spec: &str) -> Result<Generator, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |i: usize| -> Result<usize, CliError> {
        parts
            .get(i)
            .ok_or_else(|| input(format!("generator {spec:?} needs a size")))?
            .parse()
            .map_err(|_| input(format!("bad size in generator {spec:?}")))
    };
    let prob = |i: usize| -> Result<f64, CliError> {
        match parts.get(i) {
            None => Ok(0.3),
            Some(p) => p
                .parse::<f64>()
                .ok()
                .filter(|p| (0.0..=1.0).contains(p))
                .ok_or_else(|| input(format!("bad probability in generator {spec:?}"))),
        }
    };
    let g = match parts[0] {
        "path" => Generator::Path { n: num(1)? },
        "cycle" => Generator::Cycle { n: num(1)? },
        "clique" => Generator::Clique { n: num(1)? },
        "oriented_path" | "oriented-path" => Generator::OrientedPath { n: num(1)? },
        "transitive_tournament" | "transitive-tournament" => Generator::TransitiveTournament { n: num(1)? },
        "petersen" => Generator::Petersen,
        "random" => Generator::Random {
            n: num(1)?,
            p: prob(2)?,
            directed: false,
        },
        "random_directed" | "random-directed" => Generator::Random {
            n: num(1)?,
            p: prob(2)?,
            directed: true,
        },
        other => return Err(input(format!("unknown generator {other:?}"))),
    };
    Ok(g)
}

/// All documents named by one argument.
pub fn load_documents(arg: &str, seed: u64) -> Result<Vec<Document>, CliError> {
    if let Some(spec) = arg.strip_prefix("gen:") {
        let structure = generate(&parse_generator(spec)?, seed)?;
        return Ok(vec![Document {
            structure,
            roots: None,
            catalog: None,
            ext: Vec::new(),
            comments: Vec::new(),
        }]);
    }
    let text = read_text(arg)?;
    parse_documents(&text).map_err(|e| input(format!("{arg}: {e}")))
}

pub fn load_structure(arg: &str, seed: u64) -> Result<Structure, CliError> {
    let mut docs = load_documents(arg, seed)?;
    match docs.len() {
        1 => Ok(docs.remove(0).structure),
        n => Err(input(format!("{arg}: expected one structure, found {n}"))),
    }
}

pub fn load_rooted(arg: &str, seed: u64) -> Result<RootedStructure, CliError> {
    let mut docs = load_documents(arg, seed)?;
    if docs.len() != 1 {
        return Err(input(format!("{arg}: expected one rooted structure")));
    }
    let doc = docs.remove(0);
    let roots = doc.roots.ok_or_else(|| input(format!("{arg}: missing roots line")))?;
    Ok(RootedStructure::new(doc.structure, roots)?)
}

/// Every document of every argument, in order: a finite prefix of the family.
pub fn load_family(args: &[String], seed: u64) -> Result<Vec<Structure>, CliError> {
    let mut family = Vec::new();
    for a in args {
        family.extend(load_documents(a, seed)?.into_iter().map(|d| d.structure));
    }
    if family.is_empty() {
        return Err(input("empty family"));
    }
    let sig = family[0].signature().clone();
    if family.iter().any(|f| **f.signature() != *sig) {
        return Err(input("family members have different signatures"));
    }
    Ok(family)
}

pub fn load_catalog_file(path: &Path) -> Result<PieceCatalog, CliError> {
    let text = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    PieceCatalog::from_text(&text).map_err(|e| input(format!("{}: {e}", path.display())))
}

/// The catalog from `--catalog` if given, otherwise built from the family.
pub fn catalog_for(
    catalog: Option<&str>,
    family: &[Structure],
    cfg: &SearchConfig,
) -> Result<Arc<PieceCatalog>, CliError> {
    match catalog {
        Some(p) => Ok(Arc::new(load_catalog_file(Path::new(p))?)),
        None if family.is_empty() => Err(input("need --catalog or a family (-F)")),
        None => Ok(Arc::new(catalog_family(family, cfg)?)),
    }
}

/// A lift file; its `catalog` line is resolved relative to the file unless
/// `catalog_override` is given.
pub fn load_lift(arg: &str, catalog_override: Option<&str>) -> Result<Lift, CliError> {
    let text = read_text(arg)?;
    let doc = parse_document(&text).map_err(|e| input(format!("{arg}: {e}")))?;
    let catalog_path: PathBuf = match (catalog_override, &doc.catalog) {
        (Some(p), _) => PathBuf::from(p),
        (None, Some(p)) => {
            let p = PathBuf::from(p);
            match Path::new(arg).parent() {
                Some(dir) if p.is_relative() && arg != "-" => dir.join(p),
                _ => p,
            }
        }
        (None, None) => return Err(input(format!("{arg}: lift has no catalog line; pass --catalog"))),
    };
    let catalog = Arc::new(load_catalog_file(&catalog_path)?);
    Ok(Lift::from_document(doc, catalog)?)
}

/// Splits `a,b,c` (or whitespace) into names.
pub fn split_names(list: &str) -> Vec<String> {
    list.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

/// Parses `a=x,b=y` into index pairs.
pub fn parse_pairs(list: &str, a: &Structure, b: &Structure) -> Result<Vec<(usize, usize)>, CliError> {
    split_names(list)
        .iter()
        .map(|pair| {
            let (x, y) = pair
                .split_once('=')
                .ok_or_else(|| input(format!("expected source=target, got {pair:?}")))?;
            let i = a.index_of(x).ok_or_else(|| input(format!("unknown vertex {x:?}")))?;
            let j = b.index_of(y).ok_or_else(|| input(format!("unknown vertex {y:?}")))?;
            Ok((i, j))
        })
        .collect()
}

pub fn names(s: &Structure, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| s.name(v).to_string()).collect()
}
