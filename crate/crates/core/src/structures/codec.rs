//! Line-oriented `.rel` text format.
//!
//! ```text
//! # comment
//! signature E/2 sym T/3
//! vertices a b c
//! E a b
//! T a b c
//! roots a b          (rooted structures)
//! catalog cat.rel    (lifts)
//! ext 0 a b          (lifts)
//! ```
//!
//! Several documents may share a file, separated by a line `---`.

use std::sync::Arc;

use thiserror::Error;

use super::{is_canonical_orientation, Signature, Structure, StructureError, Symbol, Tuple};
use crate::structures::RootedStructure;

const KEYWORDS: [&str; 5] = ["signature", "vertices", "roots", "catalog", "ext"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodecError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: symbol {symbol} has arity {expected}, got {found} vertices")]
    ArityMismatch {
        line: usize,
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: undeclared vertex {vertex}")]
    UndeclaredVertex { line: usize, vertex: String },
    #[error("line {line}: {source}")]
    Structure {
        line: usize,
        #[source]
        source: StructureError,
    },
}

impl CodecError {
    pub fn line(&self) -> usize {
        match self {
            CodecError::Syntax { line, .. }
            | CodecError::ArityMismatch { line, .. }
            | CodecError::UndeclaredVertex { line, .. }
            | CodecError::Structure { line, .. } => *line,
        }
    }
}

/// One parsed `.rel` document. `ext` and `catalog` are only meaningful for lifts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub structure: Structure,
    pub roots: Option<Vec<usize>>,
    pub catalog: Option<String>,
    /// `(entry index, tuple)` pairs from `ext` lines.
    pub ext: Vec<(usize, Tuple)>,
    /// Full-line comments, without the leading `#`.
    pub comments: Vec<String>,
}

fn syntax(line: usize, message: impl Into<String>) -> CodecError {
    CodecError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_signature(line: usize, tokens: &[&str]) -> Result<Signature, CodecError> {
    let mut symbols: Vec<Symbol> = Vec::new();
    for tok in tokens {
        if *tok == "sym" {
            let last = symbols
                .last_mut()
                .ok_or_else(|| syntax(line, "`sym` must follow a symbol declaration"))?;
            last.symmetric = true;
            continue;
        }
        let (name, arity) = tok
            .split_once('/')
            .ok_or_else(|| syntax(line, format!("expected <name>/<arity>, got {tok:?}")))?;
        let arity: usize = arity
            .parse()
            .map_err(|_| syntax(line, format!("invalid arity in {tok:?}")))?;
        if KEYWORDS.contains(&name) || name == "sym" {
            return Err(syntax(line, format!("reserved word {name:?} used as symbol")));
        }
        symbols.push(Symbol::new(name, arity, false));
    }
    Signature::new(symbols).map_err(|source| CodecError::Structure { line, source })
}

fn parse_block(lines: &[(usize, &str)]) -> Result<Document, CodecError> {
    let mut structure: Option<Structure> = None;
    let mut have_vertices = false;
    let mut roots = None;
    let mut catalog = None;
    let mut ext = Vec::new();
    let mut comments = Vec::new();

    for &(ln, raw) in lines {
        let trimmed = raw.trim();
        if let Some(c) = trimmed.strip_prefix('#') {
            comments.push(c.trim().to_string());
            continue;
        }
        let body = match raw.find(" #") {
            Some(i) => &raw[..i],
            None => raw,
        };
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let Some((&head, rest)) = tokens.split_first() else {
            continue;
        };
        match head {
            "signature" => {
                if structure.is_some() {
                    return Err(syntax(ln, "duplicate signature line"));
                }
                structure = Some(Structure::empty(Arc::new(parse_signature(ln, rest)?)));
            }
            "catalog" => {
                if rest.len() != 1 {
                    return Err(syntax(ln, "catalog expects one path"));
                }
                catalog = Some(rest[0].to_string());
            }
            "vertices" => {
                let s = structure
                    .as_mut()
                    .ok_or_else(|| syntax(ln, "vertices before signature"))?;
                for v in rest {
                    s.add_vertex(v)
                        .map_err(|source| CodecError::Structure { line: ln, source })?;
                }
                have_vertices = true;
            }
            _ => {
                let s = structure
                    .as_ref()
                    .ok_or_else(|| syntax(ln, format!("{head} before signature")))?;
                if !have_vertices {
                    return Err(syntax(ln, format!("{head} before vertices")));
                }
                let lookup = |names: &[&str]| -> Result<Vec<usize>, CodecError> {
                    names
                        .iter()
                        .map(|n| {
                            s.index_of(n).ok_or_else(|| CodecError::UndeclaredVertex {
                                line: ln,
                                vertex: n.to_string(),
                            })
                        })
                        .collect()
                };
                match head {
                    "roots" => {
                        if roots.is_some() {
                            return Err(syntax(ln, "duplicate roots line"));
                        }
                        roots = Some(lookup(rest)?);
                    }
                    "ext" => {
                        let (idx, vs) = rest
                            .split_first()
                            .ok_or_else(|| syntax(ln, "ext expects an entry index"))?;
                        let idx: usize = idx
                            .parse()
                            .map_err(|_| syntax(ln, format!("invalid entry index {idx:?}")))?;
                        ext.push((idx, lookup(vs)?));
                    }
                    name => {
                        let si = s
                            .signature()
                            .index_of(name)
                            .ok_or_else(|| syntax(ln, format!("unknown symbol {name}")))?;
                        let arity = s.signature().symbol(si).arity;
                        if rest.len() != arity {
                            return Err(CodecError::ArityMismatch {
                                line: ln,
                                symbol: name.to_string(),
                                expected: arity,
                                found: rest.len(),
                            });
                        }
                        let t = lookup(rest)?;
                        structure
                            .as_mut()
                            .expect("checked above")
                            .add_tuple(si, t)
                            .map_err(|source| CodecError::Structure { line: ln, source })?;
                    }
                }
            }
        }
    }
    let line = lines.last().map_or(1, |l| l.0);
    let structure = structure.ok_or_else(|| syntax(line, "missing signature line"))?;
    if let Some(r) = &roots {
        let mut seen = std::collections::BTreeSet::new();
        if !r.iter().all(|v| seen.insert(v)) {
            return Err(CodecError::Structure {
                line,
                source: StructureError::RootsNotDistinct,
            });
        }
    }
    Ok(Document {
        structure,
        roots,
        catalog,
        ext,
        comments,
    })
}

/// Parses every `---`-separated document in `text`.
pub fn parse_documents(text: &str) -> Result<Vec<Document>, CodecError> {
    let mut blocks: Vec<Vec<(usize, &str)>> = vec![Vec::new()];
    for (i, line) in text.lines().enumerate() {
        if line.trim() == "---" {
            blocks.push(Vec::new());
        } else {
            blocks.last_mut().expect("nonempty").push((i + 1, line));
        }
    }
    blocks
        .iter()
        .filter(|b| {
            b.iter()
                .any(|(_, l)| !l.trim().is_empty() && !l.trim().starts_with('#'))
        })
        .map(|b| parse_block(b))
        .collect()
}

/// Parses exactly one document.
pub fn parse_document(text: &str) -> Result<Document, CodecError> {
    let mut docs = parse_documents(text)?;
    match docs.len() {
        1 => Ok(docs.pop().expect("one")),
        0 => Err(syntax(1, "empty input")),
        _ => Err(syntax(1, "expected a single document")),
    }
}

pub fn parse_structure(text: &str) -> Result<Structure, CodecError> {
    parse_document(text).map(|d| d.structure)
}

pub fn parse_rooted(text: &str) -> Result<RootedStructure, CodecError> {
    let d = parse_document(text)?;
    let roots = d.roots.ok_or_else(|| syntax(1, "missing roots line"))?;
    Ok(RootedStructure {
        base: d.structure,
        roots,
    })
}

fn write_body(s: &Structure, out: &mut String) {
    out.push_str("signature");
    for sym in s.signature().symbols() {
        out.push_str(&format!(" {}/{}", sym.name, sym.arity));
        if sym.symmetric {
            out.push_str(" sym");
        }
    }
    out.push('\n');
    out.push_str("vertices");
    for n in s.names() {
        out.push(' ');
        out.push_str(n);
    }
    out.push('\n');
    for (si, rel) in s.relations().iter().enumerate() {
        let sym = s.signature().symbol(si);
        for t in rel {
            if sym.symmetric && !is_canonical_orientation(t) {
                continue;
            }
            out.push_str(&sym.name);
            for &v in t {
                out.push(' ');
                out.push_str(s.name(v));
            }
            out.push('\n');
        }
    }
}

/// Normalized text: signature, vertices in index order, tuples in stored
/// order with one line per symmetric pair.
pub fn serialize(s: &Structure) -> String {
    let mut out = String::new();
    write_body(s, &mut out);
    out
}

pub fn serialize_rooted(r: &RootedStructure) -> String {
    let mut out = serialize(&r.base);
    out.push_str("roots");
    for &v in &r.roots {
        out.push(' ');
        out.push_str(r.base.name(v));
    }
    out.push('\n');
    out
}
