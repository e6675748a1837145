use std::fmt::Write as _;
use std::fs;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use relift::amalgamation::{free_amalgam, lift_amalgam, sample_problem, AmalgamError, AmalgamProblem, Witness};
use relift::duality::{
    has_finite_hom_universal, hom_universal_check, is_relational_tree, random_planar, verify_dual_pair, DualVerdict,
    Scope,
};
use relift::fraisse::{continue_growth, grow_generic, probe_against, probe_sample, Budgets, GrowthState};
use relift::hom::{core_of, count_maps, forb_membership, minimize_family, search_map, MapMode, SearchConfig};
use relift::lifting::{canonical_lift, induced_lift, induced_lift_by_names, membership_in_l, shadow, Lift, MembershipVerdict};
use relift::pieces::{catalog_family, family_predicates, minimal_cuts, minimal_cuts_bounded, pieces, PieceCatalog};
use relift::ramsey::{
    build_counterexample, build_ramsey_structure, indicator_product, verify_ramsey_properties, RamseyStructure, VerifyMode,
};
use relift::structures::{generate, iso_check, serialize, serialize_rooted, Structure, DEFAULT_ISO_BOUND};

use crate::args::{CatalogSource, Command, CorpusArgs, Global, RamseyArgs};
use crate::inputs::{
    catalog_for, load_documents, load_family, load_lift, load_rooted, load_structure, names, parse_generator,
    parse_pairs, split_names,
};
use crate::report::{input, CliError, Report, Status};

type Outcome = Result<Report, CliError>;

pub fn run(cmd: &Command, g: &Global, cfg: &SearchConfig) -> Outcome {
    let seed = g.seed;
    match cmd {
        Command::Validate { inputs } => validate(inputs, seed),
        Command::Gaifman { input } => structure_out(&load_structure(input, seed)?.gaifman()),
        Command::Components { input } => {
            let a = load_structure(input, seed)?;
            let comps: Vec<Vec<String>> = a.components().iter().map(|c| names(&a, c)).collect();
            let text = comps.iter().map(|c| c.join(" ") + "\n").collect::<String>();
            Ok(Report::ok(json!({ "components": comps }), text))
        }
        Command::Induced { input, vertices } => {
            let a = load_structure(input, seed)?;
            structure_out(&a.induced_by_names(&split_names(vertices))?)
        }
        Command::Union { a, b } => {
            let (a, b) = (load_structure(a, seed)?, load_structure(b, seed)?);
            structure_out(&a.disjoint_union(&b)?)
        }
        Command::Generate { name, n, p } => {
            let spec = format!("{name}:{n}:{p}");
            structure_out(&generate(&parse_generator(&spec)?, seed)?)
        }
        Command::Iso { a, b } => {
            let (a, b) = (load_structure(a, seed)?, load_structure(b, seed)?);
            let found = iso_check(&a, &b, DEFAULT_ISO_BOUND, cfg)?;
            map_report(&a, &b, found.as_deref(), "isomorphism")
        }
        Command::Hom { a, b, mode, fix } => {
            let (a, b) = (load_structure(a, seed)?, load_structure(b, seed)?);
            let partial = match fix {
                Some(f) => parse_pairs(f, &a, &b)?,
                None => Vec::new(),
            };
            let mode = MapMode::from(*mode);
            let found = search_map(&a, &b, mode, &partial, cfg)?;
            map_report(&a, &b, found.as_ref().map(|m| m.assignment.as_slice()), mode_name(mode))
        }
        Command::Count { a, b, mode } => {
            let (a, b) = (load_structure(a, seed)?, load_structure(b, seed)?);
            let n = count_maps(&a, &b, MapMode::from(*mode), cfg)?;
            Ok(Report::ok(json!({ "count": n }), format!("{n}\n")))
        }
        Command::Forbh { input, family } => forb(input, family, MapMode::Hom, seed, cfg),
        Command::Forbe { input, family } => forb(input, family, MapMode::Embed, seed, cfg),
        Command::Core { input } => {
            let a = load_structure(input, seed)?;
            let core = core_of(&a, cfg)?;
            let retraction: serde_json::Map<String, Value> = core
                .retraction
                .iter()
                .enumerate()
                .map(|(v, &c)| (a.name(v).to_string(), json!(core.structure.name(c))))
                .collect();
            let text = serialize(&core.structure);
            Ok(Report::ok(
                json!({ "core": text, "size": core.structure.len(), "retraction": retraction }),
                text.clone(),
            ))
        }
        Command::Minimize { family } => {
            let fam = load_family(family, seed)?;
            let min = minimize_family(&fam, cfg)?;
            let docs: Vec<String> = min.iter().map(serialize).collect();
            let text = docs.join("---\n");
            Ok(Report::ok(json!({ "family": docs, "prefix": fam.len() }), text))
        }
        Command::Cuts { input, bound } => {
            let a = load_structure(input, seed)?;
            let cuts = match bound {
                Some(b) => minimal_cuts_bounded(&a, *b)?,
                None => minimal_cuts(&a)?,
            };
            let named: Vec<Vec<String>> = cuts.iter().map(|c| names(&a, c)).collect();
            let text = named.iter().map(|c| c.join(" ") + "\n").collect::<String>();
            Ok(Report::ok(json!({ "cuts": named }), text))
        }
        Command::Pieces { input } => {
            let a = load_structure(input, seed)?;
            let ps = pieces(&a)?;
            let mut text = String::new();
            let items: Vec<Value> = ps
                .iter()
                .map(|p| {
                    let body = serialize_rooted(&p.piece);
                    let _ = write!(text, "# cut {} component {}\n{body}---\n", p.origin.cut.join(" "), p.origin.component);
                    json!({ "piece": body, "cut": p.origin.cut, "component": p.origin.component })
                })
                .collect();
            Ok(Report::ok(json!({ "pieces": items }), text))
        }
        Command::Catalog { family, out } => {
            let fam = load_family(family, seed)?;
            let cat = catalog_family(&fam, cfg)?;
            let text = cat.to_text();
            if let Some(path) = out {
                fs::write(path, &text).map_err(|e| input(format!("{}: {e}", path.display())))?;
            }
            Ok(Report::ok(
                json!({ "entries": cat.len(), "arities": cat.arities(), "prefix": fam.len(), "catalog": text }),
                if out.is_some() { format!("{} entries\n", cat.len()) } else { text.clone() },
            ))
        }
        Command::Predicates { family } => {
            let p = family_predicates(&load_family(family, seed)?)?;
            let text = format!(
                "max_min_cut_size {}\nall_cuts_singleton {}\ncuts_induce_irreducible {}\n",
                p.max_min_cut_size, p.all_cuts_singleton, p.cuts_induce_irreducible
            );
            Ok(Report::ok(serde_json::to_value(&p).expect("serializable"), text))
        }
        Command::Lift { input: a, source, catalog_out } => lift(a, source, catalog_out.as_deref(), seed, cfg),
        Command::Shadow { lift, catalog } => structure_out(&shadow(&load_lift(lift, catalog.as_deref())?)),
        Command::LiftInduce { lift, vertices, catalog } => {
            let x = load_lift(lift, catalog.as_deref())?;
            let sub = induced_lift_by_names(&x, &split_names(vertices))?;
            lift_out(&sub, catalog_ref(lift, catalog.as_deref()))
        }
        Command::LiftMember { lift, family, size_bound, catalog } => {
            let x = load_lift(lift, catalog.as_deref())?;
            let fam = load_family(family, seed)?;
            let verdict = membership_in_l(&x, &fam, *size_bound, cfg)?;
            let status = match &verdict {
                MembershipVerdict::Member { .. } => Status::True,
                MembershipVerdict::NonMemberUpTo { .. } => Status::False,
                MembershipVerdict::Unknown { .. } => Status::Unknown,
            };
            let mut fields = serde_json::to_value(&verdict).expect("serializable");
            let text = match &verdict {
                MembershipVerdict::Member { witness, .. } => {
                    fields["witness"] = json!(serialize(witness));
                    format!("member\n{}", serialize(witness))
                }
                MembershipVerdict::NonMemberUpTo { bound } => format!("no witness with up to {bound} extra vertices\n"),
                MembershipVerdict::Unknown { reason } => format!("unknown: {reason}\n"),
            };
            if let Some(obj) = fields.as_object_mut() {
                let tag = obj.remove("status").unwrap_or(Value::Null);
                obj.insert("verdict".into(), tag);
            }
            Ok(Report::new(status, fields, text))
        }
        Command::Amalgam { a, b, shared } => {
            let (a, b) = (load_structure(a, seed)?, load_structure(b, seed)?);
            let pairs = parse_pairs(shared, &a, &b)?;
            let (ca, cb): (Vec<usize>, Vec<usize>) = pairs.into_iter().unzip();
            let c = a.induced(&ca)?;
            let am = free_amalgam(&a, &b, &c, &ca, &cb)?;
            structure_out(&am.structure)
        }
        Command::LiftAmalgam {
            a,
            b,
            shared,
            family,
            random,
            max_size,
        } => {
            let fam = load_family(family, seed)?;
            let catalog = Arc::new(catalog_family(&fam, cfg)?);
            match random {
                Some(count) => random_amalgams(*count, *max_size, &fam, &catalog, seed, cfg),
                None => {
                    let (Some(a), Some(b)) = (a, b) else {
                        return Err(input("lift-amalgam needs A and B, or --random"));
                    };
                    let prob = problem_from_files(a, b, shared, &catalog, seed, cfg)?;
                    amalgam_report(&prob, &fam, cfg)
                }
            }
        }
        Command::Grow {
            family,
            max_vertices,
            rounds,
            max_demand,
            checkpoint,
            resume,
        } => {
            let fam = load_family(family, seed)?;
            let budgets = Budgets {
                max_vertices: *max_vertices,
                rounds: *rounds,
                max_demand_size: *max_demand,
            };
            grow(&fam, budgets, checkpoint.as_deref(), resume.as_deref(), seed, cfg)
        }
        Command::Probe {
            family,
            budgets,
            sample,
            max_test_size,
        } => probe(&load_family(family, seed)?, budgets, *sample, *max_test_size, seed, cfg),
        Command::TreeCheck { inputs } => {
            let fam = load_family(inputs, seed)?;
            let trees: Vec<bool> = fam.iter().map(is_relational_tree).collect();
            let universal = has_finite_hom_universal(&fam, cfg)?;
            let all = trees.iter().all(|&t| t);
            let text = format!(
                "trees {}\nfinite_hom_universal {universal}\n",
                trees.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ")
            );
            Ok(Report::new(
                Status::of(all),
                json!({ "trees": trees, "finite_hom_universal": universal }),
                text,
            ))
        }
        Command::DualVerify {
            family,
            dual,
            exhaustive,
            loops,
            corpus,
        } => {
            let fam = load_family(std::slice::from_ref(family), seed)?;
            let d = load_structure(dual, seed)?;
            let scope = match exhaustive {
                Some(max_size) => Scope::Exhaustive {
                    max_size: *max_size,
                    loops: *loops,
                },
                None => Scope::Corpus(load_corpus(corpus, seed)?),
            };
            dual_report(verify_dual_pair(&fam, &d, &scope, cfg)?)
        }
        Command::RestrictedDual { family, dual, corpus } => {
            let fam = load_family(std::slice::from_ref(family), seed)?;
            let d = load_structure(dual, seed)?;
            let scope = Scope::Corpus(load_corpus(corpus, seed)?);
            dual_report(verify_dual_pair(&fam, &d, &scope, cfg)?)
        }
        Command::HomUniversal { dual, corpus } => {
            let d = load_structure(dual, seed)?;
            let v = hom_universal_check(&d, &load_corpus(corpus, seed)?, cfg)?;
            let status = if !v.failures.is_empty() {
                Status::False
            } else if !v.unknown.is_empty() {
                Status::Unknown
            } else {
                Status::True
            };
            let text = format!(
                "checked {}\nfailures {:?}\nunknown {:?}\n",
                v.checked, v.failures, v.unknown
            );
            Ok(Report::new(status, serde_json::to_value(&v).expect("serializable"), text))
        }
        Command::Ramsey { params } => {
            let s = ramsey(params)?;
            let text = serialize(&s.base);
            Ok(Report::ok(
                json!({ "structure": text, "vertices": s.base.len(), "tuples": s.base.tuple_count(), "params": s.params }),
                text.clone(),
            ))
        }
        Command::RamseyVerify { params, trials, cap } => {
            let s = ramsey(params)?;
            let mode = match trials {
                Some(trials) => VerifyMode::Sampled { trials: *trials, seed },
                None => VerifyMode::Exhaustive { cap: *cap },
            };
            let r = match verify_ramsey_properties(&s, &mode) {
                Err(relift::ramsey::RamseyError::CapExceeded { colorings, cap }) => {
                    return Err(CliError::Unknown(format!("{colorings} colorings exceed cap {cap}")))
                }
                other => other?,
            };
            let mut fields = serde_json::to_value(&r).expect("serializable");
            if let Some(c) = &r.counterexample {
                let named: serde_json::Map<String, Value> =
                    c.iter().enumerate().map(|(v, &col)| (s.base.name(v).to_string(), json!(col))).collect();
                fields["counterexample"] = Value::Object(named);
            }
            let mut text = format!(
                "property_1 {}\nproperty_2 {}\nproperty_3 {}\nproperty_4 {}\n",
                r.property_1, r.property_2, r.property_3, r.property_4
            );
            if let Some(c) = &r.counterexample {
                text.push_str("coloring");
                for (v, col) in c.iter().enumerate() {
                    let _ = write!(text, " {}={col}", s.base.name(v));
                }
                text.push('\n');
            }
            Ok(Report::new(Status::of(r.all_pass()), fields, text))
        }
        Command::Indicator { params, pattern } => {
            let s = ramsey(params)?;
            let p = load_rooted(pattern, seed)?;
            let ind = indicator_product(&s, &p)?;
            let text = serialize(&ind.structure);
            Ok(Report::ok(
                json!({ "structure": text, "vertices": ind.structure.len(), "copies": ind.copies.len() }),
                text.clone(),
            ))
        }
        Command::Counterexample {
            family,
            member,
            cut,
            k,
            big_n,
        } => counterexample(&load_family(family, seed)?, *member, cut.as_deref(), *k, *big_n, cfg),
    }
}

fn mode_name(m: MapMode) -> &'static str {
    match m {
        MapMode::Hom => "homomorphism",
        MapMode::Mono => "monomorphism",
        MapMode::Embed => "embedding",
    }
}

fn structure_out(s: &Structure) -> Outcome {
    let text = serialize(s);
    Ok(Report::ok(
        json!({ "structure": text, "vertices": s.len(), "tuples": s.tuple_count() }),
        text.clone(),
    ))
}

fn map_report(a: &Structure, b: &Structure, found: Option<&[usize]>, what: &str) -> Outcome {
    Ok(match found {
        Some(f) => {
            let map: serde_json::Map<String, Value> =
                f.iter().enumerate().map(|(v, &w)| (a.name(v).to_string(), json!(b.name(w)))).collect();
            let text = f
                .iter()
                .enumerate()
                .map(|(v, &w)| format!("{} -> {}\n", a.name(v), b.name(w)))
                .collect::<String>();
            Report::ok(json!({ "map": map }), text)
        }
        None => Report::new(Status::False, json!({ "map": null }), format!("no {what}\n")),
    })
}

fn validate(inputs: &[String], seed: u64) -> Outcome {
    let mut docs = Vec::new();
    let mut text = String::new();
    for arg in inputs {
        for (i, d) in load_documents(arg, seed)?.iter().enumerate() {
            let kind = if d.catalog.is_some() {
                "lift"
            } else if d.roots.is_some() {
                "rooted"
            } else {
                "structure"
            };
            let _ = writeln!(
                text,
                "{arg}#{i}: {kind}, {} vertices, {} tuples",
                d.structure.len(),
                d.structure.tuple_count()
            );
            docs.push(json!({
                "input": arg,
                "index": i,
                "kind": kind,
                "vertices": d.structure.len(),
                "tuples": d.structure.tuple_count(),
            }));
        }
    }
    Ok(Report::ok(json!({ "documents": docs }), text))
}

fn forb(a: &str, family: &[String], mode: MapMode, seed: u64, cfg: &SearchConfig) -> Outcome {
    let a = load_structure(a, seed)?;
    let fam = load_family(family, seed)?;
    let v = forb_membership(&a, &fam, mode, cfg)?;
    Ok(match v.violation {
        None => Report::ok(json!({ "member": true, "prefix": fam.len() }), "member\n"),
        Some((i, m)) => {
            let map = m.to_named(&fam[i], &a);
            let text = format!("not a member: family member {i} maps in\n")
                + &map.iter().map(|(s, t)| format!("{s} -> {t}\n")).collect::<String>();
            Report::new(
                Status::False,
                json!({ "member": false, "prefix": fam.len(), "violation": { "family_member": i, "map": map } }),
                text,
            )
        }
    })
}

/// Path to record in a lift file derived from `lift_arg`.
fn catalog_ref(lift_arg: &str, over: Option<&str>) -> String {
    if let Some(p) = over {
        return p.to_string();
    }
    fs::read_to_string(lift_arg)
        .ok()
        .and_then(|t| {
            t.lines()
                .find_map(|l| l.trim().strip_prefix("catalog ").map(|p| p.trim().to_string()))
        })
        .unwrap_or_else(|| "catalog.rel".into())
}

fn lift_out(x: &Lift, catalog_path: String) -> Outcome {
    let text = x.to_text(&catalog_path);
    Ok(Report::ok(
        json!({ "lift": text, "vertices": x.len(), "ext_tuples": x.ext_count(), "catalog_entries": x.catalog().len() }),
        text.clone(),
    ))
}

fn lift(a: &str, source: &CatalogSource, catalog_out: Option<&std::path::Path>, seed: u64, cfg: &SearchConfig) -> Outcome {
    let s = load_structure(a, seed)?;
    let fam = if source.catalog.is_some() {
        Vec::new()
    } else {
        load_family(&source.family, seed)?
    };
    let catalog = catalog_for(source.catalog.as_deref(), &fam, cfg)?;
    let path = match (&source.catalog, catalog_out) {
        (Some(p), _) => p.clone(),
        (None, Some(out)) => {
            fs::write(out, catalog.to_text()).map_err(|e| input(format!("{}: {e}", out.display())))?;
            out.display().to_string()
        }
        (None, None) => "catalog.rel".into(),
    };
    let x = canonical_lift(&s, &catalog, cfg)?;
    let mut report = lift_out(&x, path)?;
    if !fam.is_empty() {
        report.fields.insert("prefix".into(), json!(fam.len()));
    }
    Ok(report)
}

fn problem_from_files(
    a: &str,
    b: &str,
    shared: &str,
    catalog: &Arc<PieceCatalog>,
    seed: u64,
    cfg: &SearchConfig,
) -> Result<AmalgamProblem, CliError> {
    let (a, b) = (load_structure(a, seed)?, load_structure(b, seed)?);
    let pairs = parse_pairs(shared, &a, &b)?;
    let (ca, cb): (Vec<usize>, Vec<usize>) = pairs.into_iter().unzip();
    let x = canonical_lift(&a, catalog, cfg)?;
    let y = canonical_lift(&b, catalog, cfg)?;
    let z = induced_lift(&x, &ca)?;
    Ok(AmalgamProblem {
        wx: Witness {
            placement: (0..a.len()).collect(),
            structure: a,
        },
        wy: Witness {
            placement: (0..b.len()).collect(),
            structure: b,
        },
        x,
        y,
        z,
        z_in_x: ca,
        z_in_y: cb,
    })
}

fn amalgam_report(prob: &AmalgamProblem, fam: &[Structure], cfg: &SearchConfig) -> Outcome {
    match lift_amalgam(prob, fam, cfg) {
        Ok(am) => {
            let text = format!(
                "claim_i pass\nclaim_ii pass\n{}",
                am.lift.to_text("catalog.rel")
            );
            Ok(Report::ok(
                json!({ "report": am.report, "lift": am.lift.to_text("catalog.rel") }),
                text,
            ))
        }
        Err(AmalgamError::ClaimViolation(report)) => Ok(Report::new(
            Status::False,
            json!({ "report": report }),
            format!("claim_i {:?}\nclaim_ii {:?}\n", report.claim_i, report.claim_ii),
        )),
        Err(e) => Err(e.into()),
    }
}

fn random_amalgams(
    count: usize,
    max_size: usize,
    fam: &[Structure],
    catalog: &Arc<PieceCatalog>,
    seed: u64,
    cfg: &SearchConfig,
) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut passed, mut failed, mut unknown) = (0usize, Vec::new(), 0usize);
    for i in 0..count {
        let prob = sample_problem(fam, catalog, max_size, &mut rng, cfg)?;
        match lift_amalgam(&prob, fam, cfg) {
            Ok(_) => passed += 1,
            Err(AmalgamError::ClaimViolation(_)) => failed.push(i),
            Err(e) if e.is_budget() => unknown += 1,
            Err(e) => return Err(e.into()),
        }
    }
    let status = if !failed.is_empty() {
        Status::False
    } else if unknown > 0 {
        Status::Unknown
    } else {
        Status::True
    };
    Ok(Report::new(
        status,
        json!({ "problems": count, "passed": passed, "failed": failed, "unknown": unknown }),
        format!("problems {count}\npassed {passed}\nfailed {}\nunknown {unknown}\n", failed.len()),
    ))
}

const CKPT_LIFT: &str = "state.rel";
const CKPT_CATALOG: &str = "catalog.rel";
const CKPT_META: &str = "state.json";

fn grow(
    fam: &[Structure],
    budgets: Budgets,
    checkpoint: Option<&std::path::Path>,
    resume: Option<&std::path::Path>,
    seed: u64,
    cfg: &SearchConfig,
) -> Outcome {
    let io = |p: &std::path::Path, e: std::io::Error| input(format!("{}: {e}", p.display()));
    let state = match resume {
        Some(dir) => {
            let read = |name: &str| fs::read_to_string(dir.join(name)).map_err(|e| io(&dir.join(name), e));
            let catalog = Arc::new(PieceCatalog::from_text(&read(CKPT_CATALOG)?)?);
            let mut state = GrowthState::restore(&read(CKPT_LIFT)?, &read(CKPT_META)?, catalog)?;
            state.budgets = budgets;
            state.stop = None;
            continue_growth(&mut state, fam, cfg)?;
            state
        }
        None => grow_generic(fam, Arc::new(catalog_family(fam, cfg)?), budgets, seed, cfg)?,
    };
    if let Some(dir) = checkpoint {
        fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
        let (lift_text, meta) = state.checkpoint(CKPT_CATALOG);
        for (name, body) in [
            (CKPT_LIFT, lift_text),
            (CKPT_META, meta),
            (CKPT_CATALOG, state.current.catalog().to_text()),
        ] {
            fs::write(dir.join(name), body).map_err(|e| io(&dir.join(name), e))?;
        }
    }
    let sh = serialize(state.shadow());
    let text = format!(
        "rounds {}\nvertices {}\nrealized {}\nskipped {}\nstop {:?}\n{sh}",
        state.round,
        state.shadow().len(),
        state.realized.len(),
        state.skipped,
        state.stop
    );
    Ok(Report::ok(
        json!({
            "rounds": state.round,
            "vertices": state.shadow().len(),
            "realized": state.realized.len(),
            "skipped": state.skipped,
            "history": state.history,
            "stop": state.stop,
            "shadow": sh,
            "prefix": fam.len(),
        }),
        text,
    ))
}

fn probe(
    fam: &[Structure],
    budgets: &str,
    sample_size: usize,
    max_test_size: usize,
    seed: u64,
    cfg: &SearchConfig,
) -> Outcome {
    let sizes: Vec<usize> = split_names(budgets)
        .iter()
        .map(|b| b.parse().map_err(|_| input(format!("bad budget {b:?}"))))
        .collect::<Result<_, _>>()?;
    if sizes.is_empty() {
        return Err(input("no budgets"));
    }
    let catalog = Arc::new(catalog_family(fam, cfg)?);
    let sample = probe_sample(fam, sample_size, max_test_size, seed, cfg)?;
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut fractions = Vec::new();
    let mut unknown = false;
    for &max_vertices in &sizes {
        let budgets = Budgets {
            max_vertices,
            ..Budgets::default()
        };
        let state = grow_generic(fam, catalog.clone(), budgets, seed, cfg)?;
        let r = probe_against(state.shadow(), &sample, cfg)?;
        unknown |= !r.unknown.is_empty();
        let _ = writeln!(
            text,
            "budget {max_vertices}: vertices {} fraction {:.3}",
            state.shadow().len(),
            r.fraction
        );
        fractions.push(r.fraction);
        rows.push(json!({ "budget": max_vertices, "vertices": state.shadow().len(), "report": r }));
    }
    let monotone = fractions.windows(2).all(|w| w[0] <= w[1]);
    let _ = writeln!(text, "monotone {monotone}");
    let status = if !monotone {
        Status::False
    } else if unknown {
        Status::Unknown
    } else {
        Status::True
    };
    Ok(Report::new(status, json!({ "probes": rows, "monotone": monotone }), text))
}

fn load_corpus(c: &CorpusArgs, seed: u64) -> Result<Vec<Structure>, CliError> {
    let mut out = Vec::new();
    for arg in &c.corpus {
        out.extend(load_documents(arg, seed)?.into_iter().map(|d| d.structure));
    }
    if let Some(count) = c.planar {
        if c.max_n < 1 || !(0.0..=1.0).contains(&c.delete_p) {
            return Err(input("planar corpus needs --max-n >= 1 and --delete-p in [0, 1]"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..count {
            let n = rng.gen_range(1..=c.max_n);
            out.push(random_planar(n, c.delete_p, &mut rng));
        }
    }
    if out.is_empty() {
        return Err(input("empty corpus: pass --corpus or --planar"));
    }
    Ok(out)
}

fn dual_report(v: DualVerdict) -> Outcome {
    let text = match &v.counterexample {
        None => format!("pass ({} structures checked)\n", v.checked),
        Some(c) => format!("fail: {:?}\n{}", c.side, serialize(&c.structure)),
    };
    Ok(Report::new(Status::of(v.passed()), v.to_json(), text))
}

fn ramsey(p: &RamseyArgs) -> Result<RamseyStructure, CliError> {
    Ok(build_ramsey_structure(p.n, p.k, p.big_n, p.reading.into())?)
}

fn counterexample(
    fam: &[Structure],
    member: usize,
    cut: Option<&str>,
    k: usize,
    big_n: Option<usize>,
    cfg: &SearchConfig,
) -> Outcome {
    let m = fam
        .get(member)
        .ok_or_else(|| input(format!("family has {} members, no index {member}", fam.len())))?;
    let cut: Vec<usize> = match cut {
        Some(names) => m.indices_of(&split_names(names))?,
        None => minimal_cuts(m)?
            .into_iter()
            .find(|c| c.len() >= 2)
            .ok_or_else(|| input("member has no minimal cut of size >= 2"))?,
    };
    let n = cut.len();
    let s = build_ramsey_structure(n, k, big_n.unwrap_or(2 * n + 1), relift::ramsey::Reading::Corrected)?;
    let g = build_counterexample(fam, m, &cut, &s, cfg)?;
    let d = serialize(&g.indicator.structure);
    let text = format!(
        "S vertices {}\nD vertices {}\ncopies {}\nprojection_is_hom {}\nno_member_maps_in {}\n{d}",
        s.base.len(),
        g.report.d_vertices,
        g.report.copies,
        g.report.projection_is_hom,
        g.report.member_maps_into_d.iter().all(|&b| !b)
    );
    Ok(Report::new(
        Status::of(g.report.pass),
        json!({
            "report": g.report,
            "ramsey_vertices": s.base.len(),
            "cut": names(m, &cut),
            "structure": d,
        }),
        text,
    ))
}
