mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use relift::amalgamation::free_amalgam;
use relift::hom::{core_of, exists_map, search_map, MapMode, SearchConfig};
use relift::lifting::{canonical_lift, induced_lift};
use relift::pieces::{minimal_cuts, PieceCatalog};
use relift::ramsey::{build_ramsey_structure, indicator_product, Reading};
use relift::structures::{canonical_form, RootedStructure, Signature, Structure};

use common::*;

fn cfg() -> SearchConfig {
    SearchConfig::default()
}

/// Loopless graph on `n` vertices with edges chosen by `mask` over the pairs.
fn graph_from_mask(n: usize, mask: &[bool]) -> Structure {
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |w| (u, w)));
    let edges: Vec<(usize, usize)> = pairs.zip(mask.iter()).filter(|(_, &keep)| keep).map(|(e, _)| e).collect();
    Structure::from_edges(Signature::graph(), n, &edges)
}

fn graph(max_n: usize) -> impl Strategy<Value = Structure> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |m| graph_from_mask(n, &m))
    })
}

fn digraph(max_n: usize) -> impl Strategy<Value = Structure> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::weighted(0.3), n * n).prop_map(move |m| {
            let edges: Vec<(usize, usize)> = (0..n * n)
                .filter(|&i| m[i] && i / n != i % n)
                .map(|i| (i / n, i % n))
                .collect();
            Structure::from_edges(Signature::digraph(), n, &edges)
        })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn with_perm(s: impl Strategy<Value = Structure>) -> impl Strategy<Value = (Structure, Vec<usize>)> {
    s.prop_flat_map(|a| {
        let n = a.len();
        (Just(a), permutation(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn search_agrees_with_exhaustive(a in digraph(4), b in digraph(4)) {
        for mode in [MapMode::Hom, MapMode::Mono, MapMode::Embed] {
            let found = search_map(&a, &b, mode, &[], &cfg()).unwrap();
            if let Some(f) = &found {
                prop_assert!(is_map_oracle(&a, &b, &f.assignment, mode));
            }
            prop_assert_eq!(found.is_some(), exhaustive_exists(&a, &b, mode));
        }
    }

    #[test]
    fn homs_compose(a in graph(5), b in graph(5), c in graph(4)) {
        let f = search_map(&a, &b, MapMode::Hom, &[], &cfg()).unwrap();
        let g = search_map(&b, &c, MapMode::Hom, &[], &cfg()).unwrap();
        if let (Some(f), Some(g)) = (f, g) {
            let gf: Vec<usize> = f.assignment.iter().map(|&v| g.assignment[v]).collect();
            prop_assert!(is_map_oracle(&a, &c, &gf, MapMode::Hom));
        }
    }

    #[test]
    fn gaifman_graph_is_symmetric_and_loopless(a in digraph(6)) {
        let adj = a.gaifman_adjacency();
        let oracle = adjacency(&a);
        for (u, ns) in adj.iter().enumerate() {
            prop_assert!(!ns.contains(&u));
            for &w in ns {
                prop_assert!(adj[w].contains(&u));
            }
            prop_assert_eq!(ns.iter().copied().collect::<BTreeSet<_>>(), oracle[u].clone());
        }
    }

    #[test]
    fn components_partition_the_vertices(a in graph(7)) {
        let comps = a.components();
        let all: BTreeSet<usize> = comps.iter().flatten().copied().collect();
        prop_assert_eq!(all.len(), a.len());
        prop_assert_eq!(comps.iter().map(Vec::len).sum::<usize>(), a.len());
        for c in &comps {
            prop_assert!(connected(&a.induced(c).unwrap()));
        }
        prop_assert_eq!(a.is_connected(), connected(&a));
    }

    #[test]
    fn cuts_match_subset_oracle(a in graph(7)) {
        prop_assume!(connected(&a));
        let got: BTreeSet<Vec<usize>> = minimal_cuts(&a).unwrap().into_iter().collect();
        prop_assert_eq!(got, subset_minimal_cuts(&a));
    }

    #[test]
    fn canonical_form_is_an_isomorphism_invariant((a, p) in with_perm(digraph(5))) {
        let b = a.permuted(&p);
        prop_assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn core_is_a_hom_equivalent_retract(a in graph(6)) {
        let core = core_of(&a, &cfg()).unwrap();
        let k = &core.structure;
        prop_assert!(k.len() <= a.len());
        prop_assert!(is_map_oracle(&a, k, &core.retraction, MapMode::Hom));
        for (i, &v) in core.kept.iter().enumerate() {
            prop_assert_eq!(core.retraction[v], i);
        }
        prop_assert!(naive_hom_exists(k, &a));
        let again = core_of(k, &cfg()).unwrap();
        prop_assert_eq!(again.structure.len(), k.len());
    }

    #[test]
    fn free_amalgam_contains_both_sides(a in graph(4), b in graph(4), shared in 0usize..3) {
        let shared = shared.min(a.len()).min(b.len());
        let ids: Vec<usize> = (0..shared).collect();
        let ca = a.induced(&ids).unwrap();
        let cb = b.induced(&ids).unwrap();
        prop_assume!(ca.relations() == cb.relations());
        let am = free_amalgam(&a, &b, &ca, &ids, &ids).unwrap();
        let s = &am.structure;
        prop_assert_eq!(s.len(), a.len() + b.len() - shared);
        prop_assert!(is_map_oracle(&a, s, &am.left, MapMode::Embed));
        prop_assert!(is_map_oracle(&b, s, &am.right, MapMode::Embed));
        prop_assert_eq!(s.tuple_count(), a.tuple_count() + b.tuple_count() - ca.tuple_count());
    }
}

/// Catalog of the odd cycles of length 3 and 5, shared by the lift properties.
fn cycle_catalog() -> Arc<PieceCatalog> {
    let cycle = |n: usize| {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Structure::from_edges(Signature::graph(), n, &edges)
    };
    Arc::new(PieceCatalog::from_family(&[cycle(3), cycle(5)], &cfg()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn lift_matches_brute_force(a in graph(5)) {
        let cat = cycle_catalog();
        let x = canonical_lift(&a, &cat, &cfg()).unwrap();
        let oracle = brute_lift(&a, &cat);
        for (i, ext) in oracle.iter().enumerate() {
            prop_assert_eq!(x.ext(i), ext);
        }
    }

    #[test]
    fn lift_of_substructure_sits_inside_restriction(a in graph(6), mask in any::<u8>()) {
        let subset: Vec<usize> = (0..a.len()).filter(|&v| mask >> v & 1 == 1).collect();
        prop_assume!(!subset.is_empty());
        let cat = cycle_catalog();
        let whole = canonical_lift(&a, &cat, &cfg()).unwrap();
        let restricted = induced_lift(&whole, &subset).unwrap();
        let small = canonical_lift(&a.induced(&subset).unwrap(), &cat, &cfg()).unwrap();
        for i in 0..cat.len() {
            prop_assert!(small.ext(i).is_subset(restricted.ext(i)));
        }
    }

    #[test]
    fn lift_commutes_with_isomorphism((a, p) in with_perm(graph(6))) {
        let cat = cycle_catalog();
        let x = canonical_lift(&a, &cat, &cfg()).unwrap();
        let y = canonical_lift(&a.permuted(&p), &cat, &cfg()).unwrap();
        for i in 0..cat.len() {
            let moved: BTreeSet<Vec<usize>> = x.ext(i).iter().map(|t| t.iter().map(|&v| p[v]).collect()).collect();
            prop_assert_eq!(&moved, y.ext(i));
        }
    }

    #[test]
    fn hom_images_carry_lift_tuples(a in graph(5), b in graph(5)) {
        let cat = cycle_catalog();
        if let Some(f) = search_map(&a, &b, MapMode::Hom, &[], &cfg()).unwrap() {
            let x = canonical_lift(&a, &cat, &cfg()).unwrap();
            let y = canonical_lift(&b, &cat, &cfg()).unwrap();
            for i in 0..cat.len() {
                for t in x.ext(i) {
                    let img: Vec<usize> = t.iter().map(|&v| f.assignment[v]).collect();
                    prop_assert!(y.ext(i).contains(&img));
                }
            }
        }
    }

    #[test]
    fn two_colourable_iff_maps_to_an_edge(a in graph(7)) {
        let k2 = Structure::from_edges(Signature::graph(), 2, &[(0, 1)]);
        prop_assert_eq!(exists_map(&a, &k2, MapMode::Hom, &cfg()).unwrap(), colorable(&a, 2));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn indicator_glues_one_copy_per_tuple(
        big_n in 2usize..6,
        (pattern, r0, r1) in graph(4).prop_flat_map(|g| {
            let n = g.len();
            (Just(g), 0..n, 0..n)
        }),
    ) {
        prop_assume!(r0 != r1);
        let s = build_ramsey_structure(1, 1, big_n, Reading::Corrected).unwrap();
        let rooted = RootedStructure::new(pattern.clone(), vec![r0, r1]).unwrap();
        let ind = indicator_product(&s, &rooted).unwrap();
        let used = ind.correspondence.iter().flatten().count();
        let tuples: Vec<&Vec<usize>> = s.tuples().collect();
        prop_assert_eq!(ind.structure.len(), used + tuples.len() * (pattern.len() - 2));
        for (t, copy) in ind.copies.iter().enumerate() {
            prop_assert!(is_map_oracle(&pattern, &ind.structure, copy, MapMode::Hom));
            prop_assert_eq!(Some(copy[r0]), ind.correspondence[tuples[t][0]]);
            prop_assert_eq!(Some(copy[r1]), ind.correspondence[tuples[t][1]]);
        }
    }
}
