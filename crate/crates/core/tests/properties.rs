use proptest::prelude::*;
use zeta_kit_core::bounds::{caro_wei, component_lambdas, min_degree_independent_subset, strong_bound_component, turan_zeta, z_bound, z_term};
use zeta_kit_core::degeneracy::{cheap_vertices, is_zeta_regular, layer_decomposition, zeta_oracle, zeta_profile};
use zeta_kit_core::generate::{generate, GeneratorSpec};
use zeta_kit_core::greedy::{cheap_greedy, min_greedy, one_cheap_greedy, two_cheap_greedy, GreedyRun};
use zeta_kit_core::oracle::{alpha0_branch_and_bound, alpha0_enumeration, is_in_family_f, zeta_exhaustive};
use zeta_kit_core::rational::{self, ceil_usize};
use zeta_kit_core::{smallest_last_order, Graph, VertexSet};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = if n < 2 { 0 } else { n * (n - 1) / 2 };
        (Just(n), proptest::collection::vec(any::<bool>(), pairs)).prop_map(|(n, bits)| {
            let all = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::new(n, all.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

fn subset_strategy(g: Graph) -> impl Strategy<Value = (Graph, VertexSet)> {
    let n = g.vertex_count();
    (Just(g), proptest::collection::vec(any::<bool>(), n))
        .prop_map(|(g, bits)| (g, (0..bits.len()).filter(|&v| bits[v]).collect()))
}

/// Replays a run and re-checks each round against the residual graph.
fn check_run(graph: &Graph, run: &GreedyRun) {
    assert!(graph.induced_max_degree(&run.chosen) <= run.level);
    assert!(run.chosen.len() >= ceil_usize(&run.certificate));
    let level_bound = z_bound(&zeta_profile(graph), run.level + 1).unwrap();
    assert!(run.certificate >= level_bound, "{} < {}", run.certificate, level_bound);

    let mut removed = vec![false; graph.vertex_count()];
    for step in &run.trace {
        let alive: VertexSet = graph.vertices().filter(|&v| !removed[v]).collect();
        let (residual, map) = graph.induced_subgraph(&alive);
        let profile = zeta_profile(&residual);
        let picked: VertexSet = step.picked.iter().map(|v| map.to_new(v).unwrap()).collect();
        let closed = map.set_to_old(&residual.closed_neighborhood(&picked));
        assert_eq!(closed, step.removed);
        let z_share: rational::Rational = residual
            .closed_neighborhood(&picked)
            .iter()
            .map(|v| z_term(profile.get(v), run.level + 1))
            .sum();
        assert!(z_share <= rational::from_usize(picked.len()));
        if let Some(c) = &step.contribution {
            assert!(*c <= rational::from_usize(picked.len()), "{c} for {step:?}");
        }
        for v in step.removed.iter() {
            assert!(!removed[v]);
            removed[v] = true;
        }
    }
    assert!(removed.iter().all(|&r| r));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn residual_degrees_match_brute_force(g in graph_strategy(24)) {
        let result = smallest_last_order(&g);
        let mut alive = vec![true; g.vertex_count()];
        for (&v, &d) in result.order.iter().zip(&result.residual_degrees) {
            let brute = g.neighbors(v).iter().filter(|&&w| alive[w]).count();
            prop_assert_eq!(d, brute);
            let min = g.vertices().filter(|&w| alive[w]).map(|w| g.neighbors(w).iter().filter(|&&x| alive[x]).count()).min();
            prop_assert_eq!(Some(d), min);
            alive[v] = false;
        }
    }

    #[test]
    fn removing_nothing_preserves_graph(g in graph_strategy(20)) {
        let (h, map) = g.remove_vertices(&VertexSet::new());
        prop_assert_eq!(h.vertex_count(), g.vertex_count());
        prop_assert_eq!(h.edge_count(), g.edge_count());
        prop_assert_eq!(map.new_to_old, (0..g.vertex_count()).collect::<Vec<_>>());
    }

    #[test]
    fn closed_neighborhood_contains_set((g, s) in graph_strategy(20).prop_flat_map(subset_strategy)) {
        prop_assert!(s.is_subset(&g.closed_neighborhood(&s)));
    }

    #[test]
    fn zeta_matches_oracles(g in graph_strategy(30)) {
        let profile = zeta_profile(&g);
        prop_assert_eq!(&profile.zeta, &zeta_oracle(&g));
        if g.vertex_count() <= 12 {
            prop_assert_eq!(&profile.zeta, &zeta_exhaustive(&g).unwrap());
        }
    }

    #[test]
    fn zeta_is_monotone_under_induced_subgraphs((g, s) in graph_strategy(24).prop_flat_map(subset_strategy)) {
        let full = zeta_profile(&g);
        let (h, map) = g.induced_subgraph(&s);
        let sub = zeta_profile(&h);
        for v in h.vertices() {
            prop_assert!(sub.get(v) <= full.get(map.to_old(v)));
        }
    }

    #[test]
    fn cheap_vertices_include_minimum_degree(g in graph_strategy(24)) {
        let cheap = cheap_vertices(&g);
        if let Some(low) = g.min_degree() {
            for v in g.vertices().filter(|&v| g.degree(v) == low) {
                prop_assert!(cheap.contains(v));
            }
        }
    }

    #[test]
    fn layers_partition_vertices(g in graph_strategy(24)) {
        let layers = layer_decomposition(&g);
        let mut seen = vec![0; g.vertex_count()];
        let mut removed = VertexSet::new();
        for (i, layer) in layers.layers.iter().enumerate() {
            let (residual, map) = g.remove_vertices(&removed);
            prop_assert_eq!(&map.set_to_old(&cheap_vertices(&residual)), layer);
            for v in layer.iter() {
                seen[v] += 1;
                prop_assert_eq!(layers.layer_of[v], i);
            }
            removed = removed.union(layer);
        }
        prop_assert!(seen.iter().all(|&c| c == 1));
    }

    #[test]
    fn z1_dominates_classic_bounds(g in graph_strategy(24)) {
        let profile = zeta_profile(&g);
        let z1 = z_bound(&profile, 1).unwrap();
        prop_assert!(z1 >= caro_wei(&g));
        if let Ok(t) = turan_zeta(&g, &profile) {
            prop_assert!(z1 >= t);
        }
        prop_assert_eq!(z1 == caro_wei(&g), components_regular(&g));
    }

    #[test]
    fn component_bound_dominates_z1(g in graph_strategy(24)) {
        let profile = zeta_profile(&g);
        let set = min_degree_independent_subset(&g, &cheap_vertices(&g));
        let components = component_lambdas(&g, &profile, &set).unwrap();
        let s: usize = components.iter().map(|c| c.lambda.s).sum();
        let t: usize = components.iter().map(|c| c.lambda.t).sum();
        let e: usize = components.iter().map(|c| c.lambda.e).sum();
        prop_assert_eq!(s, set.len());
        prop_assert_eq!(t, g.open_neighborhood(&set).len());
        prop_assert_eq!(e, set.iter().map(|v| g.degree(v)).sum::<usize>());
        let bound = strong_bound_component(&g, &profile, &set).unwrap();
        if let Some(value) = bound.value {
            prop_assert!(value >= z_bound(&profile, 1).unwrap());
        }
    }

    #[test]
    fn greedy_runs_are_certified(g in graph_strategy(20)) {
        check_run(&g, &min_greedy(&g));
        let cheap = cheap_greedy(&g);
        check_run(&g, &cheap);
        prop_assert!(cheap.certificate >= z_bound(&zeta_profile(&g), 1).unwrap());
        let one = one_cheap_greedy(&g).unwrap();
        check_run(&g, &one);
        prop_assert!(one.anomalies.is_empty());
        let two = two_cheap_greedy(&g).unwrap();
        check_run(&g, &two);
        prop_assert!(two.anomalies.is_empty());
    }

    #[test]
    fn greedy_is_deterministic(g in graph_strategy(20)) {
        prop_assert_eq!(cheap_greedy(&g), cheap_greedy(&g));
        prop_assert_eq!(two_cheap_greedy(&g).unwrap(), two_cheap_greedy(&g).unwrap());
        prop_assert_eq!(min_greedy(&g), min_greedy(&g));
    }

    #[test]
    fn alpha_oracles_agree(g in graph_strategy(10)) {
        prop_assert_eq!(alpha0_branch_and_bound(&g).unwrap().size, alpha0_enumeration(&g).unwrap().size);
    }

    #[test]
    fn family_f_outputs_are_recognized(sizes in proptest::collection::vec(1usize..5, 1..5), extra in 0usize..6, seed in any::<u64>()) {
        let g = generate(&GeneratorSpec::FamilyF { clique_sizes: sizes, extra_edges: extra, seed }).unwrap();
        prop_assert!(is_in_family_f(&g));
    }
}

fn components_regular(g: &Graph) -> bool {
    g.components().iter().all(|c| {
        let (h, _) = g.induced_subgraph(c);
        h.min_degree() == h.max_degree()
    })
}

#[test]
fn regularity_examples() {
    let cycle = generate(&GeneratorSpec::Cycle { n: 7 }).unwrap();
    assert!(is_zeta_regular(&cycle));
    assert_eq!(z_bound(&zeta_profile(&cycle), 1).unwrap(), caro_wei(&cycle));
    let star = generate(&GeneratorSpec::Star { leaves: 4 }).unwrap();
    assert!(z_bound(&zeta_profile(&star), 1).unwrap() > caro_wei(&star));
}
