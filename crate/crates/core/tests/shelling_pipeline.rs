//! Shelling pipeline on irregular inputs: random scripts whose built graphs
//! happen to be 4-connected triangulations become stress inputs for the
//! order computation (including its chord rule), the prefix/suffix
//! near-triangulation checks, and the coloring round-trip — from every
//! outer edge in both orientations.

mod common;

use lsets::coloring::{boundary_string_set, roundtrip_check};
use lsets::graph::PlaneTriangulation;
use lsets::shelling::{
    build_from_derivation, compute_shelling_order, derivation_from_order, prefix_graph,
    suffix_graph,
};
use lsets::transition::{result_length, TransitionLabel};
use lsets::{Alphabet, DerivationScript, LSet};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Random scripts from the start whose built graph is a 4-connected
/// triangulation on at least `min_vertices` vertices.
fn random_four_connected(
    seed: u64,
    attempts: usize,
    min_vertices: usize,
) -> Vec<PlaneTriangulation> {
    let alphabet = Alphabet::default();
    let start = LSet::start(alphabet).unwrap();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut found = Vec::new();
    for _ in 0..attempts {
        let depth = rng.random_range(4..=9);
        let mut steps = Vec::new();
        let mut len = start.len();
        for _ in 0..depth {
            let pairs: Vec<TransitionLabel> = TransitionLabel::all_for_length(len).collect();
            let lbl = pairs[rng.random_range(0..pairs.len())];
            steps.push(lbl);
            len = result_length(len, lbl);
        }
        if len != 3 {
            continue;
        }
        let script = DerivationScript::new(start.clone(), steps);
        let (graph, _) = build_from_derivation(&script).unwrap();
        if graph.vertex_count() < min_vertices
            || !graph.validate().is_triangulation
            || !graph.separating_triangles().is_empty()
        {
            continue;
        }
        found.push(graph);
    }
    found
}

fn check_full_pipeline(graph: &PlaneTriangulation, v1: u32, v2: u32) {
    let alphabet = Alphabet::default();
    let n = graph.vertex_count();
    let order = compute_shelling_order(graph, v1, v2)
        .unwrap_or_else(|err| panic!("shelling from {v1}-{v2} failed: {err}"));
    assert_eq!(order.order[0], v1);
    assert_eq!(order.order[1], v2);
    assert_eq!(*order.order.last().unwrap(), {
        let outer = graph.outer_face();
        *outer.iter().find(|&&v| v != v1 && v != v2).unwrap()
    });

    for upto in 3..=n - 3 {
        let prefix = prefix_graph(graph, &order, upto).unwrap();
        assert!(
            prefix.validate().is_near_triangulation,
            "prefix {upto} from {v1}-{v2}: {:?}",
            prefix.validate().problems
        );
        let suffix = suffix_graph(graph, &order, upto).unwrap();
        assert!(
            suffix.validate().is_near_triangulation,
            "suffix {upto} from {v1}-{v2}: {:?}",
            suffix.validate().problems
        );
    }

    let script = derivation_from_order(graph, &order, alphabet).unwrap();
    let states = script.replay().unwrap();
    let last = states.last().unwrap();
    assert_eq!(last.len(), 3);
    assert!(!last.is_empty(), "replayed final state must be nonempty");
    for (steps_applied, state) in states.iter().enumerate() {
        let oracle = boundary_string_set(graph, &order, 3 + steps_applied, alphabet).unwrap();
        assert_eq!(&oracle, state, "disagreement after {steps_applied} steps");
    }
}

#[test]
fn random_four_connected_triangulations_shell_from_every_outer_edge() {
    let graphs = random_four_connected(42, 4000, 7);
    assert!(
        graphs.len() >= 15,
        "expected a healthy sample, got {}",
        graphs.len()
    );
    for graph in &graphs {
        let outer = graph.outer_face().to_vec();
        for idx in 0..3 {
            let (a, b) = (outer[idx], outer[(idx + 1) % 3]);
            check_full_pipeline(graph, a, b);
            check_full_pipeline(graph, b, a);
        }
    }
}

#[test]
fn icosahedron_shells_from_every_outer_edge() {
    let graph = lsets::catalog::icosahedron();
    let outer = graph.outer_face().to_vec();
    for idx in 0..3 {
        let (a, b) = (outer[idx], outer[(idx + 1) % 3]);
        check_full_pipeline(&graph, a, b);
        check_full_pipeline(&graph, b, a);
    }
}

#[test]
fn built_graphs_round_trip_even_when_not_triangulations() {
    // near-triangulations with longer outer faces still satisfy the
    // boundary-set identity on every prefix
    let alphabet = Alphabet::default();
    let start = LSet::start(alphabet).unwrap();
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..60 {
        let depth = rng.random_range(1..=7);
        let mut steps = Vec::new();
        let mut len = start.len();
        for _ in 0..depth {
            let pairs: Vec<TransitionLabel> = TransitionLabel::all_for_length(len).collect();
            let lbl = pairs[rng.random_range(0..pairs.len())];
            steps.push(lbl);
            len = result_length(len, lbl);
        }
        let script = DerivationScript::new(start.clone(), steps);
        let outcome = roundtrip_check(&script).unwrap();
        assert!(outcome.ok, "script {:?}", script.steps);
    }
}
