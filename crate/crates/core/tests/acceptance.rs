//! Acceptance suite: one test per criterion, each printing a PASS line when
//! its checks hold (run with `--nocapture` to see them).
//!
//! All comparisons are exact; the per-depth search counts are regression
//! snapshots frozen from the first verified run.

mod common;

use common::*;
use lsets::coloring::{boundary_string_set, count_colorings, roundtrip_check};
use lsets::search::{
    bfs, check_probe_missing_letter, reachable_states, verify_witness, Probe, SearchConfig,
};
use lsets::shelling::{compute_shelling_order, derivation_from_order, prefix_graph, suffix_graph};
use lsets::transition::{
    apply_set, apply_set_packed, apply_set_sorted, result_length, TransitionLabel,
};
use lsets::{catalog, Alphabet, ColorString, DerivationScript, LSet, SymmetryGroup};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn label(i: usize, j: usize) -> TransitionLabel {
    TransitionLabel::new(i, j).unwrap()
}

/// Criterion 1: the optimized `apply_set` equals the naive per-string
/// definition — exhaustively on all singleton l-sets with l ≤ 5, and on
/// 10,000 random sets with l ≤ 8. Both set representations are held to it.
#[test]
fn c1_definition_oracle_equivalence() {
    let alphabet = Alphabet::default();
    let k = alphabet.size();

    // (a) every singleton, every label, l = 3..=5
    let mut singletons = 0u64;
    for l in 3..=5usize {
        for code in 0..(k as u64).pow(l as u32) {
            let s = ColorString::from_code(code, l, k);
            let singleton = LSet::singleton(alphabet, s).unwrap();
            for lbl in TransitionLabel::all_for_length(l) {
                let naive = naive_apply_string(&s.to_string(), k, lbl.i(), lbl.j());
                for got in [
                    apply_set(&singleton, lbl).unwrap(),
                    apply_set_sorted(&singleton, lbl).unwrap(),
                    apply_set_packed(&singleton, lbl, 1 << 26).unwrap().unwrap(),
                ] {
                    assert_eq!(lset_to_strings(&got), naive, "string {s}, label {lbl}");
                    assert_eq!(got.len(), result_length(l, lbl));
                }
                singletons += 1;
            }
        }
    }

    // (b) 10,000 random sets, l = 3..=8, every representation
    let mut rng = StdRng::seed_from_u64(0xc1);
    for _ in 0..10_000 {
        let l = rng.random_range(3..=8);
        let set = random_lset(&mut rng, alphabet, l, 40);
        let pairs: Vec<TransitionLabel> = TransitionLabel::all_for_length(l).collect();
        let lbl = pairs[rng.random_range(0..pairs.len())];
        let naive = naive_apply_set(
            lset_to_strings(&set).iter().map(String::as_str),
            k,
            lbl.i(),
            lbl.j(),
        );
        let auto = apply_set(&set, lbl).unwrap();
        assert_eq!(lset_to_strings(&auto), naive);
        assert_eq!(
            apply_set_sorted(&set, lbl).unwrap(),
            apply_set_packed(&set, lbl, 1 << 26).unwrap().unwrap()
        );
    }
    println!("ACCEPTANCE 1 (definition-oracle equivalence): PASS ({singletons} exhaustive singleton applications, 10000 random sets, exact equality)");
}

/// Criterion 2: permutation equivariance for all 24 letter permutations and
/// reversal equivariance, on 1,000 random (L, i, j) triples each.
#[test]
fn c2_equivariance_suite() {
    let alphabet = Alphabet::default();
    let perms = lsets::symmetry::Perm::all(alphabet);
    assert_eq!(perms.len(), 24);

    let mut rng = StdRng::seed_from_u64(0xc2);
    for _ in 0..1_000 {
        let l = rng.random_range(3..=7);
        let set = random_lset(&mut rng, alphabet, l, 16);
        let pairs: Vec<TransitionLabel> = TransitionLabel::all_for_length(l).collect();
        let lbl = pairs[rng.random_range(0..pairs.len())];
        let applied = apply_set(&set, lbl).unwrap();
        for &perm in &perms {
            assert_eq!(
                apply_set(&lsets::permute(&set, perm), lbl).unwrap(),
                lsets::permute(&applied, perm)
            );
        }
    }

    for _ in 0..1_000 {
        let l = rng.random_range(3..=7);
        let set = random_lset(&mut rng, alphabet, l, 16);
        let pairs: Vec<TransitionLabel> = TransitionLabel::all_for_length(l).collect();
        let lbl = pairs[rng.random_range(0..pairs.len())];
        let mirrored = label(l + 1 - lbl.j(), l + 1 - lbl.i());
        assert_eq!(
            lsets::reverse(&apply_set(&set, lbl).unwrap()),
            apply_set(&lsets::reverse(&set), mirrored).unwrap()
        );
    }
    println!("ACCEPTANCE 2 (equivariance suite): PASS (24 permutations x 1000 triples, reversal x 1000 triples, exact equality)");
}

/// Per-depth canonical-state counts for the bounded search from the start
/// set, k = 4, max_depth 6, max_length 7, c-d swap canonicalization.
/// Regression snapshot frozen from the first verified run.
const DEPTH_COUNTS_K4: [u64; 7] = [1, 2, 6, 23, 92, 255, 779];

/// Criterion 3: exhaustive bounded search from the start set finds no empty
/// set, and every explored state has a member avoiding c or avoiding d.
#[test]
fn c3_bounded_no_goal_search() {
    let alphabet = Alphabet::default();
    let start = LSet::start(alphabet).unwrap();
    let config = SearchConfig {
        max_depth: 6,
        max_length: 7,
        canon: SymmetryGroup::CdSwap,
        probes: vec![Probe::missing_letter()],
        ..SearchConfig::default()
    };
    let report = bfs(&start, &config).unwrap();
    assert!(
        !report.goal_found,
        "an empty set reached from the start would be a refutation; inspect the witness"
    );
    assert!(report.witness.is_none());
    assert!(!report.truncated_by_states);
    assert_eq!(report.probes.len(), 1);
    assert_eq!(
        report.probes[0].violations, 0,
        "missing-letter probe violated at {:?}",
        report.probes[0].first_violation
    );
    assert_eq!(report.probes[0].checked, report.states_total);

    // independent pass over the streamed states
    let mut streamed = 0u64;
    for (_, state) in reachable_states(&start, &config).unwrap() {
        assert!(
            check_probe_missing_letter(&state),
            "violating state {state:?}"
        );
        streamed += 1;
    }
    assert_eq!(streamed, report.states_total);

    assert_eq!(
        report.depth_counts, DEPTH_COUNTS_K4,
        "per-depth canonical-state counts drifted from the frozen snapshot"
    );
    println!(
        "ACCEPTANCE 3 (bounded no-goal search): PASS (goal_found=false, {} states, depth counts {:?}, 0 probe violations)",
        report.states_total, report.depth_counts
    );
}

/// All valid scripts from the start with exactly `depth` steps.
fn scripts_from_start(depth: usize) -> Vec<DerivationScript> {
    let start = LSet::start(Alphabet::default()).unwrap();
    let mut scripts = vec![DerivationScript::new(start, Vec::new())];
    for _ in 0..depth {
        let mut grown = Vec::new();
        for script in &scripts {
            let len = script
                .steps
                .iter()
                .fold(3usize, |l, &lbl| result_length(l, lbl));
            for lbl in TransitionLabel::all_for_length(len) {
                let mut steps = script.steps.clone();
                steps.push(lbl);
                grown.push(DerivationScript::new(script.start.clone(), steps));
            }
        }
        scripts = grown;
    }
    scripts
}

/// Criterion 4: the string engine and the coloring oracle agree on every
/// prefix of every script from the start — exhaustively to depth 3, plus 200
/// random scripts of depth ≤ 8.
#[test]
fn c4_roundtrip_identity() {
    let mut exhaustive = 0u64;
    for depth in 0..=3 {
        for script in scripts_from_start(depth) {
            let outcome = roundtrip_check(&script).unwrap();
            assert!(
                outcome.ok,
                "script {:?} disagrees first at prefix {:?}",
                script.steps, outcome.first_mismatch
            );
            exhaustive += 1;
        }
    }

    let mut rng = StdRng::seed_from_u64(0xc4);
    let start = LSet::start(Alphabet::default()).unwrap();
    for _ in 0..200 {
        let depth = rng.random_range(1..=8);
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
        assert!(
            outcome.ok,
            "script {:?} disagrees first at prefix {:?}",
            script.steps, outcome.first_mismatch
        );
    }
    println!("ACCEPTANCE 4 (roundtrip identity): PASS ({exhaustive} exhaustive scripts to depth 3, 200 random scripts to depth 8, exact set equality)");
}

/// Criterion 5: the full pipeline on both catalog triangulations — shelling
/// order, near-triangulation prefixes and suffixes, nonempty final state,
/// and boundary sets matching the replay at every step.
#[test]
fn c5_shelling_pipeline() {
    let alphabet = Alphabet::default();
    for (name, graph) in [
        ("octahedron", catalog::octahedron()),
        ("icosahedron", catalog::icosahedron()),
    ] {
        let n = graph.vertex_count();
        let order = compute_shelling_order(&graph, 1, 2)
            .unwrap_or_else(|err| panic!("{name}: shelling failed: {err}"));

        for upto in 3..=n - 3 {
            let prefix = prefix_graph(&graph, &order, upto).unwrap();
            let report = prefix.validate();
            assert!(
                report.is_near_triangulation,
                "{name}: prefix {upto} is not a near-triangulation: {:?}",
                report.problems
            );
            let suffix = suffix_graph(&graph, &order, upto).unwrap();
            let report = suffix.validate();
            assert!(
                report.is_near_triangulation,
                "{name}: suffix {upto} is not a near-triangulation: {:?}",
                report.problems
            );
        }

        let script = derivation_from_order(&graph, &order, alphabet).unwrap();
        let states = script.replay().unwrap();
        let last = states.last().unwrap();
        assert_eq!(last.len(), 3, "{name}: final boundary state has length 3");
        assert!(!last.is_empty(), "{name}: final state must be nonempty");

        for (steps_applied, state) in states.iter().enumerate() {
            let from_colorings =
                boundary_string_set(&graph, &order, 3 + steps_applied, alphabet).unwrap();
            assert_eq!(
                &from_colorings, state,
                "{name}: boundary set and replay disagree after {steps_applied} steps"
            );
        }
        println!(
            "ACCEPTANCE 5 ({name}): PASS (order {:?}, final state {:?})",
            order.order, last
        );
    }
}

/// Criterion 6: coloring-oracle counts against the odometer brute force:
/// K4 and the octahedron at k = 4, the icosahedron at k = 5 with the
/// three-vertex seed bounding the brute-force space.
#[test]
fn c6_coloring_oracle_counts() {
    let alphabet = Alphabet::default();

    let start = LSet::start(alphabet).unwrap();
    let (k4, _) =
        lsets::build_from_derivation(&DerivationScript::new(start, vec![label(1, 3)])).unwrap();
    assert_eq!(count_colorings(&k4, &[], alphabet).unwrap(), 24);
    assert_eq!(brute_force_coloring_count(4, &edge_list(&k4), 4, &[]), 24);

    let octa = catalog::octahedron();
    let octa_count = count_colorings(&octa, &[], alphabet).unwrap();
    let octa_brute = brute_force_coloring_count(6, &edge_list(&octa), 4, &[]);
    assert_eq!(octa_count, 96);
    assert_eq!(octa_brute, 96);

    // icosahedron at k = 5: seed a,b,c on the face 1,2,4 so the brute-force
    // space is 5^9 assignments
    let k5 = Alphabet::new(5).unwrap();
    let icosa = catalog::icosahedron();
    let order = compute_shelling_order(&icosa, 1, 2).unwrap();
    let seed = lsets::coloring::standard_seed(&order);
    let fast = count_colorings(&icosa, &seed, k5).unwrap();
    let brute = brute_force_coloring_count(12, &edge_list(&icosa), 5, &seed);
    assert_eq!(fast, brute, "icosahedron k=5 seeded counts disagree");
    println!(
        "ACCEPTANCE 6 (coloring-oracle counts): PASS (K4=24, octahedron=96, icosahedron k=5 seeded={fast} = brute force)"
    );
}

/// Per-depth counts for the five-letter run; same configuration as the
/// four-letter search. Regression snapshot frozen from the first verified run.
const DEPTH_COUNTS_K5: [u64; 7] = [1, 3, 9, 30, 107, 273, 538];

/// Criterion 7: the five-letter variant also finds no empty set within the
/// same bounds.
#[test]
fn c7_five_letter_variant() {
    let alphabet = Alphabet::new(5).unwrap();
    let start = LSet::start(alphabet).unwrap();
    let config = SearchConfig {
        max_depth: 6,
        max_length: 7,
        canon: SymmetryGroup::CdSwap,
        alphabet,
        ..SearchConfig::default()
    };
    let report = bfs(&start, &config).unwrap();
    assert!(!report.goal_found);
    assert!(!report.truncated_by_states);
    assert_eq!(
        report.depth_counts, DEPTH_COUNTS_K5,
        "five-letter per-depth counts drifted from the frozen snapshot"
    );
    println!(
        "ACCEPTANCE 7 (five-letter variant): PASS (goal_found=false, {} states, depth counts {:?})",
        report.states_total, report.depth_counts
    );
}

/// Criterion 8: the empty set is derivable from suitable non-start states —
/// the goal machinery itself works.
#[test]
fn c8_negative_control() {
    let alphabet = Alphabet::default();
    let start = LSet::from_strs(alphabet, 4, &["acbd"]).unwrap();
    assert!(verify_witness(&start, &[label(1, 4)]));

    // and the search finds exactly that witness
    let config = SearchConfig {
        max_depth: 1,
        max_length: 7,
        ..SearchConfig::default()
    };
    let report = bfs(&start, &config).unwrap();
    assert!(report.goal_found);
    assert_eq!(report.witness.unwrap().steps, vec![label(1, 4)]);
    println!("ACCEPTANCE 8 (negative control): PASS (witness [(1,4)] from {{acbd}} verifies)");
}
