//! Bounded breadth-first reachability search over the automaton.
//!
//! States are deduplicated by canonical form under a configurable symmetry
//! group. The goal is the empty set; reaching it yields a replayable witness
//! script. Because every symmetry commutes with the transitions, pruning a
//! state whose canonical form was already seen never loses the goal; the
//! witness reconstruction tracks the group element relating each actual
//! state to its stored canonical representative, so the final script replays
//! from the original start even when merged states sit on different orbits.
//!
//! Reports are deterministic for a fixed configuration: the frontier is
//! expanded in discovery order with labels in lexicographic order, and
//! parallel expansion merges results in exactly that order.

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::alphabet::Alphabet;
use crate::lset::LSet;
use crate::script::DerivationScript;
use crate::symmetry::{canonicalize_among, GroupElement, SymmetryError, SymmetryGroup};
use crate::transition::{apply_set, result_length, TransitionLabel};
use crate::word::ColorString;

/// Search configuration error.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("max_length must be at least 3, got {0}")]
    MaxLengthTooSmall(usize),

    #[error("max_length {0} exceeds the supported maximum {max}", max = ColorString::MAX_LEN)]
    MaxLengthTooLarge(usize),

    #[error("max_states must be at least 1")]
    MaxStatesZero,

    #[error("start set has length {0}, transitions need at least 3")]
    StartTooShort(usize),

    #[error("config alphabet has {config} letters but the start set uses {start}")]
    AlphabetMismatch { config: usize, start: usize },

    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}

/// A named, pure predicate evaluated on every stored canonical state.
#[derive(Clone)]
pub struct Probe {
    pub id: &'static str,
    pub check: fn(&LSet) -> bool,
}

impl Probe {
    /// The missing-letter probe: some member avoids `c`, or some member
    /// avoids `d`. False for the empty set.
    pub fn missing_letter() -> Probe {
        Probe {
            id: "missing-letter",
            check: check_probe_missing_letter,
        }
    }
}

impl std::fmt::Debug for Probe {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Probe({})", self.id)
    }
}

/// True iff the set has a member in which the letter `c` does not occur, or
/// a member in which the letter `d` does not occur. False for the empty set.
pub fn check_probe_missing_letter(set: &LSet) -> bool {
    set.members()
        .iter()
        .any(|m| !m.contains_letter(2) || !m.contains_letter(3))
}

/// Limits and options for a bounded search.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Deepest derivation depth to reach (states there are not expanded).
    pub max_depth: usize,
    /// Successors longer than this are pruned (and counted).
    pub max_length: usize,
    /// Memory budget: maximum number of stored canonical states.
    pub max_states: usize,
    pub canon: SymmetryGroup,
    pub probes: Vec<Probe>,
    pub alphabet: Alphabet,
    /// Keep full sets in the dedup store (exact, collision-free) as long as
    /// `max_states` stays within this limit; beyond it only 64-bit state
    /// hashes are kept.
    pub exact_dedup_limit: usize,
    /// Expand frontiers on worker threads. Reports are identical either way.
    pub parallel: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_depth: 6,
            max_length: 7,
            max_states: 4_000_000,
            canon: SymmetryGroup::default(),
            probes: Vec::new(),
            alphabet: Alphabet::default(),
            exact_dedup_limit: 4_000_000,
            parallel: cfg!(feature = "parallel"),
        }
    }
}

impl SearchConfig {
    fn validate(&self, start: &LSet) -> Result<(), SearchError> {
        if self.max_length < 3 {
            return Err(SearchError::MaxLengthTooSmall(self.max_length));
        }
        if self.max_length > ColorString::MAX_LEN {
            return Err(SearchError::MaxLengthTooLarge(self.max_length));
        }
        if self.max_states == 0 {
            return Err(SearchError::MaxStatesZero);
        }
        if start.len() < 3 {
            return Err(SearchError::StartTooShort(start.len()));
        }
        if self.alphabet != start.alphabet() {
            return Err(SearchError::AlphabetMismatch {
                config: self.alphabet.size(),
                start: start.alphabet().size(),
            });
        }
        self.canon.elements(self.alphabet)?;
        Ok(())
    }
}

/// Per-probe aggregate over all stored states.
#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub id: &'static str,
    pub checked: u64,
    pub violations: u64,
    /// Depth and state of the first violation, if any.
    pub first_violation: Option<(usize, LSet)>,
}

/// Outcome of a bounded search.
#[derive(Clone, Debug)]
pub struct SearchReport {
    /// Distinct canonical states first reached at each depth, `0..=deepest`.
    pub depth_counts: Vec<u64>,
    pub transitions_expanded: u64,
    pub states_total: u64,
    pub goal_found: bool,
    /// A script replaying from the start to the empty set.
    pub witness: Option<DerivationScript>,
    pub probes: Vec<ProbeReport>,
    /// True when unexpanded states remained at `max_depth`.
    pub truncated_by_depth: bool,
    /// Successor states discarded for exceeding `max_length`.
    pub pruned_by_length: u64,
    /// True when the state budget stopped the search.
    pub truncated_by_states: bool,
    /// Whether dedup kept exact sets (true) or 64-bit hashes only (false).
    pub dedup_exact: bool,
}

/// Dedup store: exact canonical sets while small, hashes beyond.
enum StateStore {
    Exact(FxHashMap<LSet, u32>),
    Hashed(FxHashMap<u64, u32>),
}

impl StateStore {
    fn insert_if_absent(&mut self, state: &LSet, id: u32) -> bool {
        match self {
            StateStore::Exact(map) => match map.entry(state.clone()) {
                std::collections::hash_map::Entry::Occupied(_) => false,
                std::collections::hash_map::Entry::Vacant(slot) => {
                    slot.insert(id);
                    true
                }
            },
            StateStore::Hashed(map) => {
                use std::hash::{BuildHasher, Hash, Hasher};
                let mut hasher = rustc_hash::FxBuildHasher.build_hasher();
                state.hash(&mut hasher);
                state.len().hash(&mut hasher);
                let key = hasher.finish();
                match map.entry(key) {
                    std::collections::hash_map::Entry::Occupied(_) => false,
                    std::collections::hash_map::Entry::Vacant(slot) => {
                        slot.insert(id);
                        true
                    }
                }
            }
        }
    }
}

/// How one raw successor was classified.
enum Succ {
    /// The empty set: the goal.
    Goal,
    /// Pruned: longer than `max_length`.
    TooLong,
    /// A canonical successor state.
    State(LSet),
}

struct StateMeta {
    parent: u32,
    label: TransitionLabel,
}

struct Engine {
    config: SearchConfig,
    elements: Vec<GroupElement>,
    start: LSet,
    store: StateStore,
    meta: Vec<StateMeta>,
    /// Canonical sets of the current frontier, with their state ids.
    frontier: Vec<(u32, LSet)>,
    depth: usize,
    report: SearchReport,
    finished: bool,
}

/// What one depth step produced, for streaming consumers.
struct DepthYield {
    /// Newly stored states in discovery order (depth = engine.depth).
    new_states: Vec<LSet>,
    /// The goal was reached (it is not listed in `new_states`).
    goal: bool,
}

impl Engine {
    fn new(start: &LSet, config: &SearchConfig) -> Result<Engine, SearchError> {
        config.validate(start)?;
        let elements = config.canon.elements(config.alphabet)?;
        let dedup_exact = config.max_states <= config.exact_dedup_limit;
        let store = if dedup_exact {
            StateStore::Exact(FxHashMap::default())
        } else {
            StateStore::Hashed(FxHashMap::default())
        };
        let report = SearchReport {
            depth_counts: Vec::new(),
            transitions_expanded: 0,
            states_total: 0,
            goal_found: false,
            witness: None,
            probes: config
                .probes
                .iter()
                .map(|probe| ProbeReport {
                    id: probe.id,
                    checked: 0,
                    violations: 0,
                    first_violation: None,
                })
                .collect(),
            truncated_by_depth: false,
            pruned_by_length: 0,
            truncated_by_states: false,
            dedup_exact,
        };
        Ok(Engine {
            config: config.clone(),
            elements,
            start: start.clone(),
            store,
            meta: Vec::new(),
            frontier: Vec::new(),
            depth: 0,
            report,
            finished: false,
        })
    }

    /// Installs the start state (depth 0). Returns the depth-0 yield.
    fn init(&mut self) -> DepthYield {
        if self.start.is_empty() {
            // the start is already the goal; the empty script is the witness
            self.report.goal_found = true;
            self.report.witness = Some(DerivationScript::new(self.start.clone(), Vec::new()));
            self.report.depth_counts.push(1);
            self.report.states_total = 1;
            self.finished = true;
            return DepthYield {
                new_states: vec![self.start.clone()],
                goal: false, // already listed in new_states
            };
        }
        let (canon, _) = canonicalize_among(&self.start, &self.elements);
        self.store.insert_if_absent(&canon, 0);
        self.meta.push(StateMeta {
            parent: u32::MAX,
            label: TransitionLabel::new(1, 2).expect("placeholder"),
        });
        self.run_probes(&canon, 0);
        self.report.depth_counts.push(1);
        self.report.states_total = 1;
        self.frontier = vec![(0, canon.clone())];
        DepthYield {
            new_states: vec![canon],
            goal: false,
        }
    }

    fn run_probes(&mut self, state: &LSet, depth: usize) {
        for (probe, outcome) in self.config.probes.iter().zip(&mut self.report.probes) {
            outcome.checked += 1;
            if !(probe.check)(state) {
                outcome.violations += 1;
                if outcome.first_violation.is_none() {
                    outcome.first_violation = Some((depth, state.clone()));
                }
            }
        }
    }

    /// Expands the current frontier one depth. Returns `None` when the
    /// search is over (depth/limit reached, goal found, or frontier empty).
    fn step(&mut self) -> Option<DepthYield> {
        if self.finished {
            return None;
        }
        if self.frontier.is_empty() {
            self.finished = true;
            return None;
        }
        if self.depth == self.config.max_depth {
            self.report.truncated_by_depth = true;
            self.finished = true;
            return None;
        }

        let expansions = self.expand_frontier();
        self.depth += 1;

        let mut new_frontier: Vec<(u32, LSet)> = Vec::new();
        let mut new_states: Vec<LSet> = Vec::new();
        let mut new_count = 0u64;
        let parents: Vec<u32> = self.frontier.iter().map(|&(id, _)| id).collect();

        for (slot, batch) in expansions.into_iter().enumerate() {
            let parent = parents[slot];
            for (label, succ) in batch {
                self.report.transitions_expanded += 1;
                match succ {
                    Succ::Goal => {
                        self.report.goal_found = true;
                        self.report.witness = Some(self.reconstruct_witness(parent, label));
                        // the goal is a distinct state first reached here
                        self.report.depth_counts.push(new_count + 1);
                        self.report.states_total += new_count + 1;
                        self.finished = true;
                        debug_assert!(verify_witness(
                            &self.start,
                            &self.report.witness.as_ref().expect("just set").steps,
                        ));
                        return Some(DepthYield {
                            new_states,
                            goal: true,
                        });
                    }
                    Succ::TooLong => {
                        self.report.pruned_by_length += 1;
                    }
                    Succ::State(canon) => {
                        let id = self.meta.len() as u32;
                        if self.store.insert_if_absent(&canon, id) {
                            if self.meta.len() as u64 + 1 > self.config.max_states as u64 {
                                // budget reached: stop before storing more
                                self.report.truncated_by_states = true;
                                self.report.depth_counts.push(new_count);
                                self.report.states_total += new_count;
                                self.finished = true;
                                return Some(DepthYield {
                                    new_states,
                                    goal: false,
                                });
                            }
                            self.meta.push(StateMeta { parent, label });
                            self.run_probes(&canon, self.depth);
                            new_count += 1;
                            new_frontier.push((id, canon.clone()));
                            new_states.push(canon);
                        }
                    }
                }
            }
        }

        self.report.depth_counts.push(new_count);
        self.report.states_total += new_count;
        self.frontier = new_frontier;
        Some(DepthYield {
            new_states,
            goal: false,
        })
    }

    /// Classifies all successors of every frontier state, in frontier order
    /// with labels in lexicographic order per state.
    fn expand_frontier(&self) -> Vec<Vec<(TransitionLabel, Succ)>> {
        let expand_one = |(_, state): &(u32, LSet)| -> Vec<(TransitionLabel, Succ)> {
            let len = state.len();
            TransitionLabel::all_for_length(len)
                .map(|label| {
                    let raw = apply_set(state, label).expect("generated label is valid");
                    let succ = if raw.is_empty() {
                        Succ::Goal
                    } else if result_length(len, label) > self.config.max_length {
                        Succ::TooLong
                    } else {
                        let (canon, _) = canonicalize_among(&raw, &self.elements);
                        Succ::State(canon)
                    };
                    (label, succ)
                })
                .collect()
        };

        #[cfg(feature = "parallel")]
        if self.config.parallel {
            use rayon::prelude::*;
            return self.frontier.par_iter().map(expand_one).collect();
        }
        self.frontier.iter().map(expand_one).collect()
    }

    /// Rebuilds a replayable script from the stored canonical path.
    ///
    /// Walking forward, the actual state is always `g(canonical state)` for a
    /// tracked group element `g`; each stored label is transformed through
    /// `g` and `g` is updated by the canonicalization witness of the next
    /// raw successor.
    fn reconstruct_witness(&self, parent: u32, last_label: TransitionLabel) -> DerivationScript {
        let mut canonical_labels = vec![last_label];
        let mut at = parent;
        while self.meta[at as usize].parent != u32::MAX {
            canonical_labels.push(self.meta[at as usize].label);
            at = self.meta[at as usize].parent;
        }
        canonical_labels.reverse();

        let (mut canon, to_canon) = canonicalize_among(&self.start, &self.elements);
        let mut relate = to_canon.inverse(); // start = relate(canon)
        let mut actual = self.start.clone();
        let mut steps = Vec::with_capacity(canonical_labels.len());
        for label in canonical_labels {
            let actual_label = relate.transform_label(actual.len(), label);
            steps.push(actual_label);
            actual = apply_set(&actual, actual_label).expect("witness step in range");
            let raw = apply_set(&canon, label).expect("stored label in range");
            let (next_canon, to_next) = canonicalize_among(&raw, &self.elements);
            relate = relate.compose(to_next.inverse());
            canon = next_canon;
        }
        debug_assert!(actual.is_empty());
        DerivationScript::new(self.start.clone(), steps)
    }

    fn into_report(mut self) -> SearchReport {
        if !self.finished {
            // drive to completion
            while self.step().is_some() {}
        }
        self.report
    }
}

/// Runs a bounded breadth-first search from `start`.
///
/// Deterministic for a fixed config: per-depth counts, probe outcomes,
/// goal detection, and the witness are independent of thread count.
pub fn bfs(start: &LSet, config: &SearchConfig) -> Result<SearchReport, SearchError> {
    let mut engine = Engine::new(start, config)?;
    engine.init();
    Ok(engine.into_report())
}

/// Streams every stored canonical state as `(depth, state)`, in discovery
/// order (nondecreasing depth), consistent with the counts reported by
/// [`bfs`] under the same config.
pub fn reachable_states(
    start: &LSet,
    config: &SearchConfig,
) -> Result<ReachableStates, SearchError> {
    let mut engine = Engine::new(start, config)?;
    let first = engine.init();
    Ok(ReachableStates {
        engine,
        buffered: first.new_states.into(),
        buffered_depth: 0,
        goal_pending: first.goal,
    })
}

/// Iterator returned by [`reachable_states`].
pub struct ReachableStates {
    engine: Engine,
    buffered: std::collections::VecDeque<LSet>,
    buffered_depth: usize,
    goal_pending: bool,
}

impl ReachableStates {
    /// The report accumulated so far; complete once the iterator is drained.
    pub fn report(self) -> SearchReport {
        self.engine.into_report()
    }
}

impl Iterator for ReachableStates {
    type Item = (usize, LSet);

    fn next(&mut self) -> Option<(usize, LSet)> {
        loop {
            if let Some(state) = self.buffered.pop_front() {
                return Some((self.buffered_depth, state));
            }
            if self.goal_pending {
                self.goal_pending = false;
                let alphabet = self.engine.config.alphabet;
                let goal_len = self
                    .engine
                    .report
                    .witness
                    .as_ref()
                    .map(|w| {
                        w.replay()
                            .expect("witness replays")
                            .last()
                            .expect("nonempty")
                            .len()
                    })
                    .unwrap_or(0);
                let empty = LSet::empty(alphabet, goal_len).expect("valid empty set");
                return Some((self.engine.depth, empty));
            }
            let step = self.engine.step()?;
            self.buffered = step.new_states.into();
            self.buffered_depth = self.engine.depth;
            self.goal_pending = step.goal;
        }
    }
}

/// Detailed witness-check failure.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum WitnessError {
    #[error("replay failed: {0}")]
    Replay(#[from] crate::script::ReplayError),

    #[error("script ends at a nonempty set with {members} members (length {len})")]
    EndsNonEmpty { members: usize, len: usize },
}

/// Checks that `steps` replayed from `start` is valid and ends at the empty
/// set, reporting why not.
pub fn check_witness(start: &LSet, steps: &[TransitionLabel]) -> Result<(), WitnessError> {
    let states = crate::script::replay(start, steps)?;
    let last = states.last().expect("replay includes start");
    if last.is_empty() {
        Ok(())
    } else {
        Err(WitnessError::EndsNonEmpty {
            members: last.member_count(),
            len: last.len(),
        })
    }
}

/// True iff `steps` replayed from `start` reaches the empty set.
pub fn verify_witness(start: &LSet, steps: &[TransitionLabel]) -> bool {
    check_witness(start, steps).is_ok()
}
