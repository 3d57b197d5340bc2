//! Shelling orders of 4-connected plane triangulations, and the two-way
//! correspondence between vertex orders and derivation scripts.
//!
//! A shelling order `v_1..v_n` grows the graph one vertex at a time so that
//! every prefix and every complement suffix induces a near-triangulation.
//! Each added vertex attaches to a consecutive run `w_j..w_k` of the current
//! external boundary (read from `v_1` to `v_2`), which is exactly a
//! transition label `{j,k}` — so orders convert to scripts and back.

use thiserror::Error;

use crate::alphabet::Alphabet;
use crate::graph::{GraphError, PlaneTriangulation};
use crate::lset::LSet;
use crate::script::DerivationScript;
use crate::transition::{TransitionError, TransitionLabel};

/// Shelling/construction failure.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ShellingError {
    #[error(transparent)]
    Graph(#[from] GraphError),

    #[error("separating triangle {0:?}: the triangulation is not 4-connected")]
    SeparatingTriangle([u32; 3]),

    #[error("need at least 6 vertices, got {0}")]
    TooSmall(usize),

    #[error("{v1}-{v2} is not an edge of the outer face")]
    NotOuterEdge { v1: u32, v2: u32 },

    #[error("step {step}: no boundary vertex is eligible; input violates the preconditions")]
    NoEligibleVertex { step: usize },

    #[error("vertex {v} is not on the current boundary")]
    NotOnBoundary { v: u32 },

    #[error("peeling {v} re-exposes boundary vertex {pinch}, boundary would not stay a cycle")]
    BoundaryPinched { v: u32, pinch: u32 },

    #[error("rotation at {v} is inconsistent with the boundary cycle")]
    PeelInconsistent { v: u32 },

    #[error("boundary would drop below 3 vertices")]
    BoundaryTooShort,

    #[error("vertex {v}: neighbors in the prefix do not form a consecutive boundary run")]
    NonConsecutiveNeighbors { v: u32 },

    #[error("vertex {v}: fewer than 2 neighbors in the prefix")]
    TooFewAttachments { v: u32 },

    #[error("vertex {v}: adjacent to a prefix vertex that is not on its boundary")]
    NeighborOffBoundary { v: u32 },

    #[error("order must list every vertex of the graph exactly once")]
    NotAPermutation,

    #[error("order must start with two adjacent outer vertices and their face apex: {0}")]
    BadOrderStart(String),

    #[error("script must start from the 3-set {{acb}}")]
    StartNotS,

    #[error("vertex {v}: {source}")]
    LabelAt { v: u32, source: TransitionError },

    #[error("step {step}: {source}")]
    BadStep {
        step: usize,
        source: TransitionError,
    },
}

/// A vertex order together with the attachment label of every added vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ShellingOrder {
    /// The vertices `v_1..v_n` in shelling order.
    pub order: Vec<u32>,
    /// For each `v_{i+1}` with `i >= 3`, the boundary run `{j,k}` it covers.
    pub labels: Vec<TransitionLabel>,
}

impl ShellingOrder {
    /// Boundary of the prefix graph on `order[..upto]`, read `v_1 .. v_2`,
    /// in original vertex ids.
    pub fn prefix_boundary(&self, upto: usize) -> Result<Vec<u32>, ShellingError> {
        assert!((3..=self.order.len()).contains(&upto));
        let mut boundary = vec![self.order[0], self.order[2], self.order[1]];
        for (step, &label) in self.labels[..upto - 3].iter().enumerate() {
            let v = self.order[step + 3];
            boundary = splice_boundary(&boundary, v, label)
                .map_err(|source| ShellingError::BadStep { step, source })?;
        }
        Ok(boundary)
    }
}

fn splice_boundary(
    boundary: &[u32],
    v: u32,
    label: TransitionLabel,
) -> Result<Vec<u32>, TransitionError> {
    label.check_against(boundary.len())?;
    let (i, j) = (label.i(), label.j());
    let mut next = Vec::with_capacity(boundary.len() + i + 1 - j + 1);
    next.extend_from_slice(&boundary[..i]);
    next.push(v);
    next.extend_from_slice(&boundary[j - 1..]);
    Ok(next)
}

/// Peels vertices off a plane graph one at a time, maintaining the outer
/// boundary cycle of what remains.
struct PeelTracker<'g> {
    graph: &'g PlaneTriangulation,
    boundary: Vec<u32>,
    remaining: Vec<bool>,
}

impl<'g> PeelTracker<'g> {
    fn new(graph: &'g PlaneTriangulation) -> Result<Self, ShellingError> {
        let boundary = graph.outer_face_orbit()?;
        Ok(PeelTracker {
            graph,
            boundary,
            remaining: vec![true; graph.vertex_count() + 1],
        })
    }

    fn boundary(&self) -> &[u32] {
        &self.boundary
    }

    /// Removes a boundary vertex, exposing its interior neighbors.
    ///
    /// The replacement arc is read off the rotation at `v`: the two boundary
    /// neighbors of `v` are cyclically adjacent across the outer face, so the
    /// complementary arc lists the newly exposed vertices in boundary order.
    fn peel(&mut self, v: u32) -> Result<(), ShellingError> {
        let pos = self
            .boundary
            .iter()
            .position(|&w| w == v)
            .ok_or(ShellingError::NotOnBoundary { v })?;
        let m = self.boundary.len();
        let prev = self.boundary[(pos + m - 1) % m];
        let next = self.boundary[(pos + 1) % m];

        let rot: Vec<u32> = self
            .graph
            .rotation(v)
            .iter()
            .copied()
            .filter(|&u| self.remaining[u as usize])
            .collect();
        let rl = rot.len();
        let pos_prev = rot
            .iter()
            .position(|&u| u == prev)
            .ok_or(ShellingError::PeelInconsistent { v })?;
        let pos_next = rot
            .iter()
            .position(|&u| u == next)
            .ok_or(ShellingError::PeelInconsistent { v })?;

        let arc: Vec<u32> = if rot[(pos_next + 1) % rl] == prev {
            // rotation runs ... next, prev ... across the outer face;
            // walk forward from prev to next to list the interior arc
            walk_between(&rot, pos_prev, pos_next)
        } else if rot[(pos_prev + 1) % rl] == next {
            let mut arc = walk_between(&rot, pos_next, pos_prev);
            arc.reverse();
            arc
        } else {
            return Err(ShellingError::PeelInconsistent { v });
        };

        for &x in &arc {
            if self.boundary.contains(&x) {
                return Err(ShellingError::BoundaryPinched { v, pinch: x });
            }
        }
        if m - 1 + arc.len() < 3 {
            return Err(ShellingError::BoundaryTooShort);
        }

        let mut boundary = Vec::with_capacity(m - 1 + arc.len());
        boundary.extend_from_slice(&self.boundary[..pos]);
        boundary.extend_from_slice(&arc);
        boundary.extend_from_slice(&self.boundary[pos + 1..]);
        self.boundary = boundary;
        self.remaining[v as usize] = false;
        Ok(())
    }
}

/// Elements strictly between `from` and `to`, walking forward cyclically.
fn walk_between(cycle: &[u32], from: usize, to: usize) -> Vec<u32> {
    let mut out = Vec::new();
    let mut idx = (from + 1) % cycle.len();
    while idx != to {
        out.push(cycle[idx]);
        idx = (idx + 1) % cycle.len();
    }
    out
}

/// Computes a shelling order of a 4-connected plane triangulation starting
/// from the outer edge `v1 v2`.
///
/// `v_3` is the internal vertex forming a face with `v_1, v_2`; each later
/// vertex is taken from the boundary of the remaining graph, strictly inside
/// a minimal chord when one exists, subject to having at least two neighbors
/// among the already-chosen vertices. The last vertex is the third outer
/// vertex. Ties break to the smallest boundary position; among minimal
/// chords, to the smallest start position.
pub fn compute_shelling_order(
    graph: &PlaneTriangulation,
    v1: u32,
    v2: u32,
) -> Result<ShellingOrder, ShellingError> {
    graph.ensure_triangulation()?;
    if let Some(&triangle) = graph.separating_triangles().first() {
        return Err(ShellingError::SeparatingTriangle(triangle));
    }
    let n = graph.vertex_count();
    if n < 6 {
        return Err(ShellingError::TooSmall(n));
    }

    let outer = graph.outer_face_orbit()?;
    if !outer.contains(&v1) || !outer.contains(&v2) || v1 == v2 {
        return Err(ShellingError::NotOuterEdge { v1, v2 });
    }
    let vn = *outer
        .iter()
        .find(|&&v| v != v1 && v != v2)
        .expect("outer face is a triangle");
    let v3 = internal_apex(graph, v1, v2, &outer)?;

    let mut tracker = PeelTracker::new(graph)?;
    tracker.peel(v1)?;
    tracker.peel(v2)?;
    tracker.peel(v3)?;

    let mut removed = vec![false; n + 1];
    for v in [v1, v2, v3] {
        removed[v as usize] = true;
    }
    let mut order = vec![v1, v2, v3];

    while order.len() < n - 3 {
        let walk = boundary_from(tracker.boundary(), vn);
        let candidates: Vec<usize> = match min_chord(graph, &walk) {
            Some((a, b)) => (a + 1..b).collect(),
            None => (2..=walk.len()).collect(),
        };
        let chosen = candidates
            .into_iter()
            .map(|pos| walk[pos - 1])
            .find(|&w| {
                graph
                    .rotation(w)
                    .iter()
                    .filter(|&&u| removed[u as usize])
                    .count()
                    >= 2
            })
            .ok_or(ShellingError::NoEligibleVertex {
                step: order.len() + 1,
            })?;
        tracker.peel(chosen)?;
        removed[chosen as usize] = true;
        order.push(chosen);
    }

    let mut rest: Vec<u32> = graph
        .vertices()
        .filter(|&v| !removed[v as usize] && v != vn)
        .collect();
    rest.sort_unstable();
    order.extend(rest);
    order.push(vn);

    let labels = attachment_labels(graph, &order)?;
    Ok(ShellingOrder { order, labels })
}

/// The apex of the internal face on edge `v1 v2`.
fn internal_apex(
    graph: &PlaneTriangulation,
    v1: u32,
    v2: u32,
    outer: &[u32],
) -> Result<u32, ShellingError> {
    for face in graph.faces() {
        if face.len() == 3
            && face.contains(&v1)
            && face.contains(&v2)
            && !crate::graph::cycles_equal(&face, outer)
        {
            return Ok(*face
                .iter()
                .find(|&&v| v != v1 && v != v2)
                .expect("triangle"));
        }
    }
    Err(ShellingError::BadOrderStart(format!(
        "no internal face on edge {v1}-{v2}"
    )))
}

/// Reads a boundary cycle starting at `start`; of the two directions, the one
/// whose second vertex has the smaller id is used, keeping the walk
/// independent of how the cycle happens to be stored.
fn boundary_from(boundary: &[u32], start: u32) -> Vec<u32> {
    let m = boundary.len();
    let pos = boundary
        .iter()
        .position(|&w| w == start)
        .expect("start vertex is on the boundary");
    let forward = boundary[(pos + 1) % m];
    let backward = boundary[(pos + m - 1) % m];
    let mut walk = Vec::with_capacity(m);
    if forward < backward {
        walk.extend((0..m).map(|idx| boundary[(pos + idx) % m]));
    } else {
        walk.extend((0..m).map(|idx| boundary[(pos + m - idx) % m]));
    }
    walk
}

/// The chord of the boundary walk minimizing `b - a`, then `a`; positions are
/// 1-based. A chord joins two non-consecutive boundary vertices.
fn min_chord(graph: &PlaneTriangulation, walk: &[u32]) -> Option<(usize, usize)> {
    let l = walk.len();
    let mut best: Option<(usize, usize)> = None;
    for a in 1..=l {
        for b in a + 1..=l {
            let consecutive = b - a == 1 || (a == 1 && b == l);
            if consecutive || !graph.has_edge(walk[a - 1], walk[b - 1]) {
                continue;
            }
            let better = match best {
                None => true,
                Some((ba, bb)) => (b - a, a) < (bb - ba, ba),
            };
            if better {
                best = Some((a, b));
            }
        }
    }
    best
}

/// Recomputes the attachment label of every added vertex by replaying the
/// prefix boundary from `v_1, v_3, v_2`.
///
/// Errors when a vertex's neighbors in the prefix are not at least two
/// consecutive boundary vertices — an embedding inconsistency for any true
/// shelling order.
pub fn attachment_labels(
    graph: &PlaneTriangulation,
    order: &[u32],
) -> Result<Vec<TransitionLabel>, ShellingError> {
    let n = graph.vertex_count();
    if order.len() != n {
        return Err(ShellingError::NotAPermutation);
    }
    let mut seen = vec![false; n + 1];
    for &v in order {
        if v == 0 || v as usize > n || seen[v as usize] {
            return Err(ShellingError::NotAPermutation);
        }
        seen[v as usize] = true;
    }
    let (v1, v2, v3) = (order[0], order[1], order[2]);
    for (x, y) in [(v1, v2), (v1, v3), (v2, v3)] {
        if !graph.has_edge(x, y) {
            return Err(ShellingError::BadOrderStart(format!(
                "{x} and {y} are not adjacent"
            )));
        }
    }

    let mut in_prefix = vec![false; n + 1];
    for v in [v1, v2, v3] {
        in_prefix[v as usize] = true;
    }
    let mut boundary = vec![v1, v3, v2];
    let mut labels = Vec::with_capacity(n - 3);
    for &v in &order[3..] {
        let positions: Vec<usize> = boundary
            .iter()
            .enumerate()
            .filter(|&(_, &w)| graph.has_edge(v, w))
            .map(|(idx, _)| idx + 1)
            .collect();
        let prefix_degree = graph
            .rotation(v)
            .iter()
            .filter(|&&u| in_prefix[u as usize])
            .count();
        if prefix_degree != positions.len() {
            return Err(ShellingError::NeighborOffBoundary { v });
        }
        if positions.len() < 2 {
            return Err(ShellingError::TooFewAttachments { v });
        }
        let j = positions[0];
        let k = *positions.last().expect("nonempty");
        if positions.len() != k - j + 1 {
            return Err(ShellingError::NonConsecutiveNeighbors { v });
        }
        let label =
            TransitionLabel::new(j, k).map_err(|source| ShellingError::LabelAt { v, source })?;
        boundary = splice_boundary(&boundary, v, label)
            .map_err(|source| ShellingError::LabelAt { v, source })?;
        in_prefix[v as usize] = true;
        labels.push(label);
    }
    Ok(labels)
}

/// Converts a shelling order into the derivation script its construction
/// follows, starting from the 3-set `{acb}`.
pub fn derivation_from_order(
    graph: &PlaneTriangulation,
    order: &ShellingOrder,
    alphabet: Alphabet,
) -> Result<DerivationScript, ShellingError> {
    let labels = attachment_labels(graph, &order.order)?;
    let start = LSet::start(alphabet).map_err(|_| ShellingError::StartNotS)?;
    Ok(DerivationScript::new(start, labels))
}

/// Builds a near-triangulation from a derivation script starting at `{acb}`.
///
/// Starts from the triangle `v1, v3, v2` (vertices 1, 3, 2; boundary read
/// `1 → 3 → 2`); the step labeled `{i,j}` adds a new vertex adjacent to
/// boundary positions `i..=j`. Vertices are numbered in insertion order, so
/// the returned order is simply `1..=n`.
pub fn build_from_derivation(
    script: &DerivationScript,
) -> Result<(PlaneTriangulation, ShellingOrder), ShellingError> {
    let alphabet = script.start.alphabet();
    match LSet::start(alphabet) {
        Ok(start) if start == script.start => {}
        _ => return Err(ShellingError::StartNotS),
    }

    let mut rotation: Vec<Vec<u32>> = vec![vec![2, 3], vec![3, 1], vec![1, 2]];
    let mut boundary: Vec<u32> = vec![1, 3, 2];
    for (step, &label) in script.steps.iter().enumerate() {
        label
            .check_against(boundary.len())
            .map_err(|source| ShellingError::BadStep { step, source })?;
        let (i, j) = (label.i(), label.j());
        let v = rotation.len() as u32 + 1;
        let segment: Vec<u32> = boundary[i - 1..j].to_vec();

        // The new vertex sees the covered run in boundary order.
        rotation.push(segment.clone());
        // First endpoint: the new edge hugs the outer side of (w_i, w_i+1).
        insert_after(&mut rotation, segment[0], segment[1], v);
        // Middle vertices are covered entirely: v lands in their outer gap,
        // between the two old boundary edges.
        for t in 1..segment.len() - 1 {
            let at = segment[t];
            let pos = position_of(&rotation, at, segment[t + 1]);
            let cycle = &mut rotation[at as usize - 1];
            if cycle[(pos + 1) % cycle.len()] != segment[t - 1] {
                return Err(ShellingError::PeelInconsistent { v: at });
            }
            cycle.insert(pos + 1, v);
        }
        // Last endpoint: mirror of the first.
        insert_before(
            &mut rotation,
            segment[segment.len() - 1],
            segment[segment.len() - 2],
            v,
        );

        boundary = splice_boundary(&boundary, v, label)
            .map_err(|source| ShellingError::BadStep { step, source })?;
    }

    let graph = PlaneTriangulation::new(rotation, boundary)?;
    graph.ensure_near_triangulation()?;
    let order = ShellingOrder {
        order: (1..=graph.vertex_count() as u32).collect(),
        labels: script.steps.clone(),
    };
    Ok((graph, order))
}

fn position_of(rotation: &[Vec<u32>], at: u32, of: u32) -> usize {
    rotation[at as usize - 1]
        .iter()
        .position(|&u| u == of)
        .expect("neighbor present in rotation")
}

fn insert_after(rotation: &mut [Vec<u32>], at: u32, after: u32, v: u32) {
    let pos = position_of(rotation, at, after);
    rotation[at as usize - 1].insert(pos + 1, v);
}

fn insert_before(rotation: &mut [Vec<u32>], at: u32, before: u32, v: u32) {
    let pos = position_of(rotation, at, before);
    rotation[at as usize - 1].insert(pos, v);
}

/// The subgraph induced by the first `upto` vertices of the order, with its
/// outer face set to the prefix boundary; vertices are renumbered by prefix
/// position.
pub fn prefix_graph(
    graph: &PlaneTriangulation,
    order: &ShellingOrder,
    upto: usize,
) -> Result<PlaneTriangulation, ShellingError> {
    let boundary = order.prefix_boundary(upto)?;
    Ok(graph.induced(&order.order[..upto], &boundary)?)
}

/// The subgraph induced by the vertices after the first `upto`, with its
/// outer face taken from peeling the prefix off the full graph.
pub fn suffix_graph(
    graph: &PlaneTriangulation,
    order: &ShellingOrder,
    upto: usize,
) -> Result<PlaneTriangulation, ShellingError> {
    assert!(upto <= graph.vertex_count().saturating_sub(3));
    let mut tracker = PeelTracker::new(graph)?;
    for &v in &order.order[..upto] {
        tracker.peel(v)?;
    }
    let boundary = tracker.boundary().to_vec();
    Ok(graph.induced(&order.order[upto..], &boundary)?)
}
