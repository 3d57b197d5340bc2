//! Plane graphs as rotation systems.
//!
//! A [`PlaneTriangulation`] stores, for every vertex, the cyclic
//! (counterclockwise) order of its neighbors, plus a declared outer face.
//! Faces are recovered by dart traversal: the dart `u → v` is followed by
//! `v → w` where `w` immediately precedes `u` in the rotation at `v`. With
//! counterclockwise rotations this walks every internal face once.
//!
//! Vertices are identified by `1..=n`.

use std::collections::BTreeSet;

use thiserror::Error;

/// Structural or validation error for rotation systems.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range 1..={1}")]
    VertexOutOfRange(u32, usize),

    #[error("vertex {0} lists itself as a neighbor")]
    SelfLoop(u32),

    #[error("vertex {v} lists neighbor {u} more than once")]
    DuplicateNeighbor { v: u32, u: u32 },

    #[error("adjacency is not symmetric: {u} lists {v} but {v} does not list {u}")]
    Asymmetric { u: u32, v: u32 },

    #[error("outer face must have at least 3 vertices, got {0}")]
    OuterTooShort(usize),

    #[error("declared outer face is not a face of the embedding")]
    OuterNotAFace,

    #[error("graph is not a near-triangulation: {0}")]
    NotNearTriangulation(String),

    #[error("graph is not a triangulation: {0}")]
    NotTriangulation(String),

    #[error("vertices {0:?} do not induce a connected boundary here: {1}")]
    BadInducedOuter(Vec<u32>, String),
}

/// A plane graph given by counterclockwise neighbor rotations and a declared
/// outer face. Immutable once built.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlaneTriangulation {
    rotation: Vec<Vec<u32>>,
    outer: Vec<u32>,
}

impl PlaneTriangulation {
    /// Builds and structurally checks a rotation system: neighbor ids in
    /// range, no loops, no repeated neighbors, symmetric adjacency, and an
    /// outer cycle of distinct in-range vertices.
    pub fn new(rotation: Vec<Vec<u32>>, outer: Vec<u32>) -> Result<Self, GraphError> {
        let n = rotation.len();
        for (idx, cycle) in rotation.iter().enumerate() {
            let v = idx as u32 + 1;
            for &u in cycle {
                if u == 0 || u as usize > n {
                    return Err(GraphError::VertexOutOfRange(u, n));
                }
                if u == v {
                    return Err(GraphError::SelfLoop(v));
                }
            }
            let mut seen: Vec<u32> = cycle.clone();
            seen.sort_unstable();
            if let Some(dup) = seen.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateNeighbor { v, u: dup[0] });
            }
        }
        let graph = PlaneTriangulation { rotation, outer };
        for v in 1..=n as u32 {
            for &u in graph.rotation(v) {
                if !graph.has_edge(u, v) {
                    return Err(GraphError::Asymmetric { u: v, v: u });
                }
            }
        }
        if graph.outer.len() < 3 {
            return Err(GraphError::OuterTooShort(graph.outer.len()));
        }
        for &v in &graph.outer {
            if v == 0 || v as usize > n {
                return Err(GraphError::VertexOutOfRange(v, n));
            }
        }
        let distinct: BTreeSet<u32> = graph.outer.iter().copied().collect();
        if distinct.len() != graph.outer.len() {
            return Err(GraphError::BadInducedOuter(
                graph.outer.clone(),
                "outer cycle repeats a vertex".into(),
            ));
        }
        Ok(graph)
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rotation.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Counterclockwise neighbor cycle of `v`.
    pub fn rotation(&self, v: u32) -> &[u32] {
        &self.rotation[(v - 1) as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.rotation(v).len()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.rotation(u).contains(&v)
    }

    /// The declared outer face cycle.
    pub fn outer_face(&self) -> &[u32] {
        &self.outer
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> {
        1..=self.vertex_count() as u32
    }

    /// The neighbor that immediately precedes `u` in the rotation at `v`.
    fn rotation_pred(&self, v: u32, u: u32) -> u32 {
        let cycle = self.rotation(v);
        let pos = cycle
            .iter()
            .position(|&w| w == u)
            .expect("rotation_pred called with a non-edge");
        cycle[(pos + cycle.len() - 1) % cycle.len()]
    }

    /// All faces of the embedding, each as its dart-orbit vertex cycle.
    ///
    /// Deterministic: orbits are discovered from the smallest unused dart.
    pub fn faces(&self) -> Vec<Vec<u32>> {
        let mut used: BTreeSet<(u32, u32)> = BTreeSet::new();
        let mut faces = Vec::new();
        for v in self.vertices() {
            for &u in self.rotation(v) {
                let start = (v, u);
                if used.contains(&start) {
                    continue;
                }
                let mut face = Vec::new();
                let mut dart = start;
                loop {
                    used.insert(dart);
                    face.push(dart.0);
                    dart = (dart.1, self.rotation_pred(dart.1, dart.0));
                    if dart == start {
                        break;
                    }
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Finds the traced face equal to the declared outer cycle (up to
    /// rotation and direction), returned in traversal orientation.
    pub fn outer_face_orbit(&self) -> Result<Vec<u32>, GraphError> {
        self.faces()
            .into_iter()
            .find(|face| cycles_equal(face, &self.outer))
            .ok_or(GraphError::OuterNotAFace)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n + 1];
        let mut stack = vec![1u32];
        seen[1] = true;
        let mut count = 0;
        while let Some(v) = stack.pop() {
            count += 1;
            for &u in self.rotation(v) {
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    stack.push(u);
                }
            }
        }
        count == n
    }

    /// True when the graph stays connected after removing any one vertex.
    pub fn is_two_connected(&self) -> bool {
        let n = self.vertex_count();
        if n < 3 || !self.is_connected() {
            return false;
        }
        for removed in self.vertices() {
            let mut seen = vec![false; n + 1];
            seen[removed as usize] = true;
            let start = self.vertices().find(|&v| v != removed).expect("n >= 3");
            let mut stack = vec![start];
            seen[start as usize] = true;
            let mut count = 1;
            while let Some(v) = stack.pop() {
                for &u in self.rotation(v) {
                    if !seen[u as usize] {
                        seen[u as usize] = true;
                        stack.push(u);
                        count += 1;
                    }
                }
            }
            if count != n - 1 {
                return false;
            }
        }
        true
    }

    /// Full validation of the near-triangulation contract.
    pub fn validate(&self) -> ValidationReport {
        let n = self.vertex_count();
        let edges = self.edge_count();
        let faces = self.faces();
        let connected = self.is_connected();
        let two_connected = self.is_two_connected();
        let euler_ok = connected && n as i64 - edges as i64 + faces.len() as i64 == 2;
        let outer_orbit = self.outer_face_orbit().ok();
        let mut problems = Vec::new();
        if !connected {
            problems.push("graph is disconnected".to_string());
        }
        if !two_connected {
            problems.push("graph has a cutvertex or is too small".to_string());
        }
        if !euler_ok {
            problems.push(format!(
                "Euler check failed: n={n}, E={edges}, F={}",
                faces.len()
            ));
        }
        if outer_orbit.is_none() {
            problems.push(format!(
                "declared outer face {:?} is not a face of the embedding",
                self.outer
            ));
        }
        let mut nontriangle_inner = 0usize;
        if let Some(orbit) = &outer_orbit {
            for face in &faces {
                if face.len() != 3 && !cycles_equal(face, orbit) {
                    nontriangle_inner += 1;
                    problems.push(format!("internal face {face:?} is not a triangle"));
                }
            }
        }
        let is_near = two_connected && euler_ok && outer_orbit.is_some() && nontriangle_inner == 0;
        let is_full = is_near && self.outer.len() == 3;
        ValidationReport {
            vertex_count: n,
            edge_count: edges,
            face_count: faces.len(),
            connected,
            two_connected,
            euler_ok,
            outer_is_face: outer_orbit.is_some(),
            nontriangle_internal_faces: nontriangle_inner,
            is_near_triangulation: is_near,
            is_triangulation: is_full,
            problems,
        }
    }

    /// Errors unless the graph validates as a near-triangulation.
    pub fn ensure_near_triangulation(&self) -> Result<(), GraphError> {
        let report = self.validate();
        if report.is_near_triangulation {
            Ok(())
        } else {
            Err(GraphError::NotNearTriangulation(report.problems.join("; ")))
        }
    }

    /// Errors unless every face, the outer one included, is a triangle.
    pub fn ensure_triangulation(&self) -> Result<(), GraphError> {
        let report = self.validate();
        if report.is_triangulation {
            Ok(())
        } else if report.is_near_triangulation {
            Err(GraphError::NotTriangulation(format!(
                "outer face has {} vertices",
                self.outer.len()
            )))
        } else {
            Err(GraphError::NotTriangulation(report.problems.join("; ")))
        }
    }

    /// All triangles of the graph that are not faces of the embedding.
    ///
    /// For a plane triangulation on at least 5 vertices, an empty result
    /// certifies 4-connectedness.
    pub fn separating_triangles(&self) -> Vec<[u32; 3]> {
        let face_triples: BTreeSet<[u32; 3]> = self
            .faces()
            .into_iter()
            .filter(|f| f.len() == 3)
            .map(|f| sorted_triple(f[0], f[1], f[2]))
            .collect();
        let mut separating = Vec::new();
        for u in self.vertices() {
            for &v in self.rotation(u) {
                if v <= u {
                    continue;
                }
                for &w in self.rotation(v) {
                    if w <= v || !self.has_edge(w, u) {
                        continue;
                    }
                    let triple = [u, v, w];
                    if !face_triples.contains(&triple) {
                        separating.push(triple);
                    }
                }
            }
        }
        separating
    }

    /// The subgraph induced by `keep`, with rotations restricted in place and
    /// vertices renumbered to `1..=keep.len()` in the given order. `outer`
    /// names the outer face in original vertex ids.
    pub fn induced(&self, keep: &[u32], outer: &[u32]) -> Result<PlaneTriangulation, GraphError> {
        let n = self.vertex_count();
        let mut new_id = vec![0u32; n + 1];
        for (idx, &v) in keep.iter().enumerate() {
            if v == 0 || v as usize > n {
                return Err(GraphError::VertexOutOfRange(v, n));
            }
            new_id[v as usize] = idx as u32 + 1;
        }
        let rotation = keep
            .iter()
            .map(|&v| {
                self.rotation(v)
                    .iter()
                    .filter(|&&u| new_id[u as usize] != 0)
                    .map(|&u| new_id[u as usize])
                    .collect()
            })
            .collect();
        let outer = outer
            .iter()
            .map(|&v| {
                if v as usize <= n && new_id[v as usize] != 0 {
                    Ok(new_id[v as usize])
                } else {
                    Err(GraphError::BadInducedOuter(
                        outer.to_vec(),
                        format!("outer vertex {v} not among kept vertices"),
                    ))
                }
            })
            .collect::<Result<Vec<u32>, _>>()?;
        PlaneTriangulation::new(rotation, outer)
    }
}

/// Per-check outcome of [`PlaneTriangulation::validate`].
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub face_count: usize,
    pub connected: bool,
    pub two_connected: bool,
    pub euler_ok: bool,
    pub outer_is_face: bool,
    pub nontriangle_internal_faces: usize,
    pub is_near_triangulation: bool,
    pub is_triangulation: bool,
    pub problems: Vec<String>,
}

fn sorted_triple(a: u32, b: u32, c: u32) -> [u32; 3] {
    let mut t = [a, b, c];
    t.sort_unstable();
    t
}

/// Whether two vertex cycles are equal up to rotation and direction.
pub fn cycles_equal(a: &[u32], b: &[u32]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let n = a.len();
    if n == 0 {
        return true;
    }
    (0..n).any(|shift| {
        (0..n).all(|idx| a[(shift + idx) % n] == b[idx])
            || (0..n).all(|idx| a[(shift + n - idx) % n] == b[idx])
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The triangle drawn with outer boundary read 1 → 3 → 2.
    pub(crate) fn k3() -> PlaneTriangulation {
        PlaneTriangulation::new(vec![vec![2, 3], vec![3, 1], vec![1, 2]], vec![1, 3, 2]).unwrap()
    }

    /// K4 minus the edge 3-4, outer face the quadrilateral 1,3,2,4.
    fn k4_minus_edge() -> PlaneTriangulation {
        PlaneTriangulation::new(
            vec![vec![2, 3, 4], vec![4, 3, 1], vec![1, 2], vec![1, 2]],
            vec![1, 3, 2, 4],
        )
        .unwrap()
    }

    /// K4 with a fifth vertex inside face 1,2,3 — two stacked tetrahedra.
    fn stacked_tetrahedra() -> PlaneTriangulation {
        PlaneTriangulation::new(
            vec![
                vec![2, 5, 3, 4],
                vec![4, 3, 5, 1],
                vec![1, 5, 2, 4],
                vec![1, 3, 2],
                vec![1, 2, 3],
            ],
            vec![1, 4, 2],
        )
        .unwrap()
    }

    #[test]
    fn k3_validates() {
        let report = k3().validate();
        assert!(report.is_near_triangulation);
        assert!(report.is_triangulation);
        assert_eq!(report.face_count, 2);
    }

    #[test]
    fn k4_minus_edge_is_near_triangulation() {
        let report = k4_minus_edge().validate();
        assert!(report.is_near_triangulation, "{:?}", report.problems);
        assert!(!report.is_triangulation);
        assert_eq!(report.face_count, 3);
    }

    #[test]
    fn asymmetric_rejected() {
        let err = PlaneTriangulation::new(vec![vec![2], vec![]], vec![1, 2, 1]).unwrap_err();
        assert_eq!(err, GraphError::Asymmetric { u: 1, v: 2 });
    }

    #[test]
    fn bad_outer_rejected() {
        // rotations form K3 but the declared outer is not a face
        let graph = PlaneTriangulation::new(
            vec![vec![2, 3], vec![3, 1], vec![1, 2], vec![]],
            vec![1, 2, 4],
        );
        // vertex 4 is isolated; graph constructs but fails validation
        let report = graph.unwrap().validate();
        assert!(!report.is_near_triangulation);
        assert!(!report.connected);
    }

    #[test]
    fn stacked_tetrahedra_has_separating_triangle() {
        let graph = stacked_tetrahedra();
        let report = graph.validate();
        assert!(report.is_triangulation, "{:?}", report.problems);
        assert_eq!(graph.separating_triangles(), vec![[1, 2, 3]]);
    }

    #[test]
    fn cycles_equal_handles_rotation_and_reflection() {
        assert!(cycles_equal(&[1, 2, 3], &[2, 3, 1]));
        assert!(cycles_equal(&[1, 2, 3], &[3, 2, 1]));
        assert!(!cycles_equal(&[1, 2, 3], &[1, 2, 4]));
        assert!(!cycles_equal(&[1, 2, 3, 4], &[1, 3, 2, 4]));
    }

    #[test]
    fn induced_subgraph_restricts_rotation() {
        let graph = stacked_tetrahedra();
        let sub = graph.induced(&[1, 2, 3], &[1, 3, 2]).unwrap();
        assert_eq!(sub.vertex_count(), 3);
        assert_eq!(sub.edge_count(), 3);
        assert!(sub.validate().is_triangulation);
    }
}
