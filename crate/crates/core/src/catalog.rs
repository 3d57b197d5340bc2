//! Built-in 4-connected plane triangulations, shipped as `.rot` files.

use crate::formats::rot_from_text;
use crate::graph::PlaneTriangulation;

/// The `.rot` source of the octahedron catalog entry.
pub const OCTAHEDRON_ROT: &str = include_str!("../catalog/octahedron.rot");

/// The `.rot` source of the icosahedron catalog entry.
pub const ICOSAHEDRON_ROT: &str = include_str!("../catalog/icosahedron.rot");

/// The octahedron: 6 vertices, 8 triangular faces, no separating triangles.
pub fn octahedron() -> PlaneTriangulation {
    rot_from_text(OCTAHEDRON_ROT).expect("catalog file is valid")
}

/// The icosahedron: 12 vertices, 20 triangular faces, no separating triangles.
pub fn icosahedron() -> PlaneTriangulation {
    rot_from_text(ICOSAHEDRON_ROT).expect("catalog file is valid")
}
