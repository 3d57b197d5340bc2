//! Exhaustive proper-coloring enumeration and the boundary-string oracle.
//!
//! Colorings double as an independent check on the string automaton: the set
//! of boundary strings over all proper colorings of a constructed prefix
//! graph must equal the state the replayed derivation script reaches.

use thiserror::Error;

use crate::alphabet::Alphabet;
use crate::graph::PlaneTriangulation;
use crate::lset::{LSet, LSetError};
use crate::script::{DerivationScript, ReplayError};
use crate::shelling::{build_from_derivation, ShellingError, ShellingOrder};
use crate::word::ColorString;

/// Coloring setup error.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("seed vertex {0} out of range 1..={1}")]
    SeedVertexOutOfRange(u32, usize),

    #[error("seed assigns vertex {0} twice")]
    SeedDuplicate(u32),

    #[error("seed letter {letter} out of range for a {k}-letter alphabet")]
    SeedLetterOutOfRange { letter: u8, k: usize },

    #[error("seed is improper: adjacent vertices {u} and {v} get the same letter")]
    SeedImproper { u: u32, v: u32 },

    #[error(transparent)]
    Shelling(#[from] ShellingError),

    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),

    #[error(transparent)]
    Replay(#[from] ReplayError),

    #[error(transparent)]
    Set(#[from] LSetError),
}

/// A proper letter assignment, indexed by vertex id minus one.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColoringAssignment {
    pub colors: Vec<u8>,
}

impl ColoringAssignment {
    pub fn color(&self, v: u32) -> u8 {
        self.colors[(v - 1) as usize]
    }
}

/// Iterator over every proper coloring extending a seed.
///
/// Backtracks over vertices in index order trying letters in ascending
/// order, so colorings are yielded in lexicographic order of the full
/// assignment vector. Seeded vertices keep their letter.
#[derive(Debug)]
pub struct ColoringIter<'g> {
    graph: &'g PlaneTriangulation,
    alphabet: Alphabet,
    seeded: Vec<Option<u8>>,
    colors: Vec<u8>,
    /// Next letter to try at each depth.
    cursor: Vec<u8>,
    depth: usize,
    done: bool,
}

/// Enumerates proper colorings of `graph` with `alphabet.size()` letters
/// extending `seed` (pairs of vertex id and letter).
pub fn enumerate_colorings<'g>(
    graph: &'g PlaneTriangulation,
    seed: &[(u32, u8)],
    alphabet: Alphabet,
) -> Result<ColoringIter<'g>, ColoringError> {
    let n = graph.vertex_count();
    let mut seeded: Vec<Option<u8>> = vec![None; n];
    for &(v, letter) in seed {
        if v == 0 || v as usize > n {
            return Err(ColoringError::SeedVertexOutOfRange(v, n));
        }
        if letter as usize >= alphabet.size() {
            return Err(ColoringError::SeedLetterOutOfRange {
                letter,
                k: alphabet.size(),
            });
        }
        let slot = &mut seeded[(v - 1) as usize];
        if slot.is_some() {
            return Err(ColoringError::SeedDuplicate(v));
        }
        *slot = Some(letter);
    }
    for &(v, letter) in seed {
        for &u in graph.rotation(v) {
            if u < v && seeded[(u - 1) as usize] == Some(letter) {
                return Err(ColoringError::SeedImproper { u, v });
            }
        }
    }
    Ok(ColoringIter {
        graph,
        alphabet,
        seeded,
        colors: vec![0; n],
        cursor: vec![0; n + 1],
        depth: 0,
        done: n == 0,
    })
}

impl ColoringIter<'_> {
    /// Whether `letter` at vertex index `idx` conflicts with an earlier vertex.
    fn conflicts(&self, idx: usize, letter: u8) -> bool {
        let v = idx as u32 + 1;
        self.graph
            .rotation(v)
            .iter()
            .any(|&u| (u as usize) <= idx && self.colors[(u - 1) as usize] == letter && u != v)
    }

    fn choices_at(&self, idx: usize) -> u8 {
        match self.seeded[idx] {
            Some(_) => 1,
            None => self.alphabet.size() as u8,
        }
    }

    fn letter_for(&self, idx: usize, choice: u8) -> u8 {
        match self.seeded[idx] {
            Some(letter) => letter,
            None => choice,
        }
    }
}

impl Iterator for ColoringIter<'_> {
    type Item = ColoringAssignment;

    fn next(&mut self) -> Option<ColoringAssignment> {
        if self.done {
            return None;
        }
        let n = self.colors.len();
        loop {
            if self.depth == n {
                // a full assignment was reached; yield it and step back
                self.depth -= 1;
                return Some(ColoringAssignment {
                    colors: self.colors.clone(),
                });
            }
            let idx = self.depth;
            let mut advanced = false;
            while self.cursor[idx] < self.choices_at(idx) {
                let choice = self.cursor[idx];
                self.cursor[idx] += 1;
                let letter = self.letter_for(idx, choice);
                if !self.conflicts(idx, letter) {
                    self.colors[idx] = letter;
                    self.depth += 1;
                    self.cursor[self.depth] = 0;
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                if idx == 0 {
                    self.done = true;
                    return None;
                }
                self.cursor[idx] = 0;
                self.depth -= 1;
            }
        }
    }
}

/// Number of proper colorings extending the seed.
///
/// Counts by branch-partitioned recursion; with the `parallel` feature the
/// top-level branches run on worker threads, which cannot change the count.
pub fn count_colorings(
    graph: &PlaneTriangulation,
    seed: &[(u32, u8)],
    alphabet: Alphabet,
) -> Result<u64, ColoringError> {
    // reuse seed validation
    enumerate_colorings(graph, seed, alphabet)?;
    let n = graph.vertex_count();
    let mut seeded: Vec<Option<u8>> = vec![None; n];
    for &(v, letter) in seed {
        seeded[(v - 1) as usize] = Some(letter);
    }
    Ok(count_colorings_impl(
        graph,
        &seeded,
        alphabet,
        default_parallelism(),
    ))
}

/// Sequential-only variant of [`count_colorings`], for comparison runs.
pub fn count_colorings_sequential(
    graph: &PlaneTriangulation,
    seed: &[(u32, u8)],
    alphabet: Alphabet,
) -> Result<u64, ColoringError> {
    enumerate_colorings(graph, seed, alphabet)?;
    let n = graph.vertex_count();
    let mut seeded: Vec<Option<u8>> = vec![None; n];
    for &(v, letter) in seed {
        seeded[(v - 1) as usize] = Some(letter);
    }
    Ok(count_colorings_impl(graph, &seeded, alphabet, false))
}

fn default_parallelism() -> bool {
    cfg!(feature = "parallel")
}

fn count_colorings_impl(
    graph: &PlaneTriangulation,
    seeded: &[Option<u8>],
    alphabet: Alphabet,
    parallel: bool,
) -> u64 {
    let mut colors = vec![0u8; graph.vertex_count()];
    count_rec(graph, seeded, alphabet, &mut colors, 0, parallel)
}

fn count_rec(
    graph: &PlaneTriangulation,
    seeded: &[Option<u8>],
    alphabet: Alphabet,
    colors: &mut [u8],
    idx: usize,
    parallel: bool,
) -> u64 {
    if idx == colors.len() {
        return 1;
    }
    let letters: Vec<u8> = match seeded[idx] {
        Some(letter) => vec![letter],
        None => alphabet.letters().collect(),
    };
    let viable = |letter: u8, colors: &[u8]| {
        let v = idx as u32 + 1;
        !graph
            .rotation(v)
            .iter()
            .any(|&u| (u as usize) <= idx && colors[(u - 1) as usize] == letter)
    };

    // Split the top two branching levels across workers; deeper subtrees
    // stay sequential. The sum is independent of the split.
    #[cfg(feature = "parallel")]
    if parallel && idx < 2 && colors.len() > 8 && letters.len() > 1 {
        use rayon::prelude::*;
        return letters
            .par_iter()
            .map(|&letter| {
                let mut local = colors.to_vec();
                if !viable(letter, &local) {
                    return 0;
                }
                local[idx] = letter;
                count_rec(graph, seeded, alphabet, &mut local, idx + 1, parallel)
            })
            .sum();
    }

    let mut total = 0;
    for letter in letters {
        if viable(letter, colors) {
            colors[idx] = letter;
            total += count_rec(graph, seeded, alphabet, colors, idx + 1, false);
        }
    }
    total
}

/// The standard seed for boundary-string sets: `v_1 → a`, `v_2 → b`, `v_3 → c`.
pub fn standard_seed(order: &ShellingOrder) -> Vec<(u32, u8)> {
    vec![
        (order.order[0], 0),
        (order.order[1], 1),
        (order.order[2], 2),
    ]
}

/// The set of boundary strings of the prefix graph on the first `upto`
/// vertices of the order, over all proper colorings with the standard seed.
///
/// The boundary is read from `v_1` to `v_2`; for `upto = 3` the result is
/// exactly the start set `{acb}`.
pub fn boundary_string_set(
    graph: &PlaneTriangulation,
    order: &ShellingOrder,
    upto: usize,
    alphabet: Alphabet,
) -> Result<LSet, ColoringError> {
    let boundary = order.prefix_boundary(upto)?;
    let prefix: &[u32] = &order.order[..upto];
    // renumber: coloring runs on the induced prefix graph
    let induced = graph.induced(prefix, &boundary)?;
    let mut new_id = vec![0u32; graph.vertex_count() + 1];
    for (idx, &v) in prefix.iter().enumerate() {
        new_id[v as usize] = idx as u32 + 1;
    }
    let seed: Vec<(u32, u8)> = standard_seed(order)
        .into_iter()
        .map(|(v, letter)| (new_id[v as usize], letter))
        .collect();
    let boundary_ids: Vec<u32> = boundary.iter().map(|&v| new_id[v as usize]).collect();

    let mut strings: Vec<ColorString> = Vec::new();
    for coloring in enumerate_colorings(&induced, &seed, alphabet)? {
        let letters: Vec<u8> = boundary_ids.iter().map(|&v| coloring.color(v)).collect();
        strings.push(ColorString::new(&letters, alphabet).expect("boundary within length limit"));
    }
    Ok(LSet::new(alphabet, boundary.len(), strings)?)
}

/// Outcome of [`roundtrip_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundtripOutcome {
    pub ok: bool,
    /// Number of script steps at the first disagreeing prefix.
    pub first_mismatch: Option<usize>,
}

/// Verifies that the string engine and the coloring oracle agree on every
/// prefix of a derivation script from `{acb}`: the replayed state must equal
/// the boundary-string set of the constructed graph, exactly.
pub fn roundtrip_check(script: &DerivationScript) -> Result<RoundtripOutcome, ColoringError> {
    let (graph, order) = build_from_derivation(script)?;
    let states = script.replay()?;
    let alphabet = script.start.alphabet();
    for (steps_applied, state) in states.iter().enumerate() {
        let from_colorings = boundary_string_set(&graph, &order, 3 + steps_applied, alphabet)?;
        if &from_colorings != state {
            return Ok(RoundtripOutcome {
                ok: false,
                first_mismatch: Some(steps_applied),
            });
        }
    }
    Ok(RoundtripOutcome {
        ok: true,
        first_mismatch: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::transition::TransitionLabel;

    fn alpha() -> Alphabet {
        Alphabet::default()
    }

    fn script(pairs: &[(usize, usize)]) -> DerivationScript {
        let steps = pairs
            .iter()
            .map(|&(i, j)| TransitionLabel::new(i, j).unwrap())
            .collect();
        DerivationScript::new(LSet::start(alpha()).unwrap(), steps)
    }

    fn k3() -> PlaneTriangulation {
        PlaneTriangulation::new(vec![vec![2, 3], vec![3, 1], vec![1, 2]], vec![1, 3, 2]).unwrap()
    }

    #[test]
    fn fully_seeded_triangle_has_one_coloring() {
        let seed = [(1, 0), (2, 1), (3, 2)];
        let colorings: Vec<_> = enumerate_colorings(&k3(), &seed, alpha())
            .unwrap()
            .collect();
        assert_eq!(colorings.len(), 1);
        assert_eq!(colorings[0].colors, vec![0, 1, 2]);
        assert_eq!(count_colorings(&k3(), &seed, alpha()).unwrap(), 1);
    }

    #[test]
    fn unseeded_triangle() {
        // 4 * 3 * 2 proper colorings of K3
        assert_eq!(count_colorings(&k3(), &[], alpha()).unwrap(), 24);
    }

    #[test]
    fn k4_has_24_colorings() {
        let (k4, _) = crate::shelling::build_from_derivation(&script(&[(1, 3)])).unwrap();
        assert_eq!(count_colorings(&k4, &[], alpha()).unwrap(), 24);
        let seq = count_colorings_sequential(&k4, &[], alpha()).unwrap();
        assert_eq!(seq, 24);
    }

    #[test]
    fn octahedron_has_96_colorings() {
        assert_eq!(
            count_colorings(&catalog::octahedron(), &[], alpha()).unwrap(),
            96
        );
    }

    #[test]
    fn parallel_count_matches_sequential() {
        let icosa = catalog::icosahedron();
        let fast = count_colorings(&icosa, &[], alpha()).unwrap();
        let seq = count_colorings_sequential(&icosa, &[], alpha()).unwrap();
        assert_eq!(fast, seq);
    }

    #[test]
    fn improper_seed_rejected() {
        let err = enumerate_colorings(&k3(), &[(1, 0), (2, 0)], alpha()).unwrap_err();
        assert_eq!(err, ColoringError::SeedImproper { u: 1, v: 2 });
        let err = enumerate_colorings(&k3(), &[(1, 0), (1, 1)], alpha()).unwrap_err();
        assert_eq!(err, ColoringError::SeedDuplicate(1));
        let err = enumerate_colorings(&k3(), &[(9, 0)], alpha()).unwrap_err();
        assert_eq!(err, ColoringError::SeedVertexOutOfRange(9, 3));
        let err = enumerate_colorings(&k3(), &[(1, 7)], alpha()).unwrap_err();
        assert!(matches!(err, ColoringError::SeedLetterOutOfRange { .. }));
    }

    #[test]
    fn enumeration_order_is_lexicographic() {
        let colorings: Vec<Vec<u8>> = enumerate_colorings(&k3(), &[], alpha())
            .unwrap()
            .map(|c| c.colors)
            .collect();
        let mut sorted = colorings.clone();
        sorted.sort();
        assert_eq!(colorings, sorted);
        assert_eq!(colorings[0], vec![0, 1, 2]);
    }

    #[test]
    fn boundary_set_examples() {
        // prefix of size 3 is exactly the start set
        let (graph, order) = crate::shelling::build_from_derivation(&script(&[(1, 3)])).unwrap();
        let at3 = boundary_string_set(&graph, &order, 3, alpha()).unwrap();
        assert_eq!(at3, LSet::start(alpha()).unwrap());
        // K4's fourth vertex is adjacent to a, c, b, forcing d
        let at4 = boundary_string_set(&graph, &order, 4, alpha()).unwrap();
        assert_eq!(at4, LSet::from_strs(alpha(), 3, &["adb"]).unwrap());

        let (graph, order) = crate::shelling::build_from_derivation(&script(&[(2, 3)])).unwrap();
        let at4 = boundary_string_set(&graph, &order, 4, alpha()).unwrap();
        assert_eq!(at4, LSet::from_strs(alpha(), 4, &["acab", "acdb"]).unwrap());
    }

    #[test]
    fn roundtrip_examples() {
        assert!(roundtrip_check(&script(&[(1, 3)])).unwrap().ok);
        assert!(roundtrip_check(&script(&[(2, 3), (1, 4)])).unwrap().ok);
        assert!(
            roundtrip_check(&script(&[(1, 2), (2, 4), (1, 3)]))
                .unwrap()
                .ok
        );
    }
}
