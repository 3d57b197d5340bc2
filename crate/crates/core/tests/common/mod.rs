//! Independent oracles for the integration suites.
//!
//! These stay deliberately naive — character vectors and odometer loops —
//! so they share no code with the implementation paths they check.

#![allow(dead_code)]

use std::collections::BTreeSet;

use lsets::graph::PlaneTriangulation;
use lsets::{Alphabet, ColorString, LSet};
use rand::rngs::StdRng;
use rand::Rng;

pub const LETTERS: [char; 8] = ['a', 'b', 'c', 'd', 'e', 'f', 'g', 'h'];

/// Direct transcription of the transition on one string: every
/// `s_1..s_i c s_j..s_l` where the letter `c` does not occur in `s_i..s_j`.
pub fn naive_apply_string(s: &str, k: usize, i: usize, j: usize) -> BTreeSet<String> {
    let chars: Vec<char> = s.chars().collect();
    let l = chars.len();
    assert!(l >= 3 && i >= 1 && i < j && j <= l);
    let infix = &chars[i - 1..j];
    let mut out = BTreeSet::new();
    for &c in &LETTERS[..k] {
        if !infix.contains(&c) {
            let mut built: Vec<char> = chars[..i].to_vec();
            built.push(c);
            built.extend_from_slice(&chars[j - 1..]);
            out.insert(built.into_iter().collect());
        }
    }
    out
}

/// Union of the per-string results over a whole set.
pub fn naive_apply_set<'a>(
    members: impl IntoIterator<Item = &'a str>,
    k: usize,
    i: usize,
    j: usize,
) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for member in members {
        out.extend(naive_apply_string(member, k, i, j));
    }
    out
}

pub fn lset_to_strings(set: &LSet) -> BTreeSet<String> {
    set.members().iter().map(|m| m.to_string()).collect()
}

pub fn lset_from_strings(alphabet: Alphabet, len: usize, strings: &BTreeSet<String>) -> LSet {
    let members: Vec<ColorString> = strings
        .iter()
        .map(|s| ColorString::parse(s, alphabet).expect("oracle output parses"))
        .collect();
    LSet::new(alphabet, len, members).expect("oracle output is a valid set")
}

/// A random string of length `len` over `k` letters.
pub fn random_string(rng: &mut StdRng, alphabet: Alphabet, len: usize) -> ColorString {
    let letters: Vec<u8> = (0..len)
        .map(|_| rng.random_range(0..alphabet.size() as u8))
        .collect();
    ColorString::new(&letters, alphabet).expect("random letters are in range")
}

/// A random nonempty set of length-`len` strings.
pub fn random_lset(rng: &mut StdRng, alphabet: Alphabet, len: usize, max_members: usize) -> LSet {
    let count = rng.random_range(1..=max_members);
    let members: Vec<ColorString> = (0..count)
        .map(|_| random_string(rng, alphabet, len))
        .collect();
    LSet::new(alphabet, len, members).expect("members share the length")
}

/// All undirected edges of a rotation system, each once.
pub fn edge_list(graph: &PlaneTriangulation) -> Vec<(u32, u32)> {
    let mut edges = Vec::new();
    for v in graph.vertices() {
        for &u in graph.rotation(v) {
            if v < u {
                edges.push((v, u));
            }
        }
    }
    edges
}

/// Counts proper colorings by walking every one of the `k^free` assignments
/// with an odometer and checking every edge.
pub fn brute_force_coloring_count(
    n: usize,
    edges: &[(u32, u32)],
    k: usize,
    seed: &[(u32, u8)],
) -> u64 {
    let mut fixed: Vec<Option<u8>> = vec![None; n];
    for &(v, letter) in seed {
        fixed[(v - 1) as usize] = Some(letter);
    }
    let free: Vec<usize> = (0..n).filter(|&idx| fixed[idx].is_none()).collect();
    let mut assignment: Vec<u8> = fixed.iter().map(|slot| slot.unwrap_or(0)).collect();
    let total = (k as u64).pow(free.len() as u32);
    let mut count = 0;
    for code in 0..total {
        let mut rest = code;
        for &idx in &free {
            assignment[idx] = (rest % k as u64) as u8;
            rest /= k as u64;
        }
        if edges
            .iter()
            .all(|&(u, v)| assignment[(u - 1) as usize] != assignment[(v - 1) as usize])
        {
            count += 1;
        }
    }
    count
}
