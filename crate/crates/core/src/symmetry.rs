//! Symmetries of the automaton: letter permutations and string reversal.
//!
//! Both commute with the rewriting transition (reversal maps the label
//! `{i,j}` of a length-`l` set to `{l+1-j, l+1-i}`), so they can be used to
//! deduplicate search states. Canonicalization picks the lexicographically
//! least image of a set under a chosen group of symmetries.

use thiserror::Error;

use crate::alphabet::{Alphabet, MAX_ALPHABET};
use crate::lset::LSet;
use crate::transition::TransitionLabel;
use crate::word::ColorString;

/// Symmetry configuration error.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("mapping is not a bijection on a {k}-letter alphabet: {reason}")]
    NotABijection { k: u8, reason: String },

    #[error("group {group:?} needs at least {needs} letters, alphabet has {k}")]
    AlphabetTooSmall {
        group: SymmetryGroup,
        needs: usize,
        k: usize,
    },
}

/// A bijection on the letters of an alphabet.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Perm {
    map: [u8; MAX_ALPHABET],
    k: u8,
}

impl Perm {
    pub fn identity(alphabet: Alphabet) -> Self {
        let mut map = [0u8; MAX_ALPHABET];
        for (idx, slot) in map.iter_mut().enumerate() {
            *slot = idx as u8;
        }
        Perm {
            map,
            k: alphabet.size() as u8,
        }
    }

    /// Transposition of two letters.
    pub fn swap(alphabet: Alphabet, x: u8, y: u8) -> Result<Self, SymmetryError> {
        let mut perm = Perm::identity(alphabet);
        if !alphabet.contains(x) || !alphabet.contains(y) {
            return Err(SymmetryError::NotABijection {
                k: perm.k,
                reason: format!("letters {x} and {y} must both be below {}", perm.k),
            });
        }
        perm.map.swap(x as usize, y as usize);
        Ok(perm)
    }

    /// Builds a permutation from an explicit image table.
    pub fn from_mapping(alphabet: Alphabet, images: &[u8]) -> Result<Self, SymmetryError> {
        let k = alphabet.size();
        if images.len() != k {
            return Err(SymmetryError::NotABijection {
                k: k as u8,
                reason: format!("expected {k} images, got {}", images.len()),
            });
        }
        let mut seen = [false; MAX_ALPHABET];
        let mut map = [0u8; MAX_ALPHABET];
        for (idx, &image) in images.iter().enumerate() {
            if image as usize >= k {
                return Err(SymmetryError::NotABijection {
                    k: k as u8,
                    reason: format!("image {image} out of range"),
                });
            }
            if seen[image as usize] {
                return Err(SymmetryError::NotABijection {
                    k: k as u8,
                    reason: format!("image {image} appears twice"),
                });
            }
            seen[image as usize] = true;
            map[idx] = image;
        }
        for (slot, value) in map.iter_mut().enumerate().skip(k) {
            *value = slot as u8;
        }
        Ok(Perm { map, k: k as u8 })
    }

    pub fn apply(self, letter: u8) -> u8 {
        self.map[letter as usize]
    }

    pub fn is_identity(self) -> bool {
        self.map.iter().enumerate().all(|(idx, &v)| idx as u8 == v)
    }

    pub fn inverse(self) -> Perm {
        let mut map = [0u8; MAX_ALPHABET];
        for (idx, &image) in self.map.iter().enumerate() {
            map[image as usize] = idx as u8;
        }
        Perm { map, k: self.k }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: Perm) -> Perm {
        let mut map = [0u8; MAX_ALPHABET];
        for (idx, value) in map.iter_mut().enumerate() {
            *value = self.map[other.map[idx] as usize];
        }
        Perm { map, k: self.k }
    }

    /// All `k!` permutations of the alphabet, identity first.
    pub fn all(alphabet: Alphabet) -> Vec<Perm> {
        let k = alphabet.size();
        let mut images: Vec<u8> = (0..k as u8).collect();
        let mut out = Vec::new();
        permute_rec(&mut images, 0, alphabet, &mut out);
        out.sort_by_key(|p| p.map);
        out
    }
}

fn permute_rec(images: &mut Vec<u8>, at: usize, alphabet: Alphabet, out: &mut Vec<Perm>) {
    if at == images.len() {
        out.push(Perm::from_mapping(alphabet, images).expect("generated bijection"));
        return;
    }
    for pick in at..images.len() {
        images.swap(at, pick);
        permute_rec(images, at + 1, alphabet, out);
        images.swap(at, pick);
    }
}

/// One symmetry: optionally reverse the string, then rename letters.
///
/// Reversal and letter renaming commute, so this form is closed under
/// composition.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GroupElement {
    pub perm: Perm,
    pub reversed: bool,
}

impl GroupElement {
    pub fn identity(alphabet: Alphabet) -> Self {
        GroupElement {
            perm: Perm::identity(alphabet),
            reversed: false,
        }
    }

    pub fn apply_string(self, s: ColorString) -> ColorString {
        let s = if self.reversed { s.reversed() } else { s };
        s.map_letters(|letter| self.perm.apply(letter))
    }

    pub fn apply(self, set: &LSet) -> LSet {
        let mut members: Vec<ColorString> = set
            .members()
            .iter()
            .map(|&m| self.apply_string(m))
            .collect();
        members.sort_unstable();
        LSet::from_sorted_unchecked(set.alphabet(), set.len(), members)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: GroupElement) -> GroupElement {
        GroupElement {
            perm: self.perm.compose(other.perm),
            reversed: self.reversed ^ other.reversed,
        }
    }

    pub fn inverse(self) -> GroupElement {
        GroupElement {
            perm: self.perm.inverse(),
            reversed: self.reversed,
        }
    }

    /// How this symmetry relabels a transition out of a length-`len` set.
    pub fn transform_label(self, len: usize, label: TransitionLabel) -> TransitionLabel {
        if self.reversed {
            TransitionLabel::new(len + 1 - label.j(), len + 1 - label.i())
                .expect("mirrored label stays in range")
        } else {
            label
        }
    }
}

/// Applies a letter permutation member-wise. Length is unchanged.
pub fn permute(set: &LSet, perm: Perm) -> LSet {
    GroupElement {
        perm,
        reversed: false,
    }
    .apply(set)
}

/// Reverses every member. Length is unchanged.
pub fn reverse(set: &LSet) -> LSet {
    GroupElement {
        perm: Perm::identity(set.alphabet()),
        reversed: true,
    }
    .apply(set)
}

/// Which group of symmetries to canonicalize under.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum SymmetryGroup {
    /// Trivial group: every set is its own canonical form.
    None,
    /// Swap of the letters c and d.
    #[default]
    CdSwap,
    /// Generated by the c↔d swap and by reversal-combined-with-a↔b-swap.
    CdSwapReversal,
    /// All letter permutations of the alphabet.
    FullPermutations,
}

impl SymmetryGroup {
    /// Every element of the group, identity first.
    pub fn elements(self, alphabet: Alphabet) -> Result<Vec<GroupElement>, SymmetryError> {
        let id = Perm::identity(alphabet);
        let need4 = |group| {
            if alphabet.size() < 4 {
                Err(SymmetryError::AlphabetTooSmall {
                    group,
                    needs: 4,
                    k: alphabet.size(),
                })
            } else {
                Ok(())
            }
        };
        let plain = |perm| GroupElement {
            perm,
            reversed: false,
        };
        match self {
            SymmetryGroup::None => Ok(vec![plain(id)]),
            SymmetryGroup::CdSwap => {
                need4(self)?;
                let cd = Perm::swap(alphabet, 2, 3)?;
                Ok(vec![plain(id), plain(cd)])
            }
            SymmetryGroup::CdSwapReversal => {
                need4(self)?;
                let cd = Perm::swap(alphabet, 2, 3)?;
                let ab = Perm::swap(alphabet, 0, 1)?;
                Ok(vec![
                    plain(id),
                    plain(cd),
                    GroupElement {
                        perm: ab,
                        reversed: true,
                    },
                    GroupElement {
                        perm: cd.compose(ab),
                        reversed: true,
                    },
                ])
            }
            SymmetryGroup::FullPermutations => {
                Ok(Perm::all(alphabet).into_iter().map(plain).collect())
            }
        }
    }

    /// The lexicographically least image of `set` under this group.
    pub fn canonicalize(self, set: &LSet) -> Result<LSet, SymmetryError> {
        Ok(self.canonicalize_with_witness(set)?.0)
    }

    /// Canonical form together with the element `g` such that the result
    /// equals `g(set)`.
    pub fn canonicalize_with_witness(
        self,
        set: &LSet,
    ) -> Result<(LSet, GroupElement), SymmetryError> {
        let elements = self.elements(set.alphabet())?;
        Ok(canonicalize_among(set, &elements))
    }
}

/// Least image of `set` under the listed symmetries (identity must be listed).
pub fn canonicalize_among(set: &LSet, elements: &[GroupElement]) -> (LSet, GroupElement) {
    debug_assert!(!elements.is_empty());
    let mut best = set.clone();
    let mut witness = elements[0];
    debug_assert!(witness.perm.is_identity() && !witness.reversed);
    for &element in &elements[1..] {
        let image = element.apply(set);
        if image.members() < best.members() {
            best = image;
            witness = element;
        }
    }
    (best, witness)
}
