//! The rewriting transition on string sets.
//!
//! For a string `s = s_1…s_l` (l ≥ 3) and positions `1 ≤ i < j ≤ l`, the
//! transition replaces the infix `s_i…s_j` by `s_i c s_j` for every letter
//! `c` that does not occur in that infix. On a set it is the union of the
//! per-string results, which always yields an `(l+i+2-j)`-set.

use thiserror::Error;

use crate::alphabet::Alphabet;
use crate::lset::{LSet, PackedSet};
use crate::word::ColorString;

/// Default budget for the packed-universe fast path, in bits.
///
/// `k^l` universes up to this size (8 MiB of bitmap) use bit-indexed
/// deduplication; larger results fall back to sort-and-dedup merging.
pub const PACKED_UNIVERSE_BITS: u64 = 1 << 26;

/// Transition precondition violation.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum TransitionError {
    #[error("transitions need length >= 3, set has length {0}")]
    LengthBelowMinimum(usize),

    #[error("position i={0} must be at least 1")]
    StartIndexZero(usize),

    #[error("positions must satisfy i < j, got i={i}, j={j}")]
    OutOfOrder { i: usize, j: usize },

    #[error("position j={j} exceeds the string length {len}")]
    EndBeyondLength { j: usize, len: usize },

    #[error("resulting length {0} exceeds the supported maximum {max}", max = ColorString::MAX_LEN)]
    ResultTooLong(usize),
}

/// An edge label `{i, j}` with `1 ≤ i < j`, positions 1-indexed.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TransitionLabel {
    i: u8,
    j: u8,
}

impl TransitionLabel {
    pub fn new(i: usize, j: usize) -> Result<Self, TransitionError> {
        if i == 0 {
            return Err(TransitionError::StartIndexZero(i));
        }
        if i >= j {
            return Err(TransitionError::OutOfOrder { i, j });
        }
        if j > ColorString::MAX_LEN {
            return Err(TransitionError::EndBeyondLength {
                j,
                len: ColorString::MAX_LEN,
            });
        }
        Ok(TransitionLabel {
            i: i as u8,
            j: j as u8,
        })
    }

    pub fn i(self) -> usize {
        self.i as usize
    }

    pub fn j(self) -> usize {
        self.j as usize
    }

    /// Checks the label against a concrete set length.
    pub fn check_against(self, len: usize) -> Result<(), TransitionError> {
        if len < 3 {
            return Err(TransitionError::LengthBelowMinimum(len));
        }
        if self.j() > len {
            return Err(TransitionError::EndBeyondLength { j: self.j(), len });
        }
        let result = result_length(len, self);
        if result > ColorString::MAX_LEN {
            return Err(TransitionError::ResultTooLong(result));
        }
        Ok(())
    }

    /// All labels valid for length `len`, in lexicographic `(i, j)` order.
    pub fn all_for_length(len: usize) -> impl Iterator<Item = TransitionLabel> {
        (1..len).flat_map(move |i| {
            (i + 1..=len).map(move |j| TransitionLabel {
                i: i as u8,
                j: j as u8,
            })
        })
    }
}

impl std::fmt::Display for TransitionLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{{},{}}}", self.i, self.j)
    }
}

/// Length of any result of applying `label` to a length-`len` set.
pub fn result_length(len: usize, label: TransitionLabel) -> usize {
    len + label.i() + 2 - label.j()
}

/// Applies the transition to a single string: all `s_1…s_i c s_j…s_l` with
/// `c` absent from `s_i…s_j`. The result may be empty.
pub fn apply_string(
    s: ColorString,
    alphabet: Alphabet,
    label: TransitionLabel,
) -> Result<LSet, TransitionError> {
    label.check_against(s.len())?;
    let mut members = Vec::with_capacity(alphabet.size() - 1);
    let present = s.letter_mask(label.i() - 1, label.j() - 1);
    for c in alphabet.letters() {
        if present & (1 << c) == 0 {
            members.push(s.splice(label.i(), c, label.j()));
        }
    }
    // candidates are emitted in ascending letter order, so members are sorted
    Ok(LSet::from_sorted_unchecked(
        alphabet,
        result_length(s.len(), label),
        members,
    ))
}

/// Applies the transition to a whole set: the union over its members.
///
/// Dispatches between the packed bit-universe path and sorted merging; both
/// compute exactly the same set.
pub fn apply_set(set: &LSet, label: TransitionLabel) -> Result<LSet, TransitionError> {
    label.check_against(set.len())?;
    let out_len = result_length(set.len(), label);
    let universe = PackedSet::universe_size(set.alphabet(), out_len);
    // The bitmap pays off once candidates densely collide; measured
    // crossover is around a quarter of the universe in candidates.
    let candidates = (set.alphabet().size() as u64 - 1) * set.member_count() as u64;
    let packed_worthwhile =
        matches!(universe, Some(u) if u <= PACKED_UNIVERSE_BITS && candidates * 4 >= u);
    if packed_worthwhile {
        apply_set_packed(set, label, PACKED_UNIVERSE_BITS).expect("universe checked against budget")
    } else {
        apply_set_sorted(set, label)
    }
}

/// Sorted-merge implementation of [`apply_set`].
pub fn apply_set_sorted(set: &LSet, label: TransitionLabel) -> Result<LSet, TransitionError> {
    label.check_against(set.len())?;
    let alphabet = set.alphabet();
    let mut members = Vec::new();
    for &member in set.members() {
        let present = member.letter_mask(label.i() - 1, label.j() - 1);
        for c in alphabet.letters() {
            if present & (1 << c) == 0 {
                members.push(member.splice(label.i(), c, label.j()));
            }
        }
    }
    members.sort_unstable();
    members.dedup();
    Ok(LSet::from_sorted_unchecked(
        alphabet,
        result_length(set.len(), label),
        members,
    ))
}

/// Packed bit-universe implementation of [`apply_set`].
///
/// Returns `None` when `k^(l+i+2-j)` exceeds `max_bits`.
pub fn apply_set_packed(
    set: &LSet,
    label: TransitionLabel,
    max_bits: u64,
) -> Option<Result<LSet, TransitionError>> {
    if let Err(err) = label.check_against(set.len()) {
        return Some(Err(err));
    }
    let alphabet = set.alphabet();
    let k = alphabet.size() as u64;
    let len = set.len();
    let out_len = result_length(len, label);
    let mut packed = PackedSet::with_budget(alphabet, out_len, max_bits)?;

    let (i, j) = (label.i(), label.j());
    // suffix s_j…s_l has l-j+1 digits
    let suffix_digits = (len - j + 1) as u32;
    let suffix_pow = k.pow(suffix_digits);
    let prefix_pow = k.pow((len - i) as u32);
    for &member in set.members() {
        let code = member.code(alphabet.size());
        let prefix = code / prefix_pow;
        let suffix = code % suffix_pow;
        let present = member.letter_mask(i - 1, j - 1);
        for c in alphabet.letters() {
            if present & (1 << c) == 0 {
                packed.insert_code((prefix * k + c as u64) * suffix_pow + suffix);
            }
        }
    }
    Some(Ok(packed.to_lset()))
}

/// All `C(l,2)` transitions out of a set, in lexicographic label order.
///
/// Different labels may produce equal sets, and results may be empty; every
/// label appears exactly once.
pub fn successors(set: &LSet) -> Result<Vec<(TransitionLabel, LSet)>, TransitionError> {
    if set.len() < 3 {
        return Err(TransitionError::LengthBelowMinimum(set.len()));
    }
    TransitionLabel::all_for_length(set.len())
        .map(|label| apply_set(set, label).map(|next| (label, next)))
        .collect()
}
