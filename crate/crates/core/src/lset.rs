//! Sets of strings of one fixed length — the states of the automaton.
//!
//! An [`LSet`] keeps its members sorted and deduplicated, so equality and
//! hashing are structural. A [`PackedSet`] is the companion bit-indexed
//! representation over the full `k^l` universe, used for fast union and
//! deduplication when that universe is small enough.

use std::fmt;

use thiserror::Error;

use crate::alphabet::Alphabet;
use crate::word::{ColorString, WordError};

/// Set construction error.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum LSetError {
    #[error("member {member} has length {got}, expected {expected}")]
    WrongLength {
        member: ColorString,
        got: usize,
        expected: usize,
    },

    #[error("set length {0} exceeds the supported maximum {max}", max = ColorString::MAX_LEN)]
    LengthTooLarge(usize),

    #[error("a start set needs at least 3 letters, alphabet has {0}")]
    AlphabetTooSmallForStart(usize),

    #[error(transparent)]
    Word(#[from] WordError),
}

/// A set of strings, all of the same length `l`.
///
/// The empty set is valid for every `l`; it keeps the nominal length so that
/// later transitions can still be bounds-checked.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LSet {
    alphabet: Alphabet,
    len: u8,
    members: Vec<ColorString>,
}

impl LSet {
    pub fn new(
        alphabet: Alphabet,
        len: usize,
        mut members: Vec<ColorString>,
    ) -> Result<Self, LSetError> {
        if len > ColorString::MAX_LEN {
            return Err(LSetError::LengthTooLarge(len));
        }
        for member in &members {
            if member.len() != len {
                return Err(LSetError::WrongLength {
                    member: *member,
                    got: member.len(),
                    expected: len,
                });
            }
            for letter in member.letters() {
                alphabet.check_letter(letter).map_err(WordError::from)?;
            }
        }
        members.sort_unstable();
        members.dedup();
        Ok(LSet {
            alphabet,
            len: len as u8,
            members,
        })
    }

    /// Builds a set from sorted, deduplicated, length-checked members.
    pub(crate) fn from_sorted_unchecked(
        alphabet: Alphabet,
        len: usize,
        members: Vec<ColorString>,
    ) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.iter().all(|m| m.len() == len));
        LSet {
            alphabet,
            len: len as u8,
            members,
        }
    }

    /// The empty set with nominal length `len`.
    pub fn empty(alphabet: Alphabet, len: usize) -> Result<Self, LSetError> {
        Self::new(alphabet, len, Vec::new())
    }

    pub fn singleton(alphabet: Alphabet, member: ColorString) -> Result<Self, LSetError> {
        Self::new(alphabet, member.len(), vec![member])
    }

    /// Parses member display strings, e.g. `["acb", "adb"]`.
    pub fn from_strs(alphabet: Alphabet, len: usize, members: &[&str]) -> Result<Self, LSetError> {
        let mut parsed = Vec::with_capacity(members.len());
        for text in members {
            parsed.push(ColorString::parse(text, alphabet)?);
        }
        Self::new(alphabet, len, parsed)
    }

    /// The start state: the 3-set containing only `acb`.
    pub fn start(alphabet: Alphabet) -> Result<Self, LSetError> {
        if alphabet.size() < 3 {
            return Err(LSetError::AlphabetTooSmallForStart(alphabet.size()));
        }
        let acb = ColorString::new(&[0, 2, 1], alphabet)?;
        Self::singleton(alphabet, acb)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    /// The common length of all members (nominal for the empty set).
    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member_count(&self) -> usize {
        self.members.len()
    }

    /// Members in ascending lexicographic order.
    pub fn members(&self) -> &[ColorString] {
        &self.members
    }

    pub fn contains(&self, member: &ColorString) -> bool {
        self.members.binary_search(member).is_ok()
    }

    pub fn union(&self, other: &LSet) -> Result<LSet, LSetError> {
        let mut members = self.members.clone();
        members.extend_from_slice(&other.members);
        LSet::new(self.alphabet, self.len(), members)
    }

    pub fn is_subset_of(&self, other: &LSet) -> bool {
        self.members.iter().all(|m| other.contains(m))
    }
}

impl fmt::Debug for LSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (idx, member) in self.members.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{member}")?;
        }
        write!(f, "}}(l={})", self.len)
    }
}

/// Bit-indexed set over the `k^l` universe of all length-`l` strings.
///
/// A string is indexed by its base-`k` code, so an ascending scan of the bits
/// enumerates members in lexicographic order.
#[derive(Clone, PartialEq, Eq)]
pub struct PackedSet {
    alphabet: Alphabet,
    len: u8,
    words: Vec<u64>,
}

impl PackedSet {
    /// Number of bits in the `k^l` universe, if it fits in a `u64` count.
    pub fn universe_size(alphabet: Alphabet, len: usize) -> Option<u64> {
        (alphabet.size() as u64).checked_pow(len as u32)
    }

    /// An empty packed set; `None` when the universe exceeds `max_bits`.
    pub fn with_budget(alphabet: Alphabet, len: usize, max_bits: u64) -> Option<Self> {
        let universe = Self::universe_size(alphabet, len)?;
        if universe > max_bits {
            return None;
        }
        let words = vec![0u64; universe.div_ceil(64) as usize];
        Some(PackedSet {
            alphabet,
            len: len as u8,
            words,
        })
    }

    pub fn from_lset(set: &LSet, max_bits: u64) -> Option<Self> {
        let mut packed = Self::with_budget(set.alphabet(), set.len(), max_bits)?;
        for member in set.members() {
            packed.insert_code(member.code(set.alphabet().size()));
        }
        Some(packed)
    }

    pub fn insert_code(&mut self, code: u64) {
        self.words[(code / 64) as usize] |= 1 << (code % 64);
    }

    pub fn contains_code(&self, code: u64) -> bool {
        self.words[(code / 64) as usize] & (1 << (code % 64)) != 0
    }

    pub fn insert(&mut self, member: ColorString) {
        debug_assert_eq!(member.len(), self.len as usize);
        self.insert_code(member.code(self.alphabet.size()));
    }

    pub fn union_with(&mut self, other: &PackedSet) {
        debug_assert_eq!(self.len, other.len);
        for (word, other_word) in self.words.iter_mut().zip(&other.words) {
            *word |= other_word;
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Decodes back to the sorted-member representation.
    pub fn to_lset(&self) -> LSet {
        let k = self.alphabet.size();
        let mut members = Vec::with_capacity(self.count());
        for (word_idx, &word) in self.words.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let bit = bits.trailing_zeros() as u64;
                members.push(ColorString::from_code(
                    word_idx as u64 * 64 + bit,
                    self.len as usize,
                    k,
                ));
                bits &= bits - 1;
            }
        }
        LSet::from_sorted_unchecked(self.alphabet, self.len as usize, members)
    }
}
