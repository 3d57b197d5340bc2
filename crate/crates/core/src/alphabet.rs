//! Alphabets of colored letters.
//!
//! Letters are small indices `0..k` displayed as `a`, `b`, `c`, ... The
//! default alphabet has four letters; five is the first interesting variant.

use std::fmt;
use thiserror::Error;

/// Largest supported alphabet size.
pub const MAX_ALPHABET: usize = 8;

const LETTER_CHARS: [char; MAX_ALPHABET] = ['a', 'b', 'c', 'd', 'e', 'f', 'g', 'h'];

/// Alphabet error.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlphabetError {
    #[error("alphabet size {0} out of range, supported sizes are 2..={MAX_ALPHABET}")]
    SizeOutOfRange(usize),

    #[error("letter index {letter} out of range for a {k}-letter alphabet")]
    LetterOutOfRange { letter: u8, k: u8 },

    #[error("character {0:?} is not a letter of a {1}-letter alphabet")]
    BadLetterChar(char, u8),
}

/// A `k`-letter alphabet, 2 ≤ k ≤ 8.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Alphabet {
    k: u8,
}

impl Default for Alphabet {
    /// The four-letter alphabet {a, b, c, d}.
    fn default() -> Self {
        Alphabet { k: 4 }
    }
}

impl Alphabet {
    pub fn new(k: usize) -> Result<Self, AlphabetError> {
        if !(2..=MAX_ALPHABET).contains(&k) {
            return Err(AlphabetError::SizeOutOfRange(k));
        }
        Ok(Alphabet { k: k as u8 })
    }

    /// Number of letters.
    pub fn size(self) -> usize {
        self.k as usize
    }

    /// All letter indices, ascending.
    pub fn letters(self) -> impl Iterator<Item = u8> {
        0..self.k
    }

    pub fn contains(self, letter: u8) -> bool {
        letter < self.k
    }

    pub fn check_letter(self, letter: u8) -> Result<u8, AlphabetError> {
        if self.contains(letter) {
            Ok(letter)
        } else {
            Err(AlphabetError::LetterOutOfRange { letter, k: self.k })
        }
    }

    /// Display character for a letter index (`0` is `a`).
    pub fn letter_char(letter: u8) -> char {
        LETTER_CHARS[letter as usize]
    }

    pub fn parse_letter(self, ch: char) -> Result<u8, AlphabetError> {
        match LETTER_CHARS[..self.size()].iter().position(|&c| c == ch) {
            Some(idx) => Ok(idx as u8),
            None => Err(AlphabetError::BadLetterChar(ch, self.k)),
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for letter in self.letters() {
            if letter > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", Self::letter_char(letter))?;
        }
        write!(f, "}}")
    }
}
