//! Fixed-length words over an alphabet, packed into a single machine word.
//!
//! A [`ColorString`] stores up to [`ColorString::MAX_LEN`] letters, one nibble
//! per letter with the first letter in the top nibble. Same-length strings
//! therefore compare lexicographically as plain integers, and the whole value
//! is `Copy`, which keeps large set manipulations cheap.

use std::fmt;

use thiserror::Error;

use crate::alphabet::{Alphabet, AlphabetError};

/// Word construction error.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("string length {0} exceeds the supported maximum {max}", max = ColorString::MAX_LEN)]
    TooLong(usize),

    #[error(transparent)]
    Letter(#[from] AlphabetError),
}

/// A string of letter indices with fixed length `0..=16`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ColorString {
    len: u8,
    bits: u64,
}

impl ColorString {
    /// Maximum supported string length.
    pub const MAX_LEN: usize = 16;

    /// The empty string.
    pub const fn empty() -> Self {
        ColorString { len: 0, bits: 0 }
    }

    pub fn new(letters: &[u8], alphabet: Alphabet) -> Result<Self, WordError> {
        if letters.len() > Self::MAX_LEN {
            return Err(WordError::TooLong(letters.len()));
        }
        let mut bits = 0u64;
        for (pos, &letter) in letters.iter().enumerate() {
            alphabet.check_letter(letter)?;
            bits |= (letter as u64) << Self::shift(pos);
        }
        Ok(ColorString {
            len: letters.len() as u8,
            bits,
        })
    }

    /// Parses display form, e.g. `"acb"`.
    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Self, WordError> {
        let mut letters = Vec::with_capacity(text.len());
        for ch in text.chars() {
            letters.push(alphabet.parse_letter(ch)?);
        }
        Self::new(&letters, alphabet)
    }

    const fn shift(pos: usize) -> u32 {
        (60 - 4 * pos) as u32
    }

    pub fn len(self) -> usize {
        self.len as usize
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    /// Letter at 0-based position `pos`.
    pub fn letter(self, pos: usize) -> u8 {
        debug_assert!(pos < self.len());
        ((self.bits >> Self::shift(pos)) & 0xf) as u8
    }

    pub fn letters(self) -> impl Iterator<Item = u8> {
        (0..self.len()).map(move |pos| self.letter(pos))
    }

    pub fn contains_letter(self, letter: u8) -> bool {
        self.letters().any(|l| l == letter)
    }

    /// Bitmask of the letters occurring in 0-based positions `from..=to`.
    pub fn letter_mask(self, from: usize, to: usize) -> u16 {
        debug_assert!(from <= to && to < self.len());
        let mut mask = 0u16;
        for pos in from..=to {
            mask |= 1 << self.letter(pos);
        }
        mask
    }

    /// The string `s_1..s_i · c · s_j..s_l` for 1-based positions `i < j`.
    ///
    /// The caller guarantees `1 <= i < j <= len` and that the result fits;
    /// this is the string-building core of the rewriting transition.
    pub fn splice(self, i: usize, c: u8, j: usize) -> ColorString {
        let l = self.len();
        debug_assert!(1 <= i && i < j && j <= l);
        let new_len = l + i + 2 - j;
        debug_assert!(new_len <= Self::MAX_LEN);
        // Keep the top i nibbles, place c, then shift the last l-j+1 nibbles up.
        let prefix = self.bits & !(u64::MAX >> (4 * i));
        let inserted = (c as u64) << Self::shift(i);
        let suffix_len = l - j + 1;
        let suffix = (self.bits << (4 * (j - 1))) >> (4 * (i + 1));
        let suffix = suffix & (!(u64::MAX >> (4 * suffix_len)) >> (4 * (i + 1)));
        ColorString {
            len: new_len as u8,
            bits: prefix | inserted | suffix,
        }
    }

    /// The same letters in reverse order.
    pub fn reversed(self) -> ColorString {
        let mut bits = 0u64;
        for pos in 0..self.len() {
            bits |= (self.letter(pos) as u64) << Self::shift(self.len() - 1 - pos);
        }
        ColorString {
            len: self.len,
            bits,
        }
    }

    /// Applies a letter mapping; the caller guarantees it maps letters in range.
    pub fn map_letters(self, map: impl Fn(u8) -> u8) -> ColorString {
        let mut bits = 0u64;
        for pos in 0..self.len() {
            bits |= (map(self.letter(pos)) as u64) << Self::shift(pos);
        }
        ColorString {
            len: self.len,
            bits,
        }
    }

    /// Value of the string as a base-k integer, first letter most significant.
    pub fn code(self, k: usize) -> u64 {
        let mut code = 0u64;
        for letter in self.letters() {
            code = code * k as u64 + letter as u64;
        }
        code
    }

    /// Inverse of [`ColorString::code`] for strings of length `len`.
    pub fn from_code(mut code: u64, len: usize, k: usize) -> ColorString {
        debug_assert!(len <= Self::MAX_LEN);
        let mut bits = 0u64;
        for pos in (0..len).rev() {
            bits |= (code % k as u64) << Self::shift(pos);
            code /= k as u64;
        }
        ColorString {
            len: len as u8,
            bits,
        }
    }
}

// Top-aligned nibbles make (bits, len) order the lexicographic order:
// a proper prefix has identical bits and a smaller length.
impl Ord for ColorString {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.bits, self.len).cmp(&(other.bits, other.len))
    }
}

impl PartialOrd for ColorString {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ColorString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for letter in self.letters() {
            write!(f, "{}", Alphabet::letter_char(letter))?;
        }
        Ok(())
    }
}

impl fmt::Debug for ColorString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\"", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha() -> Alphabet {
        Alphabet::default()
    }

    fn s(text: &str) -> ColorString {
        ColorString::parse(text, alpha()).unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(s("acb").to_string(), "acb");
        assert_eq!(s("").len(), 0);
        assert!(ColorString::parse("axe", alpha()).is_err());
        assert!(ColorString::parse("abcde", alpha()).is_err());
        assert!(ColorString::parse("ae", Alphabet::new(5).unwrap()).is_ok());
    }

    #[test]
    fn length_limit() {
        let long = "ab".repeat(8);
        assert_eq!(ColorString::parse(&long, alpha()).unwrap().len(), 16);
        let too_long = "ab".repeat(8) + "a";
        assert_eq!(
            ColorString::parse(&too_long, alpha()),
            Err(WordError::TooLong(17))
        );
    }

    #[test]
    fn lexicographic_order() {
        let mut words = [s("ba"), s("ab"), s("aba"), s("b"), s("aa")];
        words.sort();
        let shown: Vec<String> = words.iter().map(|w| w.to_string()).collect();
        assert_eq!(shown, ["aa", "ab", "aba", "b", "ba"]);
    }

    #[test]
    fn splice_matches_naive() {
        // s_1..s_i + c + s_j..s_l, 1-based inclusive ends
        let word = s("acbd");
        let got = word.splice(1, 3, 4); // "a" + d + "d"
        assert_eq!(got.to_string(), "add");
        let got = word.splice(2, 0, 3); // "ac" + a + "bd"
        assert_eq!(got.to_string(), "acabd");
        let got = word.splice(1, 1, 2); // "a" + b + "cbd"
        assert_eq!(got.to_string(), "abcbd");
    }

    #[test]
    fn letter_mask_counts() {
        let word = s("acbd");
        assert_eq!(word.letter_mask(0, 3), 0b1111);
        assert_eq!(word.letter_mask(1, 2), 0b0110); // c and b
    }

    #[test]
    fn reverse_and_map() {
        assert_eq!(s("acb").reversed().to_string(), "bca");
        let swapped = s("acb").map_letters(|l| match l {
            2 => 3,
            3 => 2,
            other => other,
        });
        assert_eq!(swapped.to_string(), "adb");
    }

    #[test]
    fn code_round_trip() {
        for text in ["", "a", "acb", "ddd", "abcd"] {
            let word = s(text);
            let code = word.code(4);
            assert_eq!(ColorString::from_code(code, word.len(), 4), word);
        }
        // first letter is most significant: codes of same length sort like words
        assert!(s("acb").code(4) < s("adb").code(4));
    }
}
