//! Words over an ordered alphabet: lexicographic order, rotations, necklaces,
//! primitivity, Lyndon test, membership in the primitive first-run/last-run
//! subset, and run counting.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::error::{Error, Result};

/// Letters are dense 1-based integer indices; the total order is numeric.
pub type Letter = u32;

/// A non-empty finite sequence of letters.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

/// Why a word fails the membership test of `in_w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum NotInW {
    #[error("does not begin with its smallest letter")]
    DoesNotBeginWithSmallest,
    #[error("ends with its smallest letter")]
    EndsWithSmallest,
    #[error("not primitive")]
    NotPrimitive,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidParameter("word must be non-empty".into()));
        }
        if let Some(&bad) = letters.iter().find(|&&c| c == 0) {
            return Err(Error::InvalidParameter(format!(
                "letters are 1-based, got {bad}"
            )));
        }
        Ok(Word { letters })
    }

    /// Builds a word from ASCII lowercase letters, `a` being the smallest.
    pub fn from_ascii(s: &str) -> Result<Self> {
        s.parse()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn min_letter(&self) -> Letter {
        *self.letters.iter().min().expect("word is non-empty")
    }

    pub fn max_letter(&self) -> Letter {
        *self.letters.iter().max().expect("word is non-empty")
    }

    /// Total lexicographic order: a strict prefix is smaller, otherwise the
    /// first differing position decides by letter order.
    pub fn lex_compare(&self, other: &Word) -> Ordering {
        self.letters.cmp(&other.letters)
    }

    /// The rotation moving the first `j` letters to the end.
    pub fn rotate(&self, j: usize) -> Result<Word> {
        if j >= self.len() {
            return Err(Error::InvalidParameter(format!(
                "rotation offset {j} out of range for length {}",
                self.len()
            )));
        }
        Ok(self.rotated(j))
    }

    pub(crate) fn rotated(&self, j: usize) -> Word {
        let mut letters = Vec::with_capacity(self.len());
        letters.extend_from_slice(&self.letters[j..]);
        letters.extend_from_slice(&self.letters[..j]);
        Word { letters }
    }

    /// Compares the rotations starting at offsets `i` and `j` without
    /// allocating, walking the doubled index space.
    pub fn cmp_rotations(&self, i: usize, j: usize) -> Ordering {
        let n = self.len();
        debug_assert!(i < n && j < n);
        let (mut a, mut b) = (i, j);
        for _ in 0..n {
            match self.letters[a].cmp(&self.letters[b]) {
                Ordering::Equal => {}
                ord => return ord,
            }
            a += 1;
            if a == n {
                a = 0;
            }
            b += 1;
            if b == n {
                b = 0;
            }
        }
        Ordering::Equal
    }

    /// The least `d >= 1` with `d | n` such that the word is the `n/d`-th
    /// power of its length-`d` prefix. Computed from the longest proper
    /// border (failure function) in linear time.
    pub fn smallest_period(&self) -> usize {
        let n = self.len();
        let w = &self.letters;
        // failure[i] = length of the longest proper border of w[..=i]
        let mut failure = vec![0usize; n];
        let mut k = 0;
        for i in 1..n {
            while k > 0 && w[i] != w[k] {
                k = failure[k - 1];
            }
            if w[i] == w[k] {
                k += 1;
            }
            failure[i] = k;
        }
        let d = n - failure[n - 1];
        if n % d == 0 {
            d
        } else {
            n
        }
    }

    /// A word is primitive when it is not a proper power, i.e. its necklace
    /// has exactly `n` elements.
    pub fn is_primitive(&self) -> bool {
        self.smallest_period() == self.len()
    }

    /// The distinct rotations, in rotation-offset order starting at offset 0.
    pub fn necklace(&self) -> Vec<Word> {
        (0..self.smallest_period()).map(|j| self.rotated(j)).collect()
    }

    /// True iff the word is strictly smaller than every proper suffix.
    pub fn is_lyndon(&self) -> bool {
        let w = &self.letters[..];
        (1..w.len()).all(|i| w < &w[i..])
    }

    /// Number of maximal constant factors equal to `letter`.
    pub fn count_runs(&self, letter: Letter) -> usize {
        self.run_starts(letter).len()
    }

    /// Start offsets of the maximal runs of `letter`, ascending.
    pub fn run_starts(&self, letter: Letter) -> Vec<usize> {
        let w = &self.letters;
        (0..w.len())
            .filter(|&i| w[i] == letter && (i == 0 || w[i - 1] != letter))
            .collect()
    }

    /// Membership in the set of primitive words that begin with a run of
    /// their own smallest letter and end with a different letter.
    pub fn in_w(&self) -> bool {
        self.w_membership().is_ok()
    }

    pub fn w_membership(&self) -> std::result::Result<(), NotInW> {
        let min = self.min_letter();
        if self.letters[0] != min {
            return Err(NotInW::DoesNotBeginWithSmallest);
        }
        if *self.letters.last().expect("non-empty") == min {
            return Err(NotInW::EndsWithSmallest);
        }
        if !self.is_primitive() {
            return Err(NotInW::NotPrimitive);
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    /// Lowercase letters when the largest index fits `a..=z`, otherwise
    /// space-separated integers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.max_letter() <= 26 {
            for &c in &self.letters {
                write!(f, "{}", (b'a' + (c - 1) as u8) as char)?;
            }
            Ok(())
        } else {
            let mut first = true;
            for &c in &self.letters {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{c}")?;
                first = false;
            }
            Ok(())
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::WordParse("empty input".into()));
        }
        if s.bytes().all(|b| b.is_ascii_lowercase()) {
            let letters = s.bytes().map(|b| (b - b'a') as Letter + 1).collect();
            return Word::new(letters);
        }
        let mut letters = Vec::new();
        for token in s.split_whitespace() {
            let c: Letter = token
                .parse()
                .map_err(|_| Error::WordParse(format!("invalid letter token '{token}'")))?;
            if c == 0 {
                return Err(Error::WordParse(format!("invalid letter token '{token}'")));
            }
            letters.push(c);
        }
        Word::new(letters)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    /// Independent oracle for the period: count distinct rotations.
    fn distinct_rotation_count(word: &Word) -> usize {
        let mut rots: Vec<Word> = (0..word.len()).map(|j| word.rotated(j)).collect();
        rots.sort();
        rots.dedup();
        rots.len()
    }

    #[test]
    fn lex_compare_prefix_rule() {
        assert_eq!(w("ab").lex_compare(&w("abc")), Ordering::Less);
        assert_eq!(w("aa").lex_compare(&w("aa")), Ordering::Equal);
        // a^3 d^2 b a c a^2 b a c d b a^2 b < a^2 b a^3 d^2 b a c a^2 b a c d b
        let u = w("aaaddbacaabacdbaab");
        let v = w("aabaaaddbacaabacdb");
        assert_eq!(u.lex_compare(&v), Ordering::Less);
    }

    #[test]
    fn rotate_basics() {
        assert_eq!(w("abc").rotate(1).unwrap(), w("bca"));
        assert_eq!(w("abc").rotate(0).unwrap(), w("abc"));
        assert!(w("abc").rotate(3).is_err());
        // rotation starting at the 8th letter of a b a^2 c b^2 a^2
        assert_eq!(w("abaacbbaa").rotate(7).unwrap(), w("aaabaacbb"));
    }

    #[test]
    fn smallest_period_matches_rotation_oracle() {
        assert_eq!(w("abab").smallest_period(), 2);
        assert_eq!(w("aaa").smallest_period(), 1);
        assert_eq!(w("aabaababab").smallest_period(), 10);
        assert_eq!(distinct_rotation_count(&w("aabaababab")), 10);
        for word in [w("aab"), w("abcabc"), w("aabaab"), w("ab"), w("a")] {
            assert_eq!(word.smallest_period(), distinct_rotation_count(&word));
        }
    }

    #[test]
    fn necklace_contents() {
        assert_eq!(w("ab").necklace(), vec![w("ab"), w("ba")]);
        assert_eq!(w("abab").necklace(), vec![w("abab"), w("baba")]);
        assert_eq!(w("aaa").necklace(), vec![w("aaa")]);
    }

    #[test]
    fn lyndon_examples() {
        assert!(w("aab").is_lyndon());
        assert!(!w("aba").is_lyndon());
        assert!(w("a").is_lyndon());
    }

    #[test]
    fn w_membership_examples() {
        assert!(w("acaabacdbaabaaaddb").in_w());
        assert_eq!(w("aba").w_membership(), Err(NotInW::EndsWithSmallest));
        assert!(w("bc").in_w());
        assert_eq!(w("ba").w_membership(), Err(NotInW::DoesNotBeginWithSmallest));
        assert_eq!(w("abab").w_membership(), Err(NotInW::NotPrimitive));
        // a single letter ends with its own smallest letter
        assert_eq!(w("a").w_membership(), Err(NotInW::EndsWithSmallest));
    }

    #[test]
    fn run_counting() {
        assert_eq!(w("aabaababab").count_runs(1), 4);
        assert_eq!(w("acaabacdbaabaaaddb").count_runs(1), 5);
        assert_eq!(w("bbb").count_runs(1), 0);
        assert_eq!(w("aabaababab").run_starts(1), vec![0, 3, 6, 8]);
    }

    #[test]
    fn cmp_rotations_agrees_with_materialized() {
        let word = w("acaabacdbaabaaaddb");
        let n = word.len();
        for i in 0..n {
            for j in 0..n {
                let expect = word.rotated(i).lex_compare(&word.rotated(j));
                assert_eq!(word.cmp_rotations(i, j), expect);
            }
        }
    }

    #[test]
    fn parse_and_display_round_trip() {
        assert_eq!(w("abc").to_string(), "abc");
        let big = Word::new(vec![1, 27, 2]).unwrap();
        assert_eq!(big.to_string(), "1 27 2");
        assert_eq!("1 27 2".parse::<Word>().unwrap(), big);
        assert!("".parse::<Word>().is_err());
        assert!("  ".parse::<Word>().is_err());
        assert!("a0b".parse::<Word>().is_err());
        assert!("0".parse::<Word>().is_err());
    }
}
