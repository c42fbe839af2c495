//! Freely reduced words in a finitely generated free group.
//!
//! A [`Word`] is the unique freely reduced representative of an element of
//! the free group on `x1 … x_rank`. All operations keep words reduced, so
//! structural equality is group-element equality.

use std::cmp::Ordering;
use std::fmt;

use crate::error::WordError;

/// One generator `x_index` of the free group, `1 <= index <= rank`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator(u32);

impl Generator {
    pub fn new(index: u32, rank: u32) -> Result<Self, WordError> {
        if index == 0 || index > rank {
            return Err(WordError::IndexOutOfRange { index, rank });
        }
        Ok(Generator(index))
    }

    pub fn index(&self) -> u32 {
        self.0
    }
}

/// A single signed letter `x_i` or `x_i^-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: Generator,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: Generator, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inverted(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    fn cancels(&self, other: &Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    rank: u32,
    letters: Vec<Letter>,
}

impl Word {
    /// The identity element.
    pub fn identity(rank: u32) -> Self {
        Word {
            rank,
            letters: Vec::new(),
        }
    }

    /// The generator `x_index` as a word.
    pub fn generator(index: u32, rank: u32) -> Result<Self, WordError> {
        let gen = Generator::new(index, rank)?;
        Ok(Word {
            rank,
            letters: vec![Letter::new(gen, false)],
        })
    }

    /// Builds the freely reduced word from a raw letter sequence given as
    /// `(index, inverse)` pairs. Idempotent on already-reduced input.
    pub fn reduce(
        rank: u32,
        raw: impl IntoIterator<Item = (u32, bool)>,
    ) -> Result<Self, WordError> {
        let mut letters: Vec<Letter> = Vec::new();
        for (index, inverse) in raw {
            let gen = Generator::new(index, rank)?;
            push_reduced(&mut letters, Letter::new(gen, inverse));
        }
        Ok(Word { rank, letters })
    }

    /// Internal constructor from letters already validated against `rank`.
    pub(crate) fn from_reduced_letters(rank: u32, letters: Vec<Letter>) -> Self {
        debug_assert!(letters.iter().all(|l| l.gen.index() <= rank));
        debug_assert!(letters.windows(2).all(|w| !w[0].cancels(&w[1])));
        Word { rank, letters }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Reduced product `self · other`.
    ///
    /// Panics if the ranks differ; see [`Word::checked_mul`] for the
    /// fallible variant.
    pub fn mul(&self, other: &Word) -> Word {
        self.checked_mul(other).expect("rank mismatch in word product")
    }

    pub fn checked_mul(&self, other: &Word) -> Result<Word, WordError> {
        if self.rank != other.rank {
            return Err(WordError::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        Ok(Word {
            rank: self.rank,
            letters,
        })
    }

    /// The inverse word (letters reversed, signs flipped).
    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    /// Commutator `[self, other] = self · other · self^-1 · other^-1`.
    ///
    /// This is the convention under which the printed Fox identities of the
    /// surrounding calculus hold.
    pub fn commutator(&self, other: &Word) -> Word {
        self.mul(other).mul(&self.inverse()).mul(&other.inverse())
    }

    /// Conjugate `self^by = by^-1 · self · by`.
    pub fn conjugate(&self, by: &Word) -> Word {
        by.inverse().mul(self).mul(by)
    }

    /// Integer power.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity(self.rank);
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Net exponent of `x_index` in the word.
    pub fn exponent_sum(&self, index: u32) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.gen.index() == index)
            .map(|l| if l.inverse { -1 } else { 1 })
            .sum()
    }

    /// All exponent sums `(x_1 … x_rank)` at once.
    pub fn exponent_vector(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.rank as usize];
        for l in &self.letters {
            let slot = &mut v[(l.gen.index() - 1) as usize];
            *slot += if l.inverse { -1 } else { 1 };
        }
        v
    }

    /// Applies a homomorphism into a free group of rank `target_rank`,
    /// substituting `images[i-1]` for `x_i`.
    pub fn map_letters(&self, images: &[Word], target_rank: u32) -> Result<Word, WordError> {
        if images.len() != self.rank as usize {
            return Err(WordError::ImageCountMismatch {
                expected: self.rank as usize,
                got: images.len(),
            });
        }
        let mut out = Word::identity(target_rank);
        for l in &self.letters {
            let img = &images[(l.gen.index() - 1) as usize];
            if img.rank() != target_rank {
                return Err(WordError::RankMismatch {
                    left: img.rank(),
                    right: target_rank,
                });
            }
            if l.inverse {
                out = out.mul(&img.inverse());
            } else {
                out = out.mul(img);
            }
        }
        Ok(out)
    }

    /// Canonical sort key: length first, then the serialized form.
    pub fn sort_key(&self) -> (usize, String) {
        (self.letters.len(), self.to_string())
    }
}

fn push_reduced(letters: &mut Vec<Letter>, l: Letter) {
    match letters.last() {
        Some(top) if top.cancels(&l) => {
            letters.pop();
        }
        _ => letters.push(l),
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Word {
    /// Canonical textual form: fully expanded reduced letters, e.g.
    /// `x1 x2 x1^-1 x2^-1`; the identity prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if l.inverse {
                write!(f, "x{}^-1", l.gen.index())?;
            } else {
                write!(f, "x{}", l.gen.index())?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_word;

    fn w(s: &str) -> Word {
        parse_word(s, 4).unwrap()
    }

    #[test]
    fn reduce_cancels_adjacent_inverses() {
        let word = Word::reduce(4, [(1, false), (1, true)]).unwrap();
        assert!(word.is_identity());
        let word = Word::reduce(4, [(1, false), (2, false), (2, true), (3, false)]).unwrap();
        assert_eq!(word, w("x1 x3"));
    }

    #[test]
    fn reduce_is_idempotent_on_reduced_input() {
        let word = w("x1 x2 x1^-1");
        let again = Word::reduce(4, word.letters().iter().map(|l| (l.gen.index(), l.inverse)))
            .unwrap();
        assert_eq!(word, again);
    }

    #[test]
    fn reduce_rejects_out_of_range_indices() {
        assert!(Word::reduce(4, [(5, false)]).is_err());
        assert!(Word::reduce(4, [(0, false)]).is_err());
    }

    #[test]
    fn multiply_cancels_across_the_seam() {
        assert!(w("x1").mul(&w("x1^-1")).is_identity());
        assert_eq!(w("x1 x2").mul(&w("x2^-1 x3")), w("x1 x3"));
        let word = w("x1 x2 x3^-1");
        assert_eq!(word.mul(&Word::identity(4)), word);
    }

    #[test]
    fn multiply_rejects_rank_mismatch() {
        let a = Word::generator(1, 2).unwrap();
        let b = Word::generator(1, 3).unwrap();
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(w("x1 x2").inverse(), w("x2^-1 x1^-1"));
        assert!(Word::identity(4).inverse().is_identity());
        let word = w("x1 x2^-1 x3");
        assert_eq!(word.inverse().inverse(), word);
    }

    #[test]
    fn commutator_convention_is_ghg_inv_h_inv() {
        // [x2,x1] = x2 x1 x2^-1 x1^-1, the order forced by the Fox identities.
        assert_eq!(w("x2").commutator(&w("x1")), w("x2 x1 x2^-1 x1^-1"));
        let g = w("x1 x2");
        assert!(g.commutator(&g).is_identity());
        assert!(g.commutator(&Word::identity(4)).is_identity());
    }

    #[test]
    fn conjugate_convention_is_x_inv_y_x() {
        assert_eq!(w("x2").conjugate(&w("x1")), w("x1^-1 x2 x1"));
        let y = w("x1 x2^-1");
        assert_eq!(y.conjugate(&Word::identity(4)), y);
        assert!(Word::identity(4).conjugate(&w("x3")).is_identity());
    }

    #[test]
    fn exponent_sums() {
        assert_eq!(w("x1 x2 x1").exponent_sum(1), 2);
        assert_eq!(w("x1 x2 x1^-1 x2^-1").exponent_sum(1), 0);
        assert_eq!(Word::identity(4).exponent_sum(3), 0);
    }

    #[test]
    fn display_round_trips() {
        let word = w("x1 x2^-1 x1 x1");
        assert_eq!(parse_word(&word.to_string(), 4).unwrap(), word);
        assert_eq!(Word::identity(4).to_string(), "1");
    }
}
