//! Free differential calculus and the word problem in derived-series
//! quotients `F/F^(k)`.
//!
//! The derivative convention is the right-multiplied one,
//!
//! ```text
//! ∂_i(x_j) = δ_ij,   ∂_i(e) = 0,   ∂_i(gh) = ∂_i(g) + (∂_i h)·g^{-1},
//! ```
//!
//! the involute of the usual left convention. Under it the derivative of a
//! word expands letter by letter as `∂_i(w) = Σ_j ∂_i(l_j)·p_j^{-1}` where
//! `p_j` is the prefix before the j-th letter.
//!
//! Membership in `F^(k)` is decided by the Magnus-embedding criterion:
//! `w ∈ F^(k+1)` iff `w ∈ F^(k)` and every `∂_i(w)` vanishes in
//! `ℤ[F/F^(k)]`. Equality of two words in `F/F^(k+1)` likewise reduces to
//! equality at level `k` plus equality of all derivatives over `ℤ[F/F^(k)]`,
//! which lets the engine intern one canonical class id per element and
//! level. The mutual recursion between membership and ring-zero testing is
//! well-founded because the level strictly decreases.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use crate::error::{CapError, FoxError};
use crate::limits::Limits;
use crate::words::{Letter, Word};

/// A derived-series quotient level: `Finite(k)` is `F/F^(k)`, `Infinity`
/// is the free group itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Level {
    Finite(u32),
    Infinity,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Finite(k) => write!(f, "{k}"),
            Level::Infinity => write!(f, "inf"),
        }
    }
}

/// An element of a quotient `F/F^(k)` held as a representative word.
/// Equality is semantic: two elements are equal exactly when the quotient
/// identifies their representatives, decided through a [`FoxEngine`].
#[derive(Clone, Debug)]
pub struct QuotientElement {
    pub representative: Word,
    pub level: Level,
}

impl QuotientElement {
    pub fn new(representative: Word, level: Level) -> Self {
        QuotientElement {
            representative,
            level,
        }
    }

    /// Semantic equality in the quotient, via the engine's interning.
    pub fn eq_in(&self, other: &QuotientElement, engine: &FoxEngine) -> Result<bool, CapError> {
        if self.level != other.level {
            return Ok(false);
        }
        engine.quotient_eq(&self.representative, &other.representative, self.level)
    }
}

/// A formal integer combination of quotient-group elements.
///
/// Built through [`FoxEngine`] operations, the terms are always merged by
/// semantic equality at the element's level, carry no zero coefficients,
/// and are sorted by the canonical word order, so `is_zero` is just
/// emptiness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElem {
    level: Level,
    rank: u32,
    terms: Vec<(i64, Word)>,
}

impl RingElem {
    pub fn zero(rank: u32, level: Level) -> Self {
        RingElem {
            level,
            rank,
            terms: Vec::new(),
        }
    }

    pub fn one(rank: u32, level: Level) -> Self {
        RingElem {
            level,
            rank,
            terms: vec![(1, Word::identity(rank))],
        }
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn terms(&self) -> &[(i64, Word)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn neg(&self) -> RingElem {
        RingElem {
            level: self.level,
            rank: self.rank,
            terms: self.terms.iter().map(|(c, w)| (-c, w.clone())).collect(),
        }
    }
}

impl fmt::Display for RingElem {
    /// Textual form `3*[x1,x2] + -1*x3^-1` with words fully expanded; the
    /// zero element prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, w)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{w}")?;
        }
        Ok(())
    }
}

/// The vector `(∂_1 w, …, ∂_rank w)` over a common quotient level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoxVector {
    pub entries: Vec<RingElem>,
}

impl FoxVector {
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RingElem::is_zero)
    }
}

type ClassId = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum ClassKey {
    Exact(Word),
    Id(ClassId),
}

/// Canonical signature of an element class at a finite level.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Sig {
    /// Level 1: the exponent vector (abelianization).
    Abelian(Vec<i64>),
    /// Level k ≥ 2: class at level k−1 plus all Fox derivatives as
    /// canonical `(class at k−1, coefficient)` vectors.
    Magnus {
        prev: ClassId,
        derivs: Vec<Vec<(ClassId, i64)>>,
    },
}

#[derive(Default)]
struct LevelTable {
    word_ids: HashMap<Word, ClassId>,
    sig_ids: HashMap<Sig, ClassId>,
}

#[derive(Default)]
struct Tables {
    levels: HashMap<u32, LevelTable>,
}

/// The calculus engine: Fox derivatives, quotient group rings, and the
/// decidable membership/zero tests, with per-level memoization of
/// canonical class ids.
///
/// The cache is interior state behind a `RefCell`, so an engine is a
/// single-task object; concurrent pipelines use one engine per task.
/// Answers are deterministic and cache-independent.
pub struct FoxEngine {
    rank: u32,
    limits: Limits,
    tables: RefCell<Tables>,
}

impl FoxEngine {
    pub fn new(rank: u32, limits: Limits) -> Self {
        FoxEngine {
            rank,
            limits,
            tables: RefCell::new(Tables::default()),
        }
    }

    /// Rank-4 engine with default caps; the configuration used by all the
    /// genus-2 machinery.
    pub fn standard() -> Self {
        FoxEngine::new(4, Limits::default())
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    fn check_depth(&self, level: Level) -> Result<(), CapError> {
        if let Level::Finite(k) = level {
            if k > self.limits.max_depth {
                return Err(CapError::Depth {
                    requested: k,
                    cap: self.limits.max_depth,
                });
            }
        }
        Ok(())
    }

    fn check_terms(&self, n: usize) -> Result<(), CapError> {
        if n > self.limits.max_terms {
            return Err(CapError::Terms {
                requested: n,
                cap: self.limits.max_terms,
            });
        }
        Ok(())
    }

    /// Raw letter-by-letter expansion of `∂_i(w)` in `ℤF`: one `±1` term
    /// per occurrence of `x_i`. All produced words are already reduced.
    fn fox_terms(&self, i: u32, w: &Word) -> Vec<(i64, Word)> {
        let letters = w.letters();
        let mut terms = Vec::new();
        // prefix_inv holds the letters of (l_0 … l_{j-1})^{-1} reversed,
        // i.e. l_0^{-1}, l_1^{-1}, …; materializing reverses it.
        let mut prefix_inv_rev: Vec<Letter> = Vec::with_capacity(letters.len());
        for &l in letters {
            if l.gen.index() == i {
                let mut word_letters: Vec<Letter> = Vec::with_capacity(prefix_inv_rev.len() + 1);
                if l.inverse {
                    // ∂_i(x_i^{-1}) = -x_i, contributing -x_i·prefix^{-1};
                    // reducedness of w rules out cancellation at the seam.
                    word_letters.push(Letter::new(l.gen, false));
                }
                word_letters.extend(prefix_inv_rev.iter().rev().copied());
                let coeff = if l.inverse { -1 } else { 1 };
                terms.push((
                    coeff,
                    Word::from_reduced_letters(self.rank, word_letters),
                ));
            }
            prefix_inv_rev.push(l.inverted());
        }
        terms
    }

    /// The Fox derivative `∂_i(w)` with group terms projected to `level`
    /// and merged.
    pub fn fox_derivative(&self, i: u32, w: &Word, level: Level) -> Result<RingElem, FoxError> {
        assert!(
            i >= 1 && i <= self.rank,
            "derivative index x{i} out of range for rank {}",
            self.rank
        );
        assert_eq!(w.rank(), self.rank, "word rank does not match engine");
        self.normalize(level, self.fox_terms(i, w))
    }

    /// The full vector `(∂_1 w, …, ∂_rank w)`.
    pub fn fox_vector(&self, w: &Word, level: Level) -> Result<FoxVector, FoxError> {
        let entries = (1..=self.rank)
            .map(|i| self.fox_derivative(i, w, level))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FoxVector { entries })
    }

    /// Merges raw `(coefficient, word)` terms by semantic equality at
    /// `level`, dropping zero coefficients. The representative kept for a
    /// class is canonical where a closed form exists (levels 0 and 1) and
    /// the least member word otherwise.
    pub fn normalize(
        &self,
        level: Level,
        raw: impl IntoIterator<Item = (i64, Word)>,
    ) -> Result<RingElem, FoxError> {
        self.check_depth(level)?;
        // Class key: the word itself at Infinity, the interned id at a
        // finite level.
        let mut classes: HashMap<ClassKey, (i64, Word)> = HashMap::new();
        for (coeff, word) in raw {
            assert_eq!(word.rank(), self.rank, "word rank does not match engine");
            if coeff == 0 {
                continue;
            }
            let key = match level {
                Level::Infinity => ClassKey::Exact(word.clone()),
                Level::Finite(k) => ClassKey::Id(self.class_id(&word, k)?),
            };
            match classes.get_mut(&key) {
                Some((c, rep)) => {
                    *c += coeff;
                    if word.sort_key() < rep.sort_key() {
                        *rep = word;
                    }
                }
                None => {
                    let rep = canonical_or(level, self.rank, word);
                    classes.insert(key, (coeff, rep));
                }
            }
        }
        let mut terms: Vec<(i64, Word)> = classes
            .into_values()
            .filter(|(c, _)| *c != 0)
            .collect();
        self.check_terms(terms.len())?;
        terms.sort_by_key(|(_, w)| w.sort_key());
        Ok(RingElem {
            level,
            rank: self.rank,
            terms,
        })
    }

    /// Canonical class id of `w` in `F/F^(k)`. Two words receive the same
    /// id exactly when they are equal in the quotient.
    fn class_id(&self, w: &Word, k: u32) -> Result<ClassId, CapError> {
        if k == 0 {
            return Ok(0);
        }
        if k > self.limits.max_depth {
            return Err(CapError::Depth {
                requested: k,
                cap: self.limits.max_depth,
            });
        }
        if let Some(id) = self
            .tables
            .borrow()
            .levels
            .get(&k)
            .and_then(|t| t.word_ids.get(w))
        {
            return Ok(*id);
        }
        let sig = if k == 1 {
            Sig::Abelian(w.exponent_vector())
        } else {
            let prev = self.class_id(w, k - 1)?;
            let mut derivs = Vec::with_capacity(self.rank as usize);
            for i in 1..=self.rank {
                let raw = self.fox_terms(i, w);
                self.check_terms(raw.len())?;
                let mut merged: HashMap<ClassId, i64> = HashMap::new();
                for (coeff, term) in raw {
                    *merged.entry(self.class_id(&term, k - 1)?).or_insert(0) += coeff;
                }
                let mut vec: Vec<(ClassId, i64)> = merged
                    .into_iter()
                    .filter(|(_, c)| *c != 0)
                    .collect();
                vec.sort_unstable();
                derivs.push(vec);
            }
            Sig::Magnus { prev, derivs }
        };
        let mut tables = self.tables.borrow_mut();
        let table = tables.levels.entry(k).or_default();
        let next = table.sig_ids.len() as ClassId;
        let id = *table.sig_ids.entry(sig).or_insert(next);
        table.word_ids.insert(w.clone(), id);
        Ok(id)
    }

    /// Decides `w ∈ F^(k)`.
    pub fn derived_member(&self, w: &Word, k: u32) -> Result<bool, CapError> {
        if k == 0 {
            return Ok(true);
        }
        let id_w = self.class_id(w, k)?;
        let id_e = self.class_id(&Word::identity(self.rank), k)?;
        Ok(id_w == id_e)
    }

    /// Semantic equality of two words in `F/F^(level)`.
    pub fn quotient_eq(&self, a: &Word, b: &Word, level: Level) -> Result<bool, CapError> {
        match level {
            Level::Infinity => Ok(a == b),
            Level::Finite(0) => Ok(true),
            Level::Finite(k) => Ok(self.class_id(a, k)? == self.class_id(b, k)?),
        }
    }

    fn check_same_shape(&self, a: &RingElem, b: &RingElem) -> Result<(), FoxError> {
        if a.level != b.level || a.rank != b.rank {
            return Err(FoxError::LevelMismatch);
        }
        Ok(())
    }

    pub fn ring_add(&self, a: &RingElem, b: &RingElem) -> Result<RingElem, FoxError> {
        self.check_same_shape(a, b)?;
        self.normalize(
            a.level,
            a.terms.iter().chain(b.terms.iter()).cloned(),
        )
    }

    pub fn ring_sub(&self, a: &RingElem, b: &RingElem) -> Result<RingElem, FoxError> {
        self.ring_add(a, &b.neg())
    }

    pub fn ring_mul(&self, a: &RingElem, b: &RingElem) -> Result<RingElem, FoxError> {
        self.check_same_shape(a, b)?;
        self.check_terms(a.terms.len().saturating_mul(b.terms.len()))?;
        let mut raw = Vec::with_capacity(a.terms.len() * b.terms.len());
        for (ca, wa) in &a.terms {
            for (cb, wb) in &b.terms {
                raw.push((ca * cb, wa.mul(wb)));
            }
        }
        self.normalize(a.level, raw)
    }

    /// The involution `Σ c_g·g ↦ Σ c_g·g^{-1}`, an anti-automorphism of
    /// order 2.
    pub fn ring_involute(&self, a: &RingElem) -> Result<RingElem, FoxError> {
        self.normalize(
            a.level,
            a.terms.iter().map(|(c, w)| (*c, w.inverse())),
        )
    }

    /// Right-multiplies by a single group element.
    pub fn ring_mul_word(&self, a: &RingElem, w: &Word) -> Result<RingElem, FoxError> {
        self.normalize(a.level, a.terms.iter().map(|(c, t)| (*c, t.mul(w))))
    }

    /// True iff all terms cancel after semantic merging at the element's
    /// level.
    pub fn ring_is_zero(&self, a: &RingElem) -> Result<bool, FoxError> {
        Ok(self
            .normalize(a.level, a.terms.iter().cloned())?
            .is_zero())
    }

    /// Builds an element from raw terms (e.g. parsed text) at a level.
    pub fn ring_from_terms(
        &self,
        level: Level,
        terms: Vec<(i64, Word)>,
    ) -> Result<RingElem, FoxError> {
        self.normalize(level, terms)
    }

    /// `1·w` as a ring element.
    pub fn ring_word(&self, w: &Word, level: Level) -> Result<RingElem, FoxError> {
        self.normalize(level, [(1, w.clone())])
    }
}

/// Canonical representative where one exists: identity at level 0, the
/// sorted monomial `x1^e1 … xr^er` at level 1, the given word otherwise.
fn canonical_or(level: Level, rank: u32, word: Word) -> Word {
    match level {
        Level::Finite(0) => Word::identity(rank),
        Level::Finite(1) => {
            let expo = word.exponent_vector();
            let mut letters = Vec::new();
            for (idx, &e) in expo.iter().enumerate() {
                let gen = (idx + 1) as u32;
                for _ in 0..e.unsigned_abs() {
                    letters.push((gen, e < 0));
                }
            }
            Word::reduce(rank, letters).expect("exponent vector within rank")
        }
        _ => word,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_word;

    fn w(s: &str) -> Word {
        parse_word(s, 4).unwrap()
    }

    fn engine() -> FoxEngine {
        FoxEngine::standard()
    }

    /// ∂_i at Infinity as an exact free-group ring element.
    fn d(eng: &FoxEngine, i: u32, word: &str) -> RingElem {
        eng.fox_derivative(i, &w(word), Level::Infinity).unwrap()
    }

    #[test]
    fn derivative_of_generators() {
        let eng = engine();
        assert_eq!(d(&eng, 1, "x1"), RingElem::one(4, Level::Infinity));
        assert!(d(&eng, 2, "x1").is_zero());
        assert!(d(&eng, 1, "1").is_zero());
        // ∂_i(x_i^{-1}) = -x_i
        let expected = eng
            .ring_from_terms(Level::Infinity, vec![(-1, w("x1"))])
            .unwrap();
        assert_eq!(d(&eng, 1, "x1^-1"), expected);
    }

    #[test]
    fn derivative_of_commutator_matches_printed_formula() {
        // ∂_2([x1,x2]) = x1^{-1} - [x2,x1]
        let eng = engine();
        let expected = eng
            .ring_from_terms(Level::Infinity, vec![(1, w("x1^-1")), (-1, w("[x2,x1]"))])
            .unwrap();
        assert_eq!(d(&eng, 2, "[x1,x2]"), expected);
    }

    #[test]
    fn derivative_of_surface_relation_matches_printed_formula() {
        // ∂_4(g[x3,x4]) = (x3^{-1} - [x4,x3])·g^{-1} with g = [x1,x2]
        let eng = engine();
        let g_inv = w("[x1,x2]").inverse();
        let expected = eng
            .ring_from_terms(
                Level::Infinity,
                vec![
                    (1, w("x3^-1").mul(&g_inv)),
                    (-1, w("[x4,x3]").mul(&g_inv)),
                ],
            )
            .unwrap();
        assert_eq!(d(&eng, 4, "[x1,x2][x3,x4]"), expected);
        // ∂_4(g[x4,x3]) = (1 - x4·x3^{-1}·x4^{-1})·g^{-1}
        let expected = eng
            .ring_from_terms(
                Level::Infinity,
                vec![
                    (1, g_inv.clone()),
                    (-1, w("x4 x3^-1 x4^-1").mul(&g_inv)),
                ],
            )
            .unwrap();
        assert_eq!(d(&eng, 4, "[x1,x2][x4,x3]"), expected);
    }

    #[test]
    fn fox_vector_assembles_per_coordinate() {
        let eng = engine();
        let v = eng.fox_vector(&w("[x1,x2]"), Level::Infinity).unwrap();
        assert_eq!(v.entries.len(), 4);
        assert_eq!(v.entries[1], d(&eng, 2, "[x1,x2]"));
        assert!(v.entries[3].is_zero());
        assert!(eng
            .fox_vector(&Word::identity(4), Level::Infinity)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn ring_arithmetic_basics() {
        let eng = engine();
        let x1 = eng.ring_word(&w("x1"), Level::Infinity).unwrap();
        let one = RingElem::one(4, Level::Infinity);
        // (x1 - 1) + (1 - x1) = 0
        let a = eng.ring_sub(&x1, &one).unwrap();
        let b = eng.ring_sub(&one, &x1).unwrap();
        assert!(eng.ring_add(&a, &b).unwrap().is_zero());
        // x1 · x1^{-1} = 1
        let x1_inv = eng.ring_word(&w("x1^-1"), Level::Infinity).unwrap();
        assert_eq!(eng.ring_mul(&x1, &x1_inv).unwrap(), one);
        // involute(x1 + 2·x2) = x1^{-1} + 2·x2^{-1}
        let e = eng
            .ring_from_terms(Level::Infinity, vec![(1, w("x1")), (2, w("x2"))])
            .unwrap();
        let expected = eng
            .ring_from_terms(Level::Infinity, vec![(1, w("x1^-1")), (2, w("x2^-1"))])
            .unwrap();
        assert_eq!(eng.ring_involute(&e).unwrap(), expected);
        // involution is an anti-automorphism of order 2
        assert_eq!(eng.ring_involute(&expected).unwrap(), e);
    }

    #[test]
    fn level_mismatch_is_an_error() {
        let eng = engine();
        let a = RingElem::one(4, Level::Infinity);
        let b = RingElem::one(4, Level::Finite(1));
        assert!(matches!(eng.ring_add(&a, &b), Err(FoxError::LevelMismatch)));
    }

    #[test]
    fn derived_member_examples() {
        let eng = engine();
        assert!(eng.derived_member(&w("[x1,x2]"), 1).unwrap());
        assert!(!eng.derived_member(&w("[x1,x2]"), 2).unwrap());
        assert!(eng.derived_member(&w("[[x1,x2],[x1,x3]]"), 2).unwrap());
        assert!(!eng.derived_member(&w("x1"), 1).unwrap());
        assert!(eng.derived_member(&w("x1"), 0).unwrap());
    }

    #[test]
    fn ring_is_zero_examples() {
        let eng = engine();
        // x1 - x1 = 0 at any level
        let z = eng
            .ring_from_terms(Level::Infinity, vec![(1, w("x1")), (-1, w("x1"))])
            .unwrap();
        assert!(eng.ring_is_zero(&z).unwrap());
        // [x1,x2] - 1 dies in the abelianization
        let z = eng
            .ring_from_terms(Level::Finite(1), vec![(1, w("[x1,x2]")), (-1, w("1"))])
            .unwrap();
        assert!(eng.ring_is_zero(&z).unwrap());
        // but ∂_2([x1,x2]) = x1^{-1} - [x2,x1] survives at level 2
        let e = eng
            .fox_derivative(2, &w("[x1,x2]"), Level::Finite(2))
            .unwrap();
        assert!(!eng.ring_is_zero(&e).unwrap());
        // and already at level 1
        let e = eng
            .fox_derivative(2, &w("[x1,x2]"), Level::Finite(1))
            .unwrap();
        assert!(!eng.ring_is_zero(&e).unwrap());
    }

    #[test]
    fn quotient_merging_collapses_terms() {
        let eng = engine();
        // at level 1, x1·x2 and x2·x1 are the same element
        let e = eng
            .ring_from_terms(Level::Finite(1), vec![(1, w("x1 x2")), (1, w("x2 x1"))])
            .unwrap();
        assert_eq!(e.terms().len(), 1);
        assert_eq!(e.terms()[0].0, 2);
        // the stored representative is the sorted monomial
        assert_eq!(e.terms()[0].1, w("x1 x2"));
    }

    #[test]
    fn depth_cap_is_reported() {
        let eng = FoxEngine::new(4, Limits {
            max_depth: 2,
            max_terms: 1000,
        });
        assert!(matches!(
            eng.derived_member(&w("x1"), 3),
            Err(CapError::Depth { .. })
        ));
        // Infinity carries no depth
        assert!(eng
            .fox_derivative(1, &w("x1"), Level::Infinity)
            .is_ok());
    }

    #[test]
    fn term_cap_is_reported() {
        let eng = FoxEngine::new(4, Limits {
            max_depth: 4,
            max_terms: 3,
        });
        let raw: Vec<(i64, Word)> = vec![
            (1, w("x1")),
            (1, w("x2")),
            (1, w("x3")),
            (1, w("x4")),
        ];
        assert!(matches!(
            eng.ring_from_terms(Level::Infinity, raw),
            Err(FoxError::Cap(CapError::Terms { .. }))
        ));
    }

    #[test]
    fn product_rule_on_sample_pairs() {
        let eng = engine();
        let samples = ["x1 x2", "[x1,x2]", "x3^-1 x1", "x2 x4 x2^-1", "1"];
        for g in samples {
            for h in samples {
                let (g, h) = (w(g), w(h));
                let gh = g.mul(&h);
                for i in 1..=4 {
                    let lhs = eng.fox_derivative(i, &gh, Level::Infinity).unwrap();
                    let dg = eng.fox_derivative(i, &g, Level::Infinity).unwrap();
                    let dh = eng.fox_derivative(i, &h, Level::Infinity).unwrap();
                    let rhs = eng
                        .ring_add(&dg, &eng.ring_mul_word(&dh, &g.inverse()).unwrap())
                        .unwrap();
                    assert_eq!(lhs, rhs, "product rule at i={i}");
                }
            }
        }
    }

    #[test]
    fn fundamental_identity_on_sample_words() {
        // Σ_i involute(∂_i w)·(x_i - 1) = w - 1
        let eng = engine();
        for s in ["x1", "x2^-1 x3 x1", "[x1,x2][x3,x4]", "x4 x4 x1^-1", "1"] {
            let word = w(s);
            let mut sum = RingElem::zero(4, Level::Infinity);
            for i in 1..=4 {
                let di = eng.fox_derivative(i, &word, Level::Infinity).unwrap();
                let invol = eng.ring_involute(&di).unwrap();
                let xi_minus_1 = eng
                    .ring_from_terms(
                        Level::Infinity,
                        vec![(1, w(&format!("x{i}"))), (-1, Word::identity(4))],
                    )
                    .unwrap();
                sum = eng
                    .ring_add(&sum, &eng.ring_mul(&invol, &xi_minus_1).unwrap())
                    .unwrap();
            }
            let expected = eng
                .ring_from_terms(Level::Infinity, vec![(1, word.clone()), (-1, Word::identity(4))])
                .unwrap();
            assert_eq!(sum, expected, "fundamental identity for {s}");
        }
    }

    #[test]
    fn monotonicity_of_membership() {
        let eng = engine();
        for s in ["[[x1,x2],[x3,x4]]", "[x1,x2]", "x1", "[[x1,x2],[x1,x3]]"] {
            let word = w(s);
            for k in 0..3 {
                if eng.derived_member(&word, k + 1).unwrap() {
                    assert!(eng.derived_member(&word, k).unwrap());
                }
            }
        }
    }

    #[test]
    fn commutator_closure() {
        let eng = engine();
        let u = w("[x1,x2]");
        let v = w("[x1 x3, x2]");
        assert!(eng.derived_member(&u, 1).unwrap());
        assert!(eng.derived_member(&v, 1).unwrap());
        assert!(eng.derived_member(&u.commutator(&v), 2).unwrap());
    }
}
