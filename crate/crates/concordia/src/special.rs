//! Special-pair selection for concrete solution maps.
//!
//! A solution map sends the four surface generators into a free target
//! group. Free targets keep every required check decidable while
//! exercising the full case analysis: at each level exactly one of three
//! successor pairs is selected according to which of `rπ_{k+1}(y)`,
//! `rπ_{k+1}(z)` is trivial, and the nonvanishing of the case's right
//! multiplier is verified by exact group-ring arithmetic and recorded as
//! evidence. The impossible fourth case (both trivial) is reported as an
//! error: it means the map is not a genuine algebraic solution.

use std::fmt;

use crate::error::{CapError, FoxError, WordError};
use crate::fox::{FoxEngine, Level, RingElem};
use crate::limits::Limits;
use crate::pairs::WordPair;
use crate::words::Word;
use num::Zero;
use thiserror::Error;

pub const SOURCE_RANK: u32 = 4;

/// A homomorphism `r` from the rank-4 free group into a free group of
/// `target_rank`, given on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionMap {
    target_rank: u32,
    images: Vec<Word>, // exactly 4
}

impl SolutionMap {
    pub fn new(target_rank: u32, images: Vec<Word>) -> Result<Self, WordError> {
        if images.len() != SOURCE_RANK as usize {
            return Err(WordError::ImageCountMismatch {
                expected: SOURCE_RANK as usize,
                got: images.len(),
            });
        }
        for img in &images {
            if img.rank() != target_rank {
                return Err(WordError::RankMismatch {
                    left: img.rank(),
                    right: target_rank,
                });
            }
        }
        Ok(SolutionMap {
            target_rank,
            images,
        })
    }

    pub fn target_rank(&self) -> u32 {
        self.target_rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// Image of a source word under the homomorphism.
    pub fn apply(&self, w: &Word) -> Word {
        w.map_letters(&self.images, self.target_rank)
            .expect("solution map images cover the source rank")
    }

    /// The map precomposed with a reordering of the generators.
    pub fn reordered(&self, reordering: Reordering) -> SolutionMap {
        let p = reordering.permutation();
        SolutionMap {
            target_rank: self.target_rank,
            images: (0..4).map(|i| self.images[p[i] - 1].clone()).collect(),
        }
    }

    /// Abelianized images as rows of a 4 × target_rank integer matrix.
    fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.images.iter().map(|w| w.exponent_vector()).collect()
    }
}

/// A permutation swapping within `{x1,x2}` and/or within `{x3,x4}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reordering {
    Identity,
    Swap12,
    Swap34,
    SwapBoth,
}

impl Reordering {
    /// In preference order, identity first.
    pub const ALL: [Reordering; 4] = [
        Reordering::Identity,
        Reordering::Swap12,
        Reordering::Swap34,
        Reordering::SwapBoth,
    ];

    /// `permutation()[i]` is the old index of the new generator `x_{i+1}`.
    pub fn permutation(&self) -> [usize; 4] {
        match self {
            Reordering::Identity => [1, 2, 3, 4],
            Reordering::Swap12 => [2, 1, 3, 4],
            Reordering::Swap34 => [1, 2, 4, 3],
            Reordering::SwapBoth => [2, 1, 4, 3],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Reordering::Identity => "identity",
            Reordering::Swap12 => "swap12",
            Reordering::Swap34 => "swap34",
            Reordering::SwapBoth => "swap12 swap34",
        }
    }

    pub fn from_name(s: &str) -> Option<Reordering> {
        Reordering::ALL.iter().copied().find(|r| r.name() == s)
    }
}

impl fmt::Display for Reordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// The standard surface relation after a reordering: `g·h` with
/// `g ∈ {[x1,x2], [x2,x1]}` and `h ∈ {[x3,x4], [x4,x3]}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceRelation {
    pub swap_g: bool,
    pub swap_tail: bool,
}

impl SurfaceRelation {
    pub fn standard() -> Self {
        SurfaceRelation {
            swap_g: false,
            swap_tail: false,
        }
    }

    /// How the standard relation reads after renaming the generators.
    pub fn after(reordering: Reordering) -> Self {
        SurfaceRelation {
            swap_g: matches!(reordering, Reordering::Swap12 | Reordering::SwapBoth),
            swap_tail: matches!(reordering, Reordering::Swap34 | Reordering::SwapBoth),
        }
    }

    pub fn word(&self) -> Word {
        let x = |i: u32| Word::generator(i, SOURCE_RANK).expect("index within rank");
        let g = if self.swap_g {
            x(2).commutator(&x(1))
        } else {
            x(1).commutator(&x(2))
        };
        let tail = if self.swap_tail {
            x(4).commutator(&x(3))
        } else {
            x(3).commutator(&x(4))
        };
        g.mul(&tail)
    }

    pub fn name(&self) -> String {
        format!(
            "{}{}",
            if self.swap_g { "[x2,x1]" } else { "[x1,x2]" },
            if self.swap_tail { "[x4,x3]" } else { "[x3,x4]" }
        )
    }

    pub fn from_name(s: &str) -> Option<Self> {
        for swap_g in [false, true] {
            for swap_tail in [false, true] {
                let r = SurfaceRelation { swap_g, swap_tail };
                if r.name() == s {
                    return Some(r);
                }
            }
        }
        None
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecialPairError {
    #[error("the map is not an algebraic solution: its abelianized image does not satisfy condition 1")]
    Condition1Failed,
    #[error(
        "both rπ_{{{k}}}(y) and rπ_{{{k}}}(z) are trivial at level k={k}: the map violates \
         property (2) of an algebraic solution (the impossible fourth case)"
    )]
    Case4 { k: u32 },
    #[error("the base pair failed the exact rank-2 check, which condition 1 should preclude")]
    BaseNotGood,
    #[error("a case multiplier vanished at level {k}; the selection invariant is broken")]
    EvidenceVanished { k: u32 },
    #[error(transparent)]
    Cap(#[from] CapError),
    #[error("ring arithmetic failed: {0}")]
    Fox(String),
}

impl From<FoxError> for SpecialPairError {
    fn from(e: FoxError) -> Self {
        match e {
            FoxError::Cap(c) => SpecialPairError::Cap(c),
            other => SpecialPairError::Fox(other.to_string()),
        }
    }
}

/// Verdict of the per-level goodness check.
#[derive(Clone, Debug, PartialEq)]
pub enum GoodPairVerdict {
    /// Exact: the 2×2 matrix of second/third Fox coordinates has nonzero
    /// determinant over the abelianized target ring.
    Good { determinant: RingElem },
    Fail { reason: String },
    /// Independence holds by the inductive argument recorded in a
    /// certificate (levels ≥ 2 inside `select_special_pair`).
    CertifiedByInduction,
    /// Direct independence testing at this level is out of reach.
    Undecided,
}

/// Checks condition (1) of an algebraic solution: rank-2 abelianized
/// image, with a reordering making the images of `x1` and `x3` nonzero.
/// Deterministic tie-break: the identity reordering is preferred, then
/// `swap12`, `swap34`, both.
pub fn check_condition1(map: &SolutionMap) -> Option<Reordering> {
    let rows = map.exponent_matrix();
    if rank_of_int_matrix(&rows) != 2 {
        return None;
    }
    let nonzero = |i: usize| rows[i].iter().any(|&x| x != 0);
    Reordering::ALL.into_iter().find(|r| {
        let p = r.permutation();
        nonzero(p[0] - 1) && nonzero(p[2] - 1)
    })
}

fn rank_of_int_matrix(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() || rows[0].is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<num::BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| num::BigRational::from(num::BigInt::from(x)))
                .collect()
        })
        .collect();
    let (nr, nc) = (m.len(), m[0].len());
    let mut rank = 0;
    let mut col = 0;
    while rank < nr && col < nc {
        let pivot = (rank..nr).find(|&r| !m[r][col].is_zero());
        match pivot {
            None => col += 1,
            Some(p) => {
                m.swap(rank, p);
                for r in rank + 1..nr {
                    if m[r][col].is_zero() {
                        continue;
                    }
                    let f = &m[r][col] / &m[rank][col];
                    let pivot_row = m[rank].clone();
                    for (c, pivot_entry) in pivot_row.iter().enumerate().skip(col) {
                        let sub = &f * pivot_entry;
                        m[r][c] -= sub;
                    }
                }
                rank += 1;
                col += 1;
            }
        }
    }
    rank
}

/// Engines for one solution map: the rank-4 source and the target.
struct Calc {
    source: FoxEngine,
    target: FoxEngine,
    map: SolutionMap,
}

impl Calc {
    fn new(map: SolutionMap, limits: Limits) -> Self {
        Calc {
            source: FoxEngine::new(SOURCE_RANK, limits),
            target: FoxEngine::new(map.target_rank(), limits),
            map,
        }
    }

    /// `rπ_level` applied to a formal sum of source words.
    fn push(&self, terms: &[(i64, Word)], level: Level) -> Result<RingElem, FoxError> {
        self.target.normalize(
            level,
            terms.iter().map(|(c, w)| (*c, self.map.apply(w))),
        )
    }

    /// `rπ_level ∂_i(w)` in the target group ring.
    fn push_derivative(&self, i: u32, w: &Word, level: Level) -> Result<RingElem, FoxError> {
        let d = self.source.fox_derivative(i, w, Level::Infinity)?;
        self.push(d.terms(), level)
    }
}

/// The base pair `([x1,x2],[x1,x3])` of the induction.
pub fn base_pair() -> WordPair {
    let x = |i: u32| Word::generator(i, SOURCE_RANK).expect("index within rank");
    WordPair::new(x(1).commutator(&x(2)), x(1).commutator(&x(3)))
}

/// Checks the two good properties of a pair at level `k` for the map
/// `r` (already reordered). Property (1) is exact at every level;
/// property (2) is exact at `k = 1` (a 2×2 Laurent determinant) and
/// `Undecided` beyond, where only the inductive certificate applies.
pub fn good_pair_check(
    map: &SolutionMap,
    k: u32,
    pair: &WordPair,
    limits: Limits,
) -> Result<GoodPairVerdict, SpecialPairError> {
    assert!(k >= 1);
    let calc = Calc::new(map.clone(), limits);
    for (name, w) in [("y", &pair.y), ("z", &pair.z)] {
        let d4 = calc.source.fox_derivative(4, w, Level::Infinity)?;
        if !d4.is_zero() {
            return Ok(GoodPairVerdict::Fail {
                reason: format!("∂_4{name} ≠ 0"),
            });
        }
    }
    if k >= 2 {
        return Ok(GoodPairVerdict::Undecided);
    }
    let level = Level::Finite(1);
    let m = [
        calc.push_derivative(2, &pair.y, level)?,
        calc.push_derivative(3, &pair.y, level)?,
        calc.push_derivative(2, &pair.z, level)?,
        calc.push_derivative(3, &pair.z, level)?,
    ];
    // over the commutative abelianization, two vectors in a rank-2 free
    // module are independent iff the determinant is nonzero
    let ad = calc.target.ring_mul(&m[0], &m[3])?;
    let bc = calc.target.ring_mul(&m[1], &m[2])?;
    let det = calc.target.ring_sub(&ad, &bc)?;
    if calc.target.ring_is_zero(&det)? {
        Ok(GoodPairVerdict::Fail {
            reason: "2×2 determinant of the (∂_2, ∂_3) coordinates vanishes".into(),
        })
    } else {
        Ok(GoodPairVerdict::Good { determinant: det })
    }
}

/// Which of the three successor pairs a level selects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseId {
    /// Both images nontrivial: `([y,y^x],[z,z^x])`.
    One,
    /// `y` trivial, `z` not: `([y,z],[z,z^x])`.
    Two,
    /// `z` trivial, `y` not: `([y,y^x],[y,z])`.
    Three,
}

impl CaseId {
    pub fn number(&self) -> u8 {
        match self {
            CaseId::One => 1,
            CaseId::Two => 2,
            CaseId::Three => 3,
        }
    }

    pub fn from_number(n: u8) -> Option<CaseId> {
        match n {
            1 => Some(CaseId::One),
            2 => Some(CaseId::Two),
            3 => Some(CaseId::Three),
            _ => None,
        }
    }
}

/// One level of the induction: the pair held at level `k`, the selected
/// case, the triviality verdicts behind it, and the multiplier elements
/// verified nonzero in the level-`k+1` target ring.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelRecord {
    pub k: u32,
    pub pair: WordPair,
    pub case: CaseId,
    pub y_trivial: bool,
    pub z_trivial: bool,
    pub evidence: Vec<RingElem>,
}

/// The machine-checkable record of a full special-pair selection.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecialPairCertificate {
    pub n: u32,
    pub target_rank: u32,
    /// The original (unreordered) images of `x1 … x4`.
    pub images: Vec<Word>,
    pub reordering: Reordering,
    pub base_pair: WordPair,
    /// The nonzero determinant of the exact base-case check.
    pub base_determinant: RingElem,
    pub levels: Vec<LevelRecord>,
    pub final_pair: WordPair,
    pub relation: SurfaceRelation,
    /// `rπ_n ∂_4(T)` in the level-`n` target ring.
    pub relation_coordinate: RingElem,
    pub relation_coordinate_nonzero: bool,
}

/// Runs the induction for the map `r` up to level `n`, producing a
/// certificate whose final pair lies at level `n`.
pub fn select_special_pair(
    map: &SolutionMap,
    n: u32,
    limits: Limits,
) -> Result<SpecialPairCertificate, SpecialPairError> {
    assert!(n >= 1);
    let reordering = check_condition1(map).ok_or(SpecialPairError::Condition1Failed)?;
    let reordered = map.reordered(reordering);
    let calc = Calc::new(reordered.clone(), limits);

    let base = base_pair();
    let base_determinant = match good_pair_check(&reordered, 1, &base, limits)? {
        GoodPairVerdict::Good { determinant } => determinant,
        _ => return Err(SpecialPairError::BaseNotGood),
    };

    let x = Word::generator(1, SOURCE_RANK).expect("x1 exists");
    let mut pair = base.clone();
    let mut levels = Vec::new();
    for k in 1..n {
        let level_up = Level::Finite(k + 1);
        let y = &pair.y;
        let z = &pair.z;
        let y_trivial = calc.target.derived_member(&calc.map.apply(y), k + 1)?;
        let z_trivial = calc.target.derived_member(&calc.map.apply(z), k + 1)?;
        let (case, successor, evidence) = match (y_trivial, z_trivial) {
            (false, false) => {
                let succ = WordPair::new(
                    y.commutator(&y.conjugate(&x)),
                    z.commutator(&z.conjugate(&x)),
                );
                let p = calc.push(&multiplier_terms(y, &x), level_up)?;
                let q = calc.push(&multiplier_terms(z, &x), level_up)?;
                (CaseId::One, succ, vec![p, q])
            }
            (true, false) => {
                let succ = WordPair::new(y.commutator(z), z.commutator(&z.conjugate(&x)));
                let factor = calc.push(
                    &[(1, Word::identity(SOURCE_RANK)), (-1, z.inverse())],
                    level_up,
                )?;
                let q = calc.push(&multiplier_terms(z, &x), level_up)?;
                (CaseId::Two, succ, vec![factor, q])
            }
            (false, true) => {
                let succ = WordPair::new(y.commutator(&y.conjugate(&x)), y.commutator(z));
                let factor = calc.push(
                    &[(1, y.inverse()), (-1, Word::identity(SOURCE_RANK))],
                    level_up,
                )?;
                let p = calc.push(&multiplier_terms(y, &x), level_up)?;
                (CaseId::Three, succ, vec![factor, p])
            }
            (true, true) => return Err(SpecialPairError::Case4 { k }),
        };
        for e in &evidence {
            if calc.target.ring_is_zero(e)? {
                return Err(SpecialPairError::EvidenceVanished { k });
            }
        }
        levels.push(LevelRecord {
            k,
            pair: pair.clone(),
            case,
            y_trivial,
            z_trivial,
            evidence,
        });
        pair = successor;
    }

    let relation = SurfaceRelation::after(reordering);
    let relation_coordinate = calc.push_derivative(4, &relation.word(), Level::Finite(n))?;
    let relation_coordinate_nonzero = !calc.target.ring_is_zero(&relation_coordinate)?;

    Ok(SpecialPairCertificate {
        n,
        target_rank: map.target_rank(),
        images: map.images().to_vec(),
        reordering,
        base_pair: base,
        base_determinant,
        levels,
        final_pair: pair,
        relation,
        relation_coordinate,
        relation_coordinate_nonzero,
    })
}

/// The four-term right multiplier of `d([w, w^x]) = (dw)·p`:
/// `p = 1 + x·w^{-1} - (w^x)^{-1}·[w^x,w] - x·[w^x,w]`.
pub fn multiplier_terms(w: &Word, x: &Word) -> Vec<(i64, Word)> {
    let wx = w.conjugate(x);
    let bracket = wx.commutator(w);
    vec![
        (1, Word::identity(w.rank())),
        (1, x.mul(&w.inverse())),
        (-1, wx.inverse().mul(&bracket)),
        (-1, x.mul(&bracket)),
    ]
}

/// Verifies that the fourth coordinate of the relation's image is nonzero
/// at level `n`, as the induction requires whenever the map satisfies
/// condition 1.
pub fn check_relation_coordinate(
    map: &SolutionMap,
    n: u32,
    relation: SurfaceRelation,
    limits: Limits,
) -> Result<bool, SpecialPairError> {
    if check_condition1(map).is_none() {
        return Err(SpecialPairError::Condition1Failed);
    }
    let calc = Calc::new(map.clone(), limits);
    let coord = calc.push_derivative(4, &relation.word(), Level::Finite(n))?;
    Ok(!calc.target.ring_is_zero(&coord)?)
}
