//! The recursive finite sets `P_n` of word pairs and the infection-axis
//! lists derived from them.
//!
//! `P_0 = {(x1, x2)}`, `P_1 = {([x_i,x_j],[x_i,x_k]) : i,j,k distinct}`,
//! and each `(y,z) ∈ P_k` contributes the 12 pairs
//! `([y,y^{x_i}],[z,z^{x_i}])`, `([y,z],[z,z^{x_i}])`,
//! `([y,y^{x_i}],[y,z])` for `1 ≤ i ≤ 4` to `P_{k+1}`. Both components of
//! a level-`n` pair lie in `F^(n)`.

use std::collections::HashSet;
use std::fmt;

use crate::error::CapError;
use crate::fox::FoxEngine;
use crate::words::Word;

pub const PAIR_RANK: u32 = 4;

/// A pair `(y, z)` of words of common rank.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WordPair {
    pub y: Word,
    pub z: Word,
}

impl WordPair {
    pub fn new(y: Word, z: Word) -> Self {
        assert_eq!(y.rank(), z.rank(), "pair components must share rank");
        WordPair { y, z }
    }

    /// Canonical sort key: total letter count first, then the serialized
    /// pair.
    pub fn sort_key(&self) -> (usize, String) {
        (self.y.len() + self.z.len(), self.to_string())
    }
}

impl fmt::Display for WordPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}", self.y, self.z)
    }
}

/// The level-`n` set of pairs, deduplicated by reduced-word equality and
/// canonically ordered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSet {
    pub level: u32,
    pub pairs: Vec<WordPair>,
}

impl PairSet {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// One pair per line, `y <TAB> z`, under a `# level=n count=m` header.
    pub fn serialize(&self) -> String {
        let mut out = format!("# level={} count={}\n", self.level, self.pairs.len());
        for pair in &self.pairs {
            out.push_str(&pair.to_string());
            out.push('\n');
        }
        out
    }
}

/// Generates `P_n`. Deterministic; two runs serialize identically.
pub fn generate_pair_set(n: u32) -> Result<PairSet, CapError> {
    let rank = PAIR_RANK;
    let x = |i: u32| Word::generator(i, rank).expect("index within rank");
    let mut pairs: Vec<WordPair> = if n == 0 {
        vec![WordPair::new(x(1), x(2))]
    } else {
        // P_1 is the explicitly listed family over ordered distinct triples.
        let mut set = HashSet::new();
        for i in 1..=rank {
            for j in 1..=rank {
                for k in 1..=rank {
                    if i != j && i != k && j != k {
                        set.insert(WordPair::new(
                            x(i).commutator(&x(j)),
                            x(i).commutator(&x(k)),
                        ));
                    }
                }
            }
        }
        set.into_iter().collect()
    };
    let mut level = if n == 0 { 0 } else { 1 };
    while level < n {
        let mut next = HashSet::new();
        for WordPair { y, z } in &pairs {
            let yz = y.commutator(z);
            for i in 1..=rank {
                let xi = x(i);
                let y_yx = y.commutator(&y.conjugate(&xi));
                let z_zx = z.commutator(&z.conjugate(&xi));
                next.insert(WordPair::new(y_yx.clone(), z_zx.clone()));
                next.insert(WordPair::new(yz.clone(), z_zx));
                next.insert(WordPair::new(y_yx, yz.clone()));
            }
        }
        pairs = next.into_iter().collect();
        level += 1;
    }
    pairs.sort_by_cached_key(WordPair::sort_key);
    Ok(PairSet { level: n, pairs })
}

/// The deduplicated union of all components of `P_{n-1}`: the candidate
/// infection axes. Each element is verified to lie in `F^(n-1)` when the
/// resource caps allow the check; a cap skips verification rather than
/// failing the construction.
pub fn axes(n: u32) -> Result<Vec<Word>, CapError> {
    assert!(n >= 1, "axes are indexed from n = 1");
    let set = generate_pair_set(n - 1)?;
    let mut words = HashSet::new();
    for pair in set.pairs {
        words.insert(pair.y);
        words.insert(pair.z);
    }
    let mut out: Vec<Word> = words.into_iter().collect();
    out.sort_by_cached_key(Word::sort_key);
    let engine = FoxEngine::new(PAIR_RANK, crate::limits::Limits::from_env());
    for w in &out {
        match engine.derived_member(w, n - 1) {
            Ok(true) => {}
            Ok(false) => unreachable!("iterated commutators lie in F^(n-1): {w}"),
            Err(_) => break, // beyond the caps, skip verification
        }
    }
    Ok(out)
}

/// Checks that every component of every pair lies in `F^(level)`.
/// Returns the first offending pair if any.
pub fn audit_membership(set: &PairSet, engine: &FoxEngine) -> Result<Option<WordPair>, CapError> {
    for pair in &set.pairs {
        if !engine.derived_member(&pair.y, set.level)?
            || !engine.derived_member(&pair.z, set.level)?
        {
            return Ok(Some(pair.clone()));
        }
    }
    Ok(None)
}
