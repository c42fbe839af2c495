//! Shared test helpers: random word generation and an independent
//! brute-force oracle for derived-series membership.
//!
//! The oracle evaluates words in the classical faithful matrix
//! representation of the free metabelian group: `x_i` maps to the 2×2
//! upper-triangular matrix `[[u_i, t_i], [0, 1]]` over the multivariate
//! Laurent ring, with the `t_i` spanning a free module. A word lies in
//! the second derived subgroup exactly when it evaluates to the identity,
//! and in the first exactly when its exponent sums vanish. This path is
//! direct matrix arithmetic with dictionary polynomials and shares no
//! code with the recursive Fox-calculus engine it cross-checks.

use std::collections::HashMap;

use concordia::words::Word;
use rand::rngs::StdRng;
use rand::Rng;

#[allow(dead_code)]
pub fn random_word(rng: &mut StdRng, rank: u32, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::reduce(
        rank,
        (0..len).map(|_| (rng.gen_range(1..=rank), rng.gen_bool(0.5))),
    )
    .expect("random letters are within rank")
}

/// Laurent monomial exponents in the abelianization.
type Expo = Vec<i64>;
/// Dictionary polynomial over the abelianization's Laurent ring.
type Poly = HashMap<Expo, i64>;

/// An element of the wreath-product representation: the abelianized
/// monomial together with one polynomial per module generator.
pub struct MetabelianElement {
    monomial: Expo,
    module: Vec<Poly>,
}

impl MetabelianElement {
    pub fn identity(rank: u32) -> Self {
        MetabelianElement {
            monomial: vec![0; rank as usize],
            module: vec![Poly::new(); rank as usize],
        }
    }

    /// Right-multiplies by the matrix of a single letter, using
    /// `(a, s)·(b, t) = (a+b, s + a·t)`. The letter `x_i` carries module
    /// part `t_i`; its inverse carries `-u_i^{-1}·t_i`.
    fn mul_letter(&mut self, index: u32, inverse: bool) {
        let i = (index - 1) as usize;
        let mut key = self.monomial.clone();
        let coeff = if inverse {
            key[i] -= 1;
            -1
        } else {
            1
        };
        let slot = self.module[i].entry(key.clone()).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.module[i].remove(&key);
        }
        self.monomial[i] += if inverse { -1 } else { 1 };
    }

    pub fn evaluate(word: &Word) -> Self {
        let mut out = MetabelianElement::identity(word.rank());
        for l in word.letters() {
            out.mul_letter(l.gen.index(), l.inverse);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.monomial.iter().all(|&e| e == 0) && self.module.iter().all(|p| p.is_empty())
    }
}

/// Brute-force membership in `F^(k)` for `k ≤ 2`.
#[allow(dead_code)]
pub fn oracle_derived_member(word: &Word, k: u32) -> bool {
    match k {
        0 => true,
        1 => (1..=word.rank()).all(|i| word.exponent_sum(i) == 0),
        2 => MetabelianElement::evaluate(word).is_identity(),
        _ => panic!("the brute-force oracle only covers k ≤ 2"),
    }
}

/// All freely reduced words of rank `rank` with length ≤ `max_len`.
#[allow(dead_code)] // each integration target uses its own subset of these helpers
pub fn enumerate_reduced_words(rank: u32, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::identity(rank)];
    let mut frontier: Vec<Vec<(u32, bool)>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for prefix in &frontier {
            for index in 1..=rank {
                for inverse in [false, true] {
                    if let Some(&(last_index, last_inverse)) = prefix.last() {
                        if last_index == index && last_inverse != inverse {
                            continue; // would cancel
                        }
                    }
                    let mut extended = prefix.clone();
                    extended.push((index, inverse));
                    out.push(
                        Word::reduce(rank, extended.iter().copied())
                            .expect("letters within rank"),
                    );
                    next.push(extended);
                }
            }
        }
        frontier = next;
    }
    out
}
