//! Property suites for the word arithmetic and the differential calculus.

mod common;

use common::{oracle_derived_member, random_word};
use concordia::fox::{FoxEngine, Level, RingElem};
use concordia::limits::Limits;
use concordia::words::Word;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn arb_word(rank: u32, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((1..=rank, any::<bool>()), 0..=max_len)
        .prop_map(move |letters| Word::reduce(rank, letters).expect("letters within rank"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn group_axioms(
        a in arb_word(4, 32),
        b in arb_word(4, 32),
        c in arb_word(4, 32),
    ) {
        // associativity
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        // identity
        let e = Word::identity(4);
        prop_assert_eq!(a.mul(&e), a.clone());
        prop_assert_eq!(e.mul(&a), a.clone());
        // inverse
        prop_assert!(a.mul(&a.inverse()).is_identity());
        prop_assert!(a.inverse().mul(&a).is_identity());
    }

    #[test]
    fn reduce_idempotent_and_compatible(
        raw in prop::collection::vec((1u32..=4, any::<bool>()), 0..48),
        split in 0usize..48,
    ) {
        let whole = Word::reduce(4, raw.iter().copied()).unwrap();
        let again = Word::reduce(
            4,
            whole.letters().iter().map(|l| (l.gen.index(), l.inverse)),
        )
        .unwrap();
        prop_assert_eq!(&again, &whole);
        // multiply(reduce(a), reduce(b)) = reduce(a·b) for any split
        let cut = split.min(raw.len());
        let left = Word::reduce(4, raw[..cut].iter().copied()).unwrap();
        let right = Word::reduce(4, raw[cut..].iter().copied()).unwrap();
        prop_assert_eq!(left.mul(&right), whole);
    }

    #[test]
    fn exponent_sum_is_a_homomorphism(
        a in arb_word(4, 24),
        b in arb_word(4, 24),
        i in 1u32..=4,
    ) {
        prop_assert_eq!(
            a.mul(&b).exponent_sum(i),
            a.exponent_sum(i) + b.exponent_sum(i)
        );
        prop_assert_eq!(a.commutator(&b).exponent_sum(i), 0);
    }
}

#[test]
fn derivative_rules_on_random_pairs() {
    let engine = FoxEngine::standard();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let level = Level::Infinity;
    for _ in 0..300 {
        let g = random_word(&mut rng, 4, 12);
        let h = random_word(&mut rng, 4, 12);
        for i in 1..=4 {
            let dg = engine.fox_derivative(i, &g, level).unwrap();
            let dh = engine.fox_derivative(i, &h, level).unwrap();
            // product rule ∂(gh) = ∂g + (∂h)·g^{-1}
            let lhs = engine.fox_derivative(i, &g.mul(&h), level).unwrap();
            let rhs = engine
                .ring_add(&dg, &engine.ring_mul_word(&dh, &g.inverse()).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
            // inverse rule ∂(g^{-1}) = -(∂g)·g
            let lhs = engine.fox_derivative(i, &g.inverse(), level).unwrap();
            let rhs = engine.ring_mul_word(&dg, &g).unwrap().neg();
            assert_eq!(lhs, rhs);
            // commutator rule
            let lhs = engine.fox_derivative(i, &g.commutator(&h), level).unwrap();
            let ghg = g.mul(&h.inverse()).mul(&g.inverse());
            let hghg = h.mul(&g).mul(&h.inverse()).mul(&g.inverse());
            let rhs = engine
                .ring_add(
                    &engine
                        .ring_add(&dg, &engine.ring_mul_word(&dh, &g.inverse()).unwrap())
                        .unwrap(),
                    &engine
                        .ring_add(
                            &engine.ring_mul_word(&dg, &ghg).unwrap().neg(),
                            &engine.ring_mul_word(&dh, &hghg).unwrap().neg(),
                        )
                        .unwrap(),
                )
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn fundamental_identity_on_random_words() {
    let engine = FoxEngine::standard();
    let mut rng = StdRng::seed_from_u64(0xf0cc);
    for _ in 0..300 {
        let w = random_word(&mut rng, 4, 16);
        let mut sum = RingElem::zero(4, Level::Infinity);
        for i in 1..=4 {
            let di = engine.fox_derivative(i, &w, Level::Infinity).unwrap();
            let invol = engine.ring_involute(&di).unwrap();
            let xi = Word::generator(i, 4).unwrap();
            let xi_minus_1 = engine
                .ring_from_terms(Level::Infinity, vec![(1, xi), (-1, Word::identity(4))])
                .unwrap();
            sum = engine
                .ring_add(&sum, &engine.ring_mul(&invol, &xi_minus_1).unwrap())
                .unwrap();
        }
        let expected = engine
            .ring_from_terms(
                Level::Infinity,
                vec![(1, w.clone()), (-1, Word::identity(4))],
            )
            .unwrap();
        assert_eq!(sum, expected);
    }
}

#[test]
fn membership_monotone_and_closed_under_commutators() {
    let engine = FoxEngine::standard();
    let mut rng = StdRng::seed_from_u64(0xc105);
    // commutators of random words lie one level deeper
    for _ in 0..40 {
        let a = random_word(&mut rng, 4, 8);
        let b = random_word(&mut rng, 4, 8);
        let c1 = a.commutator(&b);
        assert!(engine.derived_member(&c1, 1).unwrap());
        let d = random_word(&mut rng, 4, 8);
        let e = random_word(&mut rng, 4, 8);
        let c2 = c1.commutator(&d.commutator(&e));
        assert!(engine.derived_member(&c2, 2).unwrap());
        // monotonicity
        assert!(engine.derived_member(&c2, 1).unwrap());
        for k in 0..=2 {
            if engine.derived_member(&c2, k + 1).unwrap() {
                assert!(engine.derived_member(&c2, k).unwrap());
            }
        }
    }
}

#[test]
fn membership_matches_oracle_on_random_rank2_words() {
    let engine = FoxEngine::new(2, Limits::default());
    let mut rng = StdRng::seed_from_u64(0x0bac1e);
    for _ in 0..500 {
        let w = random_word(&mut rng, 2, 14);
        for k in 0..=2 {
            assert_eq!(
                engine.derived_member(&w, k).unwrap(),
                oracle_derived_member(&w, k),
                "membership mismatch for {w} at k={k}"
            );
        }
    }
}

#[test]
fn ring_involution_is_an_antiautomorphism() {
    let engine = FoxEngine::standard();
    let mut rng = StdRng::seed_from_u64(0x1440);
    for _ in 0..100 {
        let a = engine
            .ring_from_terms(
                Level::Infinity,
                (0..3)
                    .map(|c| (c as i64 - 1, random_word(&mut rng, 4, 6)))
                    .collect(),
            )
            .unwrap();
        let b = engine
            .ring_from_terms(
                Level::Infinity,
                (0..3)
                    .map(|c| (c as i64 + 1, random_word(&mut rng, 4, 6)))
                    .collect(),
            )
            .unwrap();
        let lhs = engine.ring_involute(&engine.ring_mul(&a, &b).unwrap()).unwrap();
        let rhs = engine
            .ring_mul(
                &engine.ring_involute(&b).unwrap(),
                &engine.ring_involute(&a).unwrap(),
            )
            .unwrap();
        assert_eq!(lhs, rhs);
        let twice = engine
            .ring_involute(&engine.ring_involute(&a).unwrap())
            .unwrap();
        assert_eq!(twice, a);
    }
}
