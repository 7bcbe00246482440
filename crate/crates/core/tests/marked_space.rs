use bs_limits_core::britton::{is_trivial_bs, is_trivial_gamma};
use bs_limits_core::marked::{
    build_separating_sequence, check_convergence_integers, classify_equal, discriminating_word,
    discriminating_word_bounded, make_congruence_witness, separating_witness, Classification, ConvergenceVerdict,
    GroupOracle,
};
use bs_limits_core::word::Sign;
use bs_limits_core::{BsParams, LimitGroup, MAdicResidue, Modulus, Word};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

fn bs(m: i64, n: impl Into<BigInt>) -> BsParams {
    BsParams::new(m, n).unwrap()
}

fn limit(m: i64, k: u32, xi: i64) -> GroupOracle {
    GroupOracle::Limit(LimitGroup::from_parts(m, k, xi).unwrap())
}

// w = 1 in BS(M, k) iff k ≡ c (mod m₁^t d), away from k = ±1
fn check_congruence_witness(m: i64, c: i64, t: u32, range: i64) {
    let w = make_congruence_witness(m, &BigInt::from(c), t).unwrap();
    let d = m.gcd(&c);
    let q = (m / d).abs().pow(t) * d;
    for k in (-range..=range).filter(|&k| k.abs() >= 2) {
        let expected = (k - c).rem_euclid(q) == 0;
        assert_eq!(
            is_trivial_bs(&w, &bs(m, k)),
            expected,
            "M = {m}, c = {c}, t = {t}, k = {k}"
        );
    }
}

#[test]
fn congruence_witness_matches_congruence() {
    for (m, c, t) in [
        (2, 3, 2),
        (2, 1, 1),
        (3, 2, 2),
        (2, 1, 3),
        (4, 2, 2),
        (6, 3, 1),
        (-3, 1, 2),
        (5, -2, 1),
    ] {
        check_congruence_witness(m, c, t, 40);
    }
}

#[test]
fn congruence_witness_is_trivial_in_metabelian_groups() {
    // BS(M, ±1) is metabelian, so the commutator dies whatever the congruence
    for (m, c, t) in [
        (2, 3, 2),
        (3, 2, 2),
        (2, 1, 3),
        (4, 2, 2),
        (6, 3, 1),
        (-3, 1, 2),
        (5, -2, 1),
    ] {
        let w = make_congruence_witness(m, &BigInt::from(c), t).unwrap();
        for k in [-1, 1] {
            assert!(is_trivial_bs(&w, &bs(m, k)), "M = {m}, c = {c}, t = {t}, k = {k}");
            assert!(is_trivial_gamma(&w, &bs(m, k)));
        }
    }
    // so the congruence fails to be detected at 1 for M = 2, c = 3, t = 2
    assert_ne!((1i64 - 3).rem_euclid(4), 0);
}

#[test]
fn congruence_witness_in_limits() {
    let w = make_congruence_witness(2, &BigInt::from(3), 2).unwrap();
    for xi in 0..16 {
        let g = LimitGroup::from_parts(2, 4, xi).unwrap();
        assert_eq!(g.is_trivial(&w).unwrap(), xi % 4 == 3, "ξ = {xi}");
    }
}

#[test]
fn defining_relator_isolates_group_from_its_limit() {
    for (m, n) in [(2i64, 3i64), (3, 2), (2, 5), (-2, 3), (3, -4), (1, 2), (4, 6)] {
        let l = m.unsigned_abs() as usize + n.unsigned_abs() as usize + 2;
        let found = discriminating_word(&GroupOracle::Bs(bs(m, n)), &limit(m, 6, n), l)
            .unwrap()
            .expect("a word of length |m|+|n|+2 exists");
        assert_eq!(found.length, l, "m = {m}, n = {n}");
        assert!(found.trivial_in_first);
        // the defining relator itself is one of the shortest discriminators
        let relator = Word::from_blocks(0, [(Sign::Plus, BigInt::from(m)), (Sign::Minus, BigInt::from(-n))]);
        assert_eq!(relator.length(), BigInt::from(l));
        assert!(is_trivial_bs(&relator, &bs(m, n)));
        assert!(!limit(m, 6, n).is_trivial(&relator).unwrap());
    }
}

#[test]
fn search_is_symmetric() {
    let g1 = GroupOracle::Bs(bs(2, 3));
    let g2 = limit(2, 6, 3);
    let a = discriminating_word(&g1, &g2, 8).unwrap().unwrap();
    let b = discriminating_word(&g2, &g1, 8).unwrap().unwrap();
    assert_eq!(a.word, b.word);
    assert_eq!(a.trivial_in_first, !b.trivial_in_first);
}

#[test]
fn bounded_search_finds_long_relators() {
    let g1 = GroupOracle::Bs(bs(4, 4));
    let g2 = GroupOracle::Bs(bs(4, 6));
    let found = discriminating_word_bounded(&g1, &g2, 2, 6).unwrap().unwrap();
    assert!(is_trivial_bs(&found.word, &bs(4, 4)) != is_trivial_bs(&found.word, &bs(4, 6)));
}

#[test]
fn separating_witness_length_and_verdicts() {
    let w = separating_witness(1, 4, 1, 2, 2, 3).unwrap();
    assert_eq!(w.length(), BigInt::from(18));
    assert!(is_trivial_bs(&w, &bs(4, 4)));
    assert!(!is_trivial_bs(&w, &bs(4, 6)));
    // the general length formula
    for (m1, d1, k1, m2, d2, k2) in [(1, 2, 1, 2, 1, 3), (1, 3, 2, 3, 1, 2), (2, 3, 1, 3, 2, 1)] {
        let w = separating_witness(m1, d1, k1, m2, d2, k2).unwrap();
        assert_eq!(w.length(), BigInt::from(10 + 2 * d1 * m1 * m1));
        assert!(is_trivial_bs(&w, &bs(m1 * d1, k1 * d1)));
        assert!(!is_trivial_bs(&w, &bs(m2 * d2, k2 * d2)));
    }
}

#[test]
fn classification_against_search() {
    let r = |v| MAdicResidue::from_parts(4, 3, v).unwrap();
    assert!(matches!(
        classify_equal(&r(6), &r(38)).unwrap(),
        Classification::EqualAtPrecision { .. }
    ));
    assert_eq!(discriminating_word(&limit(4, 3, 6), &limit(4, 3, 38), 7).unwrap(), None);

    let r = |v| MAdicResidue::from_parts(2, 3, v).unwrap();
    let verdict = classify_equal(&r(1), &r(3)).unwrap();
    let Classification::DistinctResidue { level, .. } = verdict else {
        panic!("{verdict:?}")
    };
    let w = make_congruence_witness(2, &BigInt::from(1), level).unwrap();
    let (g1, g2) = (limit(2, 3, 1), limit(2, 3, 3));
    assert_ne!(g1.is_trivial(&w).unwrap(), g2.is_trivial(&w).unwrap());
}

#[test]
fn separating_sequence_and_witnesses() {
    for (m, k, xi) in [(2, 6, 1), (3, 5, 2), (6, 4, 2), (-2, 7, 5), (4, 5, 2)] {
        let xi = MAdicResidue::from_parts(m, k, xi).unwrap();
        let modulus = Modulus::new(m).unwrap();
        let ell = modulus.max_exponent();
        let d = xi.gcd_with(m).unwrap();
        let m1 = modulus.abs() / d;
        // as many terms as the precision allows
        let mut count = 1;
        while build_separating_sequence(&xi, count + 1).is_ok() {
            count += 1;
        }
        let seq = build_separating_sequence(&xi, count).unwrap();
        for (i, x) in seq.iter().enumerate() {
            let n = i as u32 + 1;
            let mn = BigInt::from(modulus.abs()).pow(n);
            let q = BigInt::from(m1).pow(ell * n + 1) * d;
            assert_eq!(x.mod_floor(&mn), xi.reduce_mod(&mn).unwrap());
            assert_ne!(x.mod_floor(&q), xi.reduce_mod(&q).unwrap());
            if i > 0 {
                assert!(x > &seq[i - 1]);
            }
        }
        for n in 1..=count {
            let w = make_congruence_witness(m, &seq[n as usize - 1], n).unwrap();
            for r in n..=count {
                assert!(is_trivial_bs(&w, &bs(m, seq[r as usize - 1].clone())));
            }
            let far = ell * n + 1;
            if far <= count {
                let w = make_congruence_witness(m, &seq[far as usize - 1], far).unwrap();
                assert!(!is_trivial_bs(&w, &bs(m, seq[n as usize - 1].clone())));
            }
        }
    }
}

#[test]
fn accepted_sequences_have_growing_witnesses() {
    let seq: Vec<BigInt> = [3, 7, 15, 31, 63].map(BigInt::from).to_vec();
    assert!(matches!(
        check_convergence_integers(2, &seq, 8).unwrap(),
        ConvergenceVerdict::ConsistentWithConvergence { d: 1 }
    ));
    // shortest discriminating length, capped at 10
    let cap = 10;
    let mut last = 0;
    for pair in seq.windows(2) {
        let g1 = GroupOracle::Bs(bs(2, pair[0].clone()));
        let g2 = GroupOracle::Bs(bs(2, pair[1].clone()));
        let len = match discriminating_word(&g1, &g2, cap).unwrap() {
            Some(found) => found.length,
            None => cap + 1,
        };
        assert!(len >= last, "{pair:?}");
        last = len;
    }
    assert_eq!(last, cap + 1);
}

proptest! {
    #[test]
    fn eventually_constant_sequences_converge(m in prop::sample::select(vec![2i64, 3, -4, 6, 10]),
                                              prefix in prop::collection::vec(-500i64..500, 0..4),
                                              x in -500i64..500, tail in 3usize..6) {
        let mut seq: Vec<BigInt> = prefix.into_iter().map(BigInt::from).collect();
        seq.extend(std::iter::repeat_n(BigInt::from(x), tail + seq.len()));
        let verdict = check_convergence_integers(m, &seq, 5).unwrap();
        prop_assert!(matches!(verdict, ConvergenceVerdict::ConsistentWithConvergence { .. }), "{:?}", verdict);
    }

    #[test]
    fn alternating_units_diverge(a in 0i64..100, b in 0i64..100) {
        // two distinct odd classes mod 8 never settle
        let (x, y) = (2 * a + 1, 2 * b + 1);
        prop_assume!((x - y) % 8 != 0);
        let seq: Vec<BigInt> = [x, y, x, y, x, y].map(BigInt::from).to_vec();
        prop_assert!(matches!(
            check_convergence_integers(2, &seq, 3).unwrap(),
            ConvergenceVerdict::DivergenceWitness(_, _)
        ));
    }

    #[test]
    fn classification_is_symmetric(m in prop::sample::select(vec![2i64, 3, 4, -6, 12]),
                                   x in -2000i64..2000, y in -2000i64..2000, k in 1u32..4) {
        let r = |v| MAdicResidue::from_parts(m, k, v).unwrap();
        let a = classify_equal(&r(x), &r(y)).unwrap();
        let b = classify_equal(&r(y), &r(x)).unwrap();
        prop_assert_eq!(a.is_distinct(), b.is_distinct());
        prop_assert!(!classify_equal(&r(x), &r(x)).unwrap().is_distinct());
    }
}
