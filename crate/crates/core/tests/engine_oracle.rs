//! The symbolic engine against concrete Britton reduction in the groups
//! `BS(M, d·n)` of the class.

use bs_limits_core::britton::{britton_reduce, is_trivial_bs};
use bs_limits_core::engine::{euclid_sequences, evaluate_polynomial, symbolic_reduce};
use bs_limits_core::quotient::lamplighter_image;
use bs_limits_core::word::Sign;
use bs_limits_core::{EngineContext, LimitGroup, MAdicResidue, PolyExponent, Word};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_word(rng: &mut impl Rng, max_a: usize, exp: i64) -> Word {
    let h = rng.gen_range(0..=max_a);
    let head = rng.gen_range(-exp..=exp);
    let blocks: Vec<_> = (0..h)
        .map(|_| {
            let s = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
            (s, BigInt::from(rng.gen_range(-exp..=exp)))
        })
        .collect();
    Word::from_blocks(head, blocks)
}

// a^k b^e a^-k with e chosen so that it is often a b-power in the limit
fn conjugate(rng: &mut impl Rng, m: i64, k: i64) -> Word {
    let j = rng.gen_range(-2i64..=2);
    let e = if k > 0 { m * j } else { j };
    let e = if e.abs() > 10 { e.signum() * 10 } else { e };
    Word::a_power(k) * Word::b_power(e) * Word::a_power(-k)
}

// Words with a-length <= 8 and |exponent| <= 10 that are trivial in many
// limits: commutators of elements that often fix the base vertex.
fn structured_word(rng: &mut impl Rng, m: i64) -> Word {
    let kx = rng.gen_range(-1..=2);
    let x = conjugate(rng, m, kx);
    let y = match rng.gen_range(0..3) {
        0 => Word::b_power(rng.gen_range(-3i64..=3)),
        1 => {
            let ky = rng.gen_range(-1..=1);
            conjugate(rng, m, ky)
        }
        _ => conjugate(rng, m, 1),
    };
    let c = x.clone() * y.clone() * x.inverse() * y.inverse();
    if c.a_length() <= 8 {
        c
    } else {
        x * y.clone() * y.inverse()
    }
}

fn random_group(rng: &mut impl Rng) -> LimitGroup {
    let mut m = 0;
    while m == 0 {
        m = rng.gen_range(-12i64..=12);
    }
    let k = rng.gen_range(4..=7);
    let xi = rng.gen_range(-1000i64..=1000);
    LimitGroup::from_parts(m, k, xi).unwrap()
}

// Members of the class with |n| > bound, both signs.
fn samples(ctx: &EngineContext, bound: &BigInt, count: usize) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut j = 0i64;
    while out.len() < count {
        for n in [ctx.class_member(j), ctx.class_member(-j - 1)] {
            if n.abs() > *bound && !out.contains(&n) {
                out.push(n);
            }
        }
        j += 1;
    }
    out
}

fn check_against_concrete(g: &LimitGroup, w: &Word) -> bool {
    let verdict = g.is_trivial(w).unwrap();
    let (ctx, red) = g.reduce(w).unwrap();
    for n in samples(&ctx, &red.verdict_bound(&ctx), 5) {
        let p = ctx.concrete(&n).unwrap();
        assert_eq!(
            verdict,
            is_trivial_bs(w, &p),
            "w = {w}, M = {}, ξ = {}, n = {n}",
            g.m(),
            g.xi()
        );
    }
    for n in samples(&ctx, red.validity_bound(), 5) {
        let p = ctx.concrete(&n).unwrap();
        assert_eq!(
            red.evaluate(&ctx, &n).unwrap(),
            britton_reduce(w, &p),
            "w = {w}, n = {n}"
        );
    }
    verdict
}

#[test]
fn verdicts_match_concrete_groups() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut nontrivial_a_words = 0;
    let mut trivial_a_words = 0;
    for i in 0..4000 {
        let g = random_group(&mut rng);
        let w = if i % 2 == 0 {
            random_word(&mut rng, 8, 10)
        } else {
            structured_word(&mut rng, g.m())
        };
        let trivial = check_against_concrete(&g, &w);
        if w.a_length() > 0 {
            if trivial {
                trivial_a_words += 1;
            } else {
                nontrivial_a_words += 1;
            }
        }
    }
    assert!(trivial_a_words > 200, "only {trivial_a_words} trivial samples");
    assert!(nontrivial_a_words > 200);
}

#[test]
fn exhaustive_short_words_small_moduli() {
    use bs_limits_core::word::ReducedWords;
    for (m, xi) in [(2, 1), (2, 3), (-2, 5), (3, 2), (4, 2), (6, 4), (1, 0), (-1, 7)] {
        let g = LimitGroup::from_parts(m, 4, xi).unwrap();
        for w in ReducedWords::up_to(7) {
            check_against_concrete(&g, &w);
        }
    }
}

#[test]
fn known_verdicts() {
    let g = LimitGroup::from_parts(2, 6, 3).unwrap();
    assert!(!g.is_trivial(&"a b^2 A B^3".parse().unwrap()).unwrap());
    let g = LimitGroup::from_parts(2, 6, 1).unwrap();
    assert!(g.is_trivial(&"a b^2 A b a b^-2 A B".parse().unwrap()).unwrap());
}

proptest! {
    #[test]
    fn bar_symmetry(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_group(&mut rng);
        let w = if seed % 2 == 0 { random_word(&mut rng, 8, 10) } else { structured_word(&mut rng, g.m()) };
        prop_assert_eq!(g.is_trivial(&w).unwrap(), g.is_trivial(&w.bar()).unwrap());
    }

    #[test]
    fn refining_precision_keeps_verdicts(seed in any::<u64>(), extra in 1u32..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = 0;
        while m == 0 {
            m = rng.gen_range(-12i64..=12);
        }
        let w = if seed % 3 == 0 { random_word(&mut rng, 8, 10) } else { structured_word(&mut rng, m) };
        let t = LimitGroup::level_for(w.a_length()).max(1);
        let xi: i64 = rng.gen_range(-10_000..=10_000);
        let coarse = LimitGroup::from_parts(m, t, xi).unwrap();
        let fine = LimitGroup::from_parts(m, t + extra, xi).unwrap();
        prop_assert_eq!(coarse.is_trivial(&w).unwrap(), fine.is_trivial(&w).unwrap());
    }

    #[test]
    fn unit_modulus_matches_lamplighter(seed in any::<u64>(), m in prop::sample::select(vec![1i64, -1])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = if seed % 2 == 0 { random_word(&mut rng, 8, 10) } else { structured_word(&mut rng, m) };
        let g = LimitGroup::from_parts(m, 1, rng.gen_range(-50..50)).unwrap();
        prop_assert_eq!(g.is_trivial(&w).unwrap(), lamplighter_image(&w).is_identity());
    }

    #[test]
    fn remainders_constant_on_class(m in prop::sample::select(vec![-6i64, -3, -2, 2, 3, 4, 5, 10]),
                                    t in 0u32..6, c in 1i64..10_000, j in -50i64..50) {
        let mb = BigInt::from(m);
        let q = BigInt::from(m.abs()).pow(t);
        let n = BigInt::from(c);
        let n2 = &n + &q * j;
        let (r, s) = euclid_sequences(&mb, &n, t);
        let (r2, s2) = euclid_sequences(&mb, &n2, t);
        prop_assert_eq!(&r, &r2);
        for i in 0..=t {
            let qi = BigInt::from(m.abs()).pow(t - i);
            prop_assert!(((&s[i as usize] - &s2[i as usize]) % qi).is_zero());
        }
    }

    #[test]
    fn polynomials_match_recurrence(m in prop::sample::select(vec![-5i64, -2, 2, 3, 7]),
                                   t in 0u32..6, c in 1i64..1000, j in -20i64..20) {
        let ctx = EngineContext::from_class(1, m, c, t).unwrap();
        let mb = BigInt::from(m);
        let rs = ctx.rs();
        for i in 0..=t as usize {
            // m·P_i has coefficients (m, -r_1, ..., -r_i) from the top down
            let p = rs.polynomial(i);
            prop_assert_eq!(p.len(), i + 1);
            for (deg, coef) in p.iter().enumerate() {
                let expected = if deg == i { mb.clone() } else { -&rs.r()[i - deg] };
                prop_assert_eq!(coef * BigRational::from_integer(mb.clone()), BigRational::from_integer(expected));
            }
        }
        let n = ctx.class_member(j);
        prop_assume!(!n.is_zero());
        let (_, s) = euclid_sequences(&mb, &n, t);
        let x = BigRational::new(n.clone(), mb.clone());
        for (i, si) in s.iter().enumerate() {
            prop_assert_eq!(evaluate_polynomial(&rs.polynomial(i), &x), BigRational::from_integer(si.clone()));
        }
    }

    #[test]
    fn zero_function_test(m in prop::sample::select(vec![-3i64, 2, 3, 5]), d in 1u64..4,
                          t in 0u32..5, c in 1i64..500,
                          ks in prop::collection::vec(-3i64..=3, 6)) {
        let ctx = EngineContext::from_class(d, m, c, t).unwrap();
        let mut coeffs: Vec<BigInt> = ks.into_iter().take(t as usize + 1).map(BigInt::from).collect();
        coeffs.resize(t as usize + 1, BigInt::zero());
        let a = PolyExponent::from_coefficients(coeffs);
        let mut members = Vec::new();
        let mut j = 0i64;
        while members.len() < t as usize + 1 {
            let n = ctx.class_member(j);
            if !n.is_zero() {
                members.push(n);
            }
            j += 1;
        }
        let vanishes = members.iter().all(|n| ctx.evaluate(&a, n).unwrap().is_zero());
        prop_assert_eq!(vanishes, a.is_zero());
    }

    #[test]
    fn symbolic_words_evaluate_to_concrete_reductions(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_group(&mut rng);
        let w = random_word(&mut rng, 6, 6);
        let ctx = g.context(LimitGroup::level_for(w.a_length()) + 1).unwrap();
        let red = symbolic_reduce(&w, &ctx).unwrap();
        for n in samples(&ctx, red.validity_bound(), 3) {
            prop_assert_eq!(red.evaluate(&ctx, &n).unwrap(), britton_reduce(&w, &ctx.concrete(&n).unwrap()));
        }
    }
}

#[test]
fn adaptive_level_matches_safe_level() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..3000 {
        let g = random_group(&mut rng);
        let w = if i % 2 == 0 {
            random_word(&mut rng, 8, 10)
        } else {
            structured_word(&mut rng, g.m())
        };
        let (ctx, red) = g.reduce(&w).unwrap();
        let safe = g.context(LimitGroup::level_for(w.a_length())).unwrap();
        let full = symbolic_reduce(&w, &safe).unwrap();
        assert!(ctx.level() <= safe.level());
        assert_eq!(red.a_length(), full.a_length(), "w = {w}");
        assert_eq!(red.is_trivial(), full.is_trivial(), "w = {w}");
        assert_eq!(
            red.as_b_power().map(|a| a.resized(safe.level()).unwrap()),
            full.as_b_power().cloned()
        );
    }
}

#[test]
fn precision_requirement_is_reported() {
    let xi = MAdicResidue::from_parts(3, 2, 1).unwrap();
    let g = LimitGroup::new(3, xi).unwrap();
    let w: Word = "a^3 b^27 A^3 B".parse().unwrap();
    assert_eq!(
        g.is_trivial(&w),
        Err(bs_limits_core::Error::InsufficientPrecision {
            needed: 3,
            available: 2
        })
    );
}
