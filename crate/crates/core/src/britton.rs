//! The word problem in a fixed `BS(m, n) = ⟨a, b | a b^m a⁻¹ = b^n⟩`.
//!
//! Reduction scans left to right keeping a Britton-reduced prefix on a stack.
//! Each incoming a-letter is checked against the top of the stack for a
//! pinch `a b^e a⁻¹` (`m | e`) or `a⁻¹ b^e a` (`n | e`), so the pinch applied
//! is always the leftmost one of the current word.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::quotient::{affine_image, AffineMap};
use crate::word::{Sign, Word, WordBuilder};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BsParams {
    m: BigInt,
    n: BigInt,
}

impl BsParams {
    pub fn new(m: impl Into<BigInt>, n: impl Into<BigInt>) -> Result<Self> {
        let (m, n) = (m.into(), n.into());
        if m.is_zero() || n.is_zero() {
            return Err(Error::ZeroModulus);
        }
        Ok(BsParams { m, n })
    }

    pub fn m(&self) -> &BigInt {
        &self.m
    }

    pub fn n(&self) -> &BigInt {
        &self.n
    }
}

/// Britton-reduced form of `w` in `BS(m, n)`.
pub fn britton_reduce(w: &Word, p: &BsParams) -> Word {
    let mut stack: alloc::vec::Vec<(Sign, BigInt)> = alloc::vec::Vec::with_capacity(w.a_length());
    let mut head = w.head().clone();
    for (s, e) in w.blocks() {
        let beta = stack.last().and_then(|(top, exp)| {
            let (divisor, num) = match (top, s) {
                (Sign::Plus, Sign::Minus) => (&p.m, &p.n),
                (Sign::Minus, Sign::Plus) => (&p.n, &p.m),
                _ => return None,
            };
            exp.is_multiple_of(divisor).then(|| exp / divisor * num)
        });
        match beta {
            Some(beta) => {
                stack.pop();
                *top_exponent(&mut stack, &mut head) += beta;
            }
            None => stack.push((*s, BigInt::zero())),
        }
        *top_exponent(&mut stack, &mut head) += e;
    }
    let mut out = WordBuilder::default();
    out.push_b(&head);
    for (s, e) in stack {
        out.push_a(s);
        out.push_b(&e);
    }
    out.finish()
}

fn top_exponent<'a>(stack: &'a mut [(Sign, BigInt)], head: &'a mut BigInt) -> &'a mut BigInt {
    match stack.last_mut() {
        Some((_, e)) => e,
        None => head,
    }
}

/// `w = 1` in `BS(m, n)`: by Britton's lemma a reduced word with an a-letter
/// is nontrivial, and `b` has infinite order.
pub fn is_trivial_bs(w: &Word, p: &BsParams) -> bool {
    if w.sigma_a() != 0 {
        return false;
    }
    britton_reduce(w, p).is_identity()
}

/// Image of `w` in the affine group of `Q` under `a ↦ (x ↦ (n/m)x)`,
/// `b ↦ (x ↦ x + 1)`; this realizes the quotient `Γ(m, n)`.
pub fn gamma_image(w: &Word, p: &BsParams) -> AffineMap<BigRational> {
    let ratio = BigRational::new(p.n.clone(), p.m.clone());
    affine_image(w, ratio).expect("n/m is a unit of Q")
}

/// Whether the image in `Γ(m, n)` is trivial: `σ_a = 0` and the affine map
/// is the identity.
pub fn is_trivial_gamma(w: &Word, p: &BsParams) -> bool {
    if w.sigma_a() != 0 {
        return false;
    }
    let g = gamma_image(w, p);
    g.scale().is_one() && g.shift().is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn bs(m: i64, n: i64) -> BsParams {
        BsParams::new(m, n).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(britton_reduce(&w("A b^6 a"), &bs(4, 6)), w("b^4"));
        assert_eq!(britton_reduce(&w("a b^2 A"), &bs(2, 3)), w("b^3"));
        assert_eq!(britton_reduce(&w("a b^3 A"), &bs(2, 3)), w("a b^3 A"));
        // nested pinches
        assert_eq!(britton_reduce(&w("a a b^4 A A"), &bs(2, 3)), w("b^9"));
    }

    #[test]
    fn triviality_examples() {
        assert!(is_trivial_bs(&w("a b^2 A B^3"), &bs(2, 3)));
        assert!(!is_trivial_bs(&w("a b^2 A B^3"), &bs(2, 5)));
        assert_eq!(britton_reduce(&w("a b^2 A B^3"), &bs(2, 5)), w("b^2"));
        assert!(is_trivial_bs(&w(""), &bs(7, -3)));
    }

    #[test]
    fn gamma_examples() {
        let half = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let g = gamma_image(&w("a"), &bs(2, 3));
        assert_eq!((g.scale().clone(), g.shift().clone()), (half(3, 2), half(0, 1)));
        let g = gamma_image(&w("b"), &bs(5, 7));
        assert_eq!((g.scale().clone(), g.shift().clone()), (half(1, 1), half(1, 1)));
        let g = gamma_image(&w("a b A"), &bs(2, 3));
        assert_eq!((g.scale().clone(), g.shift().clone()), (half(1, 1), half(3, 2)));
        assert!(is_trivial_gamma(&w("a b^2 A B^3"), &bs(2, 3)));
    }

    #[test]
    fn zero_parameters_rejected() {
        assert_eq!(BsParams::new(0, 3), Err(Error::ZeroModulus));
    }
}
