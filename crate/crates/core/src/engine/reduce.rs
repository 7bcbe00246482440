use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::context::{EngineContext, Type1};
use super::poly::PolyExponent;
use crate::word::{Sign, Word, WordBuilder};
use crate::{Error, Result};

/// A word `b^{A_0} a^{ε_1} b^{A_1} … a^{ε_h} b^{A_h}` whose exponents are
/// functions on a congruence class. It equals the reduced input in every
/// concrete group of the class with `|n| > validity_bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicWord {
    head: PolyExponent,
    blocks: Vec<(Sign, PolyExponent)>,
    validity_bound: BigInt,
}

impl SymbolicWord {
    pub fn head(&self) -> &PolyExponent {
        &self.head
    }

    pub fn blocks(&self) -> &[(Sign, PolyExponent)] {
        &self.blocks
    }

    pub fn a_length(&self) -> usize {
        self.blocks.len()
    }

    /// `N₀`.
    pub fn validity_bound(&self) -> &BigInt {
        &self.validity_bound
    }

    /// A bound past which the triviality verdict holds in every concrete
    /// group of the class: `N₀` together with a root bound for the exponent
    /// of a pure b-power (a nonzero exponent can still vanish at finitely
    /// many `n`).
    pub fn verdict_bound(&self, ctx: &EngineContext) -> BigInt {
        match self.as_b_power() {
            Some(a) => ctx.root_bound(a).max(self.validity_bound.clone()),
            None => self.validity_bound.clone(),
        }
    }

    /// The exponent of a pure b-power.
    pub fn as_b_power(&self) -> Option<&PolyExponent> {
        self.blocks.is_empty().then_some(&self.head)
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.is_empty() && self.head.is_zero()
    }

    /// The concrete word at a member `n` of the class.
    pub fn evaluate(&self, ctx: &EngineContext, n: &BigInt) -> Result<Word> {
        let mut out = WordBuilder::default();
        out.push_b(&ctx.evaluate(&self.head, n)?);
        for (s, e) in &self.blocks {
            out.push_a(*s);
            out.push_b(&ctx.evaluate(e, n)?);
        }
        Ok(out.finish())
    }
}

impl fmt::Display for SymbolicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b^{}", self.head)?;
        for (s, e) in &self.blocks {
            let a = if *s == Sign::Plus { "a" } else { "A" };
            write!(f, " {a} b^{}", e)?;
        }
        Ok(())
    }
}

/// Reduces `w` over the class of `ctx`, always applying the leftmost pinch.
/// Levels of at least `⌈h/2⌉` for a-length `h` always suffice.
pub fn symbolic_reduce(w: &Word, ctx: &EngineContext) -> Result<SymbolicWord> {
    let needed = w.a_length().div_ceil(2) as u32;
    if needed > ctx.level() {
        return Err(Error::InsufficientLevel {
            needed,
            available: ctx.level(),
        });
    }
    reduce_within_level(w, ctx)?
        .ok_or_else(|| Error::InternalInvariantViolation(format!("reduction of {w} exceeds level {}", ctx.level())))
}

/// Like [`symbolic_reduce`] without the a-length precondition. The result
/// is exact whenever every exponent fits the level; `None` reports that
/// some pinch would need a higher level.
pub fn reduce_within_level(w: &Word, ctx: &EngineContext) -> Result<Option<SymbolicWord>> {
    let t = ctx.level();
    let mut bound = BigInt::zero();
    let mut head = PolyExponent::constant(w.head().clone(), t);
    let mut stack: Vec<(Sign, PolyExponent)> = Vec::with_capacity(w.a_length());
    for (s, e) in w.blocks() {
        let beta = match stack.last() {
            Some((Sign::Plus, top)) if *s == Sign::Minus => match ctx.type1(top)? {
                Type1::Pinch(b) => Some(b),
                Type1::NoPinch => None,
                Type1::Overflow => return Ok(None),
            },
            Some((Sign::Minus, top)) if *s == Sign::Plus => {
                let k0 = top.k0().abs();
                if k0 > bound {
                    bound = k0;
                }
                ctx.pinch_type2(top)
            }
            _ => None,
        };
        match beta {
            Some(beta) => {
                stack.pop();
                top_exponent(&mut stack, &mut head).add_assign(&beta);
            }
            None => stack.push((*s, PolyExponent::zero(t))),
        }
        top_exponent(&mut stack, &mut head).add_constant(e);
    }
    Ok(Some(SymbolicWord {
        head,
        blocks: stack,
        validity_bound: bound,
    }))
}

fn top_exponent<'a>(stack: &'a mut [(Sign, PolyExponent)], head: &'a mut PolyExponent) -> &'a mut PolyExponent {
    match stack.last_mut() {
        Some((_, e)) => e,
        None => head,
    }
}
