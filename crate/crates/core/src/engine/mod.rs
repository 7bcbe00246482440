//! Word problem in the limit group `BS̄(M, ξ)`.
//!
//! For `d = gcd(M, ξ)`, `m₁ = M/d` and `η = ξ/d`, the limit is approximated
//! by `BS(M, d·n)` with `n → η` in `Z_{m₁}`. On a class `n ≡ c (mod m₁^t)`
//! every b-exponent met during Britton reduction is a [`PolyExponent`] of
//! degree at most `t`, and every pinch decision is constant once `|n|`
//! exceeds a computable bound. `t = ⌈h/2⌉` always suffices for a-length `h`;
//! [`LimitGroup`] uses the smallest `t` at which no exponent overflows.
//! The word is trivial in the limit exactly when it reduces to `b^α` with
//! `α` identically zero.

mod context;
mod poly;
mod reduce;
mod rs;

pub use context::EngineContext;
pub use poly::PolyExponent;
pub use reduce::{reduce_within_level, symbolic_reduce, SymbolicWord};
pub use rs::{euclid_sequences, evaluate_polynomial, RsTable};

use alloc::format;

use crate::madic::{MAdicResidue, Modulus};
use crate::word::Word;
use crate::{Error, Result};

/// `BS̄(M, ξ)` with `ξ` known modulo `|M|^K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitGroup {
    m: i64,
    xi: MAdicResidue,
}

impl LimitGroup {
    pub fn new(m: i64, xi: MAdicResidue) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroModulus);
        }
        if xi.modulus().value() != m {
            return Err(Error::ModulusMismatch(xi.modulus().value(), m));
        }
        Ok(LimitGroup { m, xi })
    }

    /// Shorthand for `ξ = value mod |M|^precision`.
    pub fn from_parts(m: i64, precision: u32, value: i64) -> Result<Self> {
        Self::new(m, MAdicResidue::new(&Modulus::new(m)?, precision, value)?)
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn xi(&self) -> &MAdicResidue {
        &self.xi
    }

    /// A level that suffices for every word of a-length `h`.
    pub fn level_for(h: usize) -> u32 {
        h.div_ceil(2) as u32
    }

    pub fn context(&self, level: u32) -> Result<EngineContext> {
        EngineContext::build(self.m, &self.xi, level)
    }

    /// Symbolic reduction at the smallest level where no exponent
    /// overflows. Only that many digits of `ξ/d` are consulted, which may be
    /// far fewer than `⌈h/2⌉`.
    pub fn reduce(&self, w: &Word) -> Result<(EngineContext, SymbolicWord)> {
        let safe = Self::level_for(w.a_length());
        for level in 0..=safe {
            let ctx = self.context(level)?;
            if let Some(r) = reduce_within_level(w, &ctx)? {
                return Ok((ctx, r));
            }
        }
        Err(Error::InternalInvariantViolation(format!(
            "reduction of {w} exceeds level {safe}"
        )))
    }

    pub fn is_trivial(&self, w: &Word) -> Result<bool> {
        if w.sigma_a() != 0 {
            return Ok(false);
        }
        Ok(self.reduce(w)?.1.is_trivial())
    }

    /// `α` with `w = b^α` in the limit, i.e. `w` fixes the base vertex of
    /// the Bass-Serre tree.
    pub fn stabilizer_exponent(&self, w: &Word) -> Result<Option<PolyExponent>> {
        if w.sigma_a() != 0 {
            return Ok(None);
        }
        let (_, r) = self.reduce(w)?;
        Ok(r.as_b_power().cloned())
    }
}

/// Whether `w = 1` in `BS̄(m, ξ)`.
pub fn is_trivial_limit(w: &Word, m: i64, xi: &MAdicResidue) -> Result<bool> {
    LimitGroup::new(m, xi.clone())?.is_trivial(w)
}

/// Exponent `α` with `w = b^α` in `BS̄(m, ξ)`, if `w` is a b-power there.
pub fn stabilizer_exponent(w: &Word, m: i64, xi: &MAdicResidue) -> Result<Option<PolyExponent>> {
    LimitGroup::new(m, xi.clone())?.stabilizer_exponent(w)
}
