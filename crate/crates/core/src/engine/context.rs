use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::PolyExponent;
use super::rs::{euclid_sequences, RsTable};
use crate::britton::BsParams;
use crate::madic::MAdicResidue;
use crate::{Error, Result};

pub(crate) enum Type1 {
    NoPinch,
    Pinch(PolyExponent),
    /// The result would need a slot beyond the level.
    Overflow,
}

/// Normalized data for reducing words of a-length at most `2t` over the
/// class `C = {n : n ≡ c (mod m₁^t)}`, where the concrete groups are
/// `BS(m₁d, nd)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineContext {
    m: BigInt,
    d: BigInt,
    m1: BigInt,
    level: u32,
    class_modulus: BigInt,
    class_residue: BigInt,
    rs: RsTable,
}

impl EngineContext {
    /// Context of the limit of `BS(M, ξ_j)` at level `t`. `ξ` must be known
    /// to precision at least `t` whenever `|m₁| > 1`.
    pub fn build(m: i64, xi: &MAdicResidue, level: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroModulus);
        }
        if xi.modulus().value() != m {
            return Err(Error::ModulusMismatch(xi.modulus().value(), m));
        }
        let d = xi.gcd_with(m)? as i64;
        let eta = xi.divide_exact(d)?;
        let m1 = m / d;
        if m1.unsigned_abs() > 1 && eta.precision() < level {
            return Err(Error::InsufficientPrecision {
                needed: level,
                available: eta.precision(),
            });
        }
        let class_modulus = BigInt::from(m1.unsigned_abs()).pow(level);
        let c = eta.residue().mod_floor(&class_modulus);
        Self::from_class(d as u64, m1, c, level)
    }

    /// Context for explicit `d`, `m₁` and class residue `c` mod `m₁^t`.
    pub fn from_class(d: u64, m1: i64, class: impl Into<BigInt>, level: u32) -> Result<Self> {
        if m1 == 0 || d == 0 {
            return Err(Error::ZeroModulus);
        }
        let m1b = BigInt::from(m1);
        let class_modulus = BigInt::from(m1.unsigned_abs()).pow(level);
        let class_residue = class.into().mod_floor(&class_modulus);
        let rep = if class_residue.is_zero() {
            class_modulus.clone()
        } else {
            class_residue.clone()
        };
        let rs = RsTable::at(&m1b, &rep, level);
        let d = BigInt::from(d);
        Ok(EngineContext {
            m: &m1b * &d,
            d,
            m1: m1b,
            level,
            class_modulus,
            class_residue,
            rs,
        })
    }

    pub fn m(&self) -> &BigInt {
        &self.m
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn m1(&self) -> &BigInt {
        &self.m1
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// `|m₁|^t`.
    pub fn class_modulus(&self) -> &BigInt {
        &self.class_modulus
    }

    /// `c` with `0 <= c < |m₁|^t`.
    pub fn class_residue(&self) -> &BigInt {
        &self.class_residue
    }

    /// The nonzero member of `C` at which the table is computed.
    pub fn representative(&self) -> &BigInt {
        self.rs.representative()
    }

    pub fn rs(&self) -> &RsTable {
        &self.rs
    }

    pub fn contains(&self, n: &BigInt) -> bool {
        (n - &self.class_residue).is_multiple_of(&self.class_modulus)
    }

    /// `c + j·|m₁|^t`.
    pub fn class_member(&self, j: impl Into<BigInt>) -> BigInt {
        &self.class_residue + j.into() * &self.class_modulus
    }

    /// The concrete group `BS(m₁d, nd)` for `n ∈ C`.
    pub fn concrete(&self, n: &BigInt) -> Result<BsParams> {
        self.check_class(n)?;
        BsParams::new(self.m.clone(), n * &self.d)
    }

    fn check_class(&self, n: &BigInt) -> Result<()> {
        if self.contains(n) {
            Ok(())
        } else {
            Err(Error::NotInClass(format!("{n}")))
        }
    }

    /// `α(n)` for `n ∈ C`.
    pub fn evaluate(&self, a: &PolyExponent, n: &BigInt) -> Result<BigInt> {
        self.check_class(n)?;
        let t = a.level().max(1) - 1;
        let (_, s) = euclid_sequences(&self.m1, n, t);
        Ok(combine(a, &self.d, n, &s))
    }

    /// `α` at the representative; its class modulo `m₁d` is the same for
    /// every member of `C`.
    pub fn value_at_representative(&self, a: &PolyExponent) -> BigInt {
        let k = a.coefficients();
        if k.len() > self.rs.s().len() {
            let (_, s) = euclid_sequences(&self.m1, self.representative(), a.level());
            return combine(a, &self.d, self.representative(), &s);
        }
        combine(a, &self.d, self.representative(), self.rs.s())
    }

    /// `β` with `a b^α a⁻¹ = b^β` in every concrete group of the class, if
    /// such a pinch exists.
    pub fn pinch_type1(&self, a: &PolyExponent) -> Result<Option<PolyExponent>> {
        match self.type1(a)? {
            Type1::Pinch(b) => Ok(Some(b)),
            Type1::NoPinch => Ok(None),
            Type1::Overflow => Err(Error::InternalInvariantViolation(format!(
                "type-1 pinch on {a} exceeds level {}",
                self.level
            ))),
        }
    }

    pub(crate) fn type1(&self, a: &PolyExponent) -> Result<Type1> {
        if a.is_zero() {
            return Ok(Type1::Pinch(PolyExponent::zero(self.level)));
        }
        let a = self.fit(a)?;
        let abs_m = self.m.abs();
        if !self.value_at_representative(&a).is_multiple_of(&abs_m) {
            return Ok(Type1::NoPinch);
        }
        let k = a.coefficients();
        let t = self.level as usize;
        if !k[0].is_multiple_of(&self.d) {
            return Err(Error::InternalInvariantViolation(format!(
                "type-1 pinch on {a}: d = {} does not divide the constant term",
                self.d
            )));
        }
        if t == 0 || !k[t].is_zero() {
            return Ok(Type1::Overflow);
        }
        let r = self.rs.r();
        let mut num = &k[0] / &self.d;
        for i in 1..=t {
            num += &k[i] * &r[i];
        }
        if !num.is_multiple_of(&self.m1) {
            return Err(Error::InternalInvariantViolation(format!(
                "type-1 pinch on {a}: leading term not divisible by {}",
                self.m1
            )));
        }
        let mut out = alloc::vec![BigInt::zero(); t + 1];
        out[1] = num / &self.m1;
        out[2..].clone_from_slice(&k[1..t]);
        Ok(Type1::Pinch(PolyExponent::from_coefficients(out)))
    }

    /// `β` with `a⁻¹ b^α a = b^β` in the concrete groups with `|n| > |k_0|`;
    /// exists exactly when `k_0 = 0`.
    pub fn pinch_type2(&self, a: &PolyExponent) -> Option<PolyExponent> {
        if !a.k0().is_zero() {
            return None;
        }
        // A nonzero coefficient beyond the level cannot come from a
        // reduction in this context; treat it as no pinch.
        let a = self.fit(a).ok()?;
        let k = a.coefficients();
        let t = self.level as usize;
        if t == 0 {
            return Some(PolyExponent::zero(0));
        }
        let r = self.rs.r();
        let mut l0 = &k[1] * &self.m1;
        for i in 2..=t {
            l0 -= &k[i] * &r[i - 1];
        }
        let mut out = alloc::vec![BigInt::zero(); t + 1];
        out[0] = l0 * &self.d;
        out[1..t].clone_from_slice(&k[2..]);
        Some(PolyExponent::from_coefficients(out))
    }

    /// `α` as a polynomial in `n` with rational coefficients, lowest degree
    /// first; the zero function gives an empty vector.
    pub fn polynomial_in_n(&self, a: &PolyExponent) -> Vec<BigRational> {
        let k = a.coefficients();
        let mut out = alloc::vec![BigRational::zero(); k.len()];
        out[0] = BigRational::from_integer(k[0].clone());
        let table = if k.len() <= self.rs.r().len() {
            self.rs.clone()
        } else {
            RsTable::at(&self.m1, self.representative(), a.level())
        };
        let mut m1_pow = BigRational::one();
        let m1 = BigRational::from_integer(self.m1.clone());
        let mut inv_pows = alloc::vec![BigRational::one()];
        for _ in 1..k.len() {
            m1_pow /= &m1;
            inv_pows.push(m1_pow.clone());
        }
        let d = BigRational::from_integer(self.d.clone());
        for (i, ki) in k.iter().enumerate().skip(1) {
            if ki.is_zero() {
                continue;
            }
            let ki = BigRational::from_integer(ki.clone()) * &d;
            for (j, p) in table.polynomial(i - 1).iter().enumerate() {
                out[j + 1] += &ki * p * &inv_pows[j];
            }
        }
        while out.last().is_some_and(|c| c.is_zero()) {
            out.pop();
        }
        out
    }

    /// An integer `R` such that `α(n) != 0` for every `|n| > R`, unless `α`
    /// vanishes identically.
    pub fn root_bound(&self, a: &PolyExponent) -> BigInt {
        let p = self.polynomial_in_n(a);
        let Some((lead, rest)) = p.split_last() else {
            return BigInt::zero();
        };
        let ratio = rest
            .iter()
            .map(|c| (c / lead).abs())
            .max()
            .unwrap_or_else(BigRational::zero);
        (ratio + BigRational::one()).ceil().to_integer()
    }

    fn fit(&self, a: &PolyExponent) -> Result<PolyExponent> {
        a.resized(self.level)
            .ok_or_else(|| Error::InternalInvariantViolation(format!("{a} does not fit level {}", self.level)))
    }
}

// k_0 + d·n·(k_1 + k_2 s_1 + … + k_t s_{t-1})
fn combine(a: &PolyExponent, d: &BigInt, n: &BigInt, s: &[BigInt]) -> BigInt {
    let k = a.coefficients();
    let mut inner = BigInt::zero();
    for i in 1..k.len() {
        inner += &k[i] * &s[i - 1];
    }
    &k[0] + d * n * inner
}
