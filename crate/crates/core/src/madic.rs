//! The ring `Z_m` of `m`-adic integers at finite precision.
//!
//! An element is stored as a residue `c` with `0 <= c < |m|^K`, meaning the
//! `m`-adic integer is known modulo `m^K Z_m`. All magnitudes use `|m|`; the
//! sign of `m` only matters to callers that build groups from it.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Prime factorization of a positive integer by trial division, sorted by
/// prime. `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// A nonzero integer `m` together with the factorization of `|m|`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Modulus {
    m: i64,
    factors: Vec<(u64, u32)>,
}

impl Modulus {
    pub fn new(m: i64) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroModulus);
        }
        Ok(Modulus {
            m,
            factors: factorize(m.unsigned_abs()),
        })
    }

    pub fn value(&self) -> i64 {
        self.m
    }

    pub fn abs(&self) -> u64 {
        self.m.unsigned_abs()
    }

    /// `(p_i, k_i)` with `|m| = prod p_i^k_i`.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// `Z_{±1}` is the zero ring.
    pub fn is_zero_ring(&self) -> bool {
        self.abs() == 1
    }

    /// Largest exponent in the factorization (0 for `|m| = 1`).
    pub fn max_exponent(&self) -> u32 {
        self.factors.iter().map(|&(_, k)| k).max().unwrap_or(0)
    }

    /// `|m|^k` as a big integer.
    pub fn power(&self, k: u32) -> BigInt {
        BigInt::from(self.abs()).pow(k)
    }

    /// Whether every prime of `x` divides `m`.
    pub fn supports(&self, x: i64) -> bool {
        factorize(x.unsigned_abs())
            .iter()
            .all(|(p, _)| self.factors.iter().any(|(q, _)| q == p))
    }

    /// Minimal `h` with `x | m^h`, if every prime of `x` divides `m`.
    pub fn power_needed_for(&self, x: i64) -> Option<u32> {
        let mut h = 0;
        for (p, j) in factorize(x.unsigned_abs()) {
            let (_, k) = *self.factors.iter().find(|(q, _)| *q == p)?;
            h = h.max(j.div_ceil(k));
        }
        Some(h)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.m)
    }
}

/// `|m|^{-v}` when two residues are known to differ, or an upper bound
/// `|m|^{-K}` when they agree at the available precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Distance {
    Exact { base: u64, exponent: u32 },
    AtMost { base: u64, exponent: u32 },
}

impl Distance {
    pub fn value(&self) -> BigRational {
        let (base, exponent) = match *self {
            Distance::Exact { base, exponent } | Distance::AtMost { base, exponent } => (base, exponent),
        };
        BigRational::new(BigInt::one(), BigInt::from(base).pow(exponent))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Distance::Exact { .. })
    }
}

/// One CRT component of a residue: `residue mod prime^exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeComponent {
    pub prime: u64,
    pub exponent: u32,
    pub residue: BigInt,
}

impl PrimeComponent {
    pub fn modulus(&self) -> BigInt {
        BigInt::from(self.prime).pow(self.exponent)
    }
}

/// An element of `Z_m` known modulo `m^K`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MAdicResidue {
    modulus: Modulus,
    precision: u32,
    residue: BigInt,
}

impl MAdicResidue {
    /// `value mod |m|^precision`; negative values are normalized.
    pub fn new(modulus: &Modulus, precision: u32, value: impl Into<BigInt>) -> Result<Self> {
        if precision == 0 {
            return Err(Error::PreconditionViolated("precision must be at least 1".into()));
        }
        let residue = value.into().mod_floor(&modulus.power(precision));
        Ok(MAdicResidue {
            modulus: modulus.clone(),
            precision,
            residue,
        })
    }

    /// Shorthand for `Modulus::new(m)` followed by [`MAdicResidue::new`].
    pub fn from_parts(m: i64, precision: u32, value: impl Into<BigInt>) -> Result<Self> {
        Self::new(&Modulus::new(m)?, precision, value)
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn residue(&self) -> &BigInt {
        &self.residue
    }

    /// The same element known to a lower precision `k <= K`.
    pub fn with_precision(&self, k: u32) -> Result<Self> {
        if k > self.precision {
            return Err(Error::InsufficientPrecision {
                needed: k,
                available: self.precision,
            });
        }
        Self::new(&self.modulus, k, self.residue.clone())
    }

    /// `ξ mod q` for a positive `q` dividing `|m|^K`.
    pub fn reduce_mod(&self, q: &BigInt) -> Result<BigInt> {
        let full = self.modulus.power(self.precision);
        if !q.is_positive() || !full.is_multiple_of(q) {
            let needed = self.precision_needed_for(q);
            return Err(Error::InsufficientPrecision {
                needed,
                available: self.precision,
            });
        }
        Ok(self.residue.mod_floor(q))
    }

    // Smallest K' with q | |m|^K', saturating when no K' exists.
    fn precision_needed_for(&self, q: &BigInt) -> u32 {
        let mut k = 0u32;
        let base = BigInt::from(self.modulus.abs());
        if base.is_one() {
            return u32::MAX;
        }
        let mut pow = BigInt::one();
        while !pow.is_multiple_of(q) {
            if k > 4096 {
                return u32::MAX;
            }
            pow *= &base;
            k += 1;
        }
        k
    }

    /// Image under `Z_m -> Z_{m'}` for `m' | m`, at the same precision level.
    pub fn project(&self, target: i64) -> Result<Self> {
        if target == 0 || self.modulus.m % target != 0 {
            return Err(Error::NotADivisor {
                divisor: target,
                modulus: self.modulus.m,
            });
        }
        Self::new(&Modulus::new(target)?, self.precision, self.residue.clone())
    }

    /// The positive generator `d` of the ideal `(ξ, m')`, for `m'` whose
    /// primes divide `m`.
    pub fn gcd_with(&self, other: i64) -> Result<u64> {
        if other == 0 {
            return Err(Error::ZeroModulus);
        }
        let needed = self.modulus.power_needed_for(other).ok_or(Error::ForeignPrime(other))?;
        if needed > self.precision {
            return Err(Error::InsufficientPrecision {
                needed,
                available: self.precision,
            });
        }
        let g = self.residue.gcd(&BigInt::from(other));
        Ok(g.to_u64().expect("gcd divides a 64-bit integer"))
    }

    /// `d_m(ξ, η)` at the shared precision.
    pub fn distance(&self, other: &Self) -> Result<Distance> {
        self.check_compatible(other)?;
        let base = self.modulus.abs();
        if self.residue == other.residue || base == 1 {
            return Ok(Distance::AtMost {
                base,
                exponent: self.precision,
            });
        }
        let diff = &self.residue - &other.residue;
        let b = BigInt::from(base);
        let mut v = 0u32;
        let mut pow = b.clone();
        while diff.is_multiple_of(&pow) {
            v += 1;
            pow *= &b;
        }
        Ok(Distance::Exact { base, exponent: v })
    }

    /// `ξ/d` as an element of `Z_{m/d}`, keeping the precision level `K`.
    pub fn divide_exact(&self, d: i64) -> Result<Self> {
        if d == 0 || self.modulus.m % d != 0 {
            return Err(Error::NotADivisor {
                divisor: d,
                modulus: self.modulus.m,
            });
        }
        let d_big = BigInt::from(d);
        if !self.residue.is_multiple_of(&d_big) {
            return Err(Error::NotDivisible(d));
        }
        Self::new(
            &Modulus::new(self.modulus.m / d)?,
            self.precision,
            &self.residue / d_big,
        )
    }

    /// Components `c mod p_i^{k_i K}` of the isomorphism `Z_m = ⊕ Z_{p_i}`.
    pub fn crt_split(&self) -> Result<Vec<PrimeComponent>> {
        if self.modulus.is_zero_ring() {
            return Err(Error::ZeroRing);
        }
        Ok(self
            .modulus
            .factors
            .iter()
            .map(|&(prime, k)| {
                let exponent = k * self.precision;
                let residue = self.residue.mod_floor(&BigInt::from(prime).pow(exponent));
                PrimeComponent {
                    prime,
                    exponent,
                    residue,
                }
            })
            .collect())
    }

    /// Inverse of [`MAdicResidue::crt_split`].
    pub fn crt_combine(modulus: &Modulus, precision: u32, parts: &[PrimeComponent]) -> Result<Self> {
        if modulus.is_zero_ring() {
            return Err(Error::ZeroRing);
        }
        let shape_ok = parts.len() == modulus.factors.len()
            && parts
                .iter()
                .zip(&modulus.factors)
                .all(|(c, &(p, k))| c.prime == p && c.exponent == k * precision);
        if !shape_ok {
            return Err(Error::PreconditionViolated(
                "components do not match the modulus".into(),
            ));
        }
        let mut acc = BigInt::zero();
        let mut acc_mod = BigInt::one();
        for part in parts {
            let q = part.modulus();
            // acc + acc_mod * x ≡ residue (mod q)
            let inv = mod_inverse(&acc_mod, &q).expect("prime powers of distinct primes are coprime");
            let x = ((&part.residue - &acc) * inv).mod_floor(&q);
            acc += &acc_mod * x;
            acc_mod *= q;
        }
        Self::new(modulus, precision, acc)
    }

    /// Invertibility in `Z_m`: no prime of `m` divides the residue.
    pub fn is_unit(&self) -> bool {
        self.modulus
            .factors
            .iter()
            .all(|&(p, _)| !self.residue.is_multiple_of(&BigInt::from(p)))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.modulus.m != other.modulus.m {
            return Err(Error::ModulusMismatch(self.modulus.m, other.modulus.m));
        }
        if self.precision != other.precision {
            return Err(Error::PrecisionMismatch(self.precision, other.precision));
        }
        Ok(())
    }
}

impl fmt::Display for MAdicResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}^{}", self.residue, self.modulus.abs(), self.precision)
    }
}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}
