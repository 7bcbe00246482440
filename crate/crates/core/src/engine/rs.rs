//! The Euclidean quotient/remainder sequences `s_i`, `r_i` attached to a
//! parameter `n` and a modulus `m`:
//!
//! `s_0 = 1`, `s_{i-1}(n)·n = s_i(n)·m + r_i(n)` with `0 <= r_i < |m|`.
//!
//! On a class `n ≡ c (mod m^t)` the remainders `r_1..r_t` are constant and
//! `s_i(n) = P_i(n/m)` for the polynomials `P_0 = 1`,
//! `P_i(X) = X·P_{i-1}(X) - r_i/m`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// `(r, s)` with `r[0] = 0`, `s[0] = 1`, both of length `t + 1`.
pub fn euclid_sequences(m: &BigInt, n: &BigInt, t: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    assert!(!m.is_zero(), "modulus must be nonzero");
    let abs_m = m.abs();
    let mut r = vec![BigInt::zero()];
    let mut s = vec![BigInt::from(1)];
    for i in 1..=t as usize {
        let prod = &s[i - 1] * n;
        let ri = prod.mod_floor(&abs_m);
        let si = (prod - &ri) / m;
        r.push(ri);
        s.push(si);
    }
    (r, s)
}

/// The r/s table of a congruence class, evaluated at a representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RsTable {
    m: BigInt,
    representative: BigInt,
    r: Vec<BigInt>,
    s: Vec<BigInt>,
}

impl RsTable {
    pub fn at(m: &BigInt, representative: &BigInt, level: u32) -> Self {
        let (r, s) = euclid_sequences(m, representative, level);
        RsTable {
            m: m.clone(),
            representative: representative.clone(),
            r,
            s,
        }
    }

    pub fn level(&self) -> u32 {
        (self.r.len() - 1) as u32
    }

    pub fn modulus(&self) -> &BigInt {
        &self.m
    }

    pub fn representative(&self) -> &BigInt {
        &self.representative
    }

    /// `r_0..r_t` (`r_0 = 0` is a placeholder).
    pub fn r(&self) -> &[BigInt] {
        &self.r
    }

    /// `s_0..s_t` at the representative.
    pub fn s(&self) -> &[BigInt] {
        &self.s
    }

    /// Coefficients of `P_i`, lowest degree first.
    pub fn polynomial(&self, i: usize) -> Vec<BigRational> {
        let mut p = vec![BigRational::from_integer(1.into())];
        for j in 1..=i {
            // X·P_{j-1} - r_j/m
            let mut next = vec![BigRational::zero()];
            next.extend(p.iter().cloned());
            next[0] -= BigRational::new(self.r[j].clone(), self.m.clone());
            p = next;
        }
        p
    }

    /// All `P_0..P_t`.
    pub fn polynomials(&self) -> Vec<Vec<BigRational>> {
        (0..self.r.len()).map(|i| self.polynomial(i)).collect()
    }
}

/// Horner evaluation of a polynomial given lowest degree first.
pub fn evaluate_polynomial(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}
