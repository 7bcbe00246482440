use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

/// A b-exponent that depends on the parameter `n` of a congruence class:
///
/// `α(n) = k_0 + d·n·(k_1 + k_2·s_1(n) + … + k_t·s_{t-1}(n))`.
///
/// The basis functions have degrees `0..=t` in `n`, so `α` vanishes
/// identically exactly when every coefficient does.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyExponent {
    coeffs: Vec<BigInt>,
}

impl PolyExponent {
    pub fn zero(level: u32) -> Self {
        PolyExponent {
            coeffs: vec![BigInt::zero(); level as usize + 1],
        }
    }

    pub fn constant(k: impl Into<BigInt>, level: u32) -> Self {
        let mut p = Self::zero(level);
        p.coeffs[0] = k.into();
        p
    }

    /// Coefficients `k_0..k_t`; an empty input is read as the zero exponent
    /// at level 0.
    pub fn from_coefficients(coeffs: Vec<BigInt>) -> Self {
        if coeffs.is_empty() {
            return Self::zero(0);
        }
        PolyExponent { coeffs }
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn level(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn k0(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Constant value if all non-constant coefficients vanish.
    pub fn as_constant(&self) -> Option<&BigInt> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }

    /// Highest index with a nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|k| !k.is_zero())
    }

    /// Same function with `level + 1` slots; fails if a nonzero coefficient
    /// would be dropped.
    pub fn resized(&self, level: u32) -> Option<Self> {
        let len = level as usize + 1;
        if self.coeffs[len.min(self.coeffs.len())..].iter().any(|k| !k.is_zero()) {
            return None;
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(len, BigInt::zero());
        Some(PolyExponent { coeffs })
    }

    pub(crate) fn add_assign(&mut self, other: &PolyExponent) {
        if other.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), BigInt::zero());
        }
        for (k, o) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *k += o;
        }
    }

    pub(crate) fn add_constant(&mut self, k: &BigInt) {
        self.coeffs[0] += k;
    }

    pub fn negate(&self) -> Self {
        PolyExponent {
            coeffs: self.coeffs.iter().map(|k| -k).collect(),
        }
    }
}

impl fmt::Display for PolyExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, k) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str(")")
    }
}
