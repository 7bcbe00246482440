//! Metabelian quotients: the lamplighter group `Z ≀ Z = Z ⋉ Z[t, t⁻¹]` and
//! affine actions `a·x = αx`, `b·x = x + 1` over a commutative ring.
//!
//! `Z ≀ Z` is handled through its faithful affine action on Laurent
//! polynomials (`α = t`); `Γ(m, n)` is the action on `Q` with `α = n/m`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::word::{Sign, Word};
use crate::{Error, Result};

/// Coefficient rings usable for [`AffineMap`].
pub trait AffineRing: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_integer(n: &BigInt) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Multiplicative inverse, if this element is a unit.
    fn unit_inverse(&self) -> Option<Self>;
}

impl AffineRing for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_integer(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn unit_inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

/// A Laurent polynomial with integer coefficients, stored sparsely.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn monomial(exponent: i64, coefficient: impl Into<BigInt>) -> Self {
        let mut p = LaurentPoly::default();
        p.add_term(exponent, coefficient.into());
        p
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponent: i64) -> BigInt {
        self.terms.get(&exponent).cloned().unwrap_or_default()
    }

    /// `(exponent, coefficient)` pairs with nonzero coefficients, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn add_term(&mut self, exponent: i64, coefficient: BigInt) {
        if coefficient.is_zero() {
            return;
        }
        let slot = self.terms.entry(exponent).or_default();
        *slot += coefficient;
        if slot.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Value at a nonzero rational.
    pub fn evaluate(&self, x: &BigRational) -> BigRational {
        self.terms.iter().fold(<BigRational as Zero>::zero(), |acc, (e, c)| {
            let p = if *e >= 0 {
                pow_rat(x, *e as u64)
            } else {
                pow_rat(&x.recip(), e.unsigned_abs())
            };
            acc + p * BigRational::from_integer(c.clone())
        })
    }
}

fn pow_rat(x: &BigRational, e: u64) -> BigRational {
    (0..e).fold(<BigRational as One>::one(), |acc, _| acc * x)
}

impl AffineRing for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::default()
    }
    fn one() -> Self {
        LaurentPoly::monomial(0, 1)
    }
    fn from_integer(n: &BigInt) -> Self {
        LaurentPoly::monomial(0, n.clone())
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPoly::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
    // units of Z[t, t⁻¹] are ±t^k
    fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        (c.abs().is_one()).then(|| LaurentPoly::monomial(-e, c.clone()))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mag = c.abs();
            let var = match *e {
                0 => String::new(),
                1 => "t".into(),
                _ => alloc::format!("t^{}", e),
            };
            if var.is_empty() {
                out.push_str(&alloc::format!("{}", mag));
            } else if mag.is_one() {
                out.push_str(&var);
            } else {
                out.push_str(&alloc::format!("{}*{}", mag, var));
            }
        }
        f.write_str(&out)
    }
}

/// `x ↦ scale·x + shift` with `scale` a unit.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMap<R> {
    scale: R,
    shift: R,
}

impl<R: AffineRing> AffineMap<R> {
    pub fn identity() -> Self {
        AffineMap {
            scale: R::one(),
            shift: R::zero(),
        }
    }

    pub fn new(scale: R, shift: R) -> Result<Self> {
        if scale.unit_inverse().is_none() {
            return Err(Error::NonUnit);
        }
        Ok(AffineMap { scale, shift })
    }

    pub fn scale(&self) -> &R {
        &self.scale
    }

    pub fn shift(&self) -> &R {
        &self.shift
    }

    pub fn is_identity(&self) -> bool {
        self.scale == R::one() && self.shift == R::zero()
    }

    pub fn apply(&self, x: &R) -> R {
        self.scale.mul(x).add(&self.shift)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        AffineMap {
            scale: self.scale.mul(&other.scale),
            shift: self.scale.mul(&other.shift).add(&self.shift),
        }
    }

    pub fn inverse(&self) -> Self {
        let inv = self.scale.unit_inverse().expect("scale is a unit");
        let neg_one = R::from_integer(&BigInt::from(-1));
        AffineMap {
            shift: inv.mul(&self.shift).mul(&neg_one),
            scale: inv,
        }
    }
}

impl<R: fmt::Display> fmt::Display for AffineMap<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x -> ({})*x + ({})", self.scale, self.shift)
    }
}

/// Image of `w` under `a ↦ (x ↦ αx)`, `b ↦ (x ↦ x + 1)`.
pub fn affine_image<R: AffineRing>(w: &Word, alpha: R) -> Result<AffineMap<R>> {
    let alpha_inv = alpha.unit_inverse().ok_or(Error::NonUnit)?;
    let translate = |e: &BigInt| AffineMap {
        scale: R::one(),
        shift: R::from_integer(e),
    };
    let up = AffineMap {
        scale: alpha,
        shift: R::zero(),
    };
    let down = AffineMap {
        scale: alpha_inv,
        shift: R::zero(),
    };
    let mut acc = translate(w.head());
    for (s, e) in w.blocks() {
        acc = acc.compose(if *s == Sign::Plus { &up } else { &down });
        acc = acc.compose(&translate(e));
    }
    Ok(acc)
}

/// An element `(σ, P)` of `Z ≀ Z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LamplighterElement {
    pub sigma: i64,
    pub lamps: LaurentPoly,
}

impl LamplighterElement {
    pub fn is_identity(&self) -> bool {
        self.sigma == 0 && self.lamps.is_zero()
    }

    /// The affine map `x ↦ t^σ x + P` realizing this element.
    pub fn to_affine(&self) -> AffineMap<LaurentPoly> {
        AffineMap {
            scale: LaurentPoly::monomial(self.sigma, 1),
            shift: self.lamps.clone(),
        }
    }
}

// the group law adds heights
#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for &LamplighterElement {
    type Output = LamplighterElement;

    fn mul(self, rhs: &LamplighterElement) -> LamplighterElement {
        LamplighterElement {
            sigma: self.sigma + rhs.sigma,
            lamps: AffineRing::add(&self.lamps, &rhs.lamps.shift(self.sigma)),
        }
    }
}

impl fmt::Display for LamplighterElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.sigma, self.lamps)
    }
}

/// The quotient map `q : F_2 → Z ≀ Z`, `a ↦ (1, 0)`, `b ↦ (0, t⁰)`.
pub fn lamplighter_image(w: &Word) -> LamplighterElement {
    let mut lamps = LaurentPoly::default();
    let mut sigma = 0i64;
    lamps.add_term(0, w.head().clone());
    for (s, e) in w.blocks() {
        sigma += s.value();
        lamps.add_term(sigma, e.clone());
    }
    LamplighterElement { sigma, lamps }
}

/// Membership in `N = ker q`.
pub fn in_kernel_n(w: &Word) -> bool {
    lamplighter_image(w).is_identity()
}

/// The lamp configuration as `(position, count)` pairs.
pub fn lamp_vector(e: &LamplighterElement) -> Vec<(i64, BigInt)> {
    e.lamps.terms().map(|(k, c)| (k, c.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        let mut p = LaurentPoly::default();
        for &(e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    #[test]
    fn lamplighter_examples() {
        assert!(lamplighter_image(&w("")).is_identity());
        let x = lamplighter_image(&w("b a b A"));
        assert_eq!(
            x,
            LamplighterElement {
                sigma: 0,
                lamps: poly(&[(0, 1), (1, 1)])
            }
        );
        assert_eq!(x.to_string(), "(0, 1 + t)");
        let y = lamplighter_image(&w("a b A"));
        assert_eq!(y.lamps, LaurentPoly::t());
    }

    #[test]
    fn kernel_examples() {
        // [a b a⁻¹, b]
        assert!(in_kernel_n(&w("a b A b a B A B")));
        assert!(!in_kernel_n(&w("a")));
        assert!(!in_kernel_n(&w("b")));
    }

    #[test]
    fn affine_examples() {
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let g = affine_image(&w("a"), q(3, 2)).unwrap();
        assert_eq!(
            g,
            AffineMap {
                scale: q(3, 2),
                shift: q(0, 1)
            }
        );
        let g = affine_image(&w("b^7"), q(5, 3)).unwrap();
        assert_eq!(
            g,
            AffineMap {
                scale: q(1, 1),
                shift: q(7, 1)
            }
        );
        let g = affine_image(&w("a b A"), LaurentPoly::t()).unwrap();
        assert_eq!(
            g,
            AffineMap {
                scale: LaurentPoly::one(),
                shift: LaurentPoly::t()
            }
        );
        assert_eq!(affine_image(&w("a"), q(0, 1)), Err(Error::NonUnit));
        assert_eq!(affine_image(&w("a"), poly(&[(0, 1), (1, 1)])), Err(Error::NonUnit));
    }

    #[test]
    fn affine_inverse_and_display() {
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let g = affine_image(&w("a b^2 A b a"), q(3, 2)).unwrap();
        assert!(g.compose(&g.inverse()).is_identity());
        assert_eq!(
            AffineMap::new(q(1, 1), q(3, 2)).unwrap().to_string(),
            "x -> (1)*x + (3/2)"
        );
        assert_eq!(poly(&[(-1, 1), (0, -2), (3, -1)]).to_string(), "t^-1 - 2 - t^3");
    }

    #[test]
    fn laurent_evaluation_specializes_to_gamma() {
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let word = w("a b^2 A B a b A^2 b^3");
        let lamp = lamplighter_image(&word);
        let gamma = affine_image(&word, q(3, 2)).unwrap();
        assert_eq!(lamp.lamps.evaluate(&q(3, 2)), *gamma.shift());
    }
}
