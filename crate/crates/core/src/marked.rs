//! Marked groups on `(a, b)`: comparing triviality predicates, the
//! classification of the limits `BS̄(M, ξ)`, convergence of parameter
//! sequences and explicit separating words.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::britton::{is_trivial_bs, is_trivial_gamma, BsParams};
use crate::engine::LimitGroup;
use crate::madic::{Distance, MAdicResidue, Modulus};
use crate::quotient::lamplighter_image;
use crate::word::{bounded_block_words, ReducedWords, Sign, Word};
use crate::{Error, Result};

/// A marked group given by its word problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupOracle {
    Bs(BsParams),
    Limit(LimitGroup),
    Lamplighter,
    Gamma(BsParams),
}

impl GroupOracle {
    pub fn is_trivial(&self, w: &Word) -> Result<bool> {
        match self {
            GroupOracle::Bs(p) => Ok(is_trivial_bs(w, p)),
            GroupOracle::Limit(g) => g.is_trivial(w),
            GroupOracle::Lamplighter => Ok(lamplighter_image(w).is_identity()),
            GroupOracle::Gamma(p) => Ok(is_trivial_gamma(w, p)),
        }
    }
}

impl fmt::Display for GroupOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupOracle::Bs(p) => write!(f, "BS({}, {})", p.m(), p.n()),
            GroupOracle::Limit(g) => write!(f, "BS̄({}, {})", g.m(), g.xi()),
            GroupOracle::Lamplighter => f.write_str("Z≀Z"),
            GroupOracle::Gamma(p) => write!(f, "Γ({}, {})", p.m(), p.n()),
        }
    }
}

/// A word trivial in exactly one of two marked groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discriminator {
    pub word: Word,
    /// Number of letters, the `λ` of `d = e^{-λ}`.
    pub length: usize,
    pub trivial_in_first: bool,
}

/// Verdict on one word, `Some` when the groups disagree.
pub fn discriminate(g1: &GroupOracle, g2: &GroupOracle, w: &Word) -> Result<Option<Discriminator>> {
    let t1 = g1.is_trivial(w)?;
    if t1 == g2.is_trivial(w)? {
        return Ok(None);
    }
    let length = w.length().to_usize().expect("enumerated words are short");
    Ok(Some(Discriminator {
        word: w.clone(),
        length,
        trivial_in_first: t1,
    }))
}

/// First word of `words` on which the groups disagree.
pub fn first_discriminating(
    g1: &GroupOracle,
    g2: &GroupOracle,
    words: impl IntoIterator<Item = Word>,
) -> Result<Option<Discriminator>> {
    for w in words {
        if let Some(found) = discriminate(g1, g2, &w)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

/// The shortlex-first shortest word of length at most `max_len` that is
/// trivial in exactly one group. `None` bounds the distance by
/// `e^{-(max_len + 1)}`.
pub fn discriminating_word(g1: &GroupOracle, g2: &GroupOracle, max_len: usize) -> Result<Option<Discriminator>> {
    if g1 == g2 {
        return Ok(None);
    }
    first_discriminating(g1, g2, ReducedWords::up_to(max_len))
}

/// Search restricted to a-length `<= max_a_len` and b-exponents bounded by
/// `exp_bound`. Words are visited shortlex, so a hit is the shortest among
/// these words but only bounds the distance from above.
pub fn discriminating_word_bounded(
    g1: &GroupOracle,
    g2: &GroupOracle,
    max_a_len: usize,
    exp_bound: u32,
) -> Result<Option<Discriminator>> {
    first_discriminating(g1, g2, bounded_block_words(max_a_len, exp_bound))
}

/// Outcome of comparing two limit parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    /// Same gcd `d` and the same class of `ξ/d` up to `m₁^precision`; the
    /// limits may still differ beyond the known digits.
    EqualAtPrecision { d: u64, precision: u32 },
    /// The gcds with `M` differ.
    DistinctGcd { d1: u64, d2: u64 },
    /// Same `d`, but `ξ/d` and `η/d` already differ modulo `m₁^level`.
    DistinctResidue { d: u64, level: u32 },
}

impl Classification {
    pub fn is_distinct(&self) -> bool {
        !matches!(self, Classification::EqualAtPrecision { .. })
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::EqualAtPrecision { .. } => f.write_str("EqualAtPrecision"),
            _ => f.write_str("Distinct"),
        }
    }
}

/// Whether `BS̄(M, ξ)` and `BS̄(M, η)` can be told apart from the known
/// digits: they coincide iff `gcd(ξ, M) = gcd(η, M) = d` and `ξ/d = η/d`
/// in `Z_{M/d}`.
pub fn classify_equal(xi: &MAdicResidue, eta: &MAdicResidue) -> Result<Classification> {
    let m = xi.modulus().value();
    if eta.modulus().value() != m {
        return Err(Error::ModulusMismatch(m, eta.modulus().value()));
    }
    let d1 = xi.gcd_with(m)?;
    let d2 = eta.gcd_with(m)?;
    if d1 != d2 {
        return Ok(Classification::DistinctGcd { d1, d2 });
    }
    let d = d1;
    let k = xi.precision().min(eta.precision());
    let p1 = xi.with_precision(k)?.divide_exact(d as i64)?;
    let p2 = eta.with_precision(k)?.divide_exact(d as i64)?;
    Ok(match p1.distance(&p2)? {
        Distance::Exact { exponent, .. } => Classification::DistinctResidue { d, level: exponent + 1 },
        Distance::AtMost { exponent, .. } => Classification::EqualAtPrecision { d, precision: exponent },
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConvergenceVerdict {
    ConsistentWithConvergence {
        d: u64,
    },
    /// Indices of two entries that violate stabilization of the gcd or the
    /// Cauchy condition.
    DivergenceWitness(usize, usize),
}

/// Tests the observed sequence against the convergence criterion for
/// `BS(M, ξ_n)`: `gcd(ξ_n, M)` is eventually a constant `d` and `ξ_n/d`
/// is Cauchy in `Z_{M/d}`.
///
/// Only the second half of the sequence (from index `⌊(N-1)/2⌋`) is
/// examined. On it the gcd must be constant, and the tail diameters
/// `τ_i = max_{j>i} d(ξ_i/d, ξ_j/d)` must strictly decrease until they
/// vanish at the available precision.
pub fn check_convergence(seq: &[MAdicResidue]) -> Result<ConvergenceVerdict> {
    if seq.len() < 2 {
        return Err(Error::PreconditionViolated("need at least two terms".into()));
    }
    let m = seq[0].modulus().value();
    if let Some(bad) = seq.iter().find(|x| x.modulus().value() != m) {
        return Err(Error::ModulusMismatch(m, bad.modulus().value()));
    }
    let k = seq.iter().map(MAdicResidue::precision).min().expect("nonempty");
    let last = seq.len() - 1;
    let start = last / 2;
    let gcds = seq[start..].iter().map(|x| x.gcd_with(m)).collect::<Result<Vec<_>>>()?;
    let d = gcds[gcds.len() - 1];
    if let Some(i) = gcds.iter().rposition(|&g| g != d) {
        return Ok(ConvergenceVerdict::DivergenceWitness(start + i, last));
    }
    let projected = seq[start..]
        .iter()
        .map(|x| x.with_precision(k)?.divide_exact(d as i64))
        .collect::<Result<Vec<_>>>()?;
    // (τ_i, index attaining it), zero distances as None
    let mut tails: Vec<Option<(BigInt, usize)>> = Vec::new();
    for i in 0..projected.len() - 1 {
        let mut best: Option<(BigInt, usize)> = None;
        for j in i + 1..projected.len() {
            if let Distance::Exact { exponent, .. } = projected[i].distance(&projected[j])? {
                // larger distance = smaller valuation
                let v = BigInt::from(exponent);
                if best.as_ref().is_none_or(|(b, _)| v < *b) {
                    best = Some((v, j));
                }
            }
        }
        tails.push(best);
    }
    for i in 0..tails.len().saturating_sub(1) {
        if let (Some((v1, _)), Some((v2, j))) = (&tails[i], &tails[i + 1]) {
            if v1 >= v2 {
                return Ok(ConvergenceVerdict::DivergenceWitness(start + i + 1, start + j));
            }
        }
    }
    Ok(ConvergenceVerdict::ConsistentWithConvergence { d })
}

/// [`check_convergence`] for integer terms read modulo `|M|^precision`.
pub fn check_convergence_integers(m: i64, seq: &[BigInt], precision: u32) -> Result<ConvergenceVerdict> {
    let modulus = Modulus::new(m)?;
    let residues = seq
        .iter()
        .map(|x| MAdicResidue::new(&modulus, precision, x.clone()))
        .collect::<Result<Vec<_>>>()?;
    check_convergence(&residues)
}

/// `r·bar(r)` for `r = a² b^{d₁m₁²} a⁻² b`: trivial in `BS(m₁d₁, k₁d₁)`
/// and not in `BS(m₂d₂, k₂d₂)` under the stated conditions.
pub fn separating_witness(m1: i64, d1: i64, k1: i64, m2: i64, d2: i64, k2: i64) -> Result<Word> {
    let fail = |why: &str| Err(Error::PreconditionViolated(String::from(why)));
    if [m1, d1, k1, m2, d2, k2].contains(&0) {
        return fail("parameters must be nonzero");
    }
    if m1 * d1 != m2 * d2 {
        return fail("m1*d1 != m2*d2");
    }
    if (k2 * d2).abs() == 1 {
        return fail("|k2*d2| = 1");
    }
    if m2.gcd(&k2) != 1 {
        return fail("gcd(m2, k2) != 1");
    }
    if d2 % d1 == 0 {
        return fail("d1 divides d2");
    }
    let e = BigInt::from(d1) * m1 * m1;
    let r = Word::from_blocks(
        0,
        [
            (Sign::Plus, BigInt::zero()),
            (Sign::Plus, e),
            (Sign::Minus, BigInt::zero()),
            (Sign::Minus, BigInt::one()),
        ],
    );
    Ok(&r * &r.bar())
}

/// `[a^t b^{k-c} a^{-t}, b]` spelled without `k`:
/// `a^{t+1} b^M a⁻¹ b^{-c} a^{-t} · b · a^{t+1} b^{-M} a⁻¹ b^c a^{-t} · b⁻¹`.
/// Trivial in `BS(M, k)` iff `k ≡ c (mod m₁^t d)`, `d = gcd(M, c)`.
pub fn make_congruence_witness(m: i64, c: &BigInt, t: u32) -> Result<Word> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    if t == 0 {
        return Err(Error::PreconditionViolated("level must be at least 1".into()));
    }
    let t = t as i64;
    let half = |sign: i64| {
        &(&(&(&Word::a_power(t + 1) * &Word::b_power(sign * m)) * &Word::a_power(-1)) * &Word::b_power(-sign * c))
            * &Word::a_power(-t)
    };
    Ok(&(&(&half(1) * &Word::b_power(1)) * &half(-1)) * &Word::b_power(-1))
}

/// Integers `ξ_1, …, ξ_count` with `0 < ξ_1 < ξ_2 < …`,
/// `ξ_n ≡ ξ (mod M^n)` and `ξ_n ≢ ξ (mod m₁^{ℓn+1} d)`, where
/// `d = gcd(M, ξ)`, `m₁ = M/d` and `ℓ` is the largest prime exponent of `M`.
pub fn build_separating_sequence(xi: &MAdicResidue, count: u32) -> Result<Vec<BigInt>> {
    let modulus = xi.modulus();
    let m = modulus.value();
    let d = xi.gcd_with(m)?;
    if d == modulus.abs() {
        return Err(Error::PreconditionViolated(format!("ξ is divisible by {m}")));
    }
    let ell = modulus.max_exponent();
    let m_abs = BigInt::from(modulus.abs());
    let m1_abs = BigInt::from(modulus.abs() / d);
    let mut out = Vec::with_capacity(count as usize);
    let mut prev = BigInt::zero();
    for n in 1..=count {
        let mn = m_abs.pow(n);
        let q = m1_abs.pow(ell * n + 1) * d;
        let c_mn = xi.reduce_mod(&mn)?;
        let c_q = xi.reduce_mod(&q)?;
        // α = c + M^n j with q ∤ (α - c); only α mod q matters
        let mut j = BigInt::one();
        let alpha = loop {
            let a = &c_mn + &mn * &j;
            if !(&a - &c_q).is_multiple_of(&q) {
                break a;
            }
            j += 1;
        };
        let step = &mn * &q;
        // smallest β > prev with β ≡ α (mod step)
        let beta = &prev + BigInt::one() + (&alpha - &prev - BigInt::one()).mod_floor(&step);
        out.push(beta.clone());
        prev = beta;
    }
    Ok(out)
}
