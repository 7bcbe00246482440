//! Elements of the free group `F(a, b)`.
//!
//! A [`Word`] is kept freely reduced at all times and stored in b-run-length
//! form `b^{e_0} a^{ε_1} b^{e_1} ... a^{ε_h} b^{e_h}`: Britton reductions
//! multiply b-exponents by `n/m`, so exponents are arbitrary precision while
//! the number of a-letters stays small.
//!
//! Text grammar: `word := item*`, `item := letter ("^" "-"? digits)?`,
//! `letter := a | A | b | B` with `A = a^-1`, `B = b^-1`; whitespace is
//! ignored. A lone `1` also denotes the empty word.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::Mul;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Largest `|k|` accepted for `a^k` in text input.
const MAX_A_RUN: u64 = 1 << 16;

/// Sign of an a-letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// A letter of `{a, a⁻¹, b, b⁻¹}`. The derived order `a < A < b < B` is the
/// enumeration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    AInv,
    B,
    BInv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::AInv, Letter::B, Letter::BInv];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::B => Letter::BInv,
            Letter::BInv => Letter::B,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::AInv => 'A',
            Letter::B => 'b',
            Letter::BInv => 'B',
        }
    }
}

/// A generator raised to an integer power, the unit of text input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Syllable {
    A(i64),
    B(BigInt),
}

/// A freely reduced word in b-run-length form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    head: BigInt,
    blocks: Vec<(Sign, BigInt)>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn b_power(e: impl Into<BigInt>) -> Self {
        Word {
            head: e.into(),
            blocks: Vec::new(),
        }
    }

    pub fn a_power(k: i64) -> Self {
        let mut w = WordBuilder::default();
        w.push_a_run(k);
        w.finish()
    }

    /// Builds `b^{head} a^{ε_1} b^{e_1} ...` and freely reduces it.
    pub fn from_blocks(head: impl Into<BigInt>, blocks: impl IntoIterator<Item = (Sign, BigInt)>) -> Self {
        let mut w = WordBuilder::default();
        w.push_b(&head.into());
        for (s, e) in blocks {
            w.push_a(s);
            w.push_b(&e);
        }
        w.finish()
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        let mut w = WordBuilder::default();
        for &l in letters {
            w.push_letter(l);
        }
        w.finish()
    }

    pub fn head(&self) -> &BigInt {
        &self.head
    }

    /// `(ε_i, e_i)` for `i = 1..h`.
    pub fn blocks(&self) -> &[(Sign, BigInt)] {
        &self.blocks
    }

    /// All b-exponents `e_0, ..., e_h`.
    pub fn b_exponents(&self) -> impl Iterator<Item = &BigInt> {
        core::iter::once(&self.head).chain(self.blocks.iter().map(|(_, e)| e))
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.is_empty() && self.head.is_zero()
    }

    /// Number of a-letters `h`.
    pub fn a_length(&self) -> usize {
        self.blocks.len()
    }

    /// Word length `h + Σ|e_i|`.
    pub fn length(&self) -> BigInt {
        self.b_exponents()
            .fold(BigInt::from(self.blocks.len()), |acc, e| acc + e.abs())
    }

    /// Exponent sum of `a`.
    pub fn sigma_a(&self) -> i64 {
        self.blocks.iter().map(|(s, _)| s.value()).sum()
    }

    pub fn inverse(&self) -> Word {
        let mut w = WordBuilder::default();
        let last = self.blocks.last().map_or(&self.head, |(_, e)| e);
        w.push_b(&-last);
        for i in (0..self.blocks.len()).rev() {
            w.push_a(self.blocks[i].0.flip());
            let e = if i == 0 { &self.head } else { &self.blocks[i - 1].1 };
            w.push_b(&-e);
        }
        w.finish()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = WordBuilder::from_word(self.clone());
        w.push_word(other);
        w.finish()
    }

    /// Image under the involution `a ↦ a`, `b ↦ b⁻¹`.
    pub fn bar(&self) -> Word {
        Word {
            head: -&self.head,
            blocks: self.blocks.iter().map(|(s, e)| (*s, -e)).collect(),
        }
    }

    /// A conjugate of minimal length that starts with an a-letter (unless
    /// the word is a power of `b`): the leading b-run is moved to the end
    /// and matching `a^{±1} ... a^{∓1}` ends are peeled off.
    pub fn cyclically_reduce(&self) -> Word {
        let mut cur = self.clone();
        loop {
            if cur.blocks.is_empty() {
                return cur;
            }
            let head = core::mem::take(&mut cur.head);
            if let Some(last) = cur.blocks.last_mut() {
                last.1 += head;
            }
            let h = cur.blocks.len();
            let peel = h >= 2 && cur.blocks[0].0 == cur.blocks[h - 1].0.flip() && cur.blocks[h - 1].1.is_zero();
            if !peel {
                return cur;
            }
            let mut blocks = core::mem::take(&mut cur.blocks);
            blocks.pop();
            let (_, first_exp) = blocks.remove(0);
            cur = Word {
                head: first_exp,
                blocks,
            };
        }
    }

    /// Letter sequence. Panics only on exponents beyond `usize`.
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        push_b_letters(&mut out, &self.head);
        for (s, e) in &self.blocks {
            out.push(if *s == Sign::Plus { Letter::A } else { Letter::AInv });
            push_b_letters(&mut out, e);
        }
        out
    }

    /// Shortlex order: length first, then letters with `a < A < b < B`.
    pub fn cmp_shortlex(&self, other: &Word) -> Ordering {
        self.length()
            .cmp(&other.length())
            .then_with(|| self.letters().cmp(&other.letters()))
    }
}

fn push_b_letters(out: &mut Vec<Letter>, e: &BigInt) {
    let n = e.abs().to_usize().expect("b-exponent too large to expand into letters");
    let l = if e.is_negative() { Letter::BInv } else { Letter::B };
    out.extend(core::iter::repeat_n(l, n));
}

/// Incremental free reduction.
#[derive(Debug, Default)]
pub(crate) struct WordBuilder {
    word: Word,
}

impl WordBuilder {
    pub(crate) fn from_word(word: Word) -> Self {
        WordBuilder { word }
    }

    fn tail_mut(&mut self) -> &mut BigInt {
        match self.word.blocks.last_mut() {
            Some((_, e)) => e,
            None => &mut self.word.head,
        }
    }

    pub(crate) fn push_b(&mut self, e: &BigInt) {
        *self.tail_mut() += e;
    }

    pub(crate) fn push_a(&mut self, s: Sign) {
        match self.word.blocks.last() {
            Some((last, e)) if *last == s.flip() && e.is_zero() => {
                self.word.blocks.pop();
            }
            _ => self.word.blocks.push((s, BigInt::zero())),
        }
    }

    pub(crate) fn push_a_run(&mut self, k: i64) {
        let s = if k < 0 { Sign::Minus } else { Sign::Plus };
        for _ in 0..k.unsigned_abs() {
            self.push_a(s);
        }
    }

    pub(crate) fn push_letter(&mut self, l: Letter) {
        match l {
            Letter::A => self.push_a(Sign::Plus),
            Letter::AInv => self.push_a(Sign::Minus),
            Letter::B => self.push_b(&BigInt::from(1)),
            Letter::BInv => self.push_b(&BigInt::from(-1)),
        }
    }

    pub(crate) fn push_word(&mut self, w: &Word) {
        self.push_b(&w.head);
        for (s, e) in &w.blocks {
            self.push_a(*s);
            self.push_b(e);
        }
    }

    pub(crate) fn finish(self) -> Word {
        self.word
    }
}

/// Freely reduces a sequence of syllables.
pub fn free_reduce(syllables: impl IntoIterator<Item = Syllable>) -> Word {
    let mut w = WordBuilder::default();
    for syl in syllables {
        match syl {
            Syllable::A(k) => w.push_a_run(k),
            Syllable::B(e) => w.push_b(&e),
        }
    }
    w.finish()
}

/// Tokenizes text into syllables without reducing.
pub fn parse_syllables(text: &str) -> Result<Vec<Syllable>> {
    if text.trim() == "1" {
        return Ok(Vec::new());
    }
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let (is_a, sign) = match c {
            b'a' => (true, 1i64),
            b'A' => (true, -1),
            b'b' => (false, 1),
            b'B' => (false, -1),
            _ => return Err(Error::syntax(i, "expected one of a, A, b, B")),
        };
        i += 1;
        let mut exp = BigInt::from(1);
        let mut j = i;
        while j < bytes.len() && bytes[j].is_ascii_whitespace() {
            j += 1;
        }
        if j < bytes.len() && bytes[j] == b'^' {
            j += 1;
            while j < bytes.len() && bytes[j].is_ascii_whitespace() {
                j += 1;
            }
            let negative = j < bytes.len() && bytes[j] == b'-';
            if negative {
                j += 1;
            }
            let start = j;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if start == j {
                return Err(Error::syntax(start, "expected digits after '^'"));
            }
            exp = text[start..j]
                .parse::<BigInt>()
                .map_err(|_| Error::syntax(start, "bad exponent"))?;
            if negative {
                exp = -exp;
            }
            i = j;
        }
        let exp = exp * sign;
        if is_a {
            let k = exp
                .to_i64()
                .filter(|k| k.unsigned_abs() <= MAX_A_RUN)
                .ok_or_else(|| Error::syntax(i, "a-exponent too large"))?;
            out.push(Syllable::A(k));
        } else {
            out.push(Syllable::B(exp));
        }
    }
    Ok(out)
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(free_reduce(parse_syllables(s)?))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut tokens: Vec<String> = Vec::new();
        let b_token = |e: &BigInt| -> Option<String> {
            if e.is_zero() {
                None
            } else if *e == BigInt::from(1) {
                Some("b".into())
            } else if *e == BigInt::from(-1) {
                Some("B".into())
            } else if e.is_positive() {
                Some(alloc::format!("b^{}", e))
            } else {
                Some(alloc::format!("B^{}", -e))
            }
        };
        tokens.extend(b_token(&self.head));
        let mut i = 0;
        while i < self.blocks.len() {
            let s = self.blocks[i].0;
            let mut run = 1;
            while self.blocks[i + run - 1].1.is_zero() && i + run < self.blocks.len() && self.blocks[i + run].0 == s {
                run += 1;
            }
            let letter = if s == Sign::Plus { "a" } else { "A" };
            tokens.push(if run == 1 {
                letter.to_string()
            } else {
                alloc::format!("{}^{}", letter, run)
            });
            tokens.extend(b_token(&self.blocks[i + run - 1].1));
            i += run;
        }
        if tokens.is_empty() {
            return f.write_str("1");
        }
        f.write_str(&tokens.join(" "))
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.concat(rhs)
    }
}

impl Mul for Word {
    type Output = Word;

    fn mul(self, rhs: Word) -> Word {
        self.concat(&rhs)
    }
}

/// All freely reduced words of length at most `max_len`, in shortlex order.
#[derive(Debug, Clone)]
pub struct ReducedWords {
    max_len: usize,
    current: Option<Vec<Letter>>,
}

impl ReducedWords {
    pub fn up_to(max_len: usize) -> Self {
        ReducedWords {
            max_len,
            current: Some(Vec::new()),
        }
    }

    /// Only the words of length exactly `len`.
    pub fn of_length(len: usize) -> impl Iterator<Item = Word> {
        let mut it = ReducedWords {
            max_len: len,
            current: Some(first_of_length(len)),
        };
        core::iter::from_fn(move || {
            let w = it.next()?;
            (w.letters().len() == len).then_some(w)
        })
    }

    /// `1 + Σ_{ℓ=1..L} 4·3^{ℓ-1}`.
    pub fn count_up_to(max_len: u32) -> u64 {
        1 + (1..=max_len).map(|l| 4 * 3u64.pow(l - 1)).sum::<u64>()
    }
}

fn smallest_after(prev: Option<Letter>) -> Letter {
    match prev {
        Some(Letter::AInv) => Letter::AInv,
        _ => Letter::A,
    }
}

fn first_of_length(len: usize) -> Vec<Letter> {
    let mut v: Vec<Letter> = Vec::with_capacity(len);
    for _ in 0..len {
        let l = smallest_after(v.last().copied());
        v.push(l);
    }
    v
}

fn next_letter(l: Letter) -> Option<Letter> {
    match l {
        Letter::A => Some(Letter::AInv),
        Letter::AInv => Some(Letter::B),
        Letter::B => Some(Letter::BInv),
        Letter::BInv => None,
    }
}

impl Iterator for ReducedWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let cur = self.current.take()?;
        let out = Word::from_letters(&cur);
        // odometer over reduced sequences of the same length, then grow
        let mut next = cur;
        let mut pos = next.len();
        loop {
            if pos == 0 {
                let len = next.len() + 1;
                if len <= self.max_len {
                    self.current = Some(first_of_length(len));
                }
                break;
            }
            pos -= 1;
            let prev = if pos == 0 { None } else { Some(next[pos - 1]) };
            let mut cand = next_letter(next[pos]);
            while let Some(c) = cand {
                if Some(c.inverse()) != prev {
                    break;
                }
                cand = next_letter(c);
            }
            if let Some(c) = cand {
                next[pos] = c;
                for k in pos + 1..next.len() {
                    next[k] = smallest_after(Some(next[k - 1]));
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

/// Every reduced word with a-length at most `max_a_len` and all
/// `|e_i| <= exp_bound`, sorted shortlex. The set grows like
/// `2^h (2E+1)^{h+1}`, so keep both bounds small.
pub fn bounded_block_words(max_a_len: usize, exp_bound: u32) -> Vec<Word> {
    let exps: Vec<BigInt> = (-(exp_bound as i64)..=exp_bound as i64).map(BigInt::from).collect();
    let mut out = Vec::new();
    let mut frontier: Vec<Word> = exps.iter().map(|e| Word::b_power(e.clone())).collect();
    out.extend(frontier.iter().cloned());
    for _ in 0..max_a_len {
        let mut grown = Vec::new();
        for w in &frontier {
            let last_zero = w.blocks.last().map(|(s, e)| (*s, e.is_zero()));
            for s in [Sign::Plus, Sign::Minus] {
                if last_zero == Some((s.flip(), true)) {
                    continue;
                }
                for e in &exps {
                    let mut blocks = w.blocks.clone();
                    blocks.push((s, e.clone()));
                    grown.push(Word {
                        head: w.head.clone(),
                        blocks,
                    });
                }
            }
        }
        out.extend(grown.iter().cloned());
        frontier = grown;
    }
    out.sort_by(|a, b| a.cmp_shortlex(b));
    out
}
