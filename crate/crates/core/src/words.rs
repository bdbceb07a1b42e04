//! Alphabets, words, and exact-rational noncommutative polynomials.
//!
//! Letters are stored as `u8` indices, `x_0 < x_1 < … < x_m`. A [`Poly`] is a
//! sparse map from words to rational coefficients with no stored zeros; it
//! supports the concatenation and shuffle products.
//!
//! Text form, one term per line: `<rational> <word>`, e.g. `-1/2 x0x1`, with
//! `e` for the empty word and `#` starting a comment line.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `n/d` as an exact rational.
pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Letters `x_0 … x_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    m: usize,
}

impl Alphabet {
    pub const MAX_LETTERS: usize = 256;

    pub fn new(m: usize) -> Self {
        assert!(m < Self::MAX_LETTERS, "at most {} letters", Self::MAX_LETTERS);
        Alphabet { m }
    }

    pub fn with_card(card: usize) -> Result<Self> {
        if card == 0 || card > Self::MAX_LETTERS {
            return Err(Error::Precondition(format!(
                "alphabet cardinality must be in 1..={}, got {card}",
                Self::MAX_LETTERS
            )));
        }
        Ok(Alphabet { m: card - 1 })
    }

    /// Index of the largest letter.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn card(&self) -> usize {
        self.m + 1
    }

    pub fn check(&self, w: &Word) -> Result<()> {
        match w.letters().iter().find(|&&l| l as usize > self.m) {
            Some(&l) => Err(Error::InvalidLetter {
                letter: l as usize,
                max: self.m,
            }),
            None => Ok(()),
        }
    }

    /// All `card^k` words of length `k` in lexicographic order.
    pub fn words_of_length(&self, k: usize) -> Vec<Word> {
        let card = self.card();
        let total = card.checked_pow(k as u32).expect("level too large");
        let mut out = Vec::with_capacity(total);
        let mut cur = vec![0u8; k];
        for _ in 0..total {
            out.push(Word(cur.clone()));
            // odometer increment, rightmost letter fastest
            for pos in (0..k).rev() {
                if (cur[pos] as usize) < self.m {
                    cur[pos] += 1;
                    break;
                }
                cur[pos] = 0;
            }
        }
        out
    }

    /// Nonempty words of length `<= n` in shortlex order.
    pub fn words_upto(&self, n: usize) -> Vec<Word> {
        (1..=n).flat_map(|k| self.words_of_length(k)).collect()
    }

    /// Position of `w` among the words of its length in lexicographic order.
    pub fn lex_index(&self, w: &Word) -> usize {
        let card = self.card();
        w.letters()
            .iter()
            .fold(0usize, |acc, &l| acc * card + l as usize)
    }
}

/// A finite sequence of letter indices. The derived ordering is the
/// lexicographic order in which a proper prefix sorts first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn letter(i: u8) -> Self {
        Word(vec![i])
    }

    /// `x_i^k`.
    pub fn power(i: u8, k: usize) -> Self {
        Word(vec![i; k])
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<u8> {
        self.0.first().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The word with its leftmost letter removed.
    pub fn tail(&self) -> Word {
        Word(self.0.get(1..).unwrap_or(&[]).to_vec())
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        Word(self.0[start..].to_vec())
    }

    pub fn max_letter(&self) -> Option<u8> {
        self.0.iter().copied().max()
    }
}

impl From<&[u8]> for Word {
    fn from(s: &[u8]) -> Self {
        Word(s.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for l in &self.0 {
            write!(f, "x{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = String;

    /// Parses `e` or a token such as `x0x1x1`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        if s == "e" {
            return Ok(Word::empty());
        }
        if s.is_empty() {
            return Err("empty word token (use `e`)".into());
        }
        let mut letters = Vec::new();
        for part in s.split('x').skip(1) {
            let idx: usize = part
                .parse()
                .map_err(|_| format!("bad letter `x{part}` in word `{s}`"))?;
            if idx >= Alphabet::MAX_LETTERS {
                return Err(format!("letter index {idx} too large"));
            }
            letters.push(idx as u8);
        }
        if !s.starts_with('x') || letters.is_empty() {
            return Err(format!("word `{s}` must be `e` or a sequence of x<i> letters"));
        }
        Ok(Word(letters))
    }
}

/// Shorter words first, then lexicographic.
pub fn shortlex_compare(a: &Word, b: &Word) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Shuffle of two words with integer multiplicities.
pub fn shuffle_words(a: &Word, b: &Word) -> HashMap<Word, u64> {
    let (a, b) = (a.letters(), b.letters());
    let (la, lb) = (a.len(), b.len());
    // row[j] holds a[i..] ⧢ b[j..] for the current i, built from i = la down.
    let mut next: Vec<HashMap<Vec<u8>, u64>> = (0..=lb)
        .map(|j| HashMap::from([(b[j..].to_vec(), 1u64)]))
        .collect();
    for i in (0..la).rev() {
        let mut row: Vec<HashMap<Vec<u8>, u64>> = vec![HashMap::new(); lb + 1];
        row[lb].insert(a[i..].to_vec(), 1);
        for j in (0..lb).rev() {
            let mut cur: HashMap<Vec<u8>, u64> = HashMap::new();
            for (w, c) in &next[j] {
                let mut v = Vec::with_capacity(w.len() + 1);
                v.push(a[i]);
                v.extend_from_slice(w);
                *cur.entry(v).or_insert(0) += c;
            }
            for (w, c) in &row[j + 1] {
                let mut v = Vec::with_capacity(w.len() + 1);
                v.push(b[j]);
                v.extend_from_slice(w);
                *cur.entry(v).or_insert(0) += c;
            }
            row[j] = cur;
        }
        next = row;
    }
    next.swap_remove(0)
        .into_iter()
        .map(|(w, c)| (Word(w), c))
        .collect()
}

/// Sparse exact-rational linear combination of words.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Poly {
    terms: HashMap<Word, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::from_word(Word::empty())
    }

    pub fn from_word(w: Word) -> Self {
        Poly::monomial(w, Rational::one())
    }

    pub fn monomial(w: Word, c: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term(w, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Rational)>>(terms: I) -> Self {
        let mut p = Poly::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    /// Terms in shortlex order of their words.
    pub fn sorted_terms(&self) -> Vec<(&Word, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| shortlex_compare(a.0, b.0));
        v
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest word length in the support; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    pub fn is_proper(&self) -> bool {
        !self.terms.contains_key(&Word::empty())
    }

    pub fn homogeneous(&self, k: usize) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == k)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops every word longer than `n`.
    pub fn truncate(&self, n: usize) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() <= n)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect(),
        }
    }

    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        self.terms.keys().try_for_each(|w| alphabet.check(w))
    }

    /// Concatenation product.
    pub fn concat(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.concat(b), x * y);
            }
        }
        out
    }

    /// Shuffle product, the bilinear extension of [`shuffle_words`].
    pub fn shuffle(&self, other: &Poly) -> Poly {
        let mut acc: HashMap<Word, Rational> = HashMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let xy = x * y;
                for (w, n) in shuffle_words(a, b) {
                    *acc.entry(w).or_insert_with(Rational::zero) +=
                        &xy * Rational::from_integer(BigInt::from(n));
                }
            }
        }
        Poly::from_terms(acc)
    }

    /// Serializes in shortlex order, one `<rational> <word>` per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (w, c) in self.sorted_terms() {
            s.push_str(&format!("{c} {w}\n"));
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Poly> {
        let mut p = Poly::zero();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (c, w) = parse_term_line(line, i + 1)?;
            let w: Word = w.parse().map_err(|msg| Error::Parse { line: i + 1, msg })?;
            p.add_term(w, c);
        }
        Ok(p)
    }
}

/// Splits `<rational> <token>` and parses the rational.
pub(crate) fn parse_term_line(line: &str, lineno: usize) -> Result<(Rational, &str)> {
    let mut parts = line.split_whitespace();
    let (Some(c), Some(w), None) = (parts.next(), parts.next(), parts.next()) else {
        return Err(Error::Parse {
            line: lineno,
            msg: format!("expected `<rational> <term>`, got `{line}`"),
        });
    };
    let c: Rational = c.parse().map_err(|_| Error::Parse {
        line: lineno,
        msg: format!("bad rational `{c}`"),
    })?;
    Ok((c, w))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.sorted_terms().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}·{w}")?;
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

/// `w ⧢ w ⧢ … ⧢ w` (`k` factors); the empty word for `k = 0`.
pub fn shuffle_power(w: &Word, k: usize) -> Poly {
    let base = Poly::from_word(w.clone());
    (0..k).fold(Poly::one(), |acc, _| acc.shuffle(&base))
}

/// Sum of all words of length `k`, each with coefficient 1.
pub fn char_of_level(alphabet: &Alphabet, k: usize) -> Poly {
    Poly::from_terms(
        alphabet
            .words_of_length(k)
            .into_iter()
            .map(|w| (w, Rational::one())),
    )
}
