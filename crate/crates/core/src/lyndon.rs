//! Lyndon words: enumeration, counting and factorization.
//!
//! The global enumeration `l_0, l_1, …` is shortlex over the backing words, so
//! for two letters it starts `x0, x1, x0x1, x0x0x1, x0x1x1, …`.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{shortlex_compare, Alphabet, Word};

/// True iff `w` is strictly smaller than each of its proper rotations.
pub fn is_lyndon(w: &Word) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(is_lyndon_letters(w.letters()))
}

fn is_lyndon_letters(w: &[u8]) -> bool {
    let n = w.len();
    (1..n).all(|i| {
        let rotated = w[i..].iter().chain(&w[..i]);
        w.iter().lt(rotated)
    })
}

/// All Lyndon words of length `<= n` in shortlex order.
///
/// Uses Duval's successor iteration, which yields the words in plain
/// lexicographic order, followed by a stable sort on length.
pub fn generate_upto(alphabet: &Alphabet, n: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let max = alphabet.m() as u8;
    let mut w: Vec<u8> = vec![0];
    loop {
        out.push(Word::new(w.clone()));
        let period = w.len();
        while w.len() < n {
            w.push(w[w.len() - period]);
        }
        while w.last() == Some(&max) {
            w.pop();
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out.sort_by(shortlex_compare);
    out
}

/// The Lyndon words up to a given length with their global indices `l_i`.
#[derive(Debug, Clone)]
pub struct LyndonBasis {
    alphabet: Alphabet,
    max_len: usize,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl LyndonBasis {
    pub fn new(alphabet: Alphabet, max_len: usize) -> Self {
        let words = generate_upto(&alphabet, max_len);
        let index = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        LyndonBasis {
            alphabet,
            max_len,
            words,
            index,
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    /// `l_i`.
    pub fn get(&self, i: usize) -> Option<&Word> {
        self.words.get(i)
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }
}

/// Möbius function by trial division.
pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1);
    let mut n = n;
    let mut sign = 1i64;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Number of Lyndon words (primitive necklaces) of length `n`, by the Möbius sum.
pub fn count_length(n: usize, card: usize) -> u128 {
    assert!(n >= 1, "length must be positive");
    let card = card as i128;
    let total: i128 = divisors(n as u64)
        .into_iter()
        .map(|d| {
            let pow = card
                .checked_pow((n as u64 / d) as u32)
                .expect("necklace count overflows i128");
            mobius(d) as i128 * pow
        })
        .sum();
    debug_assert_eq!(total % n as i128, 0);
    (total / n as i128) as u128
}

/// Number of Lyndon words of length `1..=n`.
pub fn count_upto(n: usize, card: usize) -> u128 {
    (1..=n).map(|k| count_length(k, card)).sum()
}

/// Leading-order approximations `(card^n / n, card^(n+1) / n)` of
/// [`count_length`] and [`count_upto`].
pub fn asymptotic_counts(n: usize, card: usize) -> (f64, f64) {
    let c = card as f64;
    let n_f = n as f64;
    (c.powi(n as i32) / n_f, c.powi(n as i32 + 1) / n_f)
}

/// One row of the count table `n,L,L_plus,L_hat,Lplus_hat`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountRow {
    pub n: usize,
    #[serde(rename = "L")]
    pub length_count: u128,
    #[serde(rename = "L_plus")]
    pub upto_count: u128,
    #[serde(rename = "L_hat")]
    pub length_hat: f64,
    #[serde(rename = "Lplus_hat")]
    pub upto_hat: f64,
}

pub fn count_table(card: usize, nmax: usize) -> Vec<CountRow> {
    let mut upto = 0;
    (1..=nmax)
        .map(|n| {
            let l = count_length(n, card);
            upto += l;
            let (lh, uh) = asymptotic_counts(n, card);
            CountRow {
                n,
                length_count: l,
                upto_count: upto,
                length_hat: lh,
                upto_hat: uh,
            }
        })
        .collect()
}

/// Chen–Fox–Lyndon factorization by Duval's linear scan. The factors are
/// Lyndon and lexicographically non-increasing.
pub fn cfl_factorize(w: &Word) -> Result<Vec<Word>> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(cfl_factor_letters(w.letters()))
}

pub(crate) fn cfl_factor_letters(s: &[u8]) -> Vec<Word> {
    let n = s.len();
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        let mut k = i;
        while j < n && s[k] <= s[j] {
            if s[k] < s[j] {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        while i <= k {
            out.push(Word::from(&s[i..i + j - k]));
            i += j - k;
        }
    }
    out
}

/// Splits a Lyndon word `w = uv` with `v` its longest proper Lyndon suffix.
pub fn standard_factorization(w: &Word) -> Result<(Word, Word)> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    if w.len() < 2 || !is_lyndon_letters(w.letters()) {
        return Err(Error::NotLyndon(w.to_string()));
    }
    let s = w.letters();
    let split = (1..s.len())
        .find(|&i| is_lyndon_letters(&s[i..]))
        .expect("a single letter is always a Lyndon suffix");
    Ok((Word::from(&s[..split]), Word::from(&s[split..])))
}
