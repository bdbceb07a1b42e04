//! The shuffle-algebra isomorphism 𝓛 from proper polynomials to commutative
//! polynomials in Lyndon words, its inverse, and the per-degree matrices.
//!
//! Degree `k` words `η_1 < η_2 < …` (lexicographic) and degree `k` Lyndon
//! monomials are put in bijection by the Chen–Fox–Lyndon factorization: the
//! monomial at position `i` is `CFL(η_i)`. In that common ordering
//!
//! - `T_k⁻¹[η_i, ℓ_j] = (ℓ_j factors shuffled together, η_i)`, a non-negative
//!   integer upper triangular matrix, and
//! - `T_k[ℓ_i, η_j] = (𝓛(η_j), ℓ_i)`, obtained from `T_k⁻¹` by exact sparse
//!   back-substitution.
//!
//! Both matrices are built once per `(alphabet, k)` and shared through a
//! process-wide memo.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num::{BigInt, One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lyndon::{cfl_factor_letters, is_lyndon, LyndonBasis};
use crate::words::{
    char_of_level, parse_term_line, shortlex_compare, shuffle_words, Alphabet, Poly, Rational,
    Word,
};

/// Largest matrix dimension built densely addressable (`2^10`).
pub const MAX_LEVEL_SIZE: usize = 1024;

/// A commutative product of Lyndon words, factors kept non-increasing.
/// The unit monomial (no factors) stands for the empty word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LyndonMonomial {
    factors: Vec<Word>,
}

impl LyndonMonomial {
    pub fn unit() -> Self {
        LyndonMonomial {
            factors: Vec::new(),
        }
    }

    /// Validates that every factor is Lyndon and sorts them into normal form.
    pub fn new(mut factors: Vec<Word>) -> Result<Self> {
        for f in &factors {
            if !is_lyndon(f)? {
                return Err(Error::NotLyndon(f.to_string()));
            }
        }
        factors.sort_by(|a, b| b.cmp(a));
        Ok(LyndonMonomial { factors })
    }

    pub fn single(l: Word) -> Result<Self> {
        LyndonMonomial::new(vec![l])
    }

    /// The monomial whose factors are the CFL factorization of `w`.
    pub fn from_word(w: &Word) -> Self {
        LyndonMonomial {
            factors: cfl_factor_letters(w.letters()),
        }
    }

    pub fn factors(&self) -> &[Word] {
        &self.factors
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    /// Sum of factor lengths.
    pub fn degree(&self) -> usize {
        self.factors.iter().map(Word::len).sum()
    }

    /// Concatenation of the factors; its CFL factorization is `self`.
    pub fn word(&self) -> Word {
        self.factors
            .iter()
            .fold(Word::empty(), |acc, f| acc.concat(f))
    }

    pub fn mul(&self, other: &LyndonMonomial) -> LyndonMonomial {
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        factors.extend_from_slice(&self.factors);
        factors.extend_from_slice(&other.factors);
        factors.sort_by(|a, b| b.cmp(a));
        LyndonMonomial { factors }
    }

    /// Product of factorials of repeated-factor multiplicities.
    pub fn multiplicity_factorial(&self) -> u64 {
        let mut counts: HashMap<&Word, u64> = HashMap::new();
        for f in &self.factors {
            *counts.entry(f).or_insert(0) += 1;
        }
        counts.values().map(|&c| factorial(c)).product()
    }

    /// `l_3l_0l_0` style label using the global Lyndon indices.
    pub fn label(&self, basis: &LyndonBasis) -> String {
        if self.is_unit() {
            return "e".into();
        }
        self.factors
            .iter()
            .map(|f| match basis.index_of(f) {
                Some(i) => format!("l{i}"),
                None => format!("({f})"),
            })
            .collect()
    }

    /// Shuffle of the factors, i.e. `𝓛⁻¹` of this monomial.
    pub fn shuffle_expansion(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::one(), |acc, f| acc.shuffle(&Poly::from_word(f.clone())))
    }

    fn cmp_canonical(&self, other: &Self) -> std::cmp::Ordering {
        shortlex_compare(&self.word(), &other.word())
    }
}

impl fmt::Display for LyndonMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return f.write_str("e");
        }
        for (i, w) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl FromStr for LyndonMonomial {
    type Err = String;

    /// Parses `e` or Lyndon factor words joined by `|`, e.g. `x1|x0x1`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        if s == "e" {
            return Ok(LyndonMonomial::unit());
        }
        let factors = s
            .split('|')
            .map(Word::from_str)
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if factors.iter().any(Word::is_empty) {
            return Err(format!("empty factor in monomial `{s}`"));
        }
        LyndonMonomial::new(factors).map_err(|e| e.to_string())
    }
}

/// Sparse rational combination of Lyndon monomials.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LPoly {
    terms: HashMap<LyndonMonomial, Rational>,
}

impl LPoly {
    pub fn zero() -> Self {
        LPoly::default()
    }

    pub fn from_monomial(m: LyndonMonomial, c: Rational) -> Self {
        let mut q = LPoly::zero();
        q.add_term(m, c);
        q
    }

    pub fn from_terms<I: IntoIterator<Item = (LyndonMonomial, Rational)>>(terms: I) -> Self {
        let mut q = LPoly::zero();
        for (m, c) in terms {
            q.add_term(m, c);
        }
        q
    }

    pub fn add_term(&mut self, m: LyndonMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn coeff(&self, m: &LyndonMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LyndonMonomial, &Rational)> {
        self.terms.iter()
    }

    /// Terms ordered by degree, then by the canonical (CFL) position.
    pub fn sorted_terms(&self) -> Vec<(&LyndonMonomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp_canonical(b.0));
        v
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

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(LyndonMonomial::degree).max()
    }

    /// Distinct Lyndon words occurring as factors in the support.
    pub fn lyndon_factors(&self) -> HashSet<Word> {
        self.terms
            .keys()
            .flat_map(|m| m.factors.iter().cloned())
            .collect()
    }

    pub fn scale(&self, s: &Rational) -> LPoly {
        LPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), c * s)))
    }

    pub fn add(&self, other: &LPoly) -> LPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &LPoly) -> LPoly {
        let mut acc: HashMap<LyndonMonomial, Rational> = HashMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                *acc.entry(a.mul(b)).or_insert_with(Rational::zero) += x * y;
            }
        }
        LPoly::from_terms(acc)
    }

    pub fn pow(&self, k: usize) -> LPoly {
        let one = LPoly::from_monomial(LyndonMonomial::unit(), Rational::one());
        (0..k).fold(one, |acc, _| acc.mul(self))
    }

    pub fn to_text(&self) -> String {
        self.sorted_terms()
            .into_iter()
            .map(|(m, c)| format!("{c} {m}\n"))
            .collect()
    }

    pub fn parse_text(text: &str) -> Result<LPoly> {
        let mut q = LPoly::zero();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (c, m) = parse_term_line(line, i + 1)?;
            let m: LyndonMonomial = m.parse().map_err(|msg| Error::Parse { line: i + 1, msg })?;
            q.add_term(m, c);
        }
        Ok(q)
    }
}

/// Square sparse matrix stored by columns, each column sorted by row.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    n: usize,
    cols: Vec<Vec<(usize, Rational)>>,
}

impl SparseMatrix {
    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            n,
            cols: (0..n).map(|j| vec![(j, Rational::one())]).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn column(&self, j: usize) -> &[(usize, Rational)] {
        &self.cols[j]
    }

    pub fn entry(&self, i: usize, j: usize) -> Rational {
        let col = &self.cols[j];
        match col.binary_search_by_key(&i, |(r, _)| *r) {
            Ok(pos) => col[pos].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut d = vec![vec![Rational::zero(); self.n]; self.n];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                d[*i][j] = v.clone();
            }
        }
        d
    }

    pub fn row_sums(&self) -> Vec<Rational> {
        let mut s = vec![Rational::zero(); self.n];
        for col in &self.cols {
            for (i, v) in col {
                s[*i] += v;
            }
        }
        s
    }

    pub fn abs_row_sums(&self) -> Vec<Rational> {
        let mut s = vec![Rational::zero(); self.n];
        for col in &self.cols {
            for (i, v) in col {
                s[*i] += v.abs();
            }
        }
        s
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.n, other.n);
        let cols = other
            .cols
            .iter()
            .map(|bcol| {
                let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                for (k, b) in bcol {
                    for (i, a) in &self.cols[*k] {
                        *acc.entry(*i).or_insert_with(Rational::zero) += a * b;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        SparseMatrix { n: self.n, cols }
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.cols
            .iter()
            .enumerate()
            .all(|(j, col)| col.iter().all(|(i, _)| *i <= j))
    }

    /// Inverse of an upper triangular matrix with nonzero diagonal.
    fn invert_upper(&self) -> SparseMatrix {
        let cols = (0..self.n)
            .map(|j| {
                // Solve U x = e_j; `resid` holds e_j − U x restricted to unsolved rows.
                let mut resid: BTreeMap<usize, Rational> = BTreeMap::new();
                resid.insert(j, Rational::one());
                let mut x: Vec<(usize, Rational)> = Vec::new();
                while let Some((i, r)) = resid.pop_last() {
                    if r.is_zero() {
                        continue;
                    }
                    let col = &self.cols[i];
                    let diag = &col.last().expect("empty column").1;
                    debug_assert_eq!(col.last().unwrap().0, i);
                    let xi = r / diag;
                    for (row, v) in &col[..col.len() - 1] {
                        let e = resid.entry(*row).or_insert_with(Rational::zero);
                        *e -= v * &xi;
                    }
                    x.push((i, xi));
                }
                x.reverse();
                x
            })
            .collect();
        SparseMatrix { n: self.n, cols }
    }
}

/// Both matrices of one degree, with their shared index ordering.
#[derive(Debug)]
pub struct LevelTransform {
    alphabet: Alphabet,
    k: usize,
    words: Vec<Word>,
    monomials: Vec<LyndonMonomial>,
    inverse: SparseMatrix,
    forward: SparseMatrix,
}

impl LevelTransform {
    fn build(alphabet: Alphabet, k: usize) -> LevelTransform {
        let words = alphabet.words_of_length(k);
        let monomials: Vec<LyndonMonomial> = words.iter().map(LyndonMonomial::from_word).collect();
        let inverse_cols = monomials
            .iter()
            .map(|m| {
                let mut col: Vec<(usize, Rational)> = shuffle_counts(m.factors())
                    .into_iter()
                    .map(|(w, c)| (alphabet.lex_index(&w), Rational::from_integer(c.into())))
                    .collect();
                col.sort_by_key(|(i, _)| *i);
                col
            })
            .collect();
        let inverse = SparseMatrix {
            n: words.len(),
            cols: inverse_cols,
        };
        assert!(inverse.is_upper_triangular());
        let forward = inverse.invert_upper();
        LevelTransform {
            alphabet,
            k,
            words,
            monomials,
            inverse,
            forward,
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn monomials(&self) -> &[LyndonMonomial] {
        &self.monomials
    }

    pub fn forward(&self) -> &SparseMatrix {
        &self.forward
    }

    pub fn inverse(&self) -> &SparseMatrix {
        &self.inverse
    }

    /// Index shared by `η_i` and `CFL(η_i)`.
    pub fn position_of_word(&self, w: &Word) -> usize {
        self.alphabet.lex_index(w)
    }

    pub fn position_of_monomial(&self, m: &LyndonMonomial) -> usize {
        self.alphabet.lex_index(&m.word())
    }
}

/// Shuffle of a list of words with integer multiplicities.
fn shuffle_counts(factors: &[Word]) -> HashMap<Word, u64> {
    let mut acc: HashMap<Word, u64> = HashMap::from([(Word::empty(), 1)]);
    for f in factors {
        let mut next: HashMap<Word, u64> = HashMap::new();
        for (w, c) in &acc {
            for (v, d) in shuffle_words(w, f) {
                *next.entry(v).or_insert(0) += c * d;
            }
        }
        acc = next;
    }
    acc
}

type Cache = RwLock<HashMap<(usize, usize), Arc<LevelTransform>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Memoized matrices for degree `k`.
pub fn level(alphabet: &Alphabet, k: usize) -> Result<Arc<LevelTransform>> {
    let size = alphabet.card().checked_pow(k as u32);
    if size.is_none_or(|s| s > MAX_LEVEL_SIZE) {
        return Err(Error::TooLarge {
            k,
            card: alphabet.card(),
            limit: MAX_LEVEL_SIZE,
        });
    }
    let key = (alphabet.card(), k);
    if let Some(l) = cache().read().unwrap().get(&key) {
        return Ok(Arc::clone(l));
    }
    // Built outside the lock; a racing builder produces an identical value.
    let built = Arc::new(LevelTransform::build(*alphabet, k));
    let mut guard = cache().write().unwrap();
    Ok(Arc::clone(guard.entry(key).or_insert(built)))
}

/// Degree-`k` monomials in the canonical ordering.
pub fn monomial_order_level(alphabet: &Alphabet, k: usize) -> Vec<LyndonMonomial> {
    alphabet
        .words_of_length(k)
        .iter()
        .map(LyndonMonomial::from_word)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    /// `T_k`: rows are monomials, columns are words.
    Forward,
    /// `T_k⁻¹`: rows are words, columns are monomials.
    Inverse,
}

/// A labelled view of `T_k` or `T_k⁻¹`.
#[derive(Debug, Clone)]
pub struct TransformMatrix {
    kind: MatrixKind,
    level: Arc<LevelTransform>,
}

impl TransformMatrix {
    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn k(&self) -> usize {
        self.level.k
    }

    pub fn dim(&self) -> usize {
        self.level.words.len()
    }

    pub fn sparse(&self) -> &SparseMatrix {
        match self.kind {
            MatrixKind::Forward => &self.level.forward,
            MatrixKind::Inverse => &self.level.inverse,
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> Rational {
        self.sparse().entry(i, j)
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        self.sparse().to_dense()
    }

    pub fn words(&self) -> &[Word] {
        &self.level.words
    }

    pub fn monomials(&self) -> &[LyndonMonomial] {
        &self.level.monomials
    }

    /// CSV with a header of column labels and one labelled row per line.
    pub fn to_csv(&self, basis: &LyndonBasis) -> String {
        let words: Vec<String> = self.level.words.iter().map(Word::to_string).collect();
        let monos: Vec<String> = self.level.monomials.iter().map(|m| m.label(basis)).collect();
        let (rows, cols) = match self.kind {
            MatrixKind::Forward => (monos, words),
            MatrixKind::Inverse => (words, monos),
        };
        let mut out = format!("row,{}\n", cols.join(","));
        for (i, row) in self.to_dense().into_iter().enumerate() {
            let cells: Vec<String> = row.iter().map(Rational::to_string).collect();
            out.push_str(&format!("{},{}\n", rows[i], cells.join(",")));
        }
        out
    }
}

pub fn inverse_matrix(alphabet: &Alphabet, k: usize) -> Result<TransformMatrix> {
    Ok(TransformMatrix {
        kind: MatrixKind::Inverse,
        level: level(alphabet, k)?,
    })
}

pub fn forward_matrix(alphabet: &Alphabet, k: usize) -> Result<TransformMatrix> {
    Ok(TransformMatrix {
        kind: MatrixKind::Forward,
        level: level(alphabet, k)?,
    })
}

/// 𝓛 applied degree by degree through `T_k`; `𝓛(∅) = ∅`.
pub fn apply_l(p: &Poly, alphabet: &Alphabet) -> Result<LPoly> {
    p.check_alphabet(alphabet)?;
    let mut by_degree: BTreeMap<usize, Vec<(&Word, &Rational)>> = BTreeMap::new();
    for (w, c) in p.terms() {
        by_degree.entry(w.len()).or_default().push((w, c));
    }
    let mut out = LPoly::zero();
    for (k, terms) in by_degree {
        let lv = level(alphabet, k)?;
        for (w, c) in terms {
            let j = lv.position_of_word(w);
            for (i, t) in lv.forward.column(j) {
                out.add_term(lv.monomials[*i].clone(), c * t);
            }
        }
    }
    Ok(out)
}

/// 𝓛⁻¹ by shuffling the factors of each monomial.
pub fn apply_l_inv(q: &LPoly) -> Poly {
    let mut out = Poly::zero();
    for (m, c) in q.terms() {
        for (w, d) in m.shuffle_expansion().terms() {
            out.add_term(w.clone(), c * d);
        }
    }
    out
}

fn level_or_unit<F, T>(alphabet: &Alphabet, k: usize, unit: T, f: F) -> Result<T>
where
    F: FnOnce(&LevelTransform) -> T,
{
    if k == 0 {
        return Ok(unit);
    }
    Ok(f(&*level(alphabet, k)?))
}

/// `max_i |Σ_j T_k[i, j]|`.
pub fn seminorm_t(alphabet: &Alphabet, k: usize) -> Result<Rational> {
    level_or_unit(alphabet, k, Rational::one(), |lv| {
        lv.forward
            .row_sums()
            .into_iter()
            .map(|s| s.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    })
}

/// `max_i Σ_j |T_k[i, j]|`.
pub fn norm_inf_t(alphabet: &Alphabet, k: usize) -> Result<Rational> {
    level_or_unit(alphabet, k, Rational::one(), |lv| {
        lv.forward
            .abs_row_sums()
            .into_iter()
            .max()
            .unwrap_or_else(Rational::zero)
    })
}

/// `max_i Σ_j |T_k⁻¹[i, j]|`; all entries are non-negative integers.
pub fn norm_inf_tinv(alphabet: &Alphabet, k: usize) -> Result<u64> {
    level_or_unit(alphabet, k, 1, |lv| {
        lv.inverse
            .row_sums()
            .into_iter()
            .map(|s| s.to_integer().to_u64().expect("row sum fits u64"))
            .max()
            .unwrap_or(0)
    })
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

pub fn multinomial(parts: &[usize]) -> BigInt {
    let mut total = BigInt::one();
    let mut sum = 0usize;
    for &p in parts {
        for i in 1..=p {
            sum += 1;
            total = total * BigInt::from(sum) / BigInt::from(i);
        }
    }
    total
}

/// Ordered Bell (Fubini) numbers `a(0..=k)`.
pub fn ordered_bell(kmax: usize) -> Vec<BigInt> {
    let mut a: Vec<BigInt> = vec![BigInt::one()];
    for n in 1..=kmax {
        let s = (1..=n)
            .map(|i| binomial(n, i) * &a[n - i])
            .fold(BigInt::zero(), |x, y| x + y);
        a.push(s);
    }
    a
}

fn binomial(n: usize, k: usize) -> BigInt {
    multinomial(&[k, n - k])
}

/// `(l_0 + … + l_m)^k / k!`.
pub fn lyndon_letter_power(alphabet: &Alphabet, k: usize) -> LPoly {
    let letters = LPoly::from_terms((0..alphabet.card()).map(|i| {
        (
            LyndonMonomial {
                factors: vec![Word::letter(i as u8)],
            },
            Rational::one(),
        )
    }));
    let kfact = Rational::from_integer(BigInt::from(factorial(k as u64)));
    letters.pow(k).scale(&(Rational::one() / kfact))
}

/// Sum over all `ξ_r ∈ X^{parts[r]}` of `(ξ_1 ⧢ ⋯ ⧢ ξ_n, ν)`.
pub fn summed_shuffle_coefficient(alphabet: &Alphabet, nu: &Word, parts: &[usize]) -> Rational {
    let product = parts
        .iter()
        .fold(Poly::one(), |acc, &i| acc.shuffle(&char_of_level(alphabet, i)));
    product.coeff(nu)
}

#[derive(Debug, Clone, Default)]
pub struct AppendixReport {
    /// Degrees at which `𝓛(char(X^k)) = (Σ l_i)^k / k!` was checked.
    pub char_levels_checked: Vec<usize>,
    pub multinomial_trials: usize,
    pub failures: Vec<String>,
}

impl AppendixReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the characteristic-series identity for `1 ≤ k ≤ k_max` and the
/// multinomial shuffle identity on `trials` random `(ν, composition)` pairs
/// with `|ν| ≤ k_max`.
pub fn check_appendix_identities(
    alphabet: &Alphabet,
    k_max: usize,
    trials: usize,
    seed: u64,
) -> Result<AppendixReport> {
    let mut report = AppendixReport::default();
    for k in 1..=k_max {
        let lhs = apply_l(&char_of_level(alphabet, k), alphabet)?;
        let rhs = lyndon_letter_power(alphabet, k);
        if lhs != rhs {
            report
                .failures
                .push(format!("char identity fails at k = {k}"));
        }
        report.char_levels_checked.push(k);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let len = rng.gen_range(1..=k_max.max(1));
        let nu = Word::new((0..len).map(|_| rng.gen_range(0..alphabet.card()) as u8).collect());
        let blocks = rng.gen_range(1..=4usize);
        let mut parts = vec![0usize; blocks];
        for _ in 0..len {
            parts[rng.gen_range(0..blocks)] += 1;
        }
        let got = summed_shuffle_coefficient(alphabet, &nu, &parts);
        let want = Rational::from_integer(multinomial(&parts));
        if got != want {
            report.failures.push(format!(
                "multinomial identity fails at k = {len}, nu = {nu}, composition = {parts:?}: {got} != {want}"
            ));
        }
        report.multinomial_trials += 1;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{int, rational};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn mono(s: &str) -> LyndonMonomial {
        s.parse().unwrap()
    }

    fn dense_ints(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect()
    }

    #[test]
    fn monomial_order_examples() {
        let a = Alphabet::new(1);
        let basis = LyndonBasis::new(a, 3);
        let labels: Vec<String> = monomial_order_level(&a, 2)
            .iter()
            .map(|m| m.label(&basis))
            .collect();
        assert_eq!(labels, ["l0l0", "l2", "l1l0", "l1l1"]);
        let labels: Vec<String> = monomial_order_level(&a, 1)
            .iter()
            .map(|m| m.label(&basis))
            .collect();
        assert_eq!(labels, ["l0", "l1"]);
        assert_eq!(monomial_order_level(&a, 3)[5].label(&basis), "l1l2");
    }

    #[test]
    fn inverse_matrix_examples() {
        let a = Alphabet::new(1);
        let t2 = inverse_matrix(&a, 2).unwrap();
        assert_eq!(
            t2.to_dense(),
            dense_ints(&[&[2, 0, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 0], &[0, 0, 0, 2]])
        );
        let t3 = inverse_matrix(&a, 3).unwrap();
        let j = t3.monomials().iter().position(|m| *m == mono("x0x1|x0")).unwrap();
        let col: Vec<(String, Rational)> = (0..8)
            .filter(|&i| !t3.entry(i, j).is_zero())
            .map(|i| (t3.words()[i].to_string(), t3.entry(i, j)))
            .collect();
        assert_eq!(
            col,
            vec![("x0x0x1".to_string(), int(2)), ("x0x1x0".to_string(), int(1))]
        );
        for m in 0..3 {
            let t1 = inverse_matrix(&Alphabet::new(m), 1).unwrap();
            assert_eq!(t1.sparse(), &SparseMatrix::identity(m + 1));
        }
    }

    #[test]
    fn forward_matrix_examples() {
        let a = Alphabet::new(1);
        let t2 = forward_matrix(&a, 2).unwrap();
        let half = rational(1, 2);
        let z = int(0);
        assert_eq!(
            t2.to_dense(),
            vec![
                vec![half.clone(), z.clone(), z.clone(), z.clone()],
                vec![z.clone(), int(1), int(-1), z.clone()],
                vec![z.clone(), z.clone(), int(1), z.clone()],
                vec![z.clone(), z.clone(), z.clone(), half.clone()],
            ]
        );
        let q = apply_l(&Poly::from_word(w("x1x0x0")), &a).unwrap();
        let want = LPoly::from_terms([
            (mono("x0x0x1"), int(1)),
            (mono("x0x1|x0"), int(-1)),
            (mono("x1|x0|x0"), half),
        ]);
        assert_eq!(q, want);
        assert_eq!(forward_matrix(&a, 1).unwrap().sparse(), &SparseMatrix::identity(2));
    }

    #[test]
    fn apply_l_examples() {
        let a = Alphabet::new(1);
        assert_eq!(
            apply_l(&Poly::from_word(w("x1x0")), &a).unwrap(),
            LPoly::from_terms([(mono("x0x1"), int(-1)), (mono("x1|x0"), int(1))])
        );
        assert_eq!(
            apply_l(&Poly::from_word(w("x0x0x0")), &a).unwrap(),
            LPoly::from_monomial(mono("x0|x0|x0"), rational(1, 6))
        );
        assert_eq!(
            apply_l(&char_of_level(&a, 2), &a).unwrap(),
            LPoly::from_terms([
                (mono("x0|x0"), rational(1, 2)),
                (mono("x1|x0"), int(1)),
                (mono("x1|x1"), rational(1, 2)),
            ])
        );
        assert_eq!(
            apply_l(&Poly::one(), &a).unwrap(),
            LPoly::from_monomial(LyndonMonomial::unit(), int(1))
        );
    }

    #[test]
    fn apply_l_rejects_foreign_letters() {
        let a = Alphabet::new(1);
        assert!(matches!(
            apply_l(&Poly::from_word(w("x2")), &a),
            Err(Error::InvalidLetter { .. })
        ));
    }

    #[test]
    fn apply_l_inv_examples() {
        let q = LPoly::from_monomial(mono("x1|x0"), int(1));
        assert_eq!(
            apply_l_inv(&q),
            Poly::from_terms([(w("x0x1"), int(1)), (w("x1x0"), int(1))])
        );
        let q = LPoly::from_monomial(mono("x1|x0|x0"), int(1));
        assert_eq!(
            apply_l_inv(&q),
            Poly::from_terms([(w("x0x0x1"), int(2)), (w("x0x1x0"), int(2)), (w("x1x0x0"), int(2))])
        );
        let q = LPoly::from_monomial(mono("x0"), int(1));
        assert_eq!(apply_l_inv(&q), Poly::from_word(w("x0")));
    }

    #[test]
    fn round_trip_on_words() {
        for (m, n) in [(1usize, 6usize), (2, 4)] {
            let a = Alphabet::new(m);
            for word in a.words_upto(n) {
                let p = Poly::from_word(word.clone());
                assert_eq!(apply_l_inv(&apply_l(&p, &a).unwrap()), p, "{word}");
            }
        }
    }

    #[test]
    fn norm_examples() {
        let a = Alphabet::new(1);
        assert_eq!(seminorm_t(&a, 2).unwrap(), int(1));
        assert_eq!(seminorm_t(&a, 1).unwrap(), int(1));
        assert_eq!(norm_inf_t(&a, 3).unwrap(), int(4));
        assert_eq!(norm_inf_tinv(&a, 3).unwrap(), 6);
        assert_eq!(norm_inf_tinv(&a, 0).unwrap(), 1);
        assert_eq!(norm_inf_t(&a, 0).unwrap(), int(1));
    }

    #[test]
    fn level_size_is_limited() {
        assert!(level(&Alphabet::new(1), 10).is_ok());
        assert!(matches!(
            level(&Alphabet::new(1), 11),
            Err(Error::TooLarge { k: 11, .. })
        ));
        assert!(matches!(
            level(&Alphabet::new(2), 7),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn level_cache_returns_shared_value() {
        let a = Alphabet::new(1);
        let x = level(&a, 4).unwrap();
        let y = level(&a, 4).unwrap();
        assert!(Arc::ptr_eq(&x, &y));
    }

    #[test]
    fn inverse_diagonal_is_multiplicity_factorial() {
        let a = Alphabet::new(1);
        for k in 1..=6 {
            let lv = level(&a, k).unwrap();
            for (i, m) in lv.monomials().iter().enumerate() {
                assert_eq!(
                    lv.inverse().entry(i, i),
                    int(m.multiplicity_factorial() as i64)
                );
            }
        }
    }

    #[test]
    fn matrices_are_triangular_inverses() {
        let a = Alphabet::new(1);
        for k in 1..=6 {
            let lv = level(&a, k).unwrap();
            assert!(lv.inverse().is_upper_triangular());
            assert!(lv.forward().is_upper_triangular());
            let n = lv.words().len();
            assert_eq!(lv.forward().mul(lv.inverse()), SparseMatrix::identity(n));
            assert_eq!(lv.inverse().mul(lv.forward()), SparseMatrix::identity(n));
        }
    }

    #[test]
    fn appendix_examples() {
        let a = Alphabet::new(1);
        let r = check_appendix_identities(&a, 4, 50, 7).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.multinomial_trials, 50);
        assert_eq!(summed_shuffle_coefficient(&a, &w("x0x1"), &[1, 1]), int(2));
        assert_eq!(summed_shuffle_coefficient(&a, &w("x1x0x1"), &[3]), int(1));
        assert_eq!(summed_shuffle_coefficient(&a, &w("x1x0x1"), &[3, 0]), int(1));
    }

    #[test]
    fn ordered_bell_prefix() {
        let a: Vec<i64> = ordered_bell(8).iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(a, [1, 1, 3, 13, 75, 541, 4683, 47293, 545835]);
        assert_eq!(multinomial(&[2, 1, 1]), BigInt::from(12));
    }

    #[test]
    fn monomial_text() {
        let m = mono("x0x1|x1");
        assert_eq!(m.to_string(), "x1|x0x1");
        assert_eq!(m.degree(), 3);
        assert!("x1x0|x1".parse::<LyndonMonomial>().is_err());
        let q = LPoly::parse_text("# q\n1/2 x1|x0x1\n-1 e\n").unwrap();
        assert_eq!(q.to_text(), "-1 e\n1/2 x1|x0x1\n");
        assert_eq!(LPoly::parse_text(&q.to_text()).unwrap(), q);
        assert!(matches!(
            LPoly::parse_text("1 x0\nfoo\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
