//! Chen–Fliess operator evaluation in the word basis and in the Lyndon
//! monomial basis, plus the integral-count cost model.

use std::collections::HashMap;
use std::time::Instant;

use num::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::integrate::{suffix_closure, table_for, Backend, ChenStepper, IntegralTable, Signal};
use crate::lyndon::{count_length, count_upto, generate_upto};
use crate::transduce::{apply_l, LPoly};
use crate::words::{Alphabet, Poly, Word};

/// A generating series truncated at word length `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratingSeries {
    alphabet: Alphabet,
    poly: Poly,
    n: usize,
}

impl GeneratingSeries {
    /// Drops every word longer than `n`.
    pub fn new(alphabet: Alphabet, poly: &Poly, n: usize) -> Result<Self> {
        poly.check_alphabet(&alphabet)?;
        Ok(GeneratingSeries {
            alphabet,
            poly: poly.truncate(n),
            n,
        })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn truncation(&self) -> usize {
        self.n
    }

    fn check_signal(&self, s: &Signal) -> Result<()> {
        if s.m() != self.alphabet.m() {
            return Err(Error::AlphabetMismatch {
                expected: self.alphabet.m(),
                found: s.m(),
            });
        }
        Ok(())
    }
}

/// Output samples and the number of one-dimensional integrals used.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub y: Vec<f64>,
    pub integral_count: usize,
}

/// `y = Σ_η (c, η) E_η[u]` over the suffix closure of `supp(c)`.
pub fn evaluate_alg1(c: &GeneratingSeries, s: &Signal, backend: Backend) -> Result<Evaluation> {
    c.check_signal(s)?;
    let constant = c.poly.coeff(&Word::empty()).to_f64().unwrap_or(0.0);
    let support: Vec<Word> = c.poly.support().filter(|w| !w.is_empty()).cloned().collect();
    match backend {
        Backend::Chen => {
            let mut st = ChenStepper::new(&c.alphabet, &support)?;
            let weights = dense_weights(st.words(), &c.poly);
            let mut y = Vec::with_capacity(s.len());
            y.push(constant);
            for j in 0..s.steps() {
                st.step(s, j);
                y.push(constant + dot(&weights, st.state()));
            }
            Ok(Evaluation {
                y,
                integral_count: st.words().len(),
            })
        }
        Backend::Direct => {
            let table = table_for(s, &support, backend)?;
            let mut y = vec![constant; s.len()];
            for (w, coeff) in c.poly.terms() {
                if let Some(col) = table.column(w) {
                    let cf = coeff.to_f64().unwrap_or(0.0);
                    y.iter_mut().zip(col).for_each(|(yj, e)| *yj += cf * e);
                }
            }
            Ok(Evaluation {
                y,
                integral_count: table.integral_count(),
            })
        }
    }
}

fn dense_weights(words: &[Word], p: &Poly) -> Vec<f64> {
    words
        .iter()
        .map(|w| p.coeff(w).to_f64().unwrap_or(0.0))
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Monomials of an `LPoly` arranged as a prefix trie over their factor
/// lists, so each distinct partial product is formed once per grid point.
#[derive(Debug, Clone)]
struct MonomialTrie {
    /// `(parent node or ROOT, slot of the factor's column)`; parents precede
    /// children.
    nodes: Vec<(usize, usize)>,
    weights: Vec<f64>,
    constant: f64,
}

const ROOT: usize = usize::MAX;

impl MonomialTrie {
    fn new(q: &LPoly, slot: &HashMap<Word, usize>) -> Self {
        let mut nodes: Vec<(usize, usize)> = Vec::new();
        let mut weights: Vec<f64> = Vec::new();
        let mut children: HashMap<(usize, usize), usize> = HashMap::new();
        let mut constant = 0.0;
        for (m, c) in q.sorted_terms() {
            let cf = c.to_f64().unwrap_or(0.0);
            if m.is_unit() {
                constant += cf;
                continue;
            }
            let mut node = ROOT;
            for f in m.factors() {
                let key = (node, slot[f]);
                node = *children.entry(key).or_insert_with(|| {
                    nodes.push(key);
                    weights.push(0.0);
                    nodes.len() - 1
                });
            }
            weights[node] += cf;
        }
        MonomialTrie {
            nodes,
            weights,
            constant,
        }
    }

    fn eval(&self, columns: &[f64], scratch: &mut [f64]) -> f64 {
        let mut y = self.constant;
        for (k, &(parent, slot)) in self.nodes.iter().enumerate() {
            let base = if parent == ROOT { 1.0 } else { scratch[parent] };
            let v = base * columns[slot];
            scratch[k] = v;
            y += self.weights[k] * v;
        }
        y
    }
}

/// Distinct Lyndon factors occurring in `q`, shortlex ordered.
fn lyndon_factors(q: &LPoly) -> Vec<Word> {
    let mut f: Vec<Word> = q.lyndon_factors().into_iter().collect();
    f.sort_by(crate::words::shortlex_compare);
    f
}

/// `y = Σ_l (𝓛(c), l) E_{𝓛⁻¹(l)}[u]`, each monomial evaluated as a pointwise
/// product of Lyndon-word integrals.
pub fn evaluate_alg2(c: &GeneratingSeries, s: &Signal, backend: Backend) -> Result<Evaluation> {
    c.check_signal(s)?;
    let q = apply_l(&c.poly, &c.alphabet)?;
    evaluate_transduced(&q, &c.alphabet, s, backend)
}

/// The evaluation half of [`evaluate_alg2`] for an already transduced series.
pub fn evaluate_transduced(
    q: &LPoly,
    alphabet: &Alphabet,
    s: &Signal,
    backend: Backend,
) -> Result<Evaluation> {
    if s.m() != alphabet.m() {
        return Err(Error::AlphabetMismatch {
            expected: alphabet.m(),
            found: s.m(),
        });
    }
    let factors = lyndon_factors(q);
    let slot: HashMap<Word, usize> = factors.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let trie = MonomialTrie::new(q, &slot);
    let mut scratch = vec![0.0; trie.nodes.len()];
    let mut columns = vec![0.0; factors.len()];
    match backend {
        Backend::Chen => {
            let mut st = ChenStepper::new(alphabet, &factors)?;
            let pos: Vec<usize> = factors.iter().map(|f| st.position(f).expect("closure")).collect();
            let mut y = Vec::with_capacity(s.len());
            y.push(trie.eval(&columns, &mut scratch));
            for j in 0..s.steps() {
                st.step(s, j);
                let state = st.state();
                for (c, &p) in columns.iter_mut().zip(&pos) {
                    *c = state[p];
                }
                y.push(trie.eval(&columns, &mut scratch));
            }
            Ok(Evaluation {
                y,
                integral_count: st.words().len(),
            })
        }
        Backend::Direct => {
            let table: IntegralTable = table_for(s, &factors, backend)?;
            let cols: Vec<&[f64]> = factors.iter().map(|f| table.column(f).unwrap()).collect();
            let y = (0..s.len())
                .map(|j| {
                    for (c, col) in columns.iter_mut().zip(&cols) {
                        *c = col[j];
                    }
                    trie.eval(&columns, &mut scratch)
                })
                .collect();
            Ok(Evaluation {
                y,
                integral_count: table.integral_count(),
            })
        }
    }
}

/// `I_X(n) = Σ_{k=1}^n card^k`.
pub fn cost_ix(n: usize, card: usize) -> u128 {
    (1..=n as u32).map(|k| (card as u128).pow(k)).sum()
}

/// `I_L(n)`: size of the suffix closure of all Lyndon words of length ≤ `n`.
pub fn cost_il(n: usize, card: usize) -> usize {
    let alphabet = Alphabet::new(card - 1);
    suffix_closure(&generate_upto(&alphabet, n)).len()
}

/// `J_X(p)`: integrals needed for the support of `p`.
pub fn count_jx(p: &Poly) -> usize {
    suffix_closure(p.support().filter(|w| !w.is_empty())).len()
}

/// `J_L(q)`: integrals needed for the Lyndon factors used by `q`.
pub fn count_jl(q: &LPoly) -> usize {
    suffix_closure(&lyndon_factors(q)).len()
}

#[derive(Debug, Clone, Serialize)]
pub struct CostReport {
    pub n: usize,
    pub card: usize,
    #[serde(rename = "I_X")]
    pub i_x: u128,
    #[serde(rename = "I_L")]
    pub i_l: usize,
    #[serde(rename = "CE")]
    pub ce: f64,
    #[serde(rename = "CE_minus")]
    pub ce_minus: f64,
    #[serde(rename = "CE_plus")]
    pub ce_plus: f64,
    #[serde(rename = "CE_hat_minus")]
    pub ce_hat_minus: f64,
    #[serde(rename = "CE_hat_plus")]
    pub ce_hat_plus: f64,
}

/// Computational efficiency `CE(n) = (I_X − I_L)/I_X` with its bounds.
pub fn efficiency(n: usize, card: usize) -> CostReport {
    let i_x = cost_ix(n, card);
    let i_l = cost_il(n, card);
    let ix = i_x as f64;
    let rel = |used: f64| (ix - used) / ix;
    CostReport {
        n,
        card,
        i_x,
        i_l,
        ce: rel(i_l as f64),
        ce_minus: rel(n as f64 * count_length(n, card) as f64 + 1.0),
        ce_plus: rel(count_upto(n, card) as f64),
        ce_hat_minus: 1.0 / card as f64,
        ce_hat_plus: 1.0 - (card as f64 - 1.0) / n as f64,
    }
}

/// Seeded random proper polynomials: each word of length `1..=max_degree` is
/// kept with probability 1/2 and weighted by a nonzero multiple of 1/4 in
/// `[-2, 2]`.
pub fn random_series(alphabet: &Alphabet, max_degree: usize, count: usize, seed: u64) -> Vec<Poly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let words = alphabet.words_upto(max_degree);
    (0..count)
        .map(|_| {
            let mut p = Poly::zero();
            for w in &words {
                if rng.gen_bool(0.5) {
                    let mut k = 0;
                    while k == 0 {
                        k = rng.gen_range(-8i64..=8);
                    }
                    p.add_term(w.clone(), crate::words::rational(k, 4));
                }
            }
            p
        })
        .collect()
}

/// Median wall time in milliseconds over `repeats ≥ 1` runs, plus the last
/// result.
pub fn time_median<T, F: FnMut() -> T>(repeats: usize, mut f: F) -> (f64, T) {
    let mut times = Vec::with_capacity(repeats.max(1));
    let mut last = None;
    for _ in 0..repeats.max(1) {
        let start = Instant::now();
        let out = f();
        times.push(start.elapsed().as_secs_f64() * 1e3);
        last = Some(out);
    }
    times.sort_by(f64::total_cmp);
    let k = times.len();
    let median = if k % 2 == 1 {
        times[k / 2]
    } else {
        0.5 * (times[k / 2 - 1] + times[k / 2])
    };
    (median, last.expect("at least one run"))
}
