//! Sampled inputs on a uniform grid and iterated-integral tables
//! `E_η[u](t_j, t_0)`.
//!
//! Two constructions are provided:
//!
//! - [`direct_table`]: the suffix recursion
//!   `E_{x_i η̄}(t) = ∫ u_i E_η̄ dτ` with the composite trapezoid rule;
//! - [`chen_table`] / [`chen_table_for`]: Chen's identity across grid steps,
//!   where on one step the integral of `x_{i_1}⋯x_{i_k}` is taken as
//!   `ΔU^{(i_1)}⋯ΔU^{(i_k)} / k!`.
//!
//! Chen's identity only ever reads suffixes of a word, so it runs on any
//! suffix-closed word set, not just full levels.

use std::collections::{HashMap, HashSet};
use std::io::{Read, Write};
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lyndon::generate_upto;
use crate::words::{Alphabet, Word};

/// Inputs `u_1…u_m` sampled on `t_j = t0 + j·dt`, `j = 0..=steps`.
/// The letter `x_0` is driven by the implicit constant `u_0 ≡ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    t0: f64,
    dt: f64,
    steps: usize,
    channels: Vec<Vec<f64>>,
}

impl Signal {
    pub fn new(t0: f64, dt: f64, channels: Vec<Vec<f64>>) -> Result<Signal> {
        if !(dt > 0.0 && dt.is_finite() && t0.is_finite()) {
            return Err(Error::InvalidSignal(format!("bad grid t0 = {t0}, dt = {dt}")));
        }
        let points = channels.first().map_or(0, Vec::len);
        if points < 2 {
            return Err(Error::InvalidSignal("need at least two grid points".into()));
        }
        if channels.iter().any(|c| c.len() != points) {
            return Err(Error::InvalidSignal("channels differ in length".into()));
        }
        if channels.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidSignal("non-finite sample".into()));
        }
        Ok(Signal {
            t0,
            dt,
            steps: points - 1,
            channels,
        })
    }

    /// Samples `f(channel, t)` for channels `1..=m` on `[t0, t1]`; the step
    /// count is `round((t1 - t0) / dt)`.
    pub fn from_fn<F>(m: usize, t0: f64, t1: f64, dt: f64, f: F) -> Result<Signal>
    where
        F: Fn(usize, f64) -> f64,
    {
        if m == 0 {
            return Err(Error::InvalidSignal("at least one input channel is required".into()));
        }
        let steps = ((t1 - t0) / dt).round();
        if !(steps >= 1.0) {
            return Err(Error::InvalidSignal(format!("empty interval [{t0}, {t1}]")));
        }
        let steps = steps as usize;
        let channels = (1..=m)
            .map(|i| (0..=steps).map(|j| f(i, t0 + j as f64 * dt)).collect())
            .collect();
        Signal::new(t0, dt, channels)
    }

    /// `u_1(t) = amplitude · sin(omega · t)` on `[0, t1]`.
    pub fn sine(amplitude: f64, omega: f64, t1: f64, dt: f64) -> Result<Signal> {
        Signal::from_fn(1, 0.0, t1, dt, |_, t| amplitude * (omega * t).sin())
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn len(&self) -> usize {
        self.steps + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of driven inputs `m`.
    pub fn m(&self) -> usize {
        self.channels.len()
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(self.m())
    }

    pub fn time(&self, j: usize) -> f64 {
        self.t0 + j as f64 * self.dt
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.len()).map(|j| self.time(j)).collect()
    }

    /// Samples of `u_i`, `1 ≤ i ≤ m`.
    pub fn channel(&self, i: usize) -> &[f64] {
        &self.channels[i - 1]
    }

    /// Value of `u_letter` at grid point `j`, with `u_0 = 1`.
    pub fn value(&self, letter: u8, j: usize) -> f64 {
        if letter == 0 {
            1.0
        } else {
            self.channels[letter as usize - 1][j]
        }
    }

    /// `ΔU^{(i)}` over step `j → j+1` for every letter, trapezoid rule,
    /// `ΔU^{(0)} = dt`.
    pub fn increments(&self, j: usize, out: &mut [f64]) {
        out[0] = self.dt;
        for (i, c) in self.channels.iter().enumerate() {
            out[i + 1] = 0.5 * self.dt * (c[j] + c[j + 1]);
        }
    }

    /// `max_i ∫ |u_i|` (trapezoid), including `u_0 = 1`.
    pub fn l1_norm(&self) -> f64 {
        let span = self.dt * self.steps as f64;
        self.channels
            .iter()
            .map(|c| {
                c.windows(2)
                    .map(|w| 0.5 * self.dt * (w[0].abs() + w[1].abs()))
                    .sum::<f64>()
            })
            .fold(span, f64::max)
    }

    /// Reads CSV with header `t,u1,…,um`.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Signal> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr.headers()?.clone();
        if headers.len() < 2 || &headers[0] != "t" {
            return Err(Error::Parse {
                line: 1,
                msg: "header must be `t,u1,...,um`".into(),
            });
        }
        for (i, h) in headers.iter().enumerate().skip(1) {
            if h != format!("u{i}") {
                return Err(Error::Parse {
                    line: 1,
                    msg: format!("expected column `u{i}`, found `{h}`"),
                });
            }
        }
        let m = headers.len() - 1;
        let mut times = Vec::new();
        let mut channels = vec![Vec::new(); m];
        for (row, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let line = row + 2;
            if rec.len() != m + 1 {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected {} fields, found {}", m + 1, rec.len()),
                });
            }
            let parse = |s: &str| {
                s.parse::<f64>().map_err(|e| Error::Parse {
                    line,
                    msg: format!("`{s}`: {e}"),
                })
            };
            times.push(parse(&rec[0])?);
            for (i, ch) in channels.iter_mut().enumerate() {
                ch.push(parse(&rec[i + 1])?);
            }
        }
        if times.len() < 2 {
            return Err(Error::InvalidSignal("need at least two samples".into()));
        }
        let steps = times.len() - 1;
        let dt = (times[steps] - times[0]) / steps as f64;
        for (j, w) in times.windows(2).enumerate() {
            let gap = w[1] - w[0];
            if !((gap - dt).abs() <= 1e-9 * dt.abs()) {
                return Err(Error::Parse {
                    line: j + 3,
                    msg: format!("grid is not uniform: step {gap} vs {dt}"),
                });
            }
        }
        Signal::new(times[0], dt, channels)
    }

    pub fn read_csv(path: &Path) -> Result<Signal> {
        Signal::from_csv_reader(std::fs::File::open(path)?)
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(writer);
        let mut header = vec!["t".to_string()];
        header.extend((1..=self.m()).map(|i| format!("u{i}")));
        wtr.write_record(&header)?;
        for j in 0..self.len() {
            let mut rec = vec![format!("{:.16e}", self.time(j))];
            rec.extend(self.channels.iter().map(|c| format!("{:.16e}", c[j])));
            wtr.write_record(&rec)?;
        }
        wtr.flush()?;
        Ok(())
    }
}

/// How iterated integrals are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    #[default]
    Chen,
    Direct,
}

impl std::str::FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "chen" => Ok(Backend::Chen),
            "direct" => Ok(Backend::Direct),
            _ => Err(format!("unknown backend `{s}` (expected chen or direct)")),
        }
    }
}

/// Smallest superset closed under deleting the leftmost letter, without the
/// empty word, ordered shortlex.
pub fn suffix_closure<'a, I>(words: I) -> Vec<Word>
where
    I: IntoIterator<Item = &'a Word>,
{
    let mut seen: HashSet<Word> = HashSet::new();
    for w in words {
        let mut cur = w.clone();
        while !cur.is_empty() && seen.insert(cur.clone()) {
            cur = cur.tail();
        }
    }
    let mut out: Vec<Word> = seen.into_iter().collect();
    out.sort_by(crate::words::shortlex_compare);
    out
}

/// `E_η(t_j, t_0)` for every word of a suffix-closed set.
#[derive(Debug, Clone)]
pub struct IntegralTable {
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    values: Vec<Vec<f64>>,
    times: Vec<f64>,
    integral_count: usize,
}

impl IntegralTable {
    fn from_columns(words: Vec<Word>, values: Vec<Vec<f64>>, times: Vec<f64>) -> Self {
        let index = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let integral_count = words.len();
        IntegralTable {
            words,
            index,
            values,
            times,
            integral_count,
        }
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// Number of one-dimensional integrations performed.
    pub fn integral_count(&self) -> usize {
        self.integral_count
    }

    pub fn contains(&self, w: &Word) -> bool {
        w.is_empty() || self.index.contains_key(w)
    }

    /// Column of `E_w`; `None` if `w` is not covered. The empty word is not
    /// stored, see [`IntegralTable::value`].
    pub fn column(&self, w: &Word) -> Option<&[f64]> {
        self.index.get(w).map(|&i| self.values[i].as_slice())
    }

    pub fn value(&self, w: &Word, j: usize) -> Option<f64> {
        if w.is_empty() {
            return Some(1.0);
        }
        self.column(w).map(|c| c[j])
    }

    /// CSV `word,t,value`.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(writer);
        wtr.write_record(["word", "t", "value"])?;
        for (w, col) in self.words.iter().zip(&self.values) {
            let name = w.to_string();
            for (t, v) in self.times.iter().zip(col) {
                wtr.write_record([name.as_str(), &format!("{t:.16e}"), &format!("{v:.16e}")])?;
            }
        }
        wtr.flush()?;
        Ok(())
    }
}

fn check_words(s: &Signal, words: &[Word]) -> Result<()> {
    let alphabet = s.alphabet();
    words.iter().try_for_each(|w| alphabet.check(w))
}

/// Trapezoid recursion over `suffix_closure(words)`, shorter words first.
pub fn direct_table(s: &Signal, words: &[Word]) -> Result<IntegralTable> {
    let closure = suffix_closure(words);
    check_words(s, &closure)?;
    let n = s.len();
    let half = 0.5 * s.dt();
    let mut index: HashMap<&Word, usize> = HashMap::new();
    let mut values: Vec<Vec<f64>> = Vec::with_capacity(closure.len());
    for (k, w) in closure.iter().enumerate() {
        let a = w.first().expect("nonempty");
        let tail = w.tail();
        let mut col = vec![0.0; n];
        let integrand = |j: usize| -> f64 {
            let e = if tail.is_empty() {
                1.0
            } else {
                values[index[&tail]][j]
            };
            s.value(a, j) * e
        };
        let mut prev = integrand(0);
        for j in 1..n {
            let cur = integrand(j);
            col[j] = col[j - 1] + half * (prev + cur);
            prev = cur;
        }
        values.push(col);
        index.insert(w, k);
    }
    Ok(IntegralTable::from_columns(closure, values, s.times()))
}

/// Streaming Chen update over a suffix-closed word set, one grid step at a
/// time, keeping only the current values.
#[derive(Debug, Clone)]
pub struct ChenStepper {
    words: Vec<Word>,
    letters: Vec<u8>,
    /// `start[w]..start[w + 1]` indexes `letters` and `suffix`.
    start: Vec<usize>,
    /// Position of the suffix after dropping `r + 1` letters; `NONE` for ∅.
    suffix: Vec<usize>,
    inv_fact: Vec<f64>,
    state: Vec<f64>,
    inc: Vec<f64>,
}

const NONE: usize = usize::MAX;

impl ChenStepper {
    /// `words` is completed to its suffix closure.
    pub fn new(alphabet: &Alphabet, words: &[Word]) -> Result<ChenStepper> {
        let closure = suffix_closure(words);
        closure.iter().try_for_each(|w| alphabet.check(w))?;
        let pos: HashMap<&Word, usize> = closure.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut letters = Vec::new();
        let mut suffix = Vec::new();
        let mut start = vec![0];
        let mut maxlen = 0;
        for w in &closure {
            maxlen = maxlen.max(w.len());
            letters.extend_from_slice(w.letters());
            for r in 1..=w.len() {
                let sfx = w.suffix_from(r);
                suffix.push(if sfx.is_empty() { NONE } else { pos[&sfx] });
            }
            start.push(letters.len());
        }
        let mut inv_fact = vec![1.0; maxlen + 1];
        for r in 1..=maxlen {
            inv_fact[r] = inv_fact[r - 1] / r as f64;
        }
        let n = closure.len();
        Ok(ChenStepper {
            words: closure,
            letters,
            start,
            suffix,
            inv_fact,
            state: vec![0.0; n],
            inc: vec![0.0; alphabet.card()],
        })
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn position(&self, w: &Word) -> Option<usize> {
        self.words.binary_search_by(|x| crate::words::shortlex_compare(x, w)).ok()
    }

    /// Current values, aligned with [`ChenStepper::words`].
    pub fn state(&self) -> &[f64] {
        &self.state
    }

    pub fn reset(&mut self) {
        self.state.iter_mut().for_each(|v| *v = 0.0);
    }

    /// Advances from `t_j` to `t_{j+1}`.
    pub fn step(&mut self, s: &Signal, j: usize) {
        s.increments(j, &mut self.inc);
        // Longest words first, so every suffix still holds its old value.
        for w in (0..self.words.len()).rev() {
            let (a, b) = (self.start[w], self.start[w + 1]);
            let mut prefix = 1.0;
            let mut acc = self.state[w];
            for r in 0..(b - a) {
                prefix *= self.inc[self.letters[a + r] as usize];
                let e = match self.suffix[a + r] {
                    NONE => 1.0,
                    p => self.state[p],
                };
                acc += prefix * self.inv_fact[r + 1] * e;
            }
            self.state[w] = acc;
        }
    }
}

/// Chen's identity over `suffix_closure(words)`.
pub fn chen_table_for(s: &Signal, words: &[Word]) -> Result<IntegralTable> {
    let mut st = ChenStepper::new(&s.alphabet(), words)?;
    let mut values = vec![vec![0.0; s.len()]; st.words().len()];
    for j in 0..s.steps() {
        st.step(s, j);
        for (col, v) in values.iter_mut().zip(st.state()) {
            col[j + 1] = *v;
        }
    }
    let words = st.words().to_vec();
    Ok(IntegralTable::from_columns(words, values, s.times()))
}

/// Chen's identity over the full set `X^{≤n}`.
pub fn chen_table(s: &Signal, n: usize) -> Result<IntegralTable> {
    chen_table_for(s, &s.alphabet().words_upto(n))
}

/// Table for `suffix_closure(words)` with either backend.
pub fn table_for(s: &Signal, words: &[Word], backend: Backend) -> Result<IntegralTable> {
    match backend {
        Backend::Chen => chen_table_for(s, words),
        Backend::Direct => direct_table(s, words),
    }
}

/// Direct table over the Lyndon words of length at most `n` and their
/// suffixes.
pub fn lyndon_table(s: &Signal, n: usize) -> Result<IntegralTable> {
    direct_table(s, &generate_upto(&s.alphabet(), n))
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthBoundReport {
    pub radius: f64,
    /// `max_t k! Σ_{|η|=k} |E_η(t)| / (R(m+1))^k` for `k = 0..=n`.
    pub max_ratio: Vec<f64>,
    pub holds: bool,
}

/// Checks `k! Σ_{η∈X^k} |E_η(t)| ≤ (R(m+1))^k` at every grid point.
pub fn check_growth_bound(s: &Signal, n: usize, radius: f64) -> Result<GrowthBoundReport> {
    let need = s.l1_norm();
    if need > radius {
        return Err(Error::Precondition(format!(
            "max(|u|_1, T) = {need} exceeds R = {radius}"
        )));
    }
    let alphabet = s.alphabet();
    let table = direct_table(s, &alphabet.words_of_length(n.max(1)))?;
    let mut max_ratio = vec![1.0];
    let mut fact = 1.0;
    for k in 1..=n {
        fact *= k as f64;
        let rhs = (radius * alphabet.card() as f64).powi(k as i32);
        let level = alphabet.words_of_length(k);
        let worst = (0..s.len())
            .map(|j| {
                let sum: f64 = level.iter().map(|w| table.value(w, j).unwrap().abs()).sum();
                fact * sum / rhs
            })
            .fold(0.0, f64::max);
        max_ratio.push(worst);
    }
    let holds = max_ratio.iter().all(|&r| r <= 1.0 + 1e-12);
    Ok(GrowthBoundReport {
        radius,
        max_ratio,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn sine(dt: f64) -> Signal {
        Signal::sine(4.0, 16.0, 1.0, dt).unwrap()
    }

    #[test]
    fn suffix_closure_examples() {
        let got = suffix_closure(&[w("x0x1x1x1")]);
        assert_eq!(got, vec![w("x1"), w("x1x1"), w("x1x1x1"), w("x0x1x1x1")]);
        assert_eq!(suffix_closure(&[w("x0")]), vec![w("x0")]);
        assert_eq!(suffix_closure(&[Word::empty()]), Vec::<Word>::new());
        let lyn = generate_upto(&Alphabet::new(1), 5);
        assert_eq!(suffix_closure(&lyn).len(), 20);
    }

    #[test]
    fn x0_integral_is_elapsed_time() {
        let s = sine(1e-3);
        for table in [chen_table(&s, 2).unwrap(), direct_table(&s, &[w("x0")]).unwrap()] {
            let col = table.column(&w("x0")).unwrap();
            for (j, v) in col.iter().enumerate() {
                assert!((v - s.time(j)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn constant_input_examples() {
        let s = Signal::from_fn(1, 0.0, 2.0, 0.01, |_, _| 3.0).unwrap();
        let t = direct_table(&s, &[w("x1")]).unwrap();
        let last = s.steps();
        assert!((t.value(&w("x1"), last).unwrap() - 6.0).abs() < 1e-12);
        assert_eq!(t.value(&Word::empty(), 7), Some(1.0));
    }

    #[test]
    fn one_chen_step_of_x0x0() {
        let s = Signal::from_fn(1, 0.0, 0.5, 0.5, |_, t| t).unwrap();
        let t = chen_table(&s, 3).unwrap();
        assert!((t.value(&w("x0x0"), 1).unwrap() - 0.125).abs() < 1e-15);
        assert_eq!(t.integral_count(), 14);
    }

    #[test]
    fn x1x1_is_half_square() {
        let s = sine(1e-3);
        let t = direct_table(&s, &[w("x1x1")]).unwrap();
        let e1 = t.column(&w("x1")).unwrap();
        let e11 = t.column(&w("x1x1")).unwrap();
        let err = e1
            .iter()
            .zip(e11)
            .map(|(a, b)| (a * a / 2.0 - b).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-5, "{err}");
    }

    #[test]
    fn chen_matches_direct_on_level_three() {
        let s = sine(1e-4);
        let chen = chen_table(&s, 3).unwrap();
        let words = s.alphabet().words_upto(3);
        let direct = direct_table(&s, &words).unwrap();
        for x in &words {
            let a = chen.column(x).unwrap();
            let b = direct.column(x).unwrap();
            let scale = b.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let err = a.iter().zip(b).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
            assert!(err <= 1e-3 * scale, "{x}: {err} vs {scale}");
        }
    }

    #[test]
    fn chen_on_subset_matches_full_level() {
        let s = sine(1e-3);
        let full = chen_table(&s, 4).unwrap();
        let sub = chen_table_for(&s, &[w("x0x1x1x0"), w("x1x0")]).unwrap();
        assert_eq!(sub.integral_count(), 4);
        for x in sub.words() {
            assert_eq!(sub.column(x), full.column(x));
        }
    }

    #[test]
    fn lyndon_table_counts() {
        let s = sine(1e-2);
        assert_eq!(lyndon_table(&s, 2).unwrap().integral_count(), 3);
        assert_eq!(lyndon_table(&s, 5).unwrap().integral_count(), 20);
        assert_eq!(lyndon_table(&s, 1).unwrap().integral_count(), 2);
        let s2 = Signal::from_fn(2, 0.0, 1.0, 0.1, |i, t| i as f64 * t).unwrap();
        assert_eq!(lyndon_table(&s2, 1).unwrap().integral_count(), 3);
        assert_eq!(direct_table(&s2, &s2.alphabet().words_upto(3)).unwrap().integral_count(), 39);
    }

    #[test]
    fn growth_bound_examples() {
        let zero = Signal::from_fn(1, 0.0, 1.0, 0.01, |_, _| 0.0).unwrap();
        let r = check_growth_bound(&zero, 1, 1.0).unwrap();
        assert!(r.holds);
        assert!((r.max_ratio[1] - 0.5).abs() < 1e-12);
        assert_eq!(r.max_ratio[0], 1.0);
        let s = sine(1e-3);
        let r = check_growth_bound(&s, 5, s.l1_norm()).unwrap();
        assert!(r.holds, "{:?}", r.max_ratio);
        assert!(matches!(check_growth_bound(&s, 2, 0.1), Err(Error::Precondition(_))));
    }

    #[test]
    fn csv_round_trip_and_errors() {
        let s = Signal::from_fn(2, 0.5, 1.0, 0.125, |i, t| i as f64 + t).unwrap();
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let back = Signal::from_csv_reader(buf.as_slice()).unwrap();
        assert_eq!(back.m(), 2);
        assert_eq!(back.steps(), 4);
        assert!((back.dt() - 0.125).abs() < 1e-15);
        assert_eq!(back.channel(2), s.channel(2));
        let bad = "t,u1\n0,1\n0.1,1\n0.3,1\n";
        assert!(matches!(
            Signal::from_csv_reader(bad.as_bytes()),
            Err(Error::Parse { line: 3, .. })
        ));
        let bad = "t,v\n0,1\n1,1\n";
        assert!(matches!(
            Signal::from_csv_reader(bad.as_bytes()),
            Err(Error::Parse { line: 1, .. })
        ));
        let bad = "t,u1\n0,1\n1,abc\n";
        assert!(matches!(
            Signal::from_csv_reader(bad.as_bytes()),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn table_csv_export() {
        let s = Signal::from_fn(1, 0.0, 1.0, 0.5, |_, _| 1.0).unwrap();
        let t = direct_table(&s, &[w("x1")]).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("word,t,value\nx1,0.0000000000000000e0,0.0000000000000000e0\n"));
        assert_eq!(text.lines().count(), 4);
    }

    #[test]
    fn signal_validation() {
        assert!(Signal::new(0.0, 0.0, vec![vec![0.0, 1.0]]).is_err());
        assert!(Signal::new(0.0, 0.1, vec![vec![0.0]]).is_err());
        assert!(Signal::new(0.0, 0.1, vec![vec![0.0, f64::NAN]]).is_err());
        assert!(direct_table(&sine(0.1), &[w("x2")]).is_err());
    }
}
