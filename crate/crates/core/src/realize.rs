//! Generating series of polynomial state-space systems
//!
//! ```text
//! ż = g_0(z) + Σ_i g_i(z) u_i,   y = h(z),   z(0) = z0
//! ```
//!
//! via iterated Lie derivatives, the CSTR example with a Taylor-truncated
//! Arrhenius kernel, and a fixed-step RK4 reference simulator.

use std::collections::BTreeMap;

use num::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fliess::GeneratingSeries;
use crate::integrate::Signal;
use crate::words::{Alphabet, Poly, Rational, Word};

/// Sparse polynomial in `z_1…z_d` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    d: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(d: usize) -> Self {
        MultiPoly {
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(d: usize, c: Rational) -> Self {
        let mut p = MultiPoly::zero(d);
        p.add_term(vec![0; d], c);
        p
    }

    /// The coordinate `z_{i+1}` (zero-based `i`).
    pub fn var(d: usize, i: usize) -> Self {
        let mut e = vec![0; d];
        e[i] = 1;
        let mut p = MultiPoly::zero(d);
        p.add_term(e, Rational::one());
        p
    }

    /// `Σ_j coeffs[j] · z_i^j`.
    pub fn univariate(d: usize, i: usize, coeffs: &[Rational]) -> Self {
        let mut p = MultiPoly::zero(d);
        for (j, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; d];
            e[i] = j as u32;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        assert_eq!(exps.len(), self.d, "exponent vector length");
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(exps).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>() as usize)
            .max()
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&vec![0; self.d])
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> MultiPoly {
        let mut out = MultiPoly::zero(self.d);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    /// Product keeping only terms of total degree `≤ max_degree` when given.
    pub fn mul_truncated(&self, other: &MultiPoly, max_degree: Option<usize>) -> MultiPoly {
        let mut acc: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (a, x) in &self.terms {
            let da: u32 = a.iter().sum();
            for (b, y) in &other.terms {
                let db: u32 = b.iter().sum();
                if max_degree.is_some_and(|m| (da + db) as usize > m) {
                    continue;
                }
                let e: Vec<u32> = a.iter().zip(b).map(|(p, q)| p + q).collect();
                *acc.entry(e).or_insert_with(Rational::zero) += x * y;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        MultiPoly {
            d: self.d,
            terms: acc,
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.mul_truncated(other, None)
    }

    pub fn truncate(&self, max_degree: usize) -> MultiPoly {
        MultiPoly {
            d: self.d,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() as usize <= max_degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// `∂/∂z_{i+1}`.
    pub fn derivative(&self, i: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.d);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                out.add_term(f, c * Rational::from_integer(e[i].into()));
            }
        }
        out
    }

    /// The polynomial `z ↦ self(z + a)`.
    pub fn shift(&self, a: &[Rational]) -> MultiPoly {
        assert_eq!(a.len(), self.d);
        let linear: Vec<MultiPoly> = (0..self.d)
            .map(|i| MultiPoly::var(self.d, i).add(&MultiPoly::constant(self.d, a[i].clone())))
            .collect();
        let mut out = MultiPoly::zero(self.d);
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(self.d, c.clone());
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term = term.mul(&linear[i]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    pub fn eval(&self, z: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(z)
                    .fold(c.clone(), |acc, (&k, zi)| acc * num::pow(zi.clone(), k as usize))
            })
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn eval_f64(&self, z: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(z)
                    .fold(c.to_f64().unwrap_or(f64::NAN), |acc, (&k, zi)| {
                        acc * zi.powi(k as i32)
                    })
            })
            .sum()
    }
}

/// `L_g f = Σ_i g_i ∂f/∂z_i`.
pub fn lie_derivative(f: &MultiPoly, g: &[MultiPoly]) -> MultiPoly {
    lie_derivative_truncated(f, g, None)
}

fn lie_derivative_truncated(f: &MultiPoly, g: &[MultiPoly], max: Option<usize>) -> MultiPoly {
    assert_eq!(g.len(), f.dim(), "vector field dimension");
    g.iter()
        .enumerate()
        .fold(MultiPoly::zero(f.dim()), |acc, (i, gi)| {
            acc.add(&gi.mul_truncated(&f.derivative(i), max))
        })
}

/// `ż = g_0 + Σ_{i≥1} g_i u_i`, `y = h(z)`, `z(0) = z0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Realization {
    fields: Vec<Vec<MultiPoly>>,
    h: MultiPoly,
    z0: Vec<Rational>,
}

impl Realization {
    /// `fields[i]` is the vector field for letter `x_i`; `fields[0]` is the drift.
    pub fn new(fields: Vec<Vec<MultiPoly>>, h: MultiPoly, z0: Vec<Rational>) -> Result<Self> {
        let d = h.dim();
        if fields.len() < 2 {
            return Err(Error::Precondition("need a drift and at least one input field".into()));
        }
        if z0.len() != d || fields.iter().flatten().any(|p| p.dim() != d) || fields.iter().any(|g| g.len() != d) {
            return Err(Error::Precondition(format!("all fields must have dimension {d}")));
        }
        Ok(Realization { fields, h, z0 })
    }

    pub fn dim(&self) -> usize {
        self.h.dim()
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(self.fields.len() - 1)
    }

    pub fn field(&self, letter: usize) -> &[MultiPoly] {
        &self.fields[letter]
    }

    pub fn output_map(&self) -> &MultiPoly {
        &self.h
    }

    pub fn initial_state(&self) -> &[Rational] {
        &self.z0
    }
}

/// Coefficients `(c, x_{i_1}⋯x_{i_k}) = L_{g_{i_k}}⋯L_{g_{i_1}} h (z0)` for
/// every word of length `≤ n`: the first letter's derivative is applied
/// first.
pub fn series_from_realization(r: &Realization, n: usize) -> Result<GeneratingSeries> {
    if n == 0 {
        return Err(Error::Precondition("truncation n must be at least 1".into()));
    }
    let fields: Vec<Vec<MultiPoly>> = r
        .fields
        .iter()
        .map(|g| g.iter().map(|p| p.shift(&r.z0).truncate(n)).collect())
        .collect();
    let h = r.h.shift(&r.z0).truncate(n);
    let mut poly = Poly::zero();
    // After j letters only terms of degree ≤ n − j can still reach the
    // constant term.
    let mut stack: Vec<(Word, MultiPoly)> = vec![(Word::empty(), h)];
    while let Some((w, f)) = stack.pop() {
        poly.add_term(w.clone(), f.constant_term());
        if w.len() == n {
            continue;
        }
        let keep = n - w.len() - 1;
        for (i, g) in fields.iter().enumerate() {
            let next = lie_derivative_truncated(&f, g, Some(keep)).truncate(keep);
            if !next.is_zero() {
                stack.push((w.concat(&Word::letter(i as u8)), next));
            }
        }
    }
    GeneratingSeries::new(r.alphabet(), &poly, n)
}

/// Physical constants of the normalized CSTR model.
#[derive(Debug, Clone, PartialEq)]
pub struct CstrParams {
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    pub kappa: Rational,
}

impl Default for CstrParams {
    fn default() -> Self {
        CstrParams {
            alpha: Rational::one(),
            beta: Rational::one(),
            gamma: Rational::one(),
            kappa: Rational::one(),
        }
    }
}

/// Maclaurin coefficients of `exp(w / (1 + w/γ))` through `w^degree`.
pub fn arrhenius_kernel(gamma: &Rational, degree: usize) -> Vec<Rational> {
    // s(w) = Σ_{k≥1} (−1)^{k−1} w^k / γ^{k−1}
    let mut s = vec![Rational::zero(); degree + 1];
    let mut pow = Rational::one();
    for (k, sk) in s.iter_mut().enumerate().skip(1) {
        let sign = if k % 2 == 1 { Rational::one() } else { -Rational::one() };
        *sk = sign * &pow;
        pow /= gamma;
    }
    // e = exp(s): n·e_n = Σ_{k=1}^n k·s_k·e_{n−k}
    let mut e = vec![Rational::one()];
    for n in 1..=degree {
        let mut acc = Rational::zero();
        for k in 1..=n {
            acc += Rational::from_integer(k.into()) * &s[k] * &e[n - k];
        }
        e.push(acc / Rational::from_integer(n.into()));
    }
    e
}

/// CSTR with the exponential replaced by its degree-`taylor_degree`
/// Maclaurin polynomial; `y = z_2`, `z(0) = 0`.
pub fn cstr_realization(taylor_degree: usize) -> Realization {
    cstr_realization_with(&CstrParams::default(), taylor_degree)
}

pub fn cstr_realization_with(p: &CstrParams, taylor_degree: usize) -> Realization {
    let d = 2;
    let z1 = MultiPoly::var(d, 0);
    let z2 = MultiPoly::var(d, 1);
    let kernel = MultiPoly::univariate(d, 1, &arrhenius_kernel(&p.gamma, taylor_degree));
    let one_minus_z1 = MultiPoly::constant(d, Rational::one()).add(&z1.scale(&-Rational::one()));
    let reaction = one_minus_z1.mul(&kernel).scale(&p.alpha);
    let f1 = z1.scale(&-Rational::one()).add(&reaction);
    let f2 = z2
        .scale(&-(&p.beta + Rational::one()))
        .add(&reaction.scale(&p.kappa));
    let input = vec![MultiPoly::zero(d), MultiPoly::constant(d, p.beta.clone())];
    Realization::new(vec![vec![f1, f2], input], z2, vec![Rational::zero(); d])
        .expect("consistent dimensions")
}

/// CSTR series coefficients for all words of length `≤ n`.
pub fn cstr_series(n: usize) -> Result<GeneratingSeries> {
    series_from_realization(&cstr_realization(n), n)
}

/// `u*(t) = −(1 + e^{−2t})/2` on `[0, t1]`.
pub fn attack_input(t1: f64, dt: f64) -> Result<Signal> {
    Signal::from_fn(1, 0.0, t1, dt, |_, t| attack_value(t))
}

pub fn attack_value(t: f64) -> f64 {
    -(1.0 + (-2.0 * t).exp()) / 2.0
}

/// Right-hand side and output of a simulated system.
pub trait Dynamics {
    fn dim(&self) -> usize;
    fn inputs(&self) -> usize;
    fn initial_state(&self) -> Vec<f64>;
    fn rhs(&self, z: &[f64], u: &[f64], out: &mut [f64]);
    fn output(&self, z: &[f64]) -> f64;
}

impl Dynamics for Realization {
    fn dim(&self) -> usize {
        self.h.dim()
    }

    fn inputs(&self) -> usize {
        self.fields.len() - 1
    }

    fn initial_state(&self) -> Vec<f64> {
        self.z0.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect()
    }

    fn rhs(&self, z: &[f64], u: &[f64], out: &mut [f64]) {
        for (k, o) in out.iter_mut().enumerate() {
            *o = self.fields[0][k].eval_f64(z);
            for (i, ui) in u.iter().enumerate() {
                *o += self.fields[i + 1][k].eval_f64(z) * ui;
            }
        }
    }

    fn output(&self, z: &[f64]) -> f64 {
        self.h.eval_f64(z)
    }
}

/// The CSTR with the exact exponential right-hand side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactCstr {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub kappa: f64,
}

impl Default for ExactCstr {
    fn default() -> Self {
        ExactCstr {
            alpha: 1.0,
            beta: 1.0,
            gamma: 1.0,
            kappa: 1.0,
        }
    }
}

impl Dynamics for ExactCstr {
    fn dim(&self) -> usize {
        2
    }

    fn inputs(&self) -> usize {
        1
    }

    fn initial_state(&self) -> Vec<f64> {
        vec![0.0, 0.0]
    }

    fn rhs(&self, z: &[f64], u: &[f64], out: &mut [f64]) {
        let r = self.alpha * (1.0 - z[0]) * (z[1] / (1.0 + z[1] / self.gamma)).exp();
        out[0] = -z[0] + r;
        out[1] = -(self.beta + 1.0) * z[1] + self.kappa * r + self.beta * u[0];
    }

    fn output(&self, z: &[f64]) -> f64 {
        z[1]
    }
}

/// Classical RK4 with step equal to the grid step; the input at half steps
/// is the average of the neighbouring samples.
pub fn reference_ode<D: Dynamics + ?Sized>(sys: &D, s: &Signal) -> Result<Vec<f64>> {
    if sys.inputs() != s.m() {
        return Err(Error::AlphabetMismatch {
            expected: sys.inputs(),
            found: s.m(),
        });
    }
    let d = sys.dim();
    let h = s.dt();
    let mut z = sys.initial_state();
    let mut y = Vec::with_capacity(s.len());
    y.push(sys.output(&z));
    let (mut k1, mut k2, mut k3, mut k4) = (vec![0.0; d], vec![0.0; d], vec![0.0; d], vec![0.0; d]);
    let mut tmp = vec![0.0; d];
    let mut u0 = vec![0.0; s.m()];
    let mut um = vec![0.0; s.m()];
    let mut u1 = vec![0.0; s.m()];
    for j in 0..s.steps() {
        for i in 0..s.m() {
            let c = s.channel(i + 1);
            u0[i] = c[j];
            u1[i] = c[j + 1];
            um[i] = 0.5 * (c[j] + c[j + 1]);
        }
        sys.rhs(&z, &u0, &mut k1);
        for k in 0..d {
            tmp[k] = z[k] + 0.5 * h * k1[k];
        }
        sys.rhs(&tmp, &um, &mut k2);
        for k in 0..d {
            tmp[k] = z[k] + 0.5 * h * k2[k];
        }
        sys.rhs(&tmp, &um, &mut k3);
        for k in 0..d {
            tmp[k] = z[k] + h * k3[k];
        }
        sys.rhs(&tmp, &u1, &mut k4);
        for k in 0..d {
            z[k] += h / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
        }
        if z.iter().any(|v| !v.is_finite()) {
            return Err(Error::Divergence { t: s.time(j + 1) });
        }
        y.push(sys.output(&z));
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transduce::{apply_l, LyndonMonomial};
    use crate::words::{int, rational};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn integrator() -> Realization {
        Realization::new(
            vec![vec![MultiPoly::zero(1)], vec![MultiPoly::constant(1, int(1))]],
            MultiPoly::var(1, 0),
            vec![int(0)],
        )
        .unwrap()
    }

    #[test]
    fn lie_derivative_examples() {
        let z2 = MultiPoly::var(2, 1);
        let g = vec![MultiPoly::zero(2), MultiPoly::constant(2, int(1))];
        assert_eq!(lie_derivative(&z2, &g), MultiPoly::constant(2, int(1)));
        let z1 = MultiPoly::var(2, 0);
        let sq = z1.mul(&z1);
        assert_eq!(lie_derivative(&sq, &[z1.clone(), MultiPoly::zero(2)]), sq.scale(&int(2)));
        let drift = cstr_realization(2).field(0).to_vec();
        let l = lie_derivative(&z2, &drift);
        // −2z_2 + (1 − z_1)(1 + z_2 − z_2²/2)
        let mut want = MultiPoly::zero(2);
        want.add_term(vec![0, 0], int(1));
        want.add_term(vec![0, 1], int(-1));
        want.add_term(vec![0, 2], rational(-1, 2));
        want.add_term(vec![1, 0], int(-1));
        want.add_term(vec![1, 1], int(-1));
        want.add_term(vec![1, 2], rational(1, 2));
        assert_eq!(l, want);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(arrhenius_kernel(&int(1), 1), vec![int(1), int(1)]);
        assert_eq!(arrhenius_kernel(&int(1), 2), vec![int(1), int(1), rational(-1, 2)]);
        assert_eq!(
            arrhenius_kernel(&int(1), 5),
            vec![int(1), int(1), rational(-1, 2), rational(1, 6), rational(1, 24), rational(-19, 120)]
        );
        let r = cstr_realization(3);
        assert_eq!(r.field(0)[1].constant_term(), int(1));
        assert_eq!(r.field(0)[0].constant_term(), int(1));
    }

    #[test]
    fn integrator_series_is_x1() {
        let c = series_from_realization(&integrator(), 4).unwrap();
        assert_eq!(c.poly(), &Poly::from_word(w("x1")));
    }

    #[test]
    fn shifted_initial_state() {
        // ż = z u, y = z, z(0) = 2: (c, x1^k) = 2.
        let r = Realization::new(
            vec![vec![MultiPoly::zero(1)], vec![MultiPoly::var(1, 0)]],
            MultiPoly::var(1, 0),
            vec![int(2)],
        )
        .unwrap();
        let c = series_from_realization(&r, 3).unwrap();
        for k in 0..=3 {
            assert_eq!(c.poly().coeff(&Word::power(1, k)), int(2));
        }
        assert_eq!(c.poly().len(), 4);
    }

    #[test]
    fn printed_cstr_coefficients() {
        let c = cstr_series(4).unwrap();
        let printed = [
            ("x0", 1),
            ("x1", 1),
            ("x0x0", -2),
            ("x0x1", -1),
            ("x0x0x1", -2),
            ("x0x1x0", -2),
            ("x0x1x1", -1),
            ("x0x0x0x0", 22),
            ("x0x0x0x1", 15),
            ("x0x0x1x0", 11),
            ("x0x0x1x1", 4),
            ("x0x1x0x0", 6),
            ("x0x1x0x1", 2),
            ("x0x1x1x0", 2),
            ("x0x1x1x1", 1),
        ];
        for (word, v) in printed {
            assert_eq!(c.poly().coeff(&w(word)), int(v), "{word}");
        }
        // Words absent from the printed expansion vanish.
        for word in ["x1x0", "x1x1", "x0x0x0", "x1x0x0", "x1x1x1"] {
            assert_eq!(c.poly().coeff(&w(word)), int(0), "{word}");
        }
    }

    #[test]
    fn printed_transduced_cstr_terms() {
        let c = cstr_series(5).unwrap();
        let q = apply_l(c.poly(), &c.alphabet()).unwrap();
        let l = ["x0", "x1", "x0x1", "x0x0x1", "x0x1x1", "x0x0x0x1", "x0x0x1x1", "x0x1x1x1", "x0x0x0x0x1", "x0x0x0x1x1"];
        let m = |idx: &[usize]| LyndonMonomial::new(idx.iter().map(|&i| w(l[i])).collect()).unwrap();
        let printed: Vec<(LyndonMonomial, Rational)> = vec![
            (m(&[0]), int(1)),
            (m(&[1]), int(1)),
            (m(&[0, 0]), int(-1)),
            (m(&[2]), int(-1)),
            (m(&[0, 2]), int(-2)),
            (m(&[3]), int(2)),
            (m(&[4]), int(-1)),
            (m(&[0, 0, 0, 0]), rational(11, 12)),
            (m(&[0, 0, 2]), int(3)),
            (m(&[0, 3]), int(-1)),
            (m(&[0, 4]), int(2)),
            (m(&[7]), int(1)),
            (m(&[0, 0, 0, 0, 0]), rational(-13, 15)),
            (m(&[0, 0, 0, 2]), rational(-7, 3)),
            (m(&[0, 2, 2]), rational(3, 2)),
            (m(&[0, 0, 3]), rational(11, 2)),
            (m(&[2, 3]), int(-1)),
            (m(&[0, 0, 4]), int(-2)),
            (m(&[0, 5]), int(-10)),
            (m(&[0, 6]), int(3)),
            (m(&[8]), int(3)),
            (m(&[9]), int(-2)),
        ];
        for (mono, v) in printed {
            assert_eq!(q.coeff(&mono), v, "{mono}");
        }
    }

    #[test]
    fn taylor_degree_beyond_n_is_irrelevant() {
        for n in 1..=6 {
            let a = series_from_realization(&cstr_realization(n), n).unwrap();
            let b = series_from_realization(&cstr_realization(n + 2), n).unwrap();
            assert_eq!(a, b, "n = {n}");
        }
    }

    #[test]
    fn attack_input_values() {
        assert_eq!(attack_value(0.0), -1.0);
        assert!((attack_value(50.0) + 0.5).abs() < 1e-15);
        assert!((attack_value(2f64.ln() / 2.0) + 0.75).abs() < 1e-15);
        let s = attack_input(1.0, 0.25).unwrap();
        assert_eq!(s.len(), 5);
        assert_eq!(s.channel(1)[0], -1.0);
    }

    #[test]
    fn rk4_examples() {
        let one = Signal::from_fn(1, 0.0, 1.0, 1e-3, |_, _| 1.0).unwrap();
        let y = reference_ode(&integrator(), &one).unwrap();
        for (j, v) in y.iter().enumerate() {
            assert!((v - one.time(j)).abs() < 1e-10);
        }
        let zero = Signal::from_fn(1, 0.0, 0.1, 1e-3, |_, _| 0.0).unwrap();
        assert_eq!(reference_ode(&ExactCstr::default(), &zero).unwrap()[0], 0.0);
        let s = attack_input(0.5, 1e-4).unwrap();
        let y = reference_ode(&ExactCstr::default(), &s).unwrap();
        assert!(y.iter().all(|v| v.abs() < 1e-3));
    }

    #[test]
    fn rk4_reports_blow_up() {
        // ż = z², z(0) = 1 escapes at t = 1.
        let r = Realization::new(
            vec![vec![MultiPoly::var(1, 0).mul(&MultiPoly::var(1, 0))], vec![MultiPoly::zero(1)]],
            MultiPoly::var(1, 0),
            vec![int(1)],
        )
        .unwrap();
        let s = Signal::from_fn(1, 0.0, 3.0, 1e-2, |_, _| 0.0).unwrap();
        assert!(matches!(reference_ode(&r, &s), Err(Error::Divergence { .. })));
    }

    #[test]
    fn multipoly_shift_and_eval() {
        let z1 = MultiPoly::var(2, 0);
        let z2 = MultiPoly::var(2, 1);
        let p = z1.mul(&z2).add(&z2.mul(&z2));
        let a = [int(1), rational(1, 2)];
        let shifted = p.shift(&a);
        let pt = [rational(3, 7), int(-2)];
        let moved = [&pt[0] + &a[0], &pt[1] + &a[1]];
        assert_eq!(shifted.eval(&pt), p.eval(&moved));
        assert_eq!(p.total_degree(), Some(2));
        assert!((p.eval_f64(&[1.0, 2.0]) - 6.0).abs() < 1e-15);
    }
}
