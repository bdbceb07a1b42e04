//! Command-line front end: every subcommand writes plain CSV, text or JSON
//! lines so results can be plotted or diffed without extra tooling.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use num::ToPrimitive;
use serde::Serialize;
use serde_json::json;

use crate::fliess::{
    cost_il, cost_ix, efficiency, evaluate_alg1, evaluate_alg2, random_series, time_median,
    GeneratingSeries,
};
use crate::integrate::{Backend, Signal};
use crate::lyndon::{count_length, count_table, count_upto, LyndonBasis};
use crate::realize::{attack_input, cstr_series, reference_ode, ExactCstr};
use crate::transduce::{
    apply_l, apply_l_inv, check_appendix_identities, forward_matrix, inverse_matrix, level,
    norm_inf_t, norm_inf_tinv, seminorm_t, LPoly,
};
use crate::words::{Alphabet, Poly};

#[derive(Debug, Parser)]
#[command(name = "lyndon-fliess", version, about = "Chen–Fliess series in word and Lyndon bases")]
pub struct Cli {
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 2024)]
    pub seed: u64,
    /// Runs per timing measurement (median is reported).
    #[arg(long, global = true, default_value_t = 10)]
    pub repeats: usize,
    /// Output file or directory, depending on the subcommand; stdout if omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Alg1,
    Alg2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Chen,
    Direct,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Backend {
        match b {
            BackendArg::Chen => Backend::Chen,
            BackendArg::Direct => Backend::Direct,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignalKind {
    Sine,
    Attack,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lyndon word counts and asymptotics, or the word list itself.
    Lyndon {
        #[arg(long, default_value_t = 2)]
        card: usize,
        #[arg(long, default_value_t = 10)]
        nmax: usize,
        /// List the words `index,word` instead of the count table.
        #[arg(long)]
        list: bool,
    },
    /// Export T_k and T_k⁻¹ as exact CSV together with their norms.
    Matrix {
        #[arg(long, default_value_t = 2)]
        card: usize,
        #[arg(long)]
        k: usize,
    },
    /// Rewrite a word series in the Lyndon monomial basis (or back).
    Transduce {
        #[arg(long)]
        series: PathBuf,
        #[arg(long, default_value_t = 2)]
        card: usize,
        /// Truncate before transducing.
        #[arg(long)]
        n: Option<usize>,
        /// Read a monomial file and expand it back into words.
        #[arg(long)]
        inverse: bool,
    },
    /// Cost model table: I_X, I_L, CE and its bounds.
    Efficiency {
        #[arg(long, default_value_t = 2)]
        card: usize,
        #[arg(long, default_value_t = 14)]
        nmax: usize,
    },
    /// Evaluate a truncated Chen–Fliess series on a sampled input.
    Evaluate {
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        signal: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Alg1)]
        method: Method,
        #[arg(long, value_enum, default_value_t = BackendArg::Chen)]
        backend: BackendArg,
        /// Append the JSON run record to this file as well as printing it.
        #[arg(long)]
        record: Option<PathBuf>,
    },
    /// CSTR zero-dynamics attack demo; writes all artifacts to the --out directory.
    Cstr {
        #[arg(long, default_value_t = 9)]
        n: usize,
        #[arg(long, default_value_t = 1.2)]
        tmax: f64,
        #[arg(long, default_value_t = 1e-4)]
        dt: f64,
    },
    /// Write a sampled input signal as CSV `t,u1`.
    Signal {
        #[arg(long, value_enum, default_value_t = SignalKind::Sine)]
        kind: SignalKind,
        #[arg(long, default_value_t = 1.0)]
        tmax: f64,
        #[arg(long, default_value_t = 1e-4)]
        dt: f64,
        #[arg(long, default_value_t = 4.0)]
        amplitude: f64,
        #[arg(long, default_value_t = 16.0)]
        omega: f64,
    },
    /// Run the built-in identity and invariant checks.
    Selftest,
}

/// One line of a JSON-lines run log.
#[derive(Debug, Clone, Serialize)]
pub struct RunRecord {
    pub command: String,
    pub parameters: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub integral_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
    pub outputs: Vec<String>,
}

/// Parses arguments and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> anyhow::Result<i32>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::parse_from(args);
    execute(&cli)
}

fn sink(out: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn fmt_f(v: f64) -> String {
    format!("{v:.16e}")
}

fn read_poly(path: &Path) -> anyhow::Result<Poly> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Poly::parse_text(&text).with_context(|| format!("in {}", path.display()))
}

fn alphabet_for(card: usize) -> anyhow::Result<Alphabet> {
    Ok(Alphabet::with_card(card)?)
}

pub fn execute(cli: &Cli) -> anyhow::Result<i32> {
    match &cli.command {
        Command::Lyndon { card, nmax, list } => {
            let alphabet = alphabet_for(*card)?;
            let mut text = String::new();
            if *list {
                text.push_str("index,word\n");
                for (i, w) in LyndonBasis::new(alphabet, *nmax).words().iter().enumerate() {
                    text.push_str(&format!("{i},{w}\n"));
                }
            } else {
                text.push_str("n,L,L_plus,L_hat,Lplus_hat\n");
                for r in count_table(*card, *nmax) {
                    text.push_str(&format!(
                        "{},{},{},{},{}\n",
                        r.n,
                        r.length_count,
                        r.upto_count,
                        fmt_f(r.length_hat),
                        fmt_f(r.upto_hat)
                    ));
                }
            }
            sink(&cli.out, &text)?;
        }
        Command::Matrix { card, k } => {
            let alphabet = alphabet_for(*card)?;
            let basis = LyndonBasis::new(alphabet, (*k).max(1));
            let fwd = forward_matrix(&alphabet, *k)?;
            let inv = inverse_matrix(&alphabet, *k)?;
            let norms = json!({
                "k": k,
                "card": card,
                "norm_inf_T": norm_inf_t(&alphabet, *k)?.to_string(),
                "seminorm_T": seminorm_t(&alphabet, *k)?.to_string(),
                "norm_inf_Tinv": norm_inf_tinv(&alphabet, *k)?,
            });
            match &cli.out {
                Some(dir) => {
                    fs::create_dir_all(dir)?;
                    fs::write(dir.join(format!("T_{k}.csv")), fwd.to_csv(&basis))?;
                    fs::write(dir.join(format!("T_{k}_inv.csv")), inv.to_csv(&basis))?;
                    fs::write(dir.join(format!("norms_{k}.json")), format!("{norms}\n"))?;
                }
                None => {
                    let text = format!(
                        "# T_{k}\n{}# T_{k}^-1\n{}# norms\n{norms}\n",
                        fwd.to_csv(&basis),
                        inv.to_csv(&basis)
                    );
                    sink(&None, &text)?;
                }
            }
        }
        Command::Transduce {
            series,
            card,
            n,
            inverse,
        } => {
            let alphabet = alphabet_for(*card)?;
            let text =
                fs::read_to_string(series).with_context(|| format!("reading {}", series.display()))?;
            let out = if *inverse {
                let q = LPoly::parse_text(&text).with_context(|| format!("in {}", series.display()))?;
                let p = apply_l_inv(&q);
                p.check_alphabet(&alphabet)?;
                p.to_text()
            } else {
                let mut p = Poly::parse_text(&text).with_context(|| format!("in {}", series.display()))?;
                if let Some(n) = n {
                    p = p.truncate(*n);
                }
                apply_l(&p, &alphabet)?.to_text()
            };
            sink(&cli.out, &out)?;
        }
        Command::Efficiency { card, nmax } => {
            let mut text = String::from("n,card,I_X,I_L,CE,CE_minus,CE_plus,CE_hat_minus,CE_hat_plus\n");
            for n in 1..=*nmax {
                let r = efficiency(n, *card);
                let floats = [r.ce, r.ce_minus, r.ce_plus, r.ce_hat_minus, r.ce_hat_plus];
                let floats: Vec<String> = floats.iter().map(|v| fmt_f(*v)).collect();
                text.push_str(&format!("{},{},{},{},{}\n", r.n, r.card, r.i_x, r.i_l, floats.join(",")));
            }
            sink(&cli.out, &text)?;
        }
        Command::Evaluate {
            series,
            signal,
            n,
            method,
            backend,
            record,
        } => {
            let s = Signal::read_csv(signal).with_context(|| format!("in {}", signal.display()))?;
            let p = read_poly(series)?;
            let c = GeneratingSeries::new(s.alphabet(), &p, *n)?;
            let backend: Backend = (*backend).into();
            for k in 0..=*n {
                level(&c.alphabet(), k)?;
            }
            let (ms, eval) = time_median(cli.repeats, || match method {
                Method::Alg1 => evaluate_alg1(&c, &s, backend),
                Method::Alg2 => evaluate_alg2(&c, &s, backend),
            });
            let eval = eval?;
            sink(&cli.out, &ty_csv(&s, &eval.y))?;
            let rec = json!({
                "method": match method { Method::Alg1 => "alg1", Method::Alg2 => "alg2" },
                "n": n,
                "integral_count": eval.integral_count,
                "wall_ms": ms,
            });
            println!("{rec}");
            if let Some(path) = record {
                append_line(path, &rec.to_string())?;
            }
        }
        Command::Cstr { n, tmax, dt } => {
            let dir = cli
                .out
                .clone()
                .context("cstr needs --out DIR for its artifacts")?;
            cstr_demo(&dir, *n, *tmax, *dt, cli.repeats)?;
        }
        Command::Signal {
            kind,
            tmax,
            dt,
            amplitude,
            omega,
        } => {
            let s = match kind {
                SignalKind::Sine => Signal::sine(*amplitude, *omega, *tmax, *dt)?,
                SignalKind::Attack => attack_input(*tmax, *dt)?,
            };
            let mut buf = Vec::new();
            s.write_csv(&mut buf)?;
            sink(&cli.out, &String::from_utf8(buf)?)?;
        }
        Command::Selftest => {
            let checks = selftest(cli.seed)?;
            let mut text = String::new();
            for c in &checks {
                text.push_str(&format!(
                    "[{}] {}{}\n",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    if c.detail.is_empty() { String::new() } else { format!(": {}", c.detail) }
                ));
            }
            sink(&cli.out, &text)?;
            if checks.iter().any(|c| !c.passed) {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn ty_csv(s: &Signal, y: &[f64]) -> String {
    let mut text = String::from("t,y\n");
    for (j, v) in y.iter().enumerate() {
        text.push_str(&format!("{},{}\n", fmt_f(s.time(j)), fmt_f(*v)));
    }
    text
}

fn append_line(path: &Path, line: &str) -> anyhow::Result<()> {
    let mut f = fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .with_context(|| format!("opening {}", path.display()))?;
    writeln!(f, "{line}")?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct TimingRow {
    n: usize,
    alg1_median_ms: String,
    alg2_median_ms: String,
    alg1_integrals: usize,
    alg2_integrals: usize,
    alg1_table_mb: String,
    alg2_table_mb: String,
}

/// Writes the series, its transduction, the three output curves, a timing
/// table for `n = 2..=n` and a JSON-lines run log into `dir`.
pub fn cstr_demo(dir: &Path, n: usize, tmax: f64, dt: f64, repeats: usize) -> anyhow::Result<()> {
    if n < 2 {
        bail!("cstr needs n ≥ 2");
    }
    fs::create_dir_all(dir)?;
    let s = attack_input(tmax, dt)?;
    let c = cstr_series(n)?;
    let q = apply_l(c.poly(), &c.alphabet())?;
    fs::write(dir.join("series.txt"), c.poly().to_text())?;
    fs::write(dir.join("transduced.txt"), q.to_text())?;
    let ode = reference_ode(&ExactCstr::default(), &s)?;
    fs::write(dir.join("y_ode.csv"), ty_csv(&s, &ode))?;
    let log = dir.join("run.jsonl");
    let _ = fs::remove_file(&log);
    let mut rows = Vec::new();
    for k in 2..=n {
        let ck = cstr_series(k)?;
        for d in 0..=k {
            level(&ck.alphabet(), d)?;
        }
        let (t1, e1) = time_median(repeats, || evaluate_alg1(&ck, &s, Backend::Chen));
        let (t2, e2) = time_median(repeats, || evaluate_alg2(&ck, &s, Backend::Chen));
        let (e1, e2) = (e1?, e2?);
        let mb = |count: usize| fmt_f((count * s.len() * 8) as f64 / 1e6);
        rows.push(TimingRow {
            n: k,
            alg1_median_ms: fmt_f(t1),
            alg2_median_ms: fmt_f(t2),
            alg1_integrals: e1.integral_count,
            alg2_integrals: e2.integral_count,
            alg1_table_mb: mb(e1.integral_count),
            alg2_table_mb: mb(e2.integral_count),
        });
        for (name, ms, e) in [("alg1", t1, &e1), ("alg2", t2, &e2)] {
            let rec = RunRecord {
                command: "cstr".into(),
                parameters: json!({"tmax": tmax, "dt": dt, "repeats": repeats}),
                method: Some(name.into()),
                n: Some(k),
                integral_count: Some(e.integral_count),
                wall_ms: Some(ms),
                outputs: if k == n {
                    vec![format!("y_{name}.csv")]
                } else {
                    Vec::new()
                },
            };
            append_line(&log, &serde_json::to_string(&rec)?)?;
        }
        if k == n {
            fs::write(dir.join("y_alg1.csv"), ty_csv(&s, &e1.y))?;
            fs::write(dir.join("y_alg2.csv"), ty_csv(&s, &e2.y))?;
        }
    }
    let mut wtr = csv::Writer::from_path(dir.join("timing.csv"))?;
    for r in &rows {
        wtr.serialize(r)?;
    }
    wtr.flush()?;
    Ok(())
}

/// Outcome of one built-in check.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

/// Fast invariant checks covering every module.
pub fn selftest(seed: u64) -> anyhow::Result<Vec<Check>> {
    let mut out = Vec::new();
    let l: Vec<u128> = (1..=10).map(|n| count_length(n, 2)).collect();
    let lp: Vec<u128> = (1..=10).map(|n| count_upto(n, 2)).collect();
    out.push(check(
        "lyndon counts",
        l == [2, 1, 2, 3, 6, 9, 18, 30, 56, 99] && lp == [2, 3, 5, 8, 14, 23, 41, 71, 127, 226],
        format!("L(10) = {}, L+(10) = {}", l[9], lp[9]),
    ));
    let a = Alphabet::new(1);
    let mut inverse_ok = true;
    for k in 1..=6 {
        let lv = level(&a, k)?;
        inverse_ok &= lv.forward().mul(lv.inverse())
            == crate::transduce::SparseMatrix::identity(lv.words().len());
    }
    out.push(check("T_k T_k^-1 = I (k <= 6)", inverse_ok, ""));
    let norms: Vec<String> = (0..=7).map(|k| norm_inf_t(&a, k).map(|r| r.to_string())).collect::<Result<_, _>>()?;
    out.push(check(
        "norm sequence",
        norms == ["1", "1", "2", "4", "8", "36", "104", "1140"],
        norms.join(","),
    ));
    let report = check_appendix_identities(&a, 5, 100, seed)?;
    out.push(check("appendix identities", report.passed(), report.failures.join("; ")));
    let il: Vec<usize> = (1..=10).map(|n| cost_il(n, 2)).collect();
    out.push(check(
        "cost model",
        cost_ix(3, 2) == 14 && il == [2, 3, 6, 10, 20, 33, 66, 116, 222, 406],
        format!("{il:?}"),
    ));
    let s = Signal::sine(4.0, 16.0, 1.0, 1e-4)?;
    let mut worst = 0.0f64;
    for p in random_series(&a, 4, 5, seed) {
        let c = GeneratingSeries::new(a, &p, 4)?;
        let y1 = evaluate_alg1(&c, &s, Backend::Direct)?.y;
        let y2 = evaluate_alg2(&c, &s, Backend::Direct)?.y;
        let scale = 1.0 + y1.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let d = y1.iter().zip(&y2).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        worst = worst.max(d / scale);
    }
    out.push(check("alg1 = alg2", worst <= 1e-6, format!("max scaled gap {worst:e}")));
    let c = cstr_series(4)?;
    let printed = [
        ("x0x0x0x0", 22),
        ("x0x0x0x1", 15),
        ("x0x0x1x0", 11),
        ("x0x1x0x0", 6),
        ("x0x0", -2),
    ];
    let ok = printed.iter().all(|(w, v)| {
        c.poly().coeff(&w.parse().unwrap()).to_i64() == Some(*v)
    });
    out.push(check("cstr coefficients", ok, ""));
    Ok(out)
}
