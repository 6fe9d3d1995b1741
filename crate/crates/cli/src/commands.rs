//! Command-line surface.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use qsigma_core::classifier::{check_qf, check_qf_raw, tensor_labels};
use qsigma_core::embedding::phi_hat;
use qsigma_core::glinf::QuasifiniteReport;
use qsigma_core::poly::var_index;
use qsigma_core::syntax::{element_string, parse_element, parse_scalar};
use qsigma_core::{ConventionRegistry, Half, LaurentPoly, Scalar, SuperQElement};

use crate::io::{self, InputError, WeightFile};
use crate::suites::{run_suite, SuiteRegistry};

#[derive(Debug, Parser)]
#[command(name = "qsigma", version, about = "Exact computations in the extended algebra of quantum pseudo-differential operators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Superbracket of two elements.
    Bracket {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        /// Substitute a rational value for a symbol, e.g. `q=2`.
        #[arg(long)]
        subst: Option<String>,
    },
    /// A window of the banded matrix of phi_hat(element).
    Embed {
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value_t = 0)]
        m: usize,
        /// Row and column range `A:B` (half-integers allowed).
        #[arg(long, allow_hyphen_values = true, default_value = "-1:1")]
        window: String,
    },
    /// Quasifiniteness of a weight file.
    Qfcheck {
        #[arg(long)]
        weight: PathBuf,
    },
    /// Modules whose tensor product realizes a weight.
    Classify {
        #[arg(long)]
        weight: PathBuf,
        #[arg(long, default_value = "standard")]
        convention: String,
    },
    /// The weight of a tensor product of pulled-back modules.
    Labels {
        #[arg(long)]
        module: PathBuf,
    },
    /// Synthesize modules for a weight and compare their labels.
    Roundtrip {
        #[arg(long)]
        weight: PathBuf,
        #[arg(long, default_value = "standard")]
        convention: String,
    },
    /// Run a seeded property suite; lists suites when none is given.
    Verify {
        #[arg(long)]
        suite: Option<String>,
        #[arg(long, env = "QSIGMA_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        cases: Option<usize>,
    },
    /// Parse an element and print its canonical form.
    Parse {
        #[arg(allow_hyphen_values = true)]
        text: String,
    },
}

/// Exit status, captured output.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn verdict(pass: bool, stdout: String) -> Self {
        Outcome {
            code: if pass { EXIT_OK } else { EXIT_FAILURE },
            stdout,
            stderr: String::new(),
        }
    }

    fn input(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }

    fn failure(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: EXIT_FAILURE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

impl From<InputError> for Outcome {
    fn from(e: InputError) -> Self {
        Outcome::input(e)
    }
}

macro_rules! input {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return Outcome::input(e),
        }
    };
}

pub fn execute(cli: Cli) -> Outcome {
    match cli.command {
        Command::Bracket { lhs, rhs, subst } => bracket(&lhs, &rhs, subst.as_deref()),
        Command::Embed { element, s, m, window } => embed(&element, &s, m, &window),
        Command::Qfcheck { weight } => qfcheck(&weight),
        Command::Classify { weight, convention } => classify(&weight, &convention),
        Command::Labels { module } => labels(&module),
        Command::Roundtrip { weight, convention } => roundtrip(&weight, &convention),
        Command::Verify { suite, seed, cases } => verify(suite.as_deref(), seed, cases),
        Command::Parse { text } => parse(&text),
    }
}

fn element_arg(flag: &str, text: &str) -> Result<SuperQElement, String> {
    parse_element(text).map_err(|e| format!("{flag}: {e}"))
}

fn substitute(x: &SuperQElement, assignment: &str) -> Result<SuperQElement, String> {
    let (name, value) = assignment
        .split_once('=')
        .ok_or_else(|| format!("--subst: expected NAME=VALUE, got {assignment:?}"))?;
    let var = var_index(name.trim()).ok_or_else(|| format!("--subst: unknown symbol {name:?}"))?;
    let value = parse_scalar(value)
        .map_err(|e| format!("--subst: {e}"))?
        .as_rational()
        .ok_or_else(|| "--subst: value must be rational".to_string())?;
    let sub = |c: &Scalar| c.substitute(var, &value).map_err(|e| format!("--subst: {e}"));
    let mut out = SuperQElement::central(sub(x.central_part())?);
    for (n, sector, f) in x.terms() {
        let mut g = LaurentPoly::zero();
        for (k, c) in f.terms() {
            g.add_term(k, sub(c)?);
        }
        out.add_term(n, sector, g);
    }
    Ok(out)
}

fn bracket(lhs: &str, rhs: &str, subst: Option<&str>) -> Outcome {
    let x = input!(element_arg("--lhs", lhs));
    let y = input!(element_arg("--rhs", rhs));
    let mut z = x.bracket(&y);
    if let Some(assignment) = subst {
        z = input!(substitute(&z, assignment));
    }
    Outcome::ok(format!("{}\n", element_string(&z)))
}

fn parse_window(text: &str) -> Result<(Half, Half), String> {
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| format!("--window: expected A:B, got {text:?}"))?;
    let lo: Half = a.parse().map_err(|e| format!("--window: {e}"))?;
    let hi: Half = b.parse().map_err(|e| format!("--window: {e}"))?;
    if lo > hi {
        return Err(format!("--window: empty range {text:?}"));
    }
    Ok((lo, hi))
}

fn embed(element: &str, s: &str, m: usize, window: &str) -> Outcome {
    let x = input!(element_arg("--element", element));
    let s = input!(parse_scalar(s).map_err(|e| format!("--s: {e}")));
    let (lo, hi) = input!(parse_window(window));
    let op = input!(phi_hat(&x, &s, m));
    let cells = op.window(lo, hi);
    let mut labels = Vec::new();
    let mut k = lo;
    while k <= hi {
        labels.push(k);
        k = k + Half::HALF;
    }
    let mut grid: Vec<Vec<String>> = vec![std::iter::once(String::new())
        .chain(labels.iter().map(Half::to_string))
        .collect()];
    for &i in &labels {
        let mut row = vec![i.to_string()];
        for &j in &labels {
            row.push(cells.get(&(i, j)).map(|e| e.to_string()).unwrap_or_else(|| "0".into()));
        }
        grid.push(row);
    }
    let widths: Vec<usize> = (0..grid[0].len())
        .map(|c| grid.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &grid {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:>w$}"))
            .collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
    let _ = writeln!(out, "central: {}", op.central);
    Outcome::ok(out)
}

fn gl_report(r: &QuasifiniteReport) -> String {
    let mut out = format!("quasifinite: {}\n", r.quasifinite);
    for v in &r.violations {
        let _ = writeln!(out, "  l = {}, k = {}: relation value {}", v.l, v.k, v.value);
    }
    for (l, side) in &r.tail_failures {
        let side = if *side < 0 { "negative" } else { "positive" };
        let _ = writeln!(out, "  l = {l}: {side} tails do not cancel");
    }
    out
}

fn qfcheck(path: &std::path::Path) -> Outcome {
    let v = input!(io::read_json(path));
    match input!(io::weight_file(&v)) {
        WeightFile::SSq(w) => match check_qf(&w) {
            Ok(r) => Outcome::verdict(r.quasifinite, format!("{r}\n")),
            Err(e) => Outcome::failure(e),
        },
        WeightFile::Gl(w) => {
            let r = w.quasifinite();
            Outcome::verdict(r.quasifinite, gl_report(&r))
        }
        WeightFile::Raw(w) => {
            let r = check_qf_raw(&w);
            Outcome::verdict(r.quasifinite, format!("{r}\n"))
        }
    }
}

fn convention<'a>(reg: &'a ConventionRegistry, name: &str) -> Result<&'a dyn qsigma_core::SynthesisConvention, String> {
    reg.get(name).ok_or_else(|| {
        format!("unknown convention {name:?}; known: {}", reg.names().join(", "))
    })
}

fn classify(path: &std::path::Path, name: &str) -> Outcome {
    let v = input!(io::read_json(path));
    let w = input!(io::ssq_weight(&v, "$"));
    let reg = ConventionRegistry::default();
    let conv = input!(convention(&reg, name));
    match conv.synthesize(&w.p12, &w.p21) {
        Ok(ds) => {
            let json = serde_json::Value::Array(ds.iter().map(io::descriptor_json).collect());
            Outcome::ok(format!("{}\n", serde_json::to_string_pretty(&json).expect("serializable")))
        }
        Err(e) => Outcome::failure(e),
    }
}

fn labels(path: &std::path::Path) -> Outcome {
    let v = input!(io::read_json(path));
    let ds = input!(io::descriptors(&v));
    match tensor_labels(&ds) {
        Ok(w) => Outcome::ok(format!("{w}\n")),
        Err(e) => Outcome::input(e),
    }
}

fn roundtrip(path: &std::path::Path, name: &str) -> Outcome {
    let v = input!(io::read_json(path));
    let w = input!(io::ssq_weight(&v, "$"));
    let reg = ConventionRegistry::default();
    let conv = input!(convention(&reg, name));
    let r = conv.roundtrip(&w.p12, &w.p21);
    Outcome::verdict(r.pass, format!("{r}\n"))
}

fn verify(suite: Option<&str>, seed: u64, cases: Option<usize>) -> Outcome {
    let reg = SuiteRegistry::default();
    let Some(name) = suite else {
        let mut out = String::new();
        for s in reg.iter() {
            let _ = writeln!(out, "{:<20} {:>4}  {}", s.name(), s.default_cases(), s.summary());
        }
        return Outcome::ok(out);
    };
    let names: BTreeSet<&str> = reg.names().into_iter().collect();
    let Some(s) = reg.get(name) else {
        return Outcome::input(format!(
            "unknown suite {name:?}; known: {}",
            names.into_iter().collect::<Vec<_>>().join(", ")
        ));
    };
    let r = run_suite(s, seed, cases.unwrap_or(s.default_cases()));
    Outcome::verdict(r.passed(), format!("{r}\n"))
}

fn parse(text: &str) -> Outcome {
    match parse_element(text) {
        Ok(x) => Outcome::ok(format!("{}\n", element_string(&x))),
        Err(e) => Outcome::input(format!("syntax error: {e}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exit(args: &[&str]) -> i32 {
        let args = std::iter::once("qsigma").chain(args.iter().copied());
        match Cli::try_parse_from(args) {
            Ok(cli) => execute(cli).code,
            Err(e) => e.exit_code(),
        }
    }

    fn fixture(name: &str) -> String {
        format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
    }

    #[test]
    fn success_is_zero() {
        assert_eq!(exit(&["parse", "E11"]), EXIT_OK);
        assert_eq!(exit(&["qfcheck", "--weight", &fixture("q_one.json")]), EXIT_OK);
    }

    #[test]
    fn mathematical_negatives_are_one() {
        assert_eq!(exit(&["qfcheck", "--weight", &fixture("gl_tails.json")]), EXIT_FAILURE);
        let w = fixture("mixed_classes.json");
        assert_eq!(exit(&["roundtrip", "--weight", &w, "--convention", "literal-display"]), EXIT_FAILURE);
        assert_eq!(exit(&["verify", "--suite", "gradation", "--cases", "20"]), EXIT_FAILURE);
    }

    #[test]
    fn malformed_input_is_two() {
        assert_eq!(exit(&["parse", "z^1*(T+"]), EXIT_INPUT);
        assert_eq!(exit(&["qfcheck", "--weight", &fixture("missing.json")]), EXIT_INPUT);
        assert_eq!(exit(&["qfcheck", "--weight", &fixture("bad_weight.json")]), EXIT_INPUT);
        assert_eq!(exit(&["embed", "--element", "E11", "--s", "s", "--window", "2:1"]), EXIT_INPUT);
        assert_eq!(exit(&["verify", "--suite", "no-such-suite"]), EXIT_INPUT);
        assert_eq!(exit(&["bracket", "--lhs", "E11"]), EXIT_INPUT);
        assert_eq!(exit(&["bracket", "--lhs", "E11", "--rhs", "E22", "--subst", "x=1"]), EXIT_INPUT);
    }

    #[test]
    fn subst_specializes_coefficients() {
        let cli = Cli::try_parse_from([
            "qsigma", "bracket", "--lhs", "z*T*E11", "--rhs", "z^-1*T^-1*E11", "--subst", "q=2",
        ])
        .unwrap();
        assert_eq!(execute(cli).stdout, "(1/2)*C\n");
    }

    #[test]
    fn window_parsing() {
        assert_eq!(parse_window("-1/2:1").unwrap(), (-Half::HALF, Half::ONE));
        assert!(parse_window("1").is_err());
        assert!(parse_window("1:0").is_err());
    }
}
