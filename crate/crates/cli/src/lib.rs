//! The `pacheck` command line, as a library so it can be driven in tests.
//!
//! Exit codes: 0 accepted/true, 1 rejected/false, 2 usage or input error,
//! 3 unknown (`eval` only).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use pacheck::beta::{beta, encode_sequence};
use pacheck::codec::{decode, encode, Codec, Decoded, GodelNumber};
use pacheck::corpus::{compute_matrix, load_corpus, CorpusError, Matrix};
use pacheck::diagonal::{anand_fixedpoint, goedel_sentence};
use pacheck::kernel::{
    check_certificate, parse_certificate, CertVerdict, CertificateDir, Checker, ProofScript, SystemName,
};
use pacheck::models::{eval_formula, Env, Model, Ordinal, TruthValue};
use pacheck::primrec::{
    check_representation, compile_representation, eval_pr, parse_definitions, prf_check, prf_prime_check, q_check,
    representation_sweep,
};
use pacheck::syntax::{parse_formula, parse_term, Formula};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "pacheck", version, about = "Proof checker and toolkit for first-order arithmetic")]
struct Cli {
    /// Gödel numbering: positional or prime (default from PACHECK_CODEC).
    #[arg(long, global = true)]
    codec: Option<String>,
    /// Print one `RESULT <subcommand> <verdict> <detail>` line per result.
    #[arg(long, global = true)]
    porcelain: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a proof script (.prf) or an ω-Specification certificate (.cert).
    Check {
        file: PathBuf,
        /// Profile to check under; defaults to the script's @system header.
        #[arg(long)]
        system: Option<String>,
    },
    /// Gödel number of a formula or term, or of a script file with --file.
    Encode {
        text: Option<String>,
        #[arg(long, conflicts_with = "text")]
        file: Option<PathBuf>,
    },
    /// Decode a Gödel number back to its term, formula or script.
    Decode { number: String },
    /// Gödel's Beta function.
    Beta {
        #[command(subcommand)]
        op: BetaOp,
    },
    /// Compile a primitive recursive definition to its representing formula.
    CompilePr {
        /// Definition file: `name = expression` per line.
        file: PathBuf,
        /// Function to compile; defaults to the last definition.
        #[arg(long)]
        name: Option<String>,
        /// Check the representation semantically at these arguments, e.g. 2,3.
        #[arg(long)]
        check: Option<String>,
    },
    /// prf(x, y): PROOF proves FORMULA. With --prime, prf'(u, y): PROOF proves FORMULA[x1 := #FORMULA].
    Prf {
        /// Script file or decimal Gödel number.
        proof: String,
        /// Formula text or decimal Gödel number.
        formula: String,
        #[arg(long)]
        prime: bool,
        #[arg(long, default_value = "PA")]
        system: String,
    },
    /// q(x, y): PROOF proves K(#K) for the one-variable formula K.
    Q {
        /// Formula text or decimal Gödel number.
        formula: String,
        /// Script file or decimal Gödel number.
        proof: String,
        #[arg(long, default_value = "PA")]
        system: String,
    },
    /// Diagonal sentence of a formula W(x1, x2) read from a file.
    Diag {
        #[arg(long, value_enum)]
        mode: DiagMode,
        #[arg(long)]
        formula: PathBuf,
    },
    /// Evaluate a formula in the standard model or the ordinal model CA.
    Eval {
        formula: String,
        #[arg(long, default_value = "standard")]
        model: String,
        /// Quantifiers range over the first N model elements.
        #[arg(long, default_value_t = 8)]
        bound: usize,
        /// Variable bindings, e.g. x1=omega,x2=3.
        #[arg(long, value_delimiter = ',')]
        bind: Vec<String>,
    },
    /// List the eight system profiles.
    Systems,
    /// Check every script in a directory under all profiles.
    Corpus {
        #[arg(default_value = "corpus")]
        dir: PathBuf,
        /// Expected matrix; defaults to <dir>/expected-matrix.txt.
        #[arg(long)]
        expected: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum BetaOp {
    /// Minimal witness (u, v) for a comma-separated sequence.
    Encode { sequence: String },
    /// beta(u, v, i).
    Eval { u: String, v: String, i: String },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DiagMode {
    Goedel,
    Anand,
}

/// What a run printed and how it exited.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Ctx {
    codec: Codec,
    porcelain: bool,
    out: String,
}

/// An input or usage error, reported on one line with exit code 2.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Run = Result<i32, Failure>;

impl Ctx {
    fn line(&mut self, text: impl AsRef<str>) {
        self.out.push_str(text.as_ref());
        self.out.push('\n');
    }

    /// Human text normally; a single RESULT line under --porcelain.
    fn result(&mut self, sub: &str, verdict: &str, detail: &str, human: &str) {
        if self.porcelain {
            let detail = if detail.is_empty() { "-" } else { detail };
            let _ = writeln!(self.out, "RESULT {sub} {verdict} {detail}");
        } else {
            self.line(human);
        }
    }

    /// Lines printed only in human mode.
    fn info(&mut self, text: impl AsRef<str>) {
        if !self.porcelain {
            self.line(text);
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let codec = match cli.codec.as_deref() {
        Some(name) => name.parse::<Codec>(),
        None => Codec::from_env(),
    };
    let codec = match codec {
        Ok(c) => c,
        Err(e) => return Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {e}\n") },
    };
    let mut ctx = Ctx { codec, porcelain: cli.porcelain, out: String::new() };
    let result = match cli.command {
        Command::Check { file, system } => cmd_check(&mut ctx, &file, system.as_deref()),
        Command::Encode { text, file } => cmd_encode(&mut ctx, text.as_deref(), file.as_deref()),
        Command::Decode { number } => cmd_decode(&mut ctx, &number),
        Command::Beta { op } => cmd_beta(&mut ctx, op),
        Command::CompilePr { file, name, check } => cmd_compile_pr(&mut ctx, &file, name.as_deref(), check.as_deref()),
        Command::Prf { proof, formula, prime, system } => cmd_prf(&mut ctx, &proof, &formula, prime, &system),
        Command::Q { formula, proof, system } => cmd_q(&mut ctx, &formula, &proof, &system),
        Command::Diag { mode, formula } => cmd_diag(&mut ctx, mode, &formula),
        Command::Eval { formula, model, bound, bind } => cmd_eval(&mut ctx, &formula, &model, bound, &bind),
        Command::Systems => cmd_systems(&mut ctx),
        Command::Corpus { dir, expected } => cmd_corpus(&mut ctx, &dir, expected.as_deref()),
    };
    match result {
        Ok(code) => Outcome { code, stdout: ctx.out, stderr: String::new() },
        Err(Failure(msg)) => Outcome { code: EXIT_USAGE, stdout: ctx.out, stderr: format!("error: {msg}\n") },
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))
}

fn parse_number(text: &str) -> Result<BigUint, Failure> {
    text.trim().parse::<BigUint>().map_err(|_| Failure(format!("not a natural number: {text:?}")))
}

fn parse_system(name: &str) -> Result<SystemName, Failure> {
    Ok(name.parse::<SystemName>()?)
}

fn verdict_word(ok: bool) -> (&'static str, i32) {
    if ok {
        ("ACCEPTED", EXIT_OK)
    } else {
        ("REJECTED", EXIT_NO)
    }
}

fn cmd_check(ctx: &mut Ctx, file: &Path, system: Option<&str>) -> Run {
    let text = read(file)?;
    let dir = file.parent().map(Path::to_path_buf).unwrap_or_default();
    if file.extension().and_then(|e| e.to_str()) == Some("cert") {
        let name = parse_system(system.unwrap_or("omega2-PA"))?;
        let cert = parse_certificate(&text)?;
        let verdict = check_certificate(&cert, &name.profile(), ctx.codec)?;
        let ok = matches!(verdict, CertVerdict::CertifiedUpTo(_));
        let (word, code) = verdict_word(ok);
        ctx.result("check", word, &verdict.to_string(), &verdict.to_string());
        return Ok(code);
    }
    let script = ProofScript::parse(&text)?;
    let name = match system {
        Some(s) => parse_system(s)?,
        None => script.system.ok_or_else(|| Failure("no --system given and the script has no @system header".into()))?,
    };
    let certs = CertificateDir(dir);
    let checker = Checker { certificates: &certs, codec: ctx.codec };
    let verdict = checker.check(&script, &name.profile());
    let (word, code) = verdict_word(verdict.is_accepted());
    let detail = verdict.to_string();
    let detail = detail.strip_prefix(word).unwrap_or(&detail).trim();
    ctx.result("check", word, &format!("{name} {detail}").trim_end().to_string(), &verdict.to_string());
    Ok(code)
}

fn cmd_encode(ctx: &mut Ctx, text: Option<&str>, file: Option<&Path>) -> Run {
    let (kind, gn) = match (text, file) {
        (_, Some(path)) => ("script", encode(&ProofScript::parse(&read(path)?)?, ctx.codec)),
        (Some(text), None) => match parse_formula(text) {
            Ok(f) => ("formula", encode(&f, ctx.codec)),
            Err(fe) => match parse_term(text) {
                Ok(t) => ("term", encode(&t, ctx.codec)),
                Err(_) => return Err(Failure(format!("not a formula or term: {fe}"))),
            },
        },
        (None, None) => return Err(Failure("give a formula or term, or --file <script>".into())),
    };
    ctx.result("encode", kind, &gn.value.to_string(), &gn.value.to_string());
    Ok(EXIT_OK)
}

fn cmd_decode(ctx: &mut Ctx, number: &str) -> Run {
    let g = GodelNumber::new(parse_number(number)?, ctx.codec);
    let (kind, text) = match decode(&g)? {
        Decoded::Term(t) => ("term", t.to_string()),
        Decoded::Formula(f) => ("formula", f.to_string()),
        Decoded::Script(s) => ("script", s.render()),
    };
    let text = text.trim_end();
    ctx.result("decode", kind, &text.replace('\n', " ; "), text);
    Ok(EXIT_OK)
}

fn cmd_beta(ctx: &mut Ctx, op: BetaOp) -> Run {
    match op {
        BetaOp::Encode { sequence } => {
            let seq = sequence
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(parse_number)
                .collect::<Result<Vec<_>, _>>()?;
            let w = encode_sequence(&seq);
            let text = format!("u={} v={}", w.u, w.v);
            ctx.result("beta", "OK", &text, &text);
        }
        BetaOp::Eval { u, v, i } => {
            let value = beta(&parse_number(&u)?, &parse_number(&v)?, &parse_number(&i)?);
            ctx.result("beta", "OK", &value.to_string(), &value.to_string());
        }
    }
    Ok(EXIT_OK)
}

fn cmd_compile_pr(ctx: &mut Ctx, file: &Path, name: Option<&str>, check: Option<&str>) -> Run {
    let defs = parse_definitions(&read(file)?)?;
    let (fname, f) = match name {
        Some(n) => defs.iter().find(|(d, _)| d == n).ok_or_else(|| Failure(format!("no definition named {n:?}")))?,
        None => defs.last().ok_or_else(|| Failure(format!("no definitions in {}", file.display())))?,
    };
    let formula = compile_representation(f)?;
    ctx.info(format!("{fname} = {f}"));
    let Some(args) = check else {
        ctx.result("compile-pr", "OK", &formula.to_string(), &formula.to_string());
        return Ok(EXIT_OK);
    };
    ctx.info(formula.to_string());
    let args = args.split(',').map(parse_number).collect::<Result<Vec<_>, _>>()?;
    let value = eval_pr(f, &args)?;
    let holds: Vec<String> = representation_sweep(f, &args)?
        .into_iter()
        .filter(|(_, t)| *t == TruthValue::True)
        .map(|(r, _)| r.to_string())
        .collect();
    let ok = check_representation(f, &args)?;
    let (word, code) = verdict_word(ok);
    let shown: Vec<String> = args.iter().map(|a| a.to_string()).collect();
    let detail = format!("{fname}({})={value} holds-at=[{}]", shown.join(","), holds.join(","));
    ctx.result("compile-pr", word, &detail, &format!("{word} {detail}"));
    Ok(code)
}

/// A decimal Gödel number, or else a script file.
fn proof_number(ctx: &Ctx, arg: &str) -> Result<GodelNumber, Failure> {
    if let Ok(n) = arg.parse::<BigUint>() {
        return Ok(GodelNumber::new(n, ctx.codec));
    }
    Ok(encode(&ProofScript::parse(&read(Path::new(arg))?)?, ctx.codec))
}

/// A decimal Gödel number, or else formula text.
fn formula_number(ctx: &Ctx, arg: &str) -> Result<GodelNumber, Failure> {
    if let Ok(n) = arg.parse::<BigUint>() {
        return Ok(GodelNumber::new(n, ctx.codec));
    }
    Ok(encode(&parse_formula(arg)?, ctx.codec))
}

fn cmd_prf(ctx: &mut Ctx, proof: &str, formula: &str, prime: bool, system: &str) -> Run {
    let p = parse_system(system)?.profile();
    let y = proof_number(ctx, proof)?;
    let x = formula_number(ctx, formula)?;
    let (sub, holds) = if prime { ("prf'", prf_prime_check(&x, &y, &p)) } else { ("prf", prf_check(&y, &x, &p)) };
    let word = if holds { "True" } else { "False" };
    ctx.result("prf", word, &format!("{sub} {system}"), word);
    Ok(if holds { EXIT_OK } else { EXIT_NO })
}

fn cmd_q(ctx: &mut Ctx, formula: &str, proof: &str, system: &str) -> Run {
    let p = parse_system(system)?.profile();
    let x = formula_number(ctx, formula)?;
    let y = proof_number(ctx, proof)?;
    let holds = q_check(&x, &y, &p);
    let word = if holds { "True" } else { "False" };
    ctx.result("q", word, system, word);
    Ok(if holds { EXIT_OK } else { EXIT_NO })
}

fn cmd_diag(ctx: &mut Ctx, mode: DiagMode, file: &Path) -> Run {
    let w = parse_formula(read(file)?.trim())?;
    let d = match mode {
        DiagMode::Goedel => goedel_sentence(&w, ctx.codec)?,
        DiagMode::Anand => anand_fixedpoint(&w, ctx.codec)?,
    };
    if ctx.porcelain {
        ctx.result("diag", "OK", &format!("{} {}", d.fixed_gn.value, d.sentence), "");
    } else {
        ctx.line(d.fixed_gn.value.to_string());
        ctx.line(d.sentence.to_string());
    }
    Ok(EXIT_OK)
}

fn parse_binding(text: &str) -> Result<(u32, Ordinal), Failure> {
    let (var, value) = text.split_once('=').ok_or_else(|| Failure(format!("bad binding {text:?}: expected xN=value")))?;
    let index = var
        .trim()
        .strip_prefix('x')
        .and_then(|n| n.parse::<u32>().ok())
        .filter(|n| *n > 0)
        .ok_or_else(|| Failure(format!("bad variable {var:?}")))?;
    Ok((index, value.trim().parse::<Ordinal>()?))
}

fn cmd_eval(ctx: &mut Ctx, formula: &str, model: &str, bound: usize, binds: &[String]) -> Run {
    let f: Formula = parse_formula(formula)?;
    let model: Model = model.parse()?;
    let env: Env = binds.iter().map(|b| parse_binding(b)).collect::<Result<_, _>>()?;
    let value = eval_formula(&f, model, &env, bound, None)?;
    let word = value.to_string();
    ctx.result("eval", &word, &format!("{} {bound}", model.as_str()), &word);
    Ok(match value {
        TruthValue::True => EXIT_OK,
        TruthValue::False => EXIT_NO,
        TruthValue::Unknown => EXIT_UNKNOWN,
    })
}

fn cmd_systems(ctx: &mut Ctx) -> Run {
    for name in SystemName::ALL {
        let p = name.profile();
        let axioms: Vec<&str> = p.axioms.iter().map(|a| a.as_str()).collect();
        let induction: Vec<&str> = p.induction.iter().map(|i| i.as_str()).collect();
        let rules: Vec<&str> = p.rules.iter().map(|r| r.as_str()).collect();
        let list = |v: &[&str]| if v.is_empty() { "-".to_string() } else { v.join(",") };
        let detail = format!("axioms={} induction={} rules={}", list(&axioms), list(&induction), list(&rules));
        ctx.result("systems", name.as_str(), &detail, &format!("{:<10} {detail}", name.as_str()));
    }
    Ok(EXIT_OK)
}

fn cmd_corpus(ctx: &mut Ctx, dir: &Path, expected: Option<&Path>) -> Run {
    let entries = match load_corpus(dir) {
        Ok(e) => e,
        Err(e @ CorpusError::Empty(_)) => return Err(Failure(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    let matrix = compute_matrix(dir, &entries, ctx.codec);
    if ctx.porcelain {
        for row in &matrix.rows {
            let cells: Vec<&str> = row.accepted.iter().map(|a| if *a { "ACCEPT" } else { "REJECT" }).collect();
            ctx.result("corpus", &row.name, &cells.join(","), "");
        }
    } else {
        ctx.line(matrix.to_string());
    }
    let violations = matrix.monotonicity_violations();
    for (script, small, large) in &violations {
        let detail = format!("{script} accepted under {small} but rejected under {large}");
        ctx.result("corpus", "MONOTONICITY", &detail.replace(' ', "_"), &format!("monotonicity violation: {detail}"));
    }
    if !violations.is_empty() {
        return Ok(EXIT_NO);
    }
    let expected_path = expected.map(Path::to_path_buf).unwrap_or_else(|| dir.join("expected-matrix.txt"));
    if !expected_path.exists() && expected.is_none() {
        ctx.result("corpus", "UNCHECKED", "no-expected-matrix", "no expected matrix to compare against");
        return Ok(EXIT_OK);
    }
    let want = Matrix::parse(&read(&expected_path)?)?;
    let diffs = matrix.differences(&want);
    for d in &diffs {
        ctx.result("corpus", "DIFF", &d.replace(' ', "_"), &format!("differs: {d}"));
    }
    let (word, code) = if diffs.is_empty() { ("MATCH", EXIT_OK) } else { ("MISMATCH", EXIT_NO) };
    ctx.result("corpus", word, &expected_path.display().to_string(), &format!("{word} {}", expected_path.display()));
    Ok(code)
}
