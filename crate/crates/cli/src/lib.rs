//! The `comprelie` command-line front end.
//!
//! [`run`] parses arguments, executes one command and returns the exit code
//! together with what would be written to stdout and stderr; the binary is a
//! thin wrapper around it. Exit codes: 0 success, 1 a check (or
//! classification, or isomorphism search) came out negative, 2 usage, parse
//! or evaluation error.

pub mod descriptor;
pub mod parse;

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

use comprelie_core::algebra::{AlgebraCtx, Element, Monomial, Scalar};
use comprelie_core::classify::{
    self, ClassifyError, KxSequence, LaurentTag, SymInvariants,
};
use comprelie_core::prelie::{
    fdb_bracket, lie_bracket, LinearForm, PreLieStructure, Variant,
};
use comprelie_core::verify::{self, CheckBound, Identity, Report, VerifyError, VerifyOptions};

use descriptor::{parse_ctx, parse_scalar, parse_scalar_list, parse_target, Target};
use parse::{parse_expr, parse_group_element, ParseError};

/// Environment variable capping the verifier's worker threads.
pub const THREADS_ENV: &str = "COMPRELIE_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Eval(String),
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        CliError::Eval(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(name = "comprelie", version, about = "Exact computations with Com-PreLie bialgebras")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct TargetArgs {
    /// Structure descriptor, e.g. "svf:dim=2,f=1,0,lambda=3".
    #[arg(long)]
    structure: Option<String>,
    /// Ambient algebra for a hand-written product table, e.g. "sym:dim=2".
    #[arg(long)]
    ctx: Option<String>,
    /// CSV file: a coefficient family for group descriptors, or
    /// left,right,product rows with --ctx.
    #[arg(long)]
    table: Option<PathBuf>,
}

impl TargetArgs {
    fn target(&self) -> Result<Target, CliError> {
        parse_target(self.structure.as_deref(), self.ctx.as_deref(), self.table.as_deref())
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an expression; with --prelie the top-level product is ∙.
    Eval {
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long)]
        prelie: bool,
        expr: String,
    },
    /// The Lie bracket [a,b] = a∙b − b∙a, or the Faà di Bruno bracket.
    Bracket {
        #[command(flatten)]
        target: TargetArgs,
        /// Faà di Bruno bracket [e_k, e_l].
        #[arg(long, num_args = 2, value_names = ["K", "L"], allow_negative_numbers = true)]
        fdb: Option<Vec<i64>>,
        a: Option<String>,
        b: Option<String>,
    },
    /// Check identities exhaustively up to a degree bound.
    Check {
        #[command(flatten)]
        target: TargetArgs,
        /// Identities or groups of checks, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        axiom: Vec<String>,
        #[arg(long)]
        degree: u32,
        /// L1 radius of the group window.
        #[arg(long, default_value_t = 2)]
        radius: u32,
    },
    /// Classify a parameter sequence or a product.
    Classify(ClassifyArgs),
    /// Decide whether S(V,f,λ) and S(V,g,μ) are isomorphic.
    Iso {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Decompose a cocycle, build the gprime Lie basis or list primitives.
    Decompose(DecomposeArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReadAs {
    /// `X∙X^j = λ_j X^{j+1}` and the four graded families.
    Graded,
    /// Projection coefficients and the bialgebra families.
    Bialgebra,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    /// λ_0,λ_1,… of a graded product on K[X].
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["laurent_window", "structure"])]
    kx_sequence: Option<String>,
    /// l:a_l pairs of a product on K[X,X⁻¹]; absent indices are zero.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "structure")]
    laurent_window: Option<String>,
    #[command(flatten)]
    target: TargetArgs,
    /// Degree bound for reading a product.
    #[arg(long, default_value_t = 6)]
    degree: u32,
    /// Window radius for Laurent products.
    #[arg(long)]
    radius: Option<u32>,
    /// How to read a product on K[X].
    #[arg(long = "as", value_enum, default_value_t = ReadAs::Graded)]
    read_as: ReadAs,
}

#[derive(Args, Debug)]
struct DecomposeArgs {
    /// CSV file of basis,value rows of a cocycle φ (needs --ctx).
    #[arg(long, conflicts_with_all = ["lie_basis", "primitive"])]
    cocycle: Option<PathBuf>,
    /// Lie basis change for gprime(λ, μ).
    #[arg(long, conflicts_with = "primitive")]
    lie_basis: bool,
    /// Skew-primitive elements for a pair g, h.
    #[arg(long)]
    primitive: bool,
    #[arg(long)]
    ctx: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    h: Option<String>,
    /// Work modulo KG·S⁺(V) ⊗ KG·S⁺(V) (primitives only; h = g).
    #[arg(long)]
    mod_positive: bool,
    #[arg(long, default_value_t = 4)]
    degree: u32,
    #[arg(long, default_value_t = 2)]
    radius: u32,
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// One command result: text for humans, JSON for machines, and whether it
/// is a negative answer (exit code 1).
struct Output {
    text: String,
    json: Json,
    negative: bool,
}

impl Output {
    fn ok(text: impl Into<String>, json: Json) -> Self {
        Output {
            text: text.into(),
            json,
            negative: false,
        }
    }
}

/// Runs one invocation. `args` includes the program name; `threads` is the
/// value of [`THREADS_ENV`], if set.
pub fn run<I, T>(args: I, threads: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let result = verify_options(threads).and_then(|opts| execute(cli.command, &opts));
    match result {
        Ok(out) => {
            let mut stdout = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("JSON values serialize")
            } else {
                out.text
            };
            stdout.push('\n');
            Outcome {
                code: i32::from(out.negative),
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn verify_options(threads: Option<&str>) -> Result<VerifyOptions, CliError> {
    match threads {
        None => Ok(VerifyOptions::default()),
        Some(t) => match t.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(VerifyOptions::with_threads(n)),
            _ => Err(CliError::Usage(format!(
                "{THREADS_ENV} must be a positive integer, got '{t}'"
            ))),
        },
    }
}

fn execute(cmd: Command, opts: &VerifyOptions) -> Result<Output, CliError> {
    match cmd {
        Command::Eval {
            target,
            prelie,
            expr,
        } => eval(&target, prelie, &expr),
        Command::Bracket { target, fdb, a, b } => bracket(&target, fdb, a, b),
        Command::Check {
            target,
            axiom,
            degree,
            radius,
        } => check(&target, &axiom, CheckBound::new(degree, radius), opts),
        Command::Classify(args) => classify_cmd(&args),
        Command::Iso { f, lambda, g, mu } => iso(&f, &lambda, &g, &mu),
        Command::Decompose(args) => decompose(&args),
    }
}

fn eval_err(e: impl std::fmt::Display) -> CliError {
    CliError::Eval(e.to_string())
}

fn element_output(e: &Element) -> Output {
    Output::ok(e.to_string(), json!({ "result": e.to_string() }))
}

fn eval(target: &TargetArgs, prelie: bool, text: &str) -> Result<Output, CliError> {
    let target = target.target()?;
    let ctx = target.ctx();
    let expr = parse_expr(ctx, text)?;
    let value = if prelie {
        expr.eval_root_product(target.product()).map_err(CliError::Eval)?
    } else {
        expr.eval(ctx).map_err(CliError::Eval)?
    };
    Ok(element_output(&value))
}

fn bracket(
    target: &TargetArgs,
    fdb: Option<Vec<i64>>,
    a: Option<String>,
    b: Option<String>,
) -> Result<Output, CliError> {
    if let Some(kl) = fdb {
        if a.is_some() || target.structure.is_some() || target.ctx.is_some() {
            return Err(CliError::Usage("--fdb takes no structure or operands".into()));
        }
        let v = fdb_bracket(kl[0], kl[1]).map_err(eval_err)?;
        return Ok(Output::ok(v.to_string(), json!({ "result": v.to_string() })));
    }
    let (Some(a), Some(b)) = (a, b) else {
        return Err(CliError::Usage("bracket needs two operands or --fdb K L".into()));
    };
    let target = target.target()?;
    let ctx = target.ctx();
    let a = parse_expr(ctx, &a)?.eval(ctx).map_err(CliError::Eval)?;
    let b = parse_expr(ctx, &b)?.eval(ctx).map_err(CliError::Eval)?;
    let v = lie_bracket(target.product(), &a, &b).map_err(eval_err)?;
    Ok(element_output(&v))
}

fn report_output(subject: &str, checks: &[String], r: Report) -> Output {
    Output {
        text: r.to_string(),
        json: json!({
            "structure": subject,
            "checks": checks,
            "report": r,
        }),
        negative: !r.passed(),
    }
}

fn need_structure<'a>(target: &'a Target, check: &str) -> Result<&'a PreLieStructure, CliError> {
    target
        .structure()
        .ok_or_else(|| CliError::Usage(format!("'{check}' needs a --structure")))
}

fn svf_params<'a>(s: &'a PreLieStructure, check: &str) -> Result<(&'a LinearForm, &'a Scalar), CliError> {
    match s.variant() {
        Variant::SymFLambda { f, lambda } => Ok((f, lambda)),
        _ => Err(CliError::Usage(format!("'{check}' needs an svf structure"))),
    }
}

/// Checks available beyond single identity names.
const GROUPS: [&str; 9] = [
    "comprelie",
    "bialgebra",
    "zinbiel-axioms",
    "group-conditions",
    "mixed",
    "operators",
    "lie-structure",
    "leading-order",
    "sequence-relations",
];

fn run_check(
    target: &Target,
    name: &str,
    bound: &CheckBound,
    opts: &VerifyOptions,
) -> Result<Report, CliError> {
    let p = target.product();
    if let Some(id) = Identity::from_name(name) {
        return Ok(verify::check_identity(p, id, bound, opts)?);
    }
    let d = bound.max_degree;
    Ok(match name {
        "comprelie" => verify::check_comprelie_bialgebra(p, bound, opts)?,
        "bialgebra" => verify::check_bialgebra(target.ctx(), bound, opts)?,
        "zinbiel-axioms" => verify::check_zinbiel_axioms(p, bound, opts)?,
        "group-conditions" => {
            let s = need_structure(target, name)?;
            let table = s
                .group_table()
                .ok_or_else(|| CliError::Usage(format!("'{name}' needs a group structure")))?;
            verify::check_group_conditions(table, bound.group_radius)?
        }
        "mixed" => verify::check_theorem23_conditions(need_structure(target, name)?, bound, opts)?,
        "operators" => {
            let (f, lambda) = svf_params(need_structure(target, name)?, name)?;
            verify::check_operator_identities(f, lambda, d)?
        }
        "leading-order" => {
            let (f, lambda) = svf_params(need_structure(target, name)?, name)?;
            classify::corollary_check(f, lambda, d).map_err(eval_err)?
        }
        "lie-structure" => classify::prop9_structure_check(need_structure(target, name)?, d).map_err(eval_err)?,
        "sequence-relations" => {
            let s = need_structure(target, name)?;
            let seq: Option<Vec<Scalar>> = (0..=d).map(|j| s.kx_lambda(j)).collect();
            let seq = seq.ok_or_else(|| CliError::Usage("'sequence-relations' needs a kx structure".into()))?;
            classify::lemma6_check(&KxSequence::new(seq))
        }
        _ => {
            let known: Vec<&str> = Identity::ALL.iter().map(|i| i.name()).chain(GROUPS).collect();
            return Err(CliError::Usage(format!(
                "unknown check '{name}'; known: {}",
                known.join(", ")
            )));
        }
    })
}

fn check(
    target: &TargetArgs,
    names: &[String],
    bound: CheckBound,
    opts: &VerifyOptions,
) -> Result<Output, CliError> {
    let target = target.target()?;
    let names: Vec<String> = names.iter().map(|n| n.trim().to_string()).collect();
    let mut total = 0;
    for name in &names {
        let r = run_check(&target, name, &bound, opts)?;
        total += r.checked_count;
        if !r.passed() {
            let r = Report {
                checked_count: total,
                ..r
            };
            return Ok(report_output(&target.describe(), &names, r));
        }
    }
    Ok(report_output(&target.describe(), &names, Report::pass(total)))
}

fn classify_error(e: ClassifyError) -> Result<Output, CliError> {
    match e {
        ClassifyError::OracleInconsistent(w) | ClassifyError::RebuildMismatch(w) => Ok(Output {
            text: format!("inconsistent\n{w}"),
            json: json!({ "tag": { "family": "inconsistent" }, "witness": w }),
            negative: true,
        }),
        other => Err(eval_err(other)),
    }
}

fn parse_laurent_window(text: &str) -> Result<BTreeMap<i64, Scalar>, CliError> {
    let mut out = BTreeMap::new();
    for entry in text.split(',').map(str::trim).filter(|e| !e.is_empty()) {
        let (l, a) = entry
            .split_once(':')
            .ok_or_else(|| CliError::Usage(format!("expected l:a_l, got '{entry}'")))?;
        let l: i64 = l
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("'{l}' is not an integer index")))?;
        if out.insert(l, parse_scalar(a)?).is_some() {
            return Err(CliError::Usage(format!("index {l} given twice")));
        }
    }
    Ok(out)
}

fn laurent_output(a: &BTreeMap<i64, Scalar>, radius: u32) -> Output {
    let tag = classify::classify_laurent_window(a, radius);
    let negative = matches!(tag, LaurentTag::Inconsistent { .. });
    let window: BTreeMap<String, String> = a
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(l, v)| (l.to_string(), v.to_string()))
        .collect();
    Output {
        text: tag.to_string(),
        json: json!({ "kind": "laurent", "radius": radius, "window": window, "tag": tag }),
        negative,
    }
}

fn kx_output(seq: &KxSequence) -> Output {
    let c = classify::classify_kx_sequence(seq);
    let relations = classify::lemma6_check(seq);
    let negative = matches!(c.tag, classify::FamilyTag::Inconsistent { .. });
    let mut json = json!({ "kind": "kx", "sequence": seq, "tag": c.tag, "relations": relations });
    if c.is_underdetermined() {
        json["compatible"] = json!(c.compatible);
    }
    Output {
        text: c.to_string(),
        json,
        negative,
    }
}

fn classify_cmd(args: &ClassifyArgs) -> Result<Output, CliError> {
    if let Some(text) = &args.kx_sequence {
        let seq = KxSequence::new(parse_scalar_list(text)?);
        return Ok(kx_output(&seq));
    }
    if let Some(text) = &args.laurent_window {
        let a = parse_laurent_window(text)?;
        let widest = a.keys().map(|l| l.unsigned_abs()).max().unwrap_or(0);
        let radius = match args.radius {
            Some(r) => r,
            None => u32::try_from(widest).map_err(|_| CliError::Usage("index too large".into()))?,
        };
        if widest > radius as u64 {
            return Err(CliError::Usage(format!("index {widest} lies outside radius {radius}")));
        }
        return Ok(laurent_output(&a, radius));
    }
    let target = args.target.target()?;
    let p = target.product();
    match target.ctx() {
        AlgebraCtx::Polynomial => match args.read_as {
            ReadAs::Graded => match classify::read_kx_graded(p, args.degree) {
                Ok(seq) => Ok(kx_output(&seq)),
                Err(e) => classify_error(e),
            },
            ReadAs::Bialgebra => match classify::extract_kx_lambdas(p, args.degree) {
                Ok(seq) => {
                    let tag = classify::classify_kx_bialgebra(&seq);
                    let negative = matches!(tag, classify::KxBialgebraTag::Inconsistent { .. });
                    Ok(Output {
                        text: tag.to_string(),
                        json: json!({ "kind": "kx-bialgebra", "sequence": seq, "tag": tag }),
                        negative,
                    })
                }
                Err(e) => classify_error(e),
            },
        },
        AlgebraCtx::Laurent => {
            let radius = args.radius.unwrap_or(4);
            match classify::laurent_window(p, radius) {
                Ok(a) => Ok(laurent_output(&a, radius)),
                Err(e) => classify_error(e),
            }
        }
        AlgebraCtx::Symmetric { .. } => match classify::extract_sym_invariants(p, args.degree) {
            Ok(inv) => {
                let text = match &inv {
                    SymInvariants::Zero => "zero".to_string(),
                    SymInvariants::Structure { f, lambda } => {
                        PreLieStructure::sym_f_lambda(f.clone(), lambda.clone())
                            .map_err(eval_err)?
                            .to_string()
                    }
                };
                Ok(Output::ok(text, json!({ "kind": "svf", "tag": inv })))
            }
            Err(e) => classify_error(e),
        },
        other => Err(CliError::Usage(format!(
            "no classification for products on {}",
            descriptor::ctx_descriptor(other)
        ))),
    }
}

fn iso(f: &str, lambda: &str, g: &str, mu: &str) -> Result<Output, CliError> {
    let f = LinearForm::new(parse_scalar_list(f)?);
    let g = LinearForm::new(parse_scalar_list(g)?);
    let (lambda, mu) = (parse_scalar(lambda)?, parse_scalar(mu)?);
    match classify::iso_svf(&f, &lambda, &g, &mu) {
        Some(psi) => {
            let ctx = AlgebraCtx::symmetric(psi.dim());
            let lines: Vec<String> = psi
                .images
                .iter()
                .enumerate()
                .map(|(j, v)| {
                    let mut e = Element::zero(&ctx);
                    for (i, c) in v.iter().enumerate() {
                        e.add_term(ctx.mono(Monomial::var(i as u32)), c.clone());
                    }
                    format!("x{} -> {e}", j + 1)
                })
                .collect();
            Ok(Output::ok(lines.join("\n"), json!({ "iso": psi })))
        }
        None => Ok(Output {
            text: "none".into(),
            json: json!({ "iso": null }),
            negative: true,
        }),
    }
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str, CliError> {
    v.as_deref()
        .ok_or_else(|| CliError::Usage(format!("{flag} is required here")))
}

fn decompose(args: &DecomposeArgs) -> Result<Output, CliError> {
    if let Some(path) = &args.cocycle {
        let ctx = parse_ctx(required(&args.ctx, "--ctx")?)?;
        let table = descriptor::read_basis_map(path, &ctx)?;
        return match classify::cocycle_decompose(&ctx, &table, args.degree) {
            Ok(dec) => {
                let mut lines = vec![format!("a = {}", dec.a), format!("lambda = {}", dec.lambda)];
                for (m, v) in &dec.f {
                    lines.push(format!("F({}) = {v}", ctx.basis_string(&ctx.mono(m.clone()))));
                }
                Ok(Output::ok(lines.join("\n"), json!({ "kind": "cocycle", "decomposition": dec })))
            }
            Err(e) => classify_error(e),
        };
    }
    if args.lie_basis {
        let lambda = parse_scalar(required(&args.lambda, "--lambda")?)?;
        let mu = parse_scalar(required(&args.mu, "--mu")?)?;
        let (basis, report) = classify::prop16_basis(&lambda, &mu, args.degree).map_err(eval_err)?;
        let mut lines: Vec<String> = (1..=basis.max_index())
            .map(|n| format!("f{n} = {}", basis.element(n)))
            .collect();
        lines.push(report.to_string());
        let elements: Vec<String> = (1..=basis.max_index()).map(|n| basis.element(n).to_string()).collect();
        return Ok(Output {
            text: lines.join("\n"),
            json: json!({
                "kind": "lie-basis",
                "basis": basis,
                "elements": elements,
                "unitriangular": basis.is_unitriangular(),
                "report": report,
            }),
            negative: !report.passed(),
        });
    }
    if args.primitive {
        let ctx = parse_ctx(required(&args.ctx, "--ctx")?)?;
        let one = ctx.group().identity();
        let g = match &args.g {
            Some(t) => parse_group_element(&ctx, t)?,
            None => one.clone(),
        };
        let space = if args.mod_positive {
            if args.h.is_some() {
                return Err(CliError::Usage("--mod-positive takes no --h".into()));
            }
            classify::primitive_pair_space_mod_positive(&ctx, &g, args.degree, args.radius)
        } else {
            let h = match &args.h {
                Some(t) => parse_group_element(&ctx, t)?,
                None => one,
            };
            classify::primitive_pair_space(&ctx, &g, &h, args.degree, args.radius)
        }
        .map_err(eval_err)?;
        let elements: Vec<String> = space.iter().map(Element::to_string).collect();
        let mut text = format!("dimension {}", elements.len());
        for e in &elements {
            text.push('\n');
            text.push_str(e);
        }
        return Ok(Output::ok(
            text,
            json!({ "kind": "primitive", "dimension": elements.len(), "basis": elements }),
        ));
    }
    Err(CliError::Usage("decompose needs --cocycle, --lie-basis or --primitive".into()))
}
