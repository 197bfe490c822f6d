//! Command-line front end.
//!
//! Every command builds a serializable report; `--format json` prints it as
//! JSON and `--format text` renders the same fields as lines. Exit codes:
//! 0 on success (empty result sets included), 1 for syntax errors, 2 for
//! semantic violations.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::enumerate::{self, MatrixFactorizations, Origin};
use crate::error::{Error, ParseError};
use crate::exec::Executor;
use crate::moves::{self, Move, SpecialFactorization};
use crate::sl2::{self, Sl2Matrix, SuGen};
use crate::word::ModularWord;

pub const DEFAULT_MAX_LEN: usize = 9;
pub const DEFAULT_MAX_NODES: usize = 100_000;

#[derive(Debug, Parser)]
#[command(
    name = "hurwitz",
    version,
    about = "H-complete sets of Lefschetz monodromy factorizations in SL(2,Z)"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// H-complete set of n-factor factorizations of a matrix into conjugates of U.
    Factorize {
        /// Matrix as "a b; c d".
        #[arg(short = 'm', long, allow_hyphen_values = true)]
        matrix: String,
        /// Number of factors.
        #[arg(short = 'n', long = "factors", allow_hyphen_values = true)]
        factors: Option<String>,
    },
    /// Well-jointed factorizations of a word into conjugates of bwb.
    Wj {
        #[arg(short = 'w', long)]
        word: String,
    },
    /// All-short well-jointed factorizations of a word.
    Wjs {
        #[arg(short = 'w', long)]
        word: String,
    },
    /// Canonical form of a tuple of conjugates of bwb, with the moves used.
    Normalize {
        /// Comma-separated words, e.g. "wB,bwb"; "()" is the empty tuple.
        #[arg(short = 't', long, allow_hyphen_values = true)]
        tuple: String,
    },
    /// Bounded Hurwitz orbit of a tuple, checked against the H-complete set.
    OrbitCheck {
        #[arg(short = 't', long, allow_hyphen_values = true)]
        tuple: String,
        #[arg(long, allow_hyphen_values = true)]
        max_len: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        max_nodes: Option<String>,
    },
    /// Product of powers of S and U equal to a matrix.
    Decompose {
        #[arg(short = 'm', long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Reduced word of the image of a matrix in PSL(2,Z).
    Pi {
        #[arg(short = 'm', long, allow_hyphen_values = true)]
        matrix: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("{0}")]
    Semantic(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax(_) => 1,
            CliError::Semantic(_) => 2,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Syntax(e.to_string())
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Semantic(e.to_string())
    }
}

pub fn parse_matrix(s: &str) -> Result<Sl2Matrix, CliError> {
    let [a, b, c, d] = sl2::parse_entries(s)?;
    Ok(Sl2Matrix::new(a, b, c, d)?)
}

pub fn parse_word(s: &str) -> Result<ModularWord, CliError> {
    Ok(s.parse::<ModularWord>()?)
}

/// Parses `"w1,w2,..."`, optionally parenthesized; `"()"` and `""` are empty.
pub fn parse_tuple(s: &str) -> Result<SpecialFactorization, CliError> {
    let mut body = s.trim();
    if let Some(inner) = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
        body = inner.trim();
    }
    if body.is_empty() {
        return Ok(SpecialFactorization::empty());
    }
    let words = body
        .split(',')
        .map(|w| parse_word(w.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SpecialFactorization::from_words(&words)?)
}

fn parse_count(name: &str, s: &str, min: i64) -> Result<usize, CliError> {
    let v: i64 = s
        .trim()
        .parse()
        .map_err(|_| CliError::Syntax(format!("{name} `{s}` is not an integer")))?;
    if v < min {
        return Err(CliError::Semantic(format!(
            "{name} must be at least {min}, got {v}"
        )));
    }
    usize::try_from(v).map_err(|_| CliError::Semantic(format!("{name} {v} is too large")))
}

fn tuple_strings(a: &SpecialFactorization) -> Vec<String> {
    a.entries().iter().map(|g| g.to_string()).collect()
}

fn tuple_text(words: &[String]) -> String {
    format!("({})", words.join(","))
}

#[derive(Debug, Serialize)]
struct Target {
    matrix: Sl2Matrix,
    text: String,
    pi: String,
    h_target: String,
}

#[derive(Debug, Serialize)]
struct FamilySizes {
    wj: usize,
    wjs_g: usize,
    wjs_gb2: usize,
    wjs_gb: usize,
}

#[derive(Debug, Serialize)]
struct FactorizeMeta {
    count: usize,
    family: FamilySizes,
    candidates: usize,
    rejected_by_sign: usize,
    origins: Vec<Origin>,
    residue_branches: Vec<usize>,
    empty: bool,
    explanation: Option<String>,
}

#[derive(Debug, Serialize)]
struct FactorizeReport {
    command: &'static str,
    target: Target,
    n: usize,
    factorizations: Vec<Vec<String>>,
    lifts: Vec<Vec<Sl2Matrix>>,
    meta: FactorizeMeta,
}

fn factorize_report(r: &MatrixFactorizations) -> FactorizeReport {
    let mut residue_branches: Vec<usize> = r
        .factorizations
        .iter()
        .filter_map(|f| match f.origin {
            Origin::Pairs(k) => Some(k),
            Origin::WellJointed => None,
        })
        .collect();
    residue_branches.dedup();
    residue_branches.sort_unstable();
    residue_branches.dedup();
    let explanation = if !r.factorizations.is_empty() {
        None
    } else if r.candidates == 0 {
        Some(format!(
            "no special factorization of {} with {} factors exists in PSL(2,Z); \
             no special fibration with {} singular fibers has this monodromy",
            r.projection, r.n, r.n
        ))
    } else {
        Some(format!(
            "all {} candidate(s) lift to factorizations of -B; none multiplies to B",
            r.candidates
        ))
    };
    FactorizeReport {
        command: "factorize",
        target: Target {
            matrix: r.matrix.clone(),
            text: r.matrix.to_string(),
            pi: r.projection.to_string(),
            h_target: r.target.to_string(),
        },
        n: r.n,
        factorizations: r
            .factorizations
            .iter()
            .map(|f| f.words.iter().map(|w| w.to_string()).collect())
            .collect(),
        lifts: r
            .factorizations
            .iter()
            .map(|f| f.matrices.clone())
            .collect(),
        meta: FactorizeMeta {
            count: r.factorizations.len(),
            family: FamilySizes {
                wj: r.family.wj.len(),
                wjs_g: r.family.wjs_0.len(),
                wjs_gb2: r.family.wjs_2.len(),
                wjs_gb: r.family.wjs_1.len(),
            },
            candidates: r.candidates,
            rejected_by_sign: r.rejected_by_sign,
            origins: r.factorizations.iter().map(|f| f.origin).collect(),
            residue_branches,
            empty: r.factorizations.is_empty(),
            explanation,
        },
    }
}

fn origin_text(o: &Origin) -> String {
    match o {
        Origin::WellJointed => "well_jointed".into(),
        Origin::Pairs(r) => format!("pairs={r}"),
    }
}

fn factorize_text(rep: &FactorizeReport) -> String {
    let mut out = String::new();
    let t = &rep.target;
    let _ = writeln!(out, "target: {}", t.text);
    let _ = writeln!(out, "pi: {}", t.pi);
    let _ = writeln!(out, "h_target: {}", t.h_target);
    let _ = writeln!(out, "n: {}", rep.n);
    let _ = writeln!(out, "count: {}", rep.meta.count);
    for (i, (words, lift)) in rep.factorizations.iter().zip(&rep.lifts).enumerate() {
        let _ = writeln!(
            out,
            "factorization {}: {} [{}]",
            i + 1,
            tuple_text(words),
            origin_text(&rep.meta.origins[i])
        );
        for m in lift {
            let _ = writeln!(out, "  {m}");
        }
    }
    let f = &rep.meta.family;
    let _ = writeln!(
        out,
        "family: wj={} wjs_g={} wjs_gb2={} wjs_gb={}",
        f.wj, f.wjs_g, f.wjs_gb2, f.wjs_gb
    );
    let _ = writeln!(
        out,
        "candidates: {} rejected_by_sign: {}",
        rep.meta.candidates, rep.meta.rejected_by_sign
    );
    let branches: Vec<String> = rep
        .meta
        .residue_branches
        .iter()
        .map(|r| r.to_string())
        .collect();
    let _ = writeln!(out, "residue_branches: [{}]", branches.join(","));
    let _ = writeln!(out, "empty: {}", rep.meta.empty);
    if let Some(e) = &rep.meta.explanation {
        let _ = writeln!(out, "explanation: {e}");
    }
    out
}

fn render<T: Serialize>(format: Format, report: &T, text: impl FnOnce(&T) -> String) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => text(report),
    }
}

pub fn cmd_factorize(
    matrix: &str,
    factors: Option<&str>,
    format: Format,
    exec: &Executor,
) -> Result<String, CliError> {
    let b = parse_matrix(matrix)?;
    let n = match factors {
        Some(s) => parse_count("factor count", s, 0)?,
        None => return Err(CliError::Semantic("missing factor count (-n)".into())),
    };
    let result = enumerate::h_complete_for_matrix(&b, n, exec)?;
    Ok(render(format, &factorize_report(&result), factorize_text))
}

#[derive(Debug, Serialize)]
struct WjReport {
    command: &'static str,
    word: String,
    count: usize,
    factorizations: Vec<Vec<String>>,
}

fn wj_text(r: &WjReport) -> String {
    let mut out = format!("count: {}\n", r.count);
    for t in &r.factorizations {
        out.push_str(&tuple_text(t));
        out.push('\n');
    }
    out
}

fn wj_like(
    word: &str,
    short_only: bool,
    format: Format,
    exec: &Executor,
) -> Result<String, CliError> {
    let h = parse_word(word)?;
    let set = if short_only {
        enumerate::wjs(&h, exec)
    } else {
        enumerate::well_jointed(&h, exec)
    };
    let report = WjReport {
        command: if short_only { "wjs" } else { "wj" },
        word: h.to_string(),
        count: set.len(),
        factorizations: set.iter().map(tuple_strings).collect(),
    };
    Ok(render(format, &report, wj_text))
}

pub fn cmd_wj(word: &str, format: Format, exec: &Executor) -> Result<String, CliError> {
    wj_like(word, false, format, exec)
}

pub fn cmd_wjs(word: &str, format: Format, exec: &Executor) -> Result<String, CliError> {
    wj_like(word, true, format, exec)
}

#[derive(Debug, Serialize)]
struct NormalizeReport {
    command: &'static str,
    input: Vec<String>,
    product: String,
    prefix: Vec<String>,
    r: usize,
    realized: Vec<String>,
    moves: Vec<Move>,
}

fn normalize_text(r: &NormalizeReport) -> String {
    let moves: Vec<String> = r.moves.iter().map(|m| m.to_string()).collect();
    format!(
        "input: {}\nproduct: {}\nprefix: {}\nr: {}\nrealized: {}\nmoves: [{}]\n",
        tuple_text(&r.input),
        r.product,
        tuple_text(&r.prefix),
        r.r,
        tuple_text(&r.realized),
        moves.join(",")
    )
}

pub fn cmd_normalize(tuple: &str, format: Format) -> Result<String, CliError> {
    let alpha = parse_tuple(tuple)?;
    let norm = moves::normalize(&alpha)?;
    let report = NormalizeReport {
        command: "normalize",
        input: tuple_strings(&alpha),
        product: alpha.product().to_string(),
        prefix: tuple_strings(&norm.canonical.prefix),
        r: norm.canonical.pairs,
        realized: tuple_strings(&norm.canonical.realize()),
        moves: norm.moves,
    };
    Ok(render(format, &report, normalize_text))
}

#[derive(Debug, Serialize)]
struct OrbitReport {
    command: &'static str,
    input: Vec<String>,
    max_len: usize,
    max_nodes: usize,
    size: usize,
    truncated: bool,
    orbit: Vec<Vec<String>>,
    h_complete_hits: Vec<Vec<String>>,
    meets_h_complete: bool,
}

fn orbit_text(r: &OrbitReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "input: {}", tuple_text(&r.input));
    let _ = writeln!(out, "max_len: {} max_nodes: {}", r.max_len, r.max_nodes);
    let _ = writeln!(out, "size: {}", r.size);
    let _ = writeln!(out, "truncated: {}", r.truncated);
    for t in &r.orbit {
        let _ = writeln!(out, "  {}", tuple_text(t));
    }
    let hits: Vec<String> = r.h_complete_hits.iter().map(|t| tuple_text(t)).collect();
    let _ = writeln!(out, "h_complete_hits: [{}]", hits.join(" "));
    let _ = writeln!(out, "meets_h_complete: {}", r.meets_h_complete);
    out
}

pub fn cmd_orbit_check(
    tuple: &str,
    max_len: Option<&str>,
    max_nodes: Option<&str>,
    format: Format,
    exec: &Executor,
) -> Result<String, CliError> {
    let alpha = parse_tuple(tuple)?;
    let max_len = max_len.map_or(Ok(DEFAULT_MAX_LEN), |s| parse_count("--max-len", s, 1))?;
    let max_nodes =
        max_nodes.map_or(Ok(DEFAULT_MAX_NODES), |s| parse_count("--max-nodes", s, 1))?;
    let orbit = moves::orbit_bfs(&alpha, max_len, max_nodes, exec);
    let fam = enumerate::h_complete_family(alpha.product(), exec);
    let complete = enumerate::materialize(&fam, alpha.len());
    let hits: Vec<Vec<String>> = orbit
        .states
        .iter()
        .filter(|s| complete.contains(*s))
        .map(tuple_strings)
        .collect();
    let report = OrbitReport {
        command: "orbit-check",
        input: tuple_strings(&alpha),
        max_len,
        max_nodes,
        size: orbit.states.len(),
        truncated: orbit.truncated,
        orbit: orbit.states.iter().map(tuple_strings).collect(),
        meets_h_complete: !hits.is_empty(),
        h_complete_hits: hits,
    };
    Ok(render(format, &report, orbit_text))
}

#[derive(Debug, Serialize)]
struct SuFactorOut {
    gen: &'static str,
    exp: String,
}

#[derive(Debug, Serialize)]
struct DecomposeReport {
    command: &'static str,
    matrix: Sl2Matrix,
    su_word: Vec<SuFactorOut>,
    text: String,
    product: Sl2Matrix,
    check: bool,
}

fn decompose_text(r: &DecomposeReport) -> String {
    format!(
        "{}\ncheck: {} = {} ({})\n",
        r.text,
        r.text,
        r.product,
        if r.check { "ok" } else { "MISMATCH" }
    )
}

pub fn cmd_decompose(matrix: &str, format: Format) -> Result<String, CliError> {
    let m = parse_matrix(matrix)?;
    let word = sl2::decompose_su(&m);
    let product = word.eval();
    let report = DecomposeReport {
        command: "decompose",
        check: product == m,
        matrix: m,
        su_word: word
            .factors()
            .iter()
            .map(|f| SuFactorOut {
                gen: match f.gen {
                    SuGen::S => "S",
                    SuGen::U => "U",
                },
                exp: f.exp.to_string(),
            })
            .collect(),
        text: word.to_string(),
        product,
    };
    Ok(render(format, &report, decompose_text))
}

pub fn cmd_pi(matrix: &str, format: Format) -> Result<String, CliError> {
    let m = parse_matrix(matrix)?;
    let w = sl2::project_pi(&m)?;
    let report = json!({ "command": "pi", "matrix": m, "word": w.to_string() });
    Ok(render(format, &report, |_| format!("{w}\n")))
}

pub fn run(cli: &Cli, exec: &Executor) -> Result<String, CliError> {
    let format = cli.format;
    match &cli.command {
        Command::Factorize { matrix, factors } => {
            cmd_factorize(matrix, factors.as_deref(), format, exec)
        }
        Command::Wj { word } => cmd_wj(word, format, exec),
        Command::Wjs { word } => cmd_wjs(word, format, exec),
        Command::Normalize { tuple } => cmd_normalize(tuple, format),
        Command::OrbitCheck {
            tuple,
            max_len,
            max_nodes,
        } => cmd_orbit_check(
            tuple,
            max_len.as_deref(),
            max_nodes.as_deref(),
            format,
            exec,
        ),
        Command::Decompose { matrix } => cmd_decompose(matrix, format),
        Command::Pi { matrix } => cmd_pi(matrix, format),
    }
}
