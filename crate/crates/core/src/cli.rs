//! Command-line front end. Every command reads and writes through the
//! streams handed to [`run`], so the whole interface is testable in-process.
//!
//! Indices printed by the CLI (permutations, block pairs) are 1-based.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::cyclic::to_cyclic_normal_form;
use crate::error::Error;
use crate::idem::{generate_idempotent, DiagSpec, GenerationMode};
use crate::kpotent::{generate_kpotent, KDiagSpec, Strategy};
use crate::matrix::{default_kmax, SignMatrix};
use crate::oracle::{canonical_form, census, enumerate, EnumSpec, Predicate, Shape};
use crate::rational::RationalMatrix;
use crate::realization::{allows_kpotence, realize, verify_realization};
use crate::reduction::{expand_with, red};
use crate::sign::Sign;
use crate::structure::{frobenius_normal_form, DiagonalKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const SAMPLING_HELP: &str = "Sampling draws each cell's branch with the 64-bit LCG \
state <- state * 6364136223846793005 + 1442695040888963407 (mod 2^64), starting from the seed; \
the branch index is (state >> 33) mod (number of branches).";

#[derive(Parser, Debug)]
#[command(name = "signpat", version, about = "Exact analysis of sign pattern matrices", after_help = SAMPLING_HELP)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalFlags,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalFlags {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for enumeration (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Largest power examined when searching for the potence index.
    #[arg(long, global = true)]
    pub kmax: Option<usize>,
    /// Accept ambiguous '#' entries in input patterns.
    #[arg(long, global = true)]
    pub generalized: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sign potence index of a pattern.
    Check { file: PathBuf },
    /// Frobenius normal form.
    Fnf { file: PathBuf },
    /// Coarsest block partition and red(A).
    Reduce { file: PathBuf },
    /// Cyclic normal form.
    Cnf { file: PathBuf },
    /// Generate reduced sign idempotent patterns.
    GenIdem {
        /// Diagonal over 0 and +, e.g. "+0++".
        #[arg(long)]
        diag: String,
        #[command(flatten)]
        draw: Draw,
        /// Expand every pattern with these class sizes, e.g. "2,1,3".
        #[arg(long, value_delimiter = ',')]
        expand: Option<Vec<usize>>,
    },
    /// Generate sign k-potent patterns in reduced cyclic normal form.
    GenKpotent {
        /// Diagonal block tags, e.g. "P2,0,P2,Q1".
        #[arg(long)]
        blocks: String,
        #[arg(long, value_enum, default_value_t = StrategyArg::Filtered)]
        strategy: StrategyArg,
        #[command(flatten)]
        draw: Draw,
    },
    /// Decide whether a sign k-potent pattern allows k-potence.
    Allows {
        file: PathBuf,
        /// Also write a realization to this file.
        #[arg(long)]
        realize: Option<PathBuf>,
    },
    /// Exact rational realization B with B^{k+1} = B.
    Realize {
        file: PathBuf,
        /// Write the realization here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a realization file against a pattern.
    Verify {
        pattern: PathBuf,
        realization: PathBuf,
    },
    /// Exhaustive enumeration of small patterns.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ShapeArg::Full)]
        shape: ShapeArg,
        /// Diagonal for the upper shape, over 0, + and -.
        #[arg(long)]
        diag: Option<String>,
        #[arg(long, value_enum)]
        predicate: PredicateArg,
        /// k for the kpotent and period predicates.
        #[arg(long)]
        k: Option<usize>,
        /// Report totals and equivalence class counts only.
        #[arg(long)]
        census: bool,
    },
    /// Decide equivalence under permutation, signature, negation, transposition.
    Equiv { first: PathBuf, second: PathBuf },
}

#[derive(Args, Debug, Clone)]
pub struct Draw {
    /// Emit every pattern (the default).
    #[arg(long, conflicts_with = "sample")]
    pub all: bool,
    /// Draw this many patterns with the seeded generator.
    #[arg(long)]
    pub sample: Option<usize>,
}

impl Draw {
    fn mode(&self, seed: u64) -> GenerationMode {
        match self.sample {
            Some(count) => GenerationMode::Sample { count, seed },
            None => GenerationMode::All,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrategyArg {
    Single,
    Filtered,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeArg {
    Full,
    Upper,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum PredicateArg {
    Idem,
    Kpotent,
    Potent,
    Period,
}

/// JSON form of a pattern.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct PatternDocument {
    pub n: usize,
    pub rows: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl PatternDocument {
    pub fn from_matrix(a: &SignMatrix) -> PatternDocument {
        PatternDocument { n: a.rows(), rows: text_rows(a), name: None }
    }
}

/// JSON form of a realization.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct RealizationDocument {
    pub n: usize,
    pub entries: Vec<Vec<String>>,
    pub k: usize,
    pub verified: bool,
}

fn text_rows(a: &SignMatrix) -> Vec<String> {
    (0..a.rows()).map(|i| a.row(i).into_iter().map(Sign::to_char).collect()).collect()
}

/// Text serialization: one row per line.
pub fn to_text(a: &SignMatrix) -> String {
    let mut s = String::new();
    for row in text_rows(a) {
        s.push_str(&row);
        s.push('\n');
    }
    s
}

/// Parses the text format: one row per line over `+ - 0 #`, blank lines
/// ignored, `#` only when `generalized` is set.
pub fn parse_text(text: &str, generalized: bool) -> Result<SignMatrix, Error> {
    let mut rows: Vec<Vec<Sign>> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .chars()
            .map(|c| match Sign::from_char(c) {
                Some(Sign::Amb) if !generalized => Err(Error::Parse {
                    line: idx + 1,
                    msg: "'#' entries need --generalized".into(),
                }),
                Some(s) => Ok(s),
                None => Err(Error::Parse { line: idx + 1, msg: format!("illegal character {c:?}") }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: format!("ragged row: expected {} entries, found {}", first.len(), row.len()),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Empty);
    }
    SignMatrix::from_rows(&rows)
}

/// Parses either format; JSON is recognized by a leading `{`.
pub fn parse_pattern(text: &str, generalized: bool) -> Result<SignMatrix, Error> {
    if !text.trim_start().starts_with('{') {
        return parse_text(text, generalized);
    }
    let doc: PatternDocument =
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
    let a = parse_text(&doc.rows.join("\n"), generalized)?;
    if a.rows() != doc.n || a.cols() != doc.n {
        return Err(Error::Parse { line: 1, msg: format!("\"n\" is {} but rows describe {}x{}", doc.n, a.rows(), a.cols()) });
    }
    Ok(a)
}

pub fn realization_document(b: &RationalMatrix, k: usize, verified: bool) -> RealizationDocument {
    RealizationDocument { n: b.rows(), entries: b.to_string_rows(), k, verified }
}

pub fn parse_realization(text: &str) -> Result<(RationalMatrix, usize), Error> {
    let doc: RealizationDocument =
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
    let b = RationalMatrix::from_string_rows(&doc.entries)?;
    if b.rows() != doc.n || b.cols() != doc.n {
        return Err(Error::Parse { line: 1, msg: format!("\"n\" is {} but entries are {}x{}", doc.n, b.rows(), b.cols()) });
    }
    Ok((b, doc.k))
}

/// Either a command outcome or a failure that maps to exit code 2.
enum Failure {
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

struct Ctx<'a> {
    flags: GlobalFlags,
    pool: Option<rayon::ThreadPool>,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    /// Runs `f` on the pool sized by `--jobs`, or the global pool.
    fn par<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match &self.pool {
            Some(pool) => pool.install(f),
            None => f(),
        }
    }

    fn read(&self, path: &Path) -> Result<String, Failure> {
        if path == Path::new("-") {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            return Ok(s);
        }
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
    }

    fn pattern(&self, path: &Path) -> Result<SignMatrix, Failure> {
        Ok(parse_pattern(&self.read(path)?, self.flags.generalized)?)
    }

    fn json(&mut self, value: &serde_json::Value) -> Result<(), Failure> {
        writeln!(self.out, "{}", serde_json::to_string_pretty(value)?)?;
        Ok(())
    }

    fn kmax(&self, n: usize) -> usize {
        self.flags.kmax.unwrap_or_else(|| default_kmax(n))
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

fn pairs_one_based(v: &[(usize, usize)]) -> Vec<[usize; 2]> {
    v.iter().map(|&(i, j)| [i + 1, j + 1]).collect()
}

fn potent_phrase(k: usize) -> String {
    if k == 1 {
        "sign 1-potent (idempotent)".into()
    } else {
        format!("sign {k}-potent")
    }
}

/// Runs the CLI on `args` (program name first). Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    let pool = match cli.global.jobs {
        Some(jobs) => match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => Some(pool),
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return EXIT_USAGE;
            }
        },
        None => None,
    };
    let mut ctx = Ctx { flags: cli.global.clone(), pool, out };
    match dispatch(&cli.command, &mut ctx) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: &Command, ctx: &mut Ctx<'_>) -> Result<i32, Failure> {
    match command {
        Command::Check { file } => check(ctx, file),
        Command::Fnf { file } => fnf(ctx, file),
        Command::Reduce { file } => reduce(ctx, file),
        Command::Cnf { file } => cnf(ctx, file),
        Command::GenIdem { diag, draw, expand } => gen_idem(ctx, diag, draw, expand.as_deref()),
        Command::GenKpotent { blocks, strategy, draw } => gen_kpotent(ctx, blocks, *strategy, draw),
        Command::Allows { file, realize } => allows(ctx, file, realize.as_deref()),
        Command::Realize { file, out } => realize_cmd(ctx, file, out.as_deref()),
        Command::Verify { pattern, realization } => verify(ctx, pattern, realization),
        Command::Enumerate { n, shape, diag, predicate, k, census } => {
            enumerate_cmd(ctx, *n, *shape, diag.as_deref(), *predicate, *k, *census)
        }
        Command::Equiv { first, second } => equiv(ctx, first, second),
    }
}

fn check(ctx: &mut Ctx<'_>, file: &Path) -> Result<i32, Failure> {
    let a = ctx.pattern(file)?;
    let kmax = ctx.kmax(a.rows());
    let report = a.potence_index(kmax)?;
    if ctx.flags.json {
        ctx.json(&serde_json::json!({
            "command": "check",
            "n": a.rows(),
            "k": report.k,
            "kmax": kmax,
            "powers_examined": report.powers_examined,
        }))?;
    } else {
        match report.k {
            Some(k) => writeln!(ctx.out, "{}", potent_phrase(k))?,
            None => writeln!(ctx.out, "not sign k-potent for any k <= {kmax}")?,
        }
    }
    Ok(if report.k.is_some() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn fnf(ctx: &mut Ctx<'_>, file: &Path) -> Result<i32, Failure> {
    let a = ctx.pattern(file)?;
    let f = frobenius_normal_form(&a)?;
    let b = a.permute(&f.perm)?;
    let kinds: Vec<&str> = f
        .kinds
        .iter()
        .map(|k| match k {
            DiagonalKind::Irreducible => "irreducible",
            DiagonalKind::ZeroOne => "zero",
        })
        .collect();
    if ctx.flags.json {
        ctx.json(&serde_json::json!({
            "command": "fnf",
            "perm": one_based(&f.perm),
            "block_sizes": f.block_sizes,
            "kinds": kinds,
            "pattern": PatternDocument::from_matrix(&b),
        }))?;
    } else {
        writeln!(ctx.out, "perm: {}", join(&one_based(&f.perm)))?;
        writeln!(ctx.out, "blocks: {}", join(&f.block_sizes))?;
        writeln!(ctx.out, "kinds: {}", kinds.join(" "))?;
        write!(ctx.out, "{}", to_text(&b))?;
    }
    Ok(EXIT_OK)
}

fn reduce(ctx: &mut Ctx<'_>, file: &Path) -> Result<i32, Failure> {
    let a = ctx.pattern(file)?;
    let r = red(&a)?;
    if ctx.flags.json {
        ctx.json(&serde_json::json!({
            "command": "reduce",
            "class_sizes": r.class_sizes,
            "pattern": PatternDocument::from_matrix(&r.entries),
        }))?;
    } else {
        writeln!(ctx.out, "classes: {}", join(&r.class_sizes))?;
        write!(ctx.out, "{}", to_text(&r.entries))?;
    }
    Ok(EXIT_OK)
}

fn cnf(ctx: &mut Ctx<'_>, file: &Path) -> Result<i32, Failure> {
    let a = ctx.pattern(file)?;
    let (form, c) = match to_cyclic_normal_form(&a) {
        Ok(x) => x,
        Err(e @ Error::NotCyclic { .. }) => {
            writeln!(ctx.out, "no cyclic normal form: {e}")?;
            return Ok(EXIT_NEGATIVE);
        }
        Err(e) => return Err(e.into()),
    };
    let tags: Vec<String> = form.block_types.iter().map(ToString::to_string).collect();
    let signature: String = form.signature.iter().map(|s| s.to_char()).collect();
    if ctx.flags.json {
        ctx.json(&serde_json::json!({
            "command": "cnf",
            "blocks": tags,
            "perm": one_based(&form.perm),
            "signature": signature,
            "class_sizes": form.class_sizes,
            "pattern": PatternDocument::from_matrix(&c),
        }))?;
    } else {
        writeln!(ctx.out, "blocks: {}", tags.join(","))?;
        writeln!(ctx.out, "perm: {}", join(&one_based(&form.perm)))?;
        writeln!(ctx.out, "signature: {signature}")?;
        write!(ctx.out, "{}", to_text(&c))?;
    }
    Ok(EXIT_OK)
}

fn emit_patterns(ctx: &mut Ctx<'_>, header: serde_json::Value, patterns: &[SignMatrix], index: bool) -> Result<(), Failure> {
    if ctx.flags.json {
        let docs: Vec<serde_json::Value> = patterns
            .iter()
            .map(|a| {
                let mut v = serde_json::to_value(PatternDocument::from_matrix(a)).expect("serializable");
                if index {
                    let k = a.potence_index(default_kmax(a.rows())).ok().and_then(|r| r.k);
                    v["potence_index"] = serde_json::json!(k);
                }
                v
            })
            .collect();
        let mut doc = header;
        doc["count"] = serde_json::json!(patterns.len());
        doc["patterns"] = serde_json::Value::Array(docs);
        ctx.json(&doc)?;
    } else {
        for (idx, a) in patterns.iter().enumerate() {
            if idx > 0 {
                writeln!(ctx.out)?;
            }
            write!(ctx.out, "{}", to_text(a))?;
        }
    }
    Ok(())
}

fn gen_idem(ctx: &mut Ctx<'_>, diag: &str, draw: &Draw, expand: Option<&[usize]>) -> Result<i32, Failure> {
    let spec: DiagSpec = diag.parse()?;
    let mut patterns = generate_idempotent(&spec, draw.mode(ctx.flags.seed))?;
    if let Some(sizes) = expand {
        patterns = patterns.iter().map(|a| expand_with(a, sizes)).collect::<Result<_, _>>()?;
    }
    let header = serde_json::json!({ "command": "gen-idem", "diag": spec.to_string() });
    emit_patterns(ctx, header, &patterns, false)?;
    Ok(EXIT_OK)
}

fn gen_kpotent(ctx: &mut Ctx<'_>, blocks: &str, strategy: StrategyArg, draw: &Draw) -> Result<i32, Failure> {
    let spec: KDiagSpec = blocks.parse()?;
    let strategy = match strategy {
        StrategyArg::Single => Strategy::SinglePass,
        StrategyArg::Filtered => Strategy::Filtered,
    };
    let patterns = generate_kpotent(&spec, strategy, draw.mode(ctx.flags.seed))?;
    let header = serde_json::json!({
        "command": "gen-kpotent",
        "blocks": spec.to_string(),
        "k": spec.k(),
        "strategy": if strategy == Strategy::SinglePass { "single" } else { "filtered" },
    });
    emit_patterns(ctx, header, &patterns, true)?;
    Ok(EXIT_OK)
}

fn write_realization(ctx: &mut Ctx<'_>, doc: &RealizationDocument, path: Option<&Path>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(doc)?;
    match path {
        Some(p) => fs::write(p, text + "\n").map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?,
        None => writeln!(ctx.out, "{text}")?,
    }
    Ok(())
}

fn allows(ctx: &mut Ctx<'_>, file: &Path, realize_to: Option<&Path>) -> Result<i32, Failure> {
    let a = ctx.pattern(file)?;
    let decision = match allows_kpotence(&a) {
        Ok(d) => d,
        Err(Error::NotKPotent { kmax }) => {
            if ctx.flags.json {
                ctx.json(&serde_json::json!({ "command": "allows", "k": null, "allows": false, "violations": [] }))?;
            } else {
                writeln!(ctx.out, "not sign k-potent for any k <= {kmax}")?;
            }
            return Ok(EXIT_NEGATIVE);
        }
        Err(e) => return Err(e.into()),
    };
    if ctx.flags.json {
        ctx.json(&serde_json::json!({
            "command": "allows",
            "k": decision.k,
            "allows": decision.allows,
            "violations": pairs_one_based(&decision.violations),
        }))?;
    } else if decision.allows {
        writeln!(ctx.out, "{} and allows {}-potence", potent_phrase(decision.k), decision.k)?;
    } else {
        let list: Vec<String> = decision.violations.iter().map(|(i, j)| format!("({},{})", i + 1, j + 1)).collect();
        writeln!(ctx.out, "{}-potent but does NOT allow: PPO violation {}", decision.k, list.join(" "))?;
    }
    if decision.allows {
        if let Some(path) = realize_to {
            let r = realize(&a)?;
            write_realization(ctx, &realization_document(&r.b, r.k, true), Some(path))?;
        }
        Ok(EXIT_OK)
    } else {
        Ok(EXIT_NEGATIVE)
    }
}

fn realize_cmd(ctx: &mut Ctx<'_>, file: &Path, out: Option<&Path>) -> Result<i32, Failure> {
    let a = ctx.pattern(file)?;
    match realize(&a) {
        Ok(r) => {
            write_realization(ctx, &realization_document(&r.b, r.k, true), out)?;
            Ok(EXIT_OK)
        }
        Err(Error::NotPpo(v)) => {
            let list: Vec<String> = v.iter().map(|(i, j)| format!("({},{})", i + 1, j + 1)).collect();
            writeln!(ctx.out, "no realization: PPO violation {}", list.join(" "))?;
            Ok(EXIT_NEGATIVE)
        }
        Err(e @ Error::NotKPotent { .. }) => {
            writeln!(ctx.out, "no realization: {e}")?;
            Ok(EXIT_NEGATIVE)
        }
        Err(e) => Err(e.into()),
    }
}

fn verify(ctx: &mut Ctx<'_>, pattern: &Path, realization: &Path) -> Result<i32, Failure> {
    let a = ctx.pattern(pattern)?;
    let (b, k) = parse_realization(&ctx.read(realization)?)?;
    if k == 0 {
        return Err(Failure::Usage("realization has k = 0".into()));
    }
    let ok = verify_realization(&b, &a, k)?;
    if ctx.flags.json {
        ctx.json(&serde_json::json!({ "command": "verify", "k": k, "verified": ok }))?;
    } else if ok {
        writeln!(ctx.out, "verified: B^{} = B and sign(B) = A", k + 1)?;
    } else {
        writeln!(ctx.out, "NOT verified")?;
    }
    Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE })
}

fn enumerate_cmd(
    ctx: &mut Ctx<'_>,
    n: usize,
    shape: ShapeArg,
    diag: Option<&str>,
    predicate: PredicateArg,
    k: Option<usize>,
    want_census: bool,
) -> Result<i32, Failure> {
    let shape = match shape {
        ShapeArg::Full => Shape::Full,
        ShapeArg::Upper => {
            let d = diag.ok_or_else(|| Failure::Usage("--shape upper needs --diag".into()))?;
            let signs = d
                .chars()
                .map(|c| Sign::from_char(c).filter(|s| s.is_proper()))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Failure::Usage(format!("bad diagonal {d:?}")))?;
            Shape::UpperTriangular(signs)
        }
    };
    let need_k = || k.ok_or_else(|| Failure::Usage("this predicate needs --k".into()));
    let predicate = match predicate {
        PredicateArg::Idem => Predicate::Idempotent,
        PredicateArg::Potent => Predicate::PotentAny,
        PredicateArg::Kpotent => Predicate::KPotent(need_k()?),
        PredicateArg::Period => Predicate::Period(need_k()?),
    };
    let spec = EnumSpec::new(n, shape, predicate);
    if want_census {
        let c = ctx.par(|| census(&spec))?;
        if ctx.flags.json {
            ctx.json(&serde_json::json!({ "command": "enumerate", "n": n, "total": c.total, "classes": c.classes }))?;
        } else {
            writeln!(ctx.out, "total: {}", c.total)?;
            writeln!(ctx.out, "classes: {}", c.classes)?;
        }
    } else {
        let found = ctx.par(|| enumerate(&spec))?;
        emit_patterns(ctx, serde_json::json!({ "command": "enumerate", "n": n }), &found, false)?;
    }
    Ok(EXIT_OK)
}

fn equiv(ctx: &mut Ctx<'_>, first: &Path, second: &Path) -> Result<i32, Failure> {
    let a = ctx.pattern(first)?;
    let b = ctx.pattern(second)?;
    let same = a.rows() == b.rows() && a.cols() == b.cols() && canonical_form(&a)? == canonical_form(&b)?;
    if ctx.flags.json {
        ctx.json(&serde_json::json!({ "command": "equiv", "equivalent": same }))?;
    } else {
        writeln!(ctx.out, "{}", if same { "equivalent" } else { "not equivalent" })?;
    }
    Ok(if same { EXIT_OK } else { EXIT_NEGATIVE })
}

fn join(v: &[usize]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_parsing() {
        assert_eq!(parse_text("+-\n0+", false).unwrap(), "+- 0+".parse().unwrap());
        assert_eq!(parse_text("+\n", false).unwrap(), "+".parse().unwrap());
        assert!(matches!(parse_text("+0\n0", false), Err(Error::Parse { line: 2, .. })));
        assert!(parse_text("#", false).is_err());
        assert!(parse_text("#", true).is_ok());
        assert!(parse_text("+x", false).is_err());
        let a: SignMatrix = "+-0 0+# 000".parse().unwrap();
        assert_eq!(parse_text(&to_text(&a), true).unwrap(), a);
    }

    #[test]
    fn json_pattern() {
        let a = parse_pattern(r#"{"n": 2, "rows": ["+-", "0+"]}"#, false).unwrap();
        assert_eq!(a, "+- 0+".parse().unwrap());
        assert!(parse_pattern(r#"{"n": 3, "rows": ["+-", "0+"]}"#, false).is_err());
    }
}
