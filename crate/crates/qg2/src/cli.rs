//! Command line interface. Exit codes: 0 success, 1 bad input or a failed
//! check, 2 engine error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qg2_core::dims::{dim_closed_form, dim_of_character};
use qg2_core::fm::FmOptions;
use qg2_core::tsystem::{
    describe, grid, relation_instance, verify_mirror, verify_with, CharacterProvider,
    RelationCharacters, RelationId, RelationKind, VerificationReport, DEFAULT_WORK_BUDGET,
};
use qg2_core::{Family, FamilyId, QPolynomial};
use rayon::prelude::*;

use crate::cache::Cache;
use crate::json::CharacterJson;
use crate::provider::SharedProvider;
use crate::Engine;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_ENGINE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "qg2", version, about = "Exact q-characters for the quantum affine algebra of type G2")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Character cache directory (defaults to $QG2_CACHE, none if unset).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Cap on distinct monomials in one FM run.
    #[arg(long, global = true, default_value_t = qg2_core::fm::DEFAULT_MAX_TERMS)]
    pub max_terms: usize,
    /// Worker threads for independent checks (0: one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = EngineChoice::Fm)]
    pub engine: EngineChoice,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum EngineChoice {
    Fm,
    Recursive,
    /// Run both and require identical results.
    Both,
}

impl EngineChoice {
    fn engines(self) -> Vec<Engine> {
        match self {
            EngineChoice::Fm => vec![Engine::Fm],
            EngineChoice::Recursive => vec![Engine::Recursive],
            EngineChoice::Both => vec![Engine::Fm, Engine::Recursive],
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute one character and summarize it.
    Compute {
        /// Module, e.g. `B[k=1,l=1,s=0]`.
        id: String,
        /// Write the character as JSON (`-` for stdout).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check relations as polynomial identities.
    Verify(VerifyArgs),
    /// Closed-form dimensions.
    Dims {
        family: String,
        #[arg(long, default_value_t = 2)]
        kmax: u32,
        #[arg(long, default_value_t = 2)]
        lmax: u32,
        /// Also compute each character and compare its dimension.
        #[arg(long)]
        check: bool,
    },
    /// Dominant and anti-dominant monomials of characters.
    Special { ids: Vec<String> },
    /// Write characters as JSON files.
    Export {
        ids: Vec<String>,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        /// Export every plain and tilde family member with `k, l` up to
        /// `--kmax`, `--lmax` at `s = 0` in addition to `ids`.
        #[arg(long)]
        grid: bool,
        #[arg(long, default_value_t = 2)]
        kmax: u32,
        #[arg(long, default_value_t = 2)]
        lmax: u32,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Relation kind: tsys1, tsys2, bext, e0, e1, eext, cext, d0, dext, fext.
    pub relation: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long, default_value_t = 1)]
    pub l: u32,
    /// `t` for eext (alias of `--k`).
    #[arg(long)]
    pub t: Option<u32>,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub s: i32,
    /// Check the mirrored relation through the involution.
    #[arg(long)]
    pub tilde: bool,
    /// `grid`: every relation with parameters up to the maxima, and its
    /// mirror.
    #[arg(long)]
    pub suite: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub kmax: u32,
    #[arg(long, default_value_t = 2)]
    pub lmax: u32,
    #[arg(long, default_value_t = 5)]
    pub tmax: u32,
}

/// What went wrong, mapped to an exit code.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Engine(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_FAILED,
            Failure::Engine(_) => EXIT_ENGINE,
        }
    }
}

impl From<qg2_core::Error> for Failure {
    fn from(e: qg2_core::Error) -> Failure {
        match e {
            qg2_core::Error::Parse(m) => Failure::Input(m),
            qg2_core::Error::InvalidParameters(m) => Failure::Input(m),
            other => Failure::Engine(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Engine(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

struct Context {
    global: Global,
    fm: SharedProvider,
    recursive: SharedProvider,
}

impl Context {
    fn new(global: Global) -> Context {
        let cache = Cache::from_flag_or_env(global.cache_dir.as_deref());
        let opts = FmOptions {
            max_terms: global.max_terms,
            ..FmOptions::default()
        };
        Context {
            fm: SharedProvider::new(Engine::Fm, opts.clone(), cache.clone()),
            recursive: SharedProvider::new(Engine::Recursive, opts, cache),
            global,
        }
    }

    fn provider(&self, engine: Engine) -> &SharedProvider {
        match engine {
            Engine::Fm => &self.fm,
            Engine::Recursive => &self.recursive,
        }
    }

    fn pool(&self) -> Result<rayon::ThreadPool, Failure> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.global.jobs)
            .build()
            .map_err(|e| Failure::Engine(e.to_string()))
    }
}

/// Run a parsed command line, writing the report to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> i32 {
    let cx = Context::new(cli.global);
    let r = match cli.command {
        Command::Compute { id, output } => compute(&cx, &id, output, out),
        Command::Verify(a) => verify(&cx, &a, out),
        Command::Dims {
            family,
            kmax,
            lmax,
            check,
        } => dims(&cx, &family, kmax, lmax, check, out),
        Command::Special { ids } => special(&cx, &ids, out),
        Command::Export {
            ids,
            out_dir,
            grid,
            kmax,
            lmax,
        } => export(&cx, &ids, out_dir, grid, kmax, lmax, out),
    };
    match r {
        Ok(code) => code,
        Err(f) => {
            let msg = match &f {
                Failure::Input(m) => format!("error: {}", m),
                Failure::Engine(m) => format!("engine error: {}", m),
            };
            let _ = writeln!(out, "{}", msg);
            f.code()
        }
    }
}

fn parse_id(s: &str) -> Result<FamilyId, Failure> {
    s.parse().map_err(|e: qg2_core::Error| Failure::Input(e.to_string()))
}

/// Compute with every requested engine; with two engines the results must
/// agree.
fn character(cx: &Context, id: &FamilyId) -> Result<(Arc<QPolynomial>, Engine), Failure> {
    let mut first: Option<(Arc<QPolynomial>, Engine)> = None;
    for e in cx.global.engine.engines() {
        let p = cx.provider(e).character(id)?;
        if let Some((q, _)) = &first {
            if let Some((m, a, b)) = q.first_difference(&p) {
                return Err(Failure::Engine(format!(
                    "engines disagree on {} at {}: {} against {}",
                    id, m, a, b
                )));
            }
        } else {
            first = Some((p, e));
        }
    }
    Ok(first.expect("at least one engine"))
}

fn summary(id: &FamilyId, p: &QPolynomial) -> Result<String, Failure> {
    Ok(format!(
        "{} terms={} dim={} dominant={} anti_dominant={}",
        id,
        p.len(),
        dim_of_character(p)?,
        p.dominant_terms().len(),
        p.anti_dominant_terms().len()
    ))
}

fn compute(cx: &Context, id: &str, output: Option<PathBuf>, out: &mut dyn Write) -> Outcome {
    let id = parse_id(id)?;
    let (p, engine) = character(cx, &id)?;
    if let Some(path) = output {
        let text = CharacterJson::new(&p, engine)
            .map_err(|e| Failure::Engine(e.to_string()))?
            .to_string_pretty();
        if path.as_os_str() == "-" {
            out.write_all(text.as_bytes())?;
            return Ok(EXIT_OK);
        }
        std::fs::write(&path, text)?;
    }
    writeln!(out, "{}", summary(&id, &p)?)?;
    Ok(EXIT_OK)
}

fn report_line(rep: &VerificationReport) -> String {
    let mut s = format!(
        "{} {:<22} {}",
        if rep.passed { "PASS" } else { "FAIL" },
        rep.relation.to_string(),
        rep.masses()
    );
    if let Some(d) = &rep.discrepancy {
        let _ = write!(s, "  first difference at {}: {} vs {}", d.monomial, d.lhs, d.rhs);
    }
    s
}

/// Verify a plain relation and, through the involution, its mirror.
fn verify_pair(
    provider: &SharedProvider,
    rid: RelationId,
    mirror: bool,
) -> Result<Vec<VerificationReport>, qg2_core::Error> {
    let inst = relation_instance(&rid)?;
    let ch = RelationCharacters::fetch(&inst, provider)?;
    let mut v = vec![verify_with(rid, &ch, DEFAULT_WORK_BUDGET)?];
    if mirror {
        v.push(verify_mirror(&inst, &ch)?);
    }
    Ok(v)
}

fn verify(cx: &Context, a: &VerifyArgs, out: &mut dyn Write) -> Outcome {
    let ids: Vec<(RelationId, bool)> = match (&a.suite, &a.relation) {
        (Some(s), _) if s == "grid" => grid(a.kmax, a.lmax, a.tmax, a.s)
            .into_iter()
            .filter(|r| !r.tilde)
            .map(|r| (r, true))
            .collect(),
        (Some(s), _) => return Err(Failure::Input(format!("unknown suite {:?}", s))),
        (None, Some(name)) => {
            let kind: RelationKind = name.parse()?;
            let k = a.t.unwrap_or(a.k);
            let (uk, ul) = kind.uses();
            let rid = RelationId::new(kind, if uk { k } else { 0 }, if ul { a.l } else { 0 }, a.s);
            relation_instance(&rid)?;
            if a.tilde {
                vec![(rid, true)]
            } else {
                vec![(rid, false)]
            }
        }
        (None, None) => return Err(Failure::Input("name a relation or a suite".into())),
    };
    let only_mirror = a.suite.is_none() && a.tilde;
    let mut failed = false;
    for engine in cx.global.engine.engines() {
        let provider = cx.provider(engine);
        let pool = cx.pool()?;
        let results: Vec<_> = pool.install(|| {
            ids.par_iter()
                .map(|(rid, mirror)| verify_pair(provider, *rid, *mirror))
                .collect()
        });
        for ((rid, _), r) in ids.iter().zip(results) {
            let reps = r.map_err(|e| Failure::Engine(format!("{}: {}", rid, e)))?;
            let skip = usize::from(only_mirror);
            for rep in &reps[skip..] {
                failed |= !rep.passed;
                writeln!(out, "{} [{}]", report_line(rep), engine.name())?;
            }
        }
    }
    if ids.len() == 1 && a.suite.is_none() {
        let rid = if only_mirror { ids[0].0.mirrored() } else { ids[0].0 };
        writeln!(out, "{}", describe(&relation_instance(&rid)?))?;
    }
    Ok(if failed { EXIT_FAILED } else { EXIT_OK })
}

fn dims(cx: &Context, family: &str, kmax: u32, lmax: u32, check: bool, out: &mut dyn Write) -> Outcome {
    let fam: Family = family.parse()?;
    let plain = fam.plain();
    if !Family::PLAIN.contains(&plain) {
        return Err(Failure::Input(format!("no dimension formula for {}", family)));
    }
    let mut failed = false;
    writeln!(out, "{:>3} {:>3} {:>12}{}", "k", "l", "dim", if check { "  character" } else { "" })?;
    for k in 0..=kmax {
        for l in 0..=lmax {
            let d = dim_closed_form(plain, k, l)?;
            let mut line = format!("{:>3} {:>3} {:>12}", k, l, d);
            if check {
                let (p, _) = character(cx, &FamilyId::new(fam, k, l, 0))?;
                let m = dim_of_character(&p)?;
                let ok = m == d;
                failed |= !ok;
                let _ = write!(line, "  {} {}", m, if ok { "ok" } else { "MISMATCH" });
            }
            writeln!(out, "{}", line)?;
        }
    }
    Ok(if failed { EXIT_FAILED } else { EXIT_OK })
}

fn special(cx: &Context, ids: &[String], out: &mut dyn Write) -> Outcome {
    if ids.is_empty() {
        return Err(Failure::Input("name at least one module".into()));
    }
    for s in ids {
        let id = parse_id(s)?;
        let (p, _) = character(cx, &id)?;
        let dom = p.dominant_terms();
        let anti = p.anti_dominant_terms();
        let verdict = match (dom.len() == 1, anti.len() == 1) {
            (true, true) => "special and anti-special",
            (true, false) => "special",
            (false, true) => "anti-special",
            (false, false) => "neither special nor anti-special",
        };
        writeln!(out, "{}: {}", id, verdict)?;
        for (m, c) in &dom {
            writeln!(out, "  dominant      {} x{}", m, c)?;
        }
        for (m, c) in &anti {
            writeln!(out, "  anti-dominant {} x{}", m, c)?;
        }
    }
    Ok(EXIT_OK)
}

fn export(
    cx: &Context,
    ids: &[String],
    dir: PathBuf,
    with_grid: bool,
    kmax: u32,
    lmax: u32,
    out: &mut dyn Write,
) -> Outcome {
    let mut all: Vec<FamilyId> = ids.iter().map(|s| parse_id(s)).collect::<Result<_, _>>()?;
    if with_grid {
        for plain in Family::PLAIN {
            for f in [plain, plain.tilde().expect("plain families have mirrors")] {
                for k in 0..=kmax {
                    for l in 0..=lmax {
                        all.push(FamilyId::new(f, k, l, 0));
                    }
                }
            }
        }
    }
    if all.is_empty() {
        return Err(Failure::Input("nothing to export".into()));
    }
    std::fs::create_dir_all(&dir)?;
    let cache = Cache::new(&dir);
    for id in &all {
        let (p, engine) = character(cx, id)?;
        cache.store(id, engine, &p)?;
        writeln!(out, "{} -> {}", id, cache.path(id, engine).display())?;
    }
    Ok(EXIT_OK)
}
