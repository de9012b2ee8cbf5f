//! `latsep` command-line front end.
//!
//! Exit codes: 0 when the checked condition holds (or the command
//! succeeded), 1 when it fails, 2 for usage and input errors, 3 for
//! unsupported inputs such as integral convexity above dimension 3.

mod svg;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use latsep::catalog::{builtin, parse_catalog, CatalogReport};
use latsep::conditions::{
    check_parallelogram, check_ray, lex_flag_to_subspace_chain, search_flag, verify_flag, BlockingFlat,
};
use latsep::constructions::{equal_sum_triple, MinimalTriangle};
use latsep::convexity::{classify_holes, is_hole_free, is_integrally_convex, is_k_convex, k_convex_hull};
use latsep::explorer::{
    conjecture_hunt, record_line, test_equivalence, Checkpoint, Condition, ConjectureConfig, EquivalenceConfig, Filter,
    Record,
};
use latsep::instance::{parse_instance, Instance};
use latsep::{GeometryError, IntPoint, PointSet, SeparatingFlag, Verdict};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "latsep", version, about = "Separation of finite lattice point sets, decided exactly")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide one condition on an instance file.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Search for a separating flag.
    Separate { file: PathBuf },
    /// Check a given flag against a partition.
    VerifyFlag {
        file: PathBuf,
        #[arg(long)]
        flag: PathBuf,
    },
    /// The k-convex hull of S.
    Hull {
        #[arg(long)]
        k: usize,
        file: PathBuf,
    },
    /// Holes of S, each with the least k whose k-convex hull contains it.
    Holes { file: PathBuf },
    /// Equal-sum interior triple of a lattice triangle with primitive edges.
    EqualSumTriple { file: PathBuf },
    /// Run the example catalog.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Exhaustive and randomized searches.
    #[command(subcommand)]
    Explore(ExploreCommand),
    /// Draw a planar instance as SVG.
    Plot {
        file: PathBuf,
        #[arg(long)]
        flag: Option<PathBuf>,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
}

#[derive(Subcommand)]
enum CheckCommand {
    /// k-parallelogram condition.
    Par {
        #[arg(long, default_value_t = 2)]
        k: usize,
        file: PathBuf,
    },
    /// Ray condition.
    Ray { file: PathBuf },
    /// S = conv(S) ∩ Z^d.
    HoleFree { file: PathBuf },
    /// Integral convexity of S.
    IntegrallyConvex { file: PathBuf },
    /// k-convexity of S.
    KConvex {
        #[arg(long)]
        k: usize,
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    Run {
        /// Only entries whose id contains this text.
        #[arg(long)]
        id: Option<String>,
        /// Catalog file to use instead of the built-in one.
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Parallelism {
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum ExploreCommand {
    /// Compare two conditions on every bipartition of every grid subset.
    Equivalence {
        /// Grid size per axis, e.g. 3x3 or 2x2x2.
        #[arg(long, default_value = "3x3")]
        grid: String,
        /// integrally-convex, hole-free, 1-convex or any.
        #[arg(long, default_value = "integrally-convex")]
        filter: String,
        /// P<k>, R or H.
        #[arg(long, default_value = "P2")]
        left: String,
        #[arg(long, default_value = "H")]
        right: String,
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long)]
        stop_after: Option<usize>,
        /// Progress file; an existing one for the same configuration is resumed.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[command(flatten)]
        parallel: Parallelism,
    },
    /// Hunt for integrally convex sets in Z^3 with the parallelogram
    /// condition but without flag separation.
    Conjecture {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        budget: u64,
        /// Vertex coordinate range, `lo,hi`.
        #[arg(long = "box", default_value = "0,6")]
        range: String,
        #[arg(long, default_value_t = 4)]
        vertices: usize,
        #[arg(long, default_value_t = 12)]
        max_points: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[command(flatten)]
        parallel: Parallelism,
    },
}

/// Errors mapped to exit status 2 (input) or 3 (unsupported).
#[derive(Debug)]
enum Failure {
    Input(anyhow::Error),
    Unsupported(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        let e = e.into();
        let unsupported = e
            .chain()
            .any(|c| matches!(c.downcast_ref::<GeometryError>(), Some(GeometryError::UnsupportedDimension { .. })));
        if unsupported {
            Failure::Unsupported(e)
        } else {
            Failure::Input(e)
        }
    }
}

type Run = Result<bool, Failure>;

struct Out {
    json: bool,
    text: String,
}

impl Out {
    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    /// Prints either the text lines collected so far or `value`.
    fn finish(&self, value: Value) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(&value).expect("json"));
        } else {
            print!("{}", self.text);
        }
    }
}

fn read_instance(path: &Path) -> anyhow::Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_flag(path: &Path) -> anyhow::Result<SeparatingFlag> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut v: Value = serde_json::from_str(&text).with_context(|| format!("parsing flag {}", path.display()))?;
    // accept the output of `separate --json` as well as a bare flag
    if let Some(flag) = v.get_mut("flag") {
        v = flag.take();
    }
    serde_json::from_value(v).with_context(|| format!("parsing flag {}", path.display()))
}

fn points(s: &[IntPoint]) -> String {
    s.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn set_line(s: &PointSet) -> String {
    if s.is_empty() {
        return "0 points".to_string();
    }
    format!("{} points: {}", s.len(), points(s.points()))
}

fn verdict_word(holds: bool) -> &'static str {
    if holds {
        "holds"
    } else {
        "fails"
    }
}

fn check(cmd: CheckCommand, out: &mut Out) -> Run {
    let (name, holds, value) = match cmd {
        CheckCommand::Par { k, file } => {
            let inst = read_instance(&file)?;
            let v = check_parallelogram(inst.partition()?, k);
            if let Some(w) = v.counterexample() {
                out.line(format!("sum of A points {} equals sum of B points {}", points(&w.a_points), points(&w.b_points)));
            }
            (format!("{k}-parallelogram"), v.holds(), serde_json::to_value(&v)?)
        }
        CheckCommand::Ray { file } => {
            let inst = read_instance(&file)?;
            let v = check_ray(inst.partition()?);
            if let Some(w) = v.counterexample() {
                let dir: Vec<String> = w.direction.iter().map(ToString::to_string).collect();
                out.line(format!("direction ({})", dir.join(",")));
                for (x, side) in &w.trace {
                    out.line(format!("  {x} {side}"));
                }
            }
            ("ray".into(), v.holds(), serde_json::to_value(&v)?)
        }
        CheckCommand::HoleFree { file } => {
            let v = is_hole_free(&read_instance(&file)?.support())?;
            if let Some(h) = v.counterexample() {
                out.line(format!("missing lattice point {h}"));
            }
            ("hole-free".into(), v.holds(), serde_json::to_value(&v)?)
        }
        CheckCommand::IntegrallyConvex { file } => {
            let v = is_integrally_convex(&read_instance(&file)?.support())?;
            if let Some(w) = v.counterexample() {
                let vertex: Vec<String> = w.vertex.iter().map(latsep::exact::format_rational).collect();
                out.line(format!("unit cell at {}: vertex ({}) of the clipped hull is missed", w.cell, vertex.join(",")));
            }
            ("integrally convex".into(), v.holds(), serde_json::to_value(&v)?)
        }
        CheckCommand::KConvex { k, file } => {
            if k == 0 {
                return Err(Failure::Input(anyhow!("k must be positive")));
            }
            let v = is_k_convex(&read_instance(&file)?.support(), k)?;
            if let Some(w) = v.counterexample() {
                out.line(format!("{} lies in conv of {}", w.missing, points(&w.subset)));
            }
            (format!("{k}-convex"), v.holds(), serde_json::to_value(&v)?)
        }
    };
    out.text.insert_str(0, &format!("{name}: {}\n", verdict_word(holds)));
    out.finish(value);
    Ok(holds)
}

fn describe_blocking(flat: &BlockingFlat, out: &mut Out) {
    for (i, g) in flat.prefix.iter().enumerate() {
        out.line(format!("  level {}: {g}", i + 1));
    }
    let basis: Vec<String> = flat
        .basis
        .iter()
        .map(|v| format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    out.line(format!("blocking flat: {} + span{{{}}}", flat.anchor, basis.join(", ")));
    out.line(format!("  A points: {}", points(&flat.a_points)));
    out.line(format!("  B points: {}", points(&flat.b_points)));
}

fn separate(file: &Path, out: &mut Out) -> Run {
    let inst = read_instance(file)?;
    let p = inst.partition()?;
    let v = search_flag(p);
    let value = match &v {
        Verdict::Holds(flag) => {
            out.line("separating flag found");
            for (i, g) in flag.functionals.iter().enumerate() {
                out.line(format!("  level {}: {g}", i + 1));
            }
            out.line(format!("  residual: {}", serde_json::to_value(flag.residual)?.as_str().unwrap_or("?")));
            let chain = lex_flag_to_subspace_chain(flag, p.dim())?;
            out.line("nested subspaces (innermost first):");
            for s in &chain {
                out.line(format!("  {s}"));
            }
            let chain: Vec<String> = chain.iter().map(ToString::to_string).collect();
            json!({"verdict": "holds", "flag": flag, "subspaces": chain})
        }
        Verdict::Fails(flat) => {
            out.line("no separating flag");
            describe_blocking(flat, out);
            json!({"verdict": "fails", "witness": flat})
        }
    };
    out.finish(value);
    Ok(v.holds())
}

fn verify(file: &Path, flag: &Path, out: &mut Out) -> Run {
    let inst = read_instance(file)?;
    let flag = read_flag(flag)?;
    let p = inst.partition()?;
    let ok = verify_flag(p, &flag)?;
    let bad = latsep::conditions::flag_violation(p, &flag)?;
    out.line(if ok { "flag accepted" } else { "flag rejected" });
    if let Some((x, side)) = &bad {
        out.line(format!("  {x} of {side} is misplaced"));
    }
    out.finish(json!({"accepted": ok, "misplaced": bad.map(|(x, s)| json!({"point": x, "side": s.to_string()}))}));
    Ok(ok)
}

fn hull(k: usize, file: &Path, out: &mut Out) -> Run {
    if k == 0 {
        return Err(Failure::Input(anyhow!("k must be positive")));
    }
    let s = read_instance(file)?.support();
    let h = k_convex_hull(&s, k)?;
    let added = h.difference(&s);
    out.line(format!("{k}-convex hull: {}", set_line(&h)));
    out.line(format!("added: {}", set_line(&added)));
    out.finish(json!({"k": k, "hull": h.points(), "added": added.points()}));
    Ok(true)
}

fn holes(file: &Path, out: &mut Out) -> Run {
    let s = read_instance(file)?.support();
    let report = classify_holes(&s)?;
    out.line(format!("{} holes", report.len()));
    out.line("hole\tfirst k");
    for h in &report {
        out.line(format!("{}\t{}", h.hole, h.first_k));
    }
    out.finish(serde_json::to_value(&report)?);
    Ok(true)
}

fn triple(file: &Path, out: &mut Out) -> Run {
    let s = read_instance(file)?.support();
    let v = s.points();
    if v.len() != 3 {
        return Err(Failure::Input(anyhow!("expected exactly three vertices, found {}", v.len())));
    }
    let t = MinimalTriangle::new(v[0].clone(), v[1].clone(), v[2].clone())?;
    let (b1, b2, b3) = equal_sum_triple(&t)?;
    let sum = t.a1.add(&t.a2).add(&t.a3);
    out.line(format!("{} + {} + {} = {} + {} + {} = {}", t.a1, t.a2, t.a3, b1, b2, b3, sum));
    out.finish(json!({"vertices": t.vertices(), "triple": [b1, b2, b3], "sum": sum}));
    Ok(true)
}

fn catalog(id: Option<String>, file: Option<PathBuf>, out: &mut Out) -> Run {
    let cat = match file {
        Some(f) => parse_catalog(&fs::read_to_string(&f).with_context(|| format!("reading {}", f.display()))?)?,
        None => builtin(),
    };
    let report: CatalogReport = cat.run(id.as_deref())?;
    if report.entries.is_empty() {
        return Err(Failure::Input(anyhow!("no catalog entry matches")));
    }
    for e in &report.entries {
        out.line(format!("{} {}", if e.passed() { "PASS" } else { "FAIL" }, e.id));
        for o in &e.outcomes {
            out.line(format!("  [{}] {}", if o.passed { "ok" } else { "FAILED" }, o.claim));
        }
    }
    out.finish(serde_json::to_value(&report)?);
    Ok(report.passed())
}

fn pool(p: &Parallelism) -> anyhow::Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = p.jobs {
        b = b.num_threads(n.max(1));
    }
    Ok(b.build()?)
}

fn parse_grid(s: &str) -> anyhow::Result<Vec<usize>> {
    s.split('x')
        .map(|n| n.trim().parse::<usize>().with_context(|| format!("bad grid `{s}`")))
        .collect()
}

fn write_checkpoint(path: &Path, c: &Checkpoint) -> anyhow::Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, serde_json::to_string_pretty(c)?)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn explore(cmd: ExploreCommand) -> Run {
    match cmd {
        ExploreCommand::Equivalence {
            grid,
            filter,
            left,
            right,
            max_size,
            stop_after,
            checkpoint,
            parallel,
        } => {
            let cfg = EquivalenceConfig {
                grid: parse_grid(&grid)?,
                filter: Filter::parse(&filter)?,
                left: Condition::parse(&left)?,
                right: Condition::parse(&right)?,
                max_size,
                stop_after,
            };
            let resume: Option<Checkpoint> = match &checkpoint {
                Some(path) if path.exists() => Some(serde_json::from_str(&fs::read_to_string(path)?)?),
                _ => None,
            };
            let mut io_error = None;
            let report = pool(&parallel)?.install(|| {
                test_equivalence(&cfg, resume.as_ref(), |r| {
                    let res = match (r, &checkpoint) {
                        (Record::Progress(c), Some(path)) => write_checkpoint(path, c),
                        (Record::Progress(_), None) => Ok(()),
                        _ => writeln!(std::io::stdout(), "{}", record_line(r)).map_err(Into::into),
                    };
                    if let Err(e) = res {
                        io_error.get_or_insert(e);
                    }
                })
            })?;
            if let Some(e) = io_error {
                return Err(e.into());
            }
            Ok(report.violations.is_empty())
        }
        ExploreCommand::Conjecture {
            seed,
            budget,
            range,
            vertices,
            max_points,
            k,
            parallel,
        } => {
            let (lo, hi) = range
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                .filter(|(a, b): &(i64, i64)| a <= b)
                .ok_or_else(|| anyhow!("--box expects `lo,hi` with lo <= hi"))?;
            let cfg = ConjectureConfig {
                seed,
                budget,
                box_lo: lo,
                box_hi: hi,
                vertices,
                max_points,
                k,
            };
            let mut lines = Vec::new();
            let report = pool(&parallel)?.install(|| {
                conjecture_hunt(&cfg, |o| {
                    if o.integrally_convex {
                        lines.push(json!({"record": "sample", "sample": o}));
                    }
                })
            });
            let mut stdout = std::io::stdout().lock();
            for l in &lines {
                writeln!(stdout, "{}", record_line(l))?;
            }
            writeln!(stdout, "{}", record_line(&json!({"record": "summary", "report": report})))?;
            Ok(report.counterexamples.is_empty())
        }
    }
}

fn plot(file: &Path, flag: Option<&Path>, output: &Path) -> Run {
    let inst = read_instance(file)?;
    let flag = flag.map(read_flag).transpose()?;
    let doc = svg::render(&inst, flag.as_ref())?;
    fs::write(output, doc).with_context(|| format!("writing {}", output.display()))?;
    Ok(true)
}

fn run(cli: Cli) -> Run {
    let mut out = Out {
        json: cli.json,
        text: String::new(),
    };
    match cli.command {
        Command::Check(c) => check(c, &mut out),
        Command::Separate { file } => separate(&file, &mut out),
        Command::VerifyFlag { file, flag } => verify(&file, &flag, &mut out),
        Command::Hull { k, file } => hull(k, &file, &mut out),
        Command::Holes { file } => holes(&file, &mut out),
        Command::EqualSumTriple { file } => triple(&file, &mut out),
        Command::Catalog(CatalogCommand::Run { id, file }) => catalog(id, file, &mut out),
        Command::Explore(e) => explore(e),
        Command::Plot { file, flag, output } => plot(&file, flag.as_deref(), &output),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Unsupported(e)) => {
            eprintln!("unsupported: {e:#}");
            ExitCode::from(3)
        }
    }
}
