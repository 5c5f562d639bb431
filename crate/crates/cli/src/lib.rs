//! Command-line front end for `sethom-core`.
//!
//! Exit codes: 0 success or predicate holds, 1 error, 2 cap exceeded,
//! 3 predicate fails (a witness is printed).

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sethom::catalog::l_list;
use sethom::enumeration::{classify_cross_check, enumerate_all, ENUMERATION_CAP};
use sethom::homo::{
    check_homogeneous, check_k_homogeneous, check_k_set_homogeneous, check_set_homogeneous,
    Witness,
};
use sethom::infinite::{
    non_2hom_witness_rn, non_2hom_witness_t4, rn_census, sample_rn, sample_t4, t4_census,
    Census, Non2HomWitness, Orientation,
};
use sethom::*;

pub mod formats;

/// Largest sample accepted by `infinite`.
pub const SAMPLE_CAP: usize = 60;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(sethom::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("sample size {requested} exceeds the cap {cap}")]
    SampleCap { requested: usize, cap: usize },
}

impl From<sethom::Error> for CliError {
    fn from(e: sethom::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(sethom::Error::CapExceeded { .. }) | CliError::SampleCap { .. } => 2,
            _ => 1,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "sethom", version, about = "Finite set-homogeneous digraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Named digraphs and their parameters
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
    /// Evaluate an expression and write it as SHD
    Build {
        expr: String,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Automorphism group summary
    Aut { input: String },
    /// Homogeneity predicates
    Check {
        #[command(subcommand)]
        command: CheckCommand,
    },
    /// Isomorph-free enumeration of small orders
    Enumerate {
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        cross_check: bool,
        #[arg(long)]
        json: bool,
    },
    /// Finite samples of the infinite families: `t4`, `r2`, `r3`, ...
    Infinite {
        family: String,
        #[command(flatten)]
        opts: SampleOpts,
    },
    /// Write a digraph as DOT or JSON
    Export {
        #[arg(long, value_enum)]
        format: ExportFormat,
        input: String,
        #[arg(short)]
        o: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCommand {
    /// Atoms of the expression grammar; with --max-n, the classification list
    List {
        #[arg(long)]
        max_n: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum CheckCommand {
    SetHom {
        input: String,
    },
    Hom {
        input: String,
        /// Defaults to the order of the digraph
        #[arg(long)]
        max_k: Option<usize>,
    },
    KHom {
        input: String,
        #[arg(short)]
        k: usize,
    },
    KSetHom {
        input: String,
        #[arg(short)]
        k: usize,
    },
}

#[derive(Args, Debug)]
struct SampleOpts {
    #[arg(long, default_value_t = 30)]
    size: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    census: bool,
    #[arg(long)]
    witness: bool,
    #[arg(long)]
    json: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ExportFormat {
    Dot,
    Json,
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let mut out = String::new();
    let result = dispatch(cli.command, &mut out);
    let _ = std::io::stdout().write_all(out.as_bytes());
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("sethom: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, out: &mut String) -> Result<i32> {
    match command {
        Command::Catalog {
            command: CatalogCommand::List { max_n },
        } => catalog_list(max_n, out),
        Command::Build { expr, o } => {
            let d = build(&parse_expr(&expr)?)?;
            emit(&formats::to_shd(&d), o.as_deref(), out)?;
        }
        Command::Aut { input } => aut(&load(&input)?, out),
        Command::Check { command } => return check(command, out),
        Command::Enumerate {
            max_n,
            cross_check,
            json,
        } => enumerate(max_n, cross_check, json, out)?,
        Command::Infinite { family, opts } => infinite(&family, &opts, out)?,
        Command::Export { format, input, o } => {
            let d = load(&input)?;
            let text = match format {
                ExportFormat::Dot => formats::to_dot(&d),
                ExportFormat::Json => formats::to_json(&d),
            };
            emit(&text, o.as_deref(), out)?;
        }
    }
    Ok(0)
}

/// `expr:<expression>` or a path to an SHD file.
fn load(input: &str) -> Result<SDigraph> {
    if let Some(expr) = input.strip_prefix("expr:") {
        return Ok(build(&parse_expr(expr)?)?);
    }
    let text = std::fs::read_to_string(input).map_err(|source| CliError::Io {
        path: input.to_string(),
        source,
    })?;
    formats::from_shd(&text).map_err(|e| match e {
        CliError::Format { line, message } => CliError::Usage(format!("{input}:{line}: {message}")),
        other => other,
    })
}

fn emit(text: &str, path: Option<&Path>, out: &mut String) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            out.push_str(text);
            Ok(())
        }
    }
}

const ATOMS: [(&str, &str, &str); 15] = [
    ("K(n)", "n >= 1", "n"),
    ("Kbar(n)", "n >= 1", "n"),
    ("Kmn(m,n)", "m, n >= 1", "m+n"),
    ("C(n)", "n >= 1", "n"),
    ("D(n)", "n = 1 or n >= 3", "n"),
    ("P3", "", "3"),
    ("E6", "", "6"),
    ("E7", "", "7"),
    ("F6", "", "6"),
    ("J(n)", "n >= 1", "3n"),
    ("H0", "", "8"),
    ("H1", "", "8"),
    ("H2", "", "12"),
    ("H3", "", "27"),
    ("X", "", "27"),
];

fn catalog_list(max_n: Option<usize>, out: &mut String) {
    match max_n {
        None => {
            let _ = writeln!(out, "{:<10} {:<18} order", "name", "parameters");
            for (name, params, order) in ATOMS {
                let _ = writeln!(out, "{name:<10} {params:<18} {order}");
            }
            out.push_str("combinators: comp(e) wcomp(e) conv(e) e[f] e*f\n");
        }
        Some(n) => {
            for (label, d) in theorem_list(n) {
                let _ = writeln!(out, "{:>3}  {label}", d.n());
            }
            let graphs = l_list(n).len();
            let _ = writeln!(out, "# {graphs} set-homogeneous graphs of order <= {n}");
        }
    }
}

fn cycle_notation(p: &Permutation) -> String {
    let cycles = p.cycles();
    if cycles.is_empty() {
        return "()".into();
    }
    cycles
        .iter()
        .map(|c| {
            let body: Vec<String> = c.iter().map(usize::to_string).collect();
            format!("({})", body.join(" "))
        })
        .collect()
}

fn aut(d: &SDigraph, out: &mut String) {
    let g = automorphism_group(d);
    let _ = writeln!(out, "order {}", g.order());
    let _ = writeln!(out, "generators {}", g.generators().len());
    for p in g.generators() {
        let _ = writeln!(out, "  {}", cycle_notation(p));
    }
    let orbits = g.orbits_on_points();
    let _ = writeln!(out, "vertex orbits {}", orbits.len());
    for o in &orbits {
        let _ = writeln!(out, "  {o:?}");
    }
    let orb = g.orbital_decomposition();
    let _ = writeln!(out, "orbitals {}", orb.count());
    let _ = writeln!(out, "  {:>3} {:>6} {:>6} {:>6}  representative", "id", "paired", "pairs", "state");
    for o in 0..orb.count() {
        let pairs = orb.pairs(o);
        let (a, b) = pairs[0];
        let state = if a == b { "diag".to_string() } else { format!("{:?}", d.state(a, b)) };
        let _ = writeln!(
            out,
            "  {o:>3} {:>6} {:>6} {state:>6}  ({a},{b})",
            orb.paired(o),
            pairs.len()
        );
    }
}

fn describe_witness(w: &Witness) -> String {
    match w {
        Witness::Subsets { u, v } => format!(
            "subsets {:?} and {:?} induce isomorphic digraphs in different orbits",
            u.to_vec(),
            v.to_vec()
        ),
        Witness::NonExtending { u, v } => {
            let map: Vec<String> = u.iter().zip(v).map(|(a, b)| format!("{a}->{b}")).collect();
            format!(
                "isomorphism {:?} -> {:?} ({}) extends to no automorphism",
                u,
                v,
                map.join(", ")
            )
        }
    }
}

fn check(command: CheckCommand, out: &mut String) -> Result<i32> {
    let verdict = match command {
        CheckCommand::SetHom { input } => check_set_homogeneous(&load(&input)?)?,
        CheckCommand::Hom { input, max_k } => {
            let d = load(&input)?;
            let k = max_k.unwrap_or(d.n());
            check_homogeneous(&d, k)
        }
        CheckCommand::KHom { input, k } => check_k_homogeneous(&load(&input)?, k),
        CheckCommand::KSetHom { input, k } => check_k_set_homogeneous(&load(&input)?, k)?,
    };
    let name = format!("{:?}", verdict.predicate);
    if verdict.holds {
        let _ = writeln!(out, "{name}: holds");
        return Ok(0);
    }
    let _ = writeln!(out, "{name}: fails at k={}", verdict.failing_k.unwrap_or(0));
    if let Some(w) = &verdict.witness {
        let _ = writeln!(out, "witness: {}", describe_witness(w));
    }
    Ok(3)
}

fn hex(code: &[u8]) -> String {
    code.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Serialize)]
struct EnumerationDoc {
    max_n: usize,
    counts: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cross_check: Option<CrossCheckDoc>,
}

#[derive(Serialize)]
struct CrossCheckDoc {
    survivors: Vec<SurvivorDoc>,
    missing: Vec<String>,
    unexpected: Vec<String>,
    closed: bool,
    clean: bool,
}

#[derive(Serialize)]
struct SurvivorDoc {
    n: usize,
    code: String,
    label: Option<String>,
}

fn enumerate(max_n: usize, cross_check: bool, json: bool, out: &mut String) -> Result<()> {
    if max_n > ENUMERATION_CAP {
        return Err(sethom::Error::CapExceeded {
            requested: max_n,
            cap: ENUMERATION_CAP,
        }
        .into());
    }
    let doc = if cross_check {
        let r = classify_cross_check(max_n)?;
        EnumerationDoc {
            max_n,
            counts: r.counts.clone(),
            cross_check: Some(CrossCheckDoc {
                survivors: r
                    .survivors
                    .iter()
                    .map(|s| SurvivorDoc {
                        n: s.code[1] as usize,
                        code: hex(&s.code),
                        label: s.label.clone(),
                    })
                    .collect(),
                missing: r.missing.clone(),
                unexpected: r.unexpected.iter().map(|c| hex(c)).collect(),
                closed: r.closed,
                clean: r.is_clean(),
            }),
        }
    } else {
        EnumerationDoc {
            max_n,
            counts: enumerate_all(max_n)?.iter().map(Vec::len).collect(),
            cross_check: None,
        }
    };
    if json {
        out.push_str(&serde_json::to_string_pretty(&doc).expect("plain data serializes"));
        out.push('\n');
        return Ok(());
    }
    for (n, c) in doc.counts.iter().enumerate() {
        let _ = writeln!(out, "n={n} classes={c}");
    }
    if let Some(x) = &doc.cross_check {
        let _ = writeln!(out, "set-homogeneous: {}", x.survivors.len());
        for s in &x.survivors {
            let label = s.label.as_deref().unwrap_or("UNLISTED");
            let _ = writeln!(out, "  n={} {} {label}", s.n, s.code);
        }
        for m in &x.missing {
            let _ = writeln!(out, "missing: {m}");
        }
        let _ = writeln!(out, "closed under complement and converse: {}", x.closed);
        let _ = writeln!(out, "cross-check: {}", if x.clean { "clean" } else { "DISCREPANCY" });
    }
    Ok(())
}

#[derive(Serialize)]
struct SampleDoc {
    family: String,
    size: usize,
    seed: u64,
    points: Vec<String>,
    arcs: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    census: Option<CensusDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<[usize; 3]>,
}

#[derive(Serialize)]
struct CensusDoc {
    orientation: &'static str,
    /// `L_1 .. L_14`
    counts: Vec<u64>,
    other: u64,
    /// `L_7 .. L_14` total; only meaningful for `t4`
    #[serde(skip_serializing_if = "Option::is_none")]
    forbidden: Option<u64>,
}

impl CensusDoc {
    fn new(orientation: &'static str, c: &Census) -> Self {
        CensusDoc {
            orientation,
            counts: c.counts.to_vec(),
            other: c.other,
            forbidden: (orientation == "clockwise").then(|| c.forbidden_total()),
        }
    }
}

fn infinite(family: &str, opts: &SampleOpts, out: &mut String) -> Result<()> {
    if opts.size > SAMPLE_CAP {
        return Err(CliError::SampleCap {
            requested: opts.size,
            cap: SAMPLE_CAP,
        });
    }
    let family = family.to_ascii_lowercase();
    let (points, digraph, census, witness): (Vec<String>, SDigraph, Option<CensusDoc>, Option<Non2HomWitness>) =
        if family == "t4" {
            let s = sample_t4(opts.size, opts.seed);
            let census = opts
                .census
                .then(|| CensusDoc::new("clockwise", &t4_census(&s, Orientation::Clockwise)));
            let w = if opts.witness { non_2hom_witness_t4(&s) } else { None };
            // turn fractions
            let points = s.angles.iter().map(|&a| format!("{a}/4294967296")).collect();
            (points, s.digraph, census, w)
        } else if let Some(classes) = family.strip_prefix('r').and_then(|k| k.parse::<usize>().ok()) {
            let s = sample_rn(classes, opts.size, opts.seed)?;
            let census = opts.census.then(|| CensusDoc::new("increasing", &rn_census(&s)));
            let w = if opts.witness { non_2hom_witness_rn(&s) } else { None };
            let points = s.values.iter().zip(&s.classes).map(|(v, c)| format!("{v}@{c}")).collect();
            (points, s.digraph, census, w)
        } else {
            return Err(CliError::Usage(format!("unknown family `{family}`; expected t4 or rN")));
        };
    if opts.witness && witness.is_none() {
        return Err(CliError::Usage("no non-2-homogeneity witness in this sample".into()));
    }
    let doc = SampleDoc {
        family,
        size: opts.size,
        seed: opts.seed,
        points,
        arcs: digraph.census().1,
        census,
        witness: witness.map(|w| [w.x, w.z, w.y]),
    };
    if opts.json {
        out.push_str(&serde_json::to_string_pretty(&doc).expect("plain data serializes"));
        out.push('\n');
        return Ok(());
    }
    let _ = writeln!(out, "{} size={} seed={} arcs={}", doc.family, doc.size, doc.seed, doc.arcs);
    for (i, p) in doc.points.iter().enumerate() {
        let _ = writeln!(out, "  {i} {p}");
    }
    if let Some(c) = &doc.census {
        let _ = writeln!(out, "census ({})", c.orientation);
        for (i, n) in c.counts.iter().enumerate() {
            let _ = writeln!(out, "  L{} {n}", i + 1);
        }
        let _ = writeln!(out, "  other {}", c.other);
        if let Some(f) = c.forbidden {
            let _ = writeln!(out, "  forbidden {f}");
        }
    }
    if let Some([x, z, y]) = doc.witness {
        let _ = writeln!(
            out,
            "witness: {x} -> {z} -> {y} with {x},{y} unrelated and no path {y} -> w -> {x}"
        );
    }
    Ok(())
}
