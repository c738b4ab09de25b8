//! The `kdcc` command line.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 formula/oracle mismatch
//! or failed property, 3 resource limit.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use kdcc_core::{
    cm, curve, cv, mixed_witness, verify_witness, vertex_witness, BigUint, FamilySpec,
    FormulaError, Graph, Oracle, OracleError, OracleLimits, OracleResult, SpecError, TreeShape,
    Witness, WitnessError,
};
use thiserror::Error;

use crate::io::{self, FormatError};
use crate::random::property_checks;
use crate::report::{
    Count, CurvePoint, Input, PackingReport, Provenance, Report, Row, Status, Value, WitnessReport,
};

/// Witnesses are listed only for graphs with at most this many vertices
/// plus edges.
pub const WITNESS_LIMIT: u64 = 1 << 16;

#[derive(Debug, Parser)]
#[command(
    name = "kdcc",
    version,
    about = "How many deletions leave every component with diameter below k"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the canonical edge list of a family graph
    Gen {
        /// Family name and parameters, e.g. `path 7` or `perfect-tree 2 3`
        #[arg(required = true, value_name = "FAMILY PARAMS")]
        spec: Vec<String>,
        /// Output file (stdout if omitted)
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Minimum vertex deletions (closed form for families, oracle for files)
    Cv(MeasureArgs),
    /// Minimum edge deletions after deleting exactly p vertices
    Cm(MeasureArgs),
    /// Every (p, q) pair from (0, CE) to (CV, 0)
    Curve(MeasureArgs),
    /// Exhaustive search for CV, CE and optionally CM at --p
    Oracle(MeasureArgs),
    /// Vertex-disjoint geodesic k-paths, a lower bound for every measure
    Packing(PackingArgs),
    /// Compare closed forms with the oracle over parameter ranges
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Family name and parameters: path N, cycle N, complete N,
    /// complete-bipartite A B, perfect-tree R L
    #[arg(value_name = "FAMILY PARAMS", conflicts_with = "file")]
    spec: Vec<String>,
    /// Edge-list file, or DOT when the name ends in .dot or .gv
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct LimitArgs {
    /// Largest vertex count the exhaustive search accepts
    #[arg(long, env = "KDCC_LIMIT_N", default_value_t = OracleLimits::default().max_vertices)]
    limit_n: usize,
    /// Largest edge count the exhaustive edge search accepts
    #[arg(long, default_value_t = OracleLimits::default().max_edges)]
    limit_e: usize,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Write the JSON report here (`-` prints it instead of the text summary)
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Record wall-clock time in the report
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Args)]
struct MeasureArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(short, long)]
    k: u64,
    #[arg(short, long)]
    p: Option<u64>,
    /// Also run the oracle and fail with exit code 2 on disagreement
    #[arg(long)]
    check: bool,
    #[command(flatten)]
    limits: LimitArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct PackingArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(short, long)]
    k: u64,
    /// Use the fast greedy packing (any size, not certified maximum)
    #[arg(long)]
    greedy: bool,
    #[command(flatten)]
    limits: LimitArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Family name followed by one range per parameter: `a..b` (inclusive),
    /// `a` or `a,b,c`
    #[arg(value_name = "FAMILY RANGES")]
    spec: Vec<String>,
    /// Range of k values
    #[arg(short, long, default_value = "2..6")]
    k: String,
    /// Also compare CM at every p from 0 to CV
    #[arg(long)]
    mixed: bool,
    /// Run the structural property checks on this many random graphs
    #[arg(long, value_name = "N")]
    random: Option<usize>,
    /// Seed for --random
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    limits: LimitArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Limit(String),
    #[error(transparent)]
    Format(#[from] FormatError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Format(_) => 1,
            CliError::Limit(_) => 3,
        }
    }
}

impl From<FormulaError> for CliError {
    fn from(e: FormulaError) -> Self {
        match e {
            FormulaError::ExponentTooLarge(_)
            | FormulaError::CurveTooLong { .. }
            | FormulaError::Spec(SpecError::TooLarge(_)) => CliError::Limit(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        FormulaError::Spec(e).into()
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::TooManyVertices { .. } => CliError::Limit(format!(
                "{e}; raise --limit-n (at most 64) to search anyway"
            )),
            OracleError::TooManyEdges { .. } => CliError::Limit(format!(
                "{e}; raise --limit-e (at most 64) to search anyway"
            )),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<WitnessError> for CliError {
    fn from(e: WitnessError) -> Self {
        match e {
            WitnessError::Formula(f) => f.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

/// What a command produced: the report, its text rendering and exit code.
struct Outcome {
    report: Report,
    text: String,
    code: i32,
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    let echo: Vec<String> = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    match execute(cli.command, echo) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command, echo: Vec<String>) -> Result<i32, CliError> {
    let start = Instant::now();
    let (outcome, output) = match command {
        Command::Gen { spec, output } => return gen(&spec, output),
        Command::Cv(args) => (measure(Verb::Cv, &args, echo)?, args.output),
        Command::Cm(args) => (measure(Verb::Cm, &args, echo)?, args.output),
        Command::Curve(args) => (measure(Verb::Curve, &args, echo)?, args.output),
        Command::Oracle(args) => (measure(Verb::Oracle, &args, echo)?, args.output),
        Command::Packing(args) => (packing(&args, echo)?, args.output),
        Command::Verify(args) => (verify(&args, echo)?, args.output),
    };
    let Outcome {
        mut report,
        mut text,
        code,
    } = outcome;
    if output.timing {
        let ms = start.elapsed().as_millis() as u64;
        report.timing_ms = Some(ms);
        let _ = writeln!(text, "time: {ms} ms");
    }
    match &output.json {
        Some(path) if path.as_os_str() == "-" => print!("{}", report.to_json()),
        Some(path) => {
            fs::write(path, report.to_json()).map_err(|source| FormatError::Io {
                path: path.display().to_string(),
                source,
            })?;
            print!("{text}");
        }
        None => print!("{text}"),
    }
    Ok(code)
}

/// Parses `family param...`. Family names ignore case, `-` and `_`.
pub fn parse_spec(words: &[String]) -> Result<FamilySpec, CliError> {
    let (family, params) = words
        .split_first()
        .ok_or_else(|| CliError::Usage("expected a family name or --file".into()))?;
    let numbers = params
        .iter()
        .map(|s| {
            s.parse::<u64>()
                .map_err(|_| CliError::Usage(format!("bad parameter {s:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let spec = family_from_numbers(family, &numbers)?;
    spec.validate()?;
    Ok(spec)
}

fn family_key(name: &str) -> String {
    name.chars()
        .filter(|c| *c != '-' && *c != '_')
        .flat_map(char::to_lowercase)
        .collect()
}

fn arity_of(family: &str) -> Result<usize, CliError> {
    match family_key(family).as_str() {
        "path" | "cycle" | "complete" => Ok(1),
        "completebipartite" | "bipartite" | "perfecttree" | "tree" => Ok(2),
        _ => Err(CliError::Usage(format!(
            "unknown family {family:?}; expected path, cycle, complete, \
             complete-bipartite or perfect-tree"
        ))),
    }
}

fn family_from_numbers(family: &str, numbers: &[u64]) -> Result<FamilySpec, CliError> {
    let want = arity_of(family)?;
    if numbers.len() != want {
        return Err(CliError::Usage(format!(
            "{family} takes {want} parameter{}, got {}",
            if want == 1 { "" } else { "s" },
            numbers.len()
        )));
    }
    Ok(match (family_key(family).as_str(), numbers) {
        ("path", [n]) => FamilySpec::Path { n: *n },
        ("cycle", [n]) => FamilySpec::Cycle { n: *n },
        ("complete", [n]) => FamilySpec::Complete { n: *n },
        ("completebipartite" | "bipartite", [left, right]) => FamilySpec::CompleteBipartite {
            left: *left,
            right: *right,
        },
        (_, [arity, height]) => FamilySpec::PerfectTree {
            arity: *arity,
            height: *height,
        },
        _ => unreachable!("parameter count checked above"),
    })
}

/// Parses `a..b` (inclusive), `a..=b`, `a` or `a,b,c`.
pub fn parse_range(text: &str) -> Result<Vec<u64>, CliError> {
    let bad = || CliError::Usage(format!("bad range {text:?}; use a..b, a or a,b,c"));
    let number = |s: &str| s.trim().parse::<u64>().map_err(|_| bad());
    if let Some((lo, hi)) = text.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let (lo, hi) = (number(lo)?, number(hi)?);
        if lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    let mut values = text.split(',').map(number).collect::<Result<Vec<_>, _>>()?;
    values.sort_unstable();
    values.dedup();
    Ok(values)
}

fn gen(words: &[String], output: Option<PathBuf>) -> Result<i32, CliError> {
    let spec = parse_spec(words)?;
    let g = spec.build()?;
    match output {
        Some(path) => io::write_graph(&path, &g)?,
        None => print!("{}", io::write_edge_list(&g)),
    }
    Ok(0)
}

enum Source {
    Spec(FamilySpec),
    File { path: PathBuf, graph: Graph },
}

impl Source {
    fn load(input: &InputArgs) -> Result<Self, CliError> {
        match &input.file {
            Some(path) => Ok(Source::File {
                graph: io::read_graph(path)?,
                path: path.clone(),
            }),
            None => Ok(Source::Spec(parse_spec(&input.spec)?)),
        }
    }

    fn input(&self) -> Input {
        match self {
            Source::Spec(spec) => Input::Spec(*spec),
            Source::File { path, graph } => Input::File {
                path: path.display().to_string(),
                vertices: graph.vertex_count(),
                edges: graph.edge_count(),
            },
        }
    }

    fn name(&self) -> String {
        match self {
            Source::Spec(spec) => spec.to_string(),
            Source::File { path, .. } => path.display().to_string(),
        }
    }

    fn graph(&self) -> Result<Graph, CliError> {
        match self {
            Source::Spec(spec) => Ok(spec.build()?),
            Source::File { graph, .. } => Ok(graph.clone()),
        }
    }

    /// Readable names for `vertices`: 1-based positions on a path, (level,
    /// index) in a tree, and the names of a labelled file.
    fn labels(&self, vertices: &[usize]) -> Option<Vec<String>> {
        match self {
            Source::Spec(FamilySpec::Path { .. }) => {
                Some(vertices.iter().map(|v| (v + 1).to_string()).collect())
            }
            Source::Spec(FamilySpec::PerfectTree { arity, height }) if *arity >= 2 => {
                let shape = TreeShape::new(*arity, *height);
                vertices
                    .iter()
                    .map(|&v| {
                        let c = shape.coordinate(v as u64).ok()?;
                        Some(format!("({},{})", c.level, c.index))
                    })
                    .collect()
            }
            Source::File { graph, .. } if graph.has_labels() => vertices
                .iter()
                .map(|&v| graph.label(v).map(str::to_owned))
                .collect(),
            _ => None,
        }
    }

    fn witness_report(&self, g: &Graph, w: &Witness) -> Result<WitnessReport, CliError> {
        let verified = verify_witness(g, w)?;
        Ok(WitnessReport::new(w, self.labels(w.vertices()), verified))
    }
}

fn small_enough_for_witness(spec: &FamilySpec) -> bool {
    matches!(
        spec.vertex_count().zip(spec.edge_count()),
        Some((v, e)) if v.saturating_add(e) <= WITNESS_LIMIT
    )
}

fn oracle_from(limits: &LimitArgs) -> Result<Oracle, CliError> {
    Ok(Oracle::new(OracleLimits {
        max_vertices: limits.limit_n,
        max_edges: limits.limit_e,
    })?)
}

fn usize_k(k: u64) -> Result<usize, CliError> {
    if k == 0 {
        return Err(CliError::Usage("k must be at least 1".into()));
    }
    usize::try_from(k).map_err(|_| CliError::Usage(format!("k = {k} is too large")))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Verb {
    Cv,
    Cm,
    Curve,
    Oracle,
}

fn measure(verb: Verb, args: &MeasureArgs, echo: Vec<String>) -> Result<Outcome, CliError> {
    let source = Source::load(&args.input)?;
    let k = args.k;
    let kk = usize_k(k)?;
    let oracle = oracle_from(&args.limits)?;
    let mut report = Report::new(echo, source.input());
    let mut text = String::new();
    let mut code = 0;
    let name = source.name();

    match verb {
        Verb::Cv | Verb::Cm => {
            let p = match (verb, args.p) {
                (Verb::Cm, None) => return Err(CliError::Usage("cm needs --p".into())),
                (Verb::Cm, p) => p,
                _ => None,
            };
            let value = match &source {
                Source::Spec(spec) => closed_form_value(&source, spec, k, p)?,
                Source::File { graph, .. } => oracle_value(&source, &oracle, graph, kk, p)?,
            };
            write_value(&mut text, &name, &value);
            if args.check {
                if let Source::Spec(_) = source {
                    let g = source.graph()?;
                    let checked = oracle_value(&source, &oracle, &g, kk, p)?;
                    write_value(&mut text, &name, &checked);
                    if checked.value != value.value {
                        code = 2;
                        let _ = writeln!(
                            text,
                            "MISMATCH: formula {} != oracle {}",
                            value.value, checked.value
                        );
                    }
                    report.values.push(value);
                    report.values.push(checked);
                } else {
                    report.values.push(value);
                }
            } else {
                report.values.push(value);
            }
        }
        Verb::Curve => {
            let points = match &source {
                Source::Spec(spec) => {
                    let c = curve(spec, k)?;
                    c.points
                        .iter()
                        .map(|pt| CurvePoint {
                            p: pt.p,
                            q: Count(pt.q.clone()),
                            provenance: provenance_tag(pt.case.provenance()),
                        })
                        .collect()
                }
                Source::File { graph, .. } => oracle_curve(&oracle, graph, kk)?,
            };
            let _ = writeln!(text, "curve of {name} at k={k}:");
            for pt in &points {
                let _ = writeln!(text, "  ({}, {})  [{}]", pt.p, pt.q, pt.provenance.as_str());
            }
            if args.check {
                if let Source::Spec(_) = source {
                    let g = source.graph()?;
                    let exact = oracle_curve(&oracle, &g, kk)?;
                    let pairs =
                        |v: &[CurvePoint]| v.iter().map(|c| (c.p, c.q.clone())).collect::<Vec<_>>();
                    if pairs(&exact) == pairs(&points) {
                        let _ = writeln!(text, "oracle agrees on all {} points", exact.len());
                    } else {
                        code = 2;
                        let _ = writeln!(text, "MISMATCH: oracle curve is");
                        for pt in &exact {
                            let _ = writeln!(text, "  ({}, {})", pt.p, pt.q);
                        }
                    }
                }
            }
            report.curve = Some(points);
        }
        Verb::Oracle => {
            let g = source.graph()?;
            let vertex = oracle.min_vertex_disconnecting(&g, kk)?;
            let edge = oracle.min_edge_disconnecting(&g, kk)?;
            let mut values = vec![
                oracle_entry(&source, &g, "cv", k, None, &vertex)?,
                oracle_entry(&source, &g, "ce", k, None, &edge)?,
            ];
            if let Some(p) = args.p {
                let mixed = oracle.min_mixed(&g, kk, p as usize)?;
                values.push(oracle_entry(&source, &g, "cm", k, Some(p), &mixed)?);
            }
            for v in &values {
                write_value(&mut text, &name, v);
            }
            report.values = values;
        }
    }
    Ok(Outcome { report, text, code })
}

fn provenance_tag(tag: &str) -> Provenance {
    if tag == Provenance::Extension.as_str() {
        Provenance::Extension
    } else {
        Provenance::ClosedForm
    }
}

fn closed_form_value(
    source: &Source,
    spec: &FamilySpec,
    k: u64,
    p: Option<u64>,
) -> Result<Value, CliError> {
    let (measure, value, provenance, case) = match p {
        None => {
            let r = cv(spec, k)?;
            ("cv", r.value, Provenance::ClosedForm, r.case.to_string())
        }
        Some(p) => {
            let r = cm(spec, k, p).map_err(|e| match e {
                FormulaError::NoMixedClosedForm(_) => CliError::Usage(format!(
                    "no closed form for the mixed connectivity of {spec}; \
                     try `kdcc oracle {} --k {k} --p {p}` on a small instance",
                    spec_words(spec)
                )),
                other => other.into(),
            })?;
            (
                "cm",
                r.value,
                provenance_tag(r.case.provenance()),
                r.case.to_string(),
            )
        }
    };
    let witness = if small_enough_for_witness(spec) {
        let w = match p {
            None => vertex_witness(spec, k)?,
            Some(p) => mixed_witness(spec, k, p)?,
        };
        Some(source.witness_report(&spec.build()?, &w)?)
    } else {
        None
    };
    Ok(Value {
        measure: measure.into(),
        k,
        p,
        value: Count(value),
        provenance,
        case: Some(case),
        witness,
    })
}

fn spec_words(spec: &FamilySpec) -> String {
    match *spec {
        FamilySpec::Path { n } => format!("path {n}"),
        FamilySpec::Cycle { n } => format!("cycle {n}"),
        FamilySpec::Complete { n } => format!("complete {n}"),
        FamilySpec::CompleteBipartite { left, right } => {
            format!("complete-bipartite {left} {right}")
        }
        FamilySpec::PerfectTree { arity, height } => format!("perfect-tree {arity} {height}"),
    }
}

fn oracle_value(
    source: &Source,
    oracle: &Oracle,
    g: &Graph,
    k: usize,
    p: Option<u64>,
) -> Result<Value, CliError> {
    match p {
        None => {
            let r = oracle.min_vertex_disconnecting(g, k)?;
            oracle_entry(source, g, "cv", k as u64, None, &r)
        }
        Some(p) => {
            let p_usize =
                usize::try_from(p).map_err(|_| CliError::Usage(format!("p = {p} is too large")))?;
            let r = oracle.min_mixed(g, k, p_usize)?;
            oracle_entry(source, g, "cm", k as u64, Some(p), &r)
        }
    }
}

fn oracle_entry(
    source: &Source,
    g: &Graph,
    measure: &str,
    k: u64,
    p: Option<u64>,
    r: &OracleResult,
) -> Result<Value, CliError> {
    Ok(Value {
        measure: measure.into(),
        k,
        p,
        value: Count::from(r.minimum),
        provenance: Provenance::Oracle,
        case: None,
        witness: Some(source.witness_report(g, &r.witness)?),
    })
}

fn oracle_curve(oracle: &Oracle, g: &Graph, k: usize) -> Result<Vec<CurvePoint>, CliError> {
    let cv = oracle.min_vertex_disconnecting(g, k)?.minimum;
    (0..=cv)
        .map(|p| {
            Ok(CurvePoint {
                p: p as u64,
                q: Count::from(oracle.min_mixed(g, k, p)?.minimum),
                provenance: Provenance::Oracle,
            })
        })
        .collect()
}

fn write_value(text: &mut String, name: &str, v: &Value) {
    let symbol = v.measure.to_uppercase();
    let at = match v.p {
        Some(p) => format!("{symbol}_{}({name}, p={p})", v.k),
        None => format!("{symbol}_{}({name})", v.k),
    };
    let detail = match &v.case {
        Some(case) if case != v.provenance.as_str() => {
            format!("{}; {case}", v.provenance.as_str())
        }
        Some(_) => v.provenance.as_str().to_string(),
        None => v.provenance.as_str().to_string(),
    };
    let _ = writeln!(text, "{at} = {}  [{detail}]", v.value);
    if let Some(w) = &v.witness {
        let ids: Vec<String> = w.vertices.iter().map(usize::to_string).collect();
        let _ = write!(text, "  delete vertices: {{{}}}", ids.join(", "));
        if let Some(labels) = &w.labels {
            let _ = write!(text, " labelled {{{}}}", labels.join(", "));
        }
        let _ = writeln!(text);
        if !w.edges.is_empty() {
            let edges: Vec<String> = w.edges.iter().map(|[a, b]| format!("{a}-{b}")).collect();
            let _ = writeln!(text, "  delete edges: {{{}}}", edges.join(", "));
        }
        let _ = writeln!(
            text,
            "  verified: {}",
            if w.verified { "yes" } else { "NO" }
        );
    }
}

fn packing(args: &PackingArgs, echo: Vec<String>) -> Result<Outcome, CliError> {
    let source = Source::load(&args.input)?;
    let k = usize_k(args.k)?;
    let g = source.graph()?;
    let found = if args.greedy {
        kdcc_core::greedy_disjoint_k_paths(&g, k)?
    } else {
        oracle_from(&args.limits)?.max_disjoint_k_paths(&g, k)?
    };
    let mut text = format!(
        "{} vertex-disjoint geodesic {k}-paths in {} ({})\n",
        found.len(),
        source.name(),
        if found.exact {
            "maximum"
        } else {
            "greedy, not certified maximum"
        }
    );
    for path in &found.paths {
        let ids: Vec<String> = path.iter().map(usize::to_string).collect();
        let _ = writeln!(text, "  {}", ids.join(" "));
    }
    let mut report = Report::new(echo, source.input());
    report.packing = Some(PackingReport {
        k: args.k,
        size: found.len(),
        exact: found.exact,
        paths: found.paths,
    });
    Ok(Outcome {
        report,
        text,
        code: 0,
    })
}

fn verify(args: &VerifyArgs, echo: Vec<String>) -> Result<Outcome, CliError> {
    if args.spec.is_empty() && args.random.is_none() {
        return Err(CliError::Usage(
            "verify needs a family with parameter ranges, --random N, or both".into(),
        ));
    }
    let oracle = oracle_from(&args.limits)?;
    let input = match (args.spec.split_first(), args.random) {
        (Some((family, params)), _) => Input::Ranges {
            family: family.clone(),
            params: params.to_vec(),
        },
        (None, Some(graphs)) => Input::Random {
            graphs,
            seed: args.seed,
        },
        (None, None) => unreachable!(),
    };
    let mut report = Report::new(echo, input);
    let mut text = String::new();
    let mut code = 0;

    if let Some((family, params)) = args.spec.split_first() {
        let want = arity_of(family)?;
        if params.len() != want {
            return Err(CliError::Usage(format!(
                "{family} takes {want} parameter range(s), got {}",
                params.len()
            )));
        }
        let ranges = params
            .iter()
            .map(|r| parse_range(r))
            .collect::<Result<Vec<_>, _>>()?;
        let ks = parse_range(&args.k)?;
        if ks.first().is_some_and(|&k| k < 2) {
            return Err(CliError::Usage("closed forms need k >= 2".into()));
        }
        let mut ignored = 0;
        for numbers in cartesian(&ranges) {
            let spec = family_from_numbers(family, &numbers)?;
            if spec.validate().is_err() {
                ignored += 1;
                continue;
            }
            for &k in &ks {
                report
                    .rows
                    .extend(verify_instance(&oracle, &spec, k, args.mixed)?);
            }
        }
        text.push_str(&render_rows(&report.rows));
        let count = |s: Status| report.rows.iter().filter(|r| r.status == s).count();
        let (matched, mismatched, skipped) = (
            count(Status::Match),
            count(Status::Mismatch),
            count(Status::Skipped),
        );
        let _ = write!(
            text,
            "{matched} match, {mismatched} mismatch, {skipped} skipped"
        );
        if ignored > 0 {
            let _ = write!(text, ", {ignored} invalid parameter combinations ignored");
        }
        let _ = writeln!(text);
        code = table_code(&report.rows);
    }

    if let Some(graphs) = args.random {
        report.properties = property_checks(&oracle, graphs, args.seed);
        for check in &report.properties {
            let status = if check.failures.is_empty() {
                "ok"
            } else {
                "FAILED"
            };
            let _ = writeln!(text, "{status}: {} ({} cases)", check.property, check.cases);
            for f in &check.failures {
                let _ = writeln!(text, "  counterexample: {f}");
            }
            if !check.failures.is_empty() {
                code = 2;
            }
        }
    }
    Ok(Outcome { report, text, code })
}

/// 2 when any row disagrees with the oracle; skipped rows do not count.
fn table_code(rows: &[Row]) -> i32 {
    if rows.iter().any(|r| r.status == Status::Mismatch) {
        2
    } else {
        0
    }
}

fn cartesian(ranges: &[Vec<u64>]) -> Vec<Vec<u64>> {
    ranges.iter().fold(vec![Vec::new()], |acc, values| {
        acc.iter()
            .flat_map(|prefix| {
                values.iter().map(move |&v| {
                    let mut next = prefix.clone();
                    next.push(v);
                    next
                })
            })
            .collect()
    })
}

fn verify_instance(
    oracle: &Oracle,
    spec: &FamilySpec,
    k: u64,
    mixed: bool,
) -> Result<Vec<Row>, CliError> {
    let formula = cv(spec, k)?.value;
    let limits = oracle.limits();
    let too_big = |limit: usize, count: Option<u64>| count.is_none_or(|c| c > limit as u64);
    if too_big(limits.max_vertices, spec.vertex_count()) {
        return Ok(vec![Row {
            instance: *spec,
            k,
            p: None,
            formula: Count(formula),
            provenance: Provenance::ClosedForm,
            oracle: None,
            packing: None,
            status: Status::Skipped,
            note: Some(format!("more than {} vertices", limits.max_vertices)),
        }]);
    }
    let g = spec.build()?;
    let kk = k as usize;
    let exact = oracle.min_vertex_disconnecting(&g, kk)?.minimum;
    let packing = oracle.max_disjoint_k_paths(&g, kk)?.len();
    let status = if formula == BigUint::from(exact) {
        Status::Match
    } else {
        Status::Mismatch
    };
    let mut rows = vec![Row {
        instance: *spec,
        k,
        p: None,
        formula: Count(formula.clone()),
        provenance: Provenance::ClosedForm,
        oracle: Some(exact),
        packing: Some(packing),
        status,
        note: None,
    }];
    if !mixed {
        return Ok(rows);
    }
    let top = u64::try_from(&formula)
        .unwrap_or(u64::MAX)
        .max(exact as u64);
    for p in 0..=top {
        let closed = match cm(spec, k, p) {
            Ok(r) => r,
            Err(FormulaError::NoMixedClosedForm(_)) => break,
            Err(FormulaError::POutOfRange { .. }) => {
                rows.push(mismatch_row(spec, k, p, "p is beyond the formula's CV"));
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let provenance = provenance_tag(closed.case.provenance());
        let (value, status, note) = match oracle.min_mixed(&g, kk, p as usize) {
            Ok(r) => {
                let status = if closed.value == BigUint::from(r.minimum) {
                    Status::Match
                } else {
                    Status::Mismatch
                };
                (Some(r.minimum), status, None)
            }
            Err(OracleError::TooManyEdges { limit, .. }) => (
                None,
                Status::Skipped,
                Some(format!("more than {limit} edges")),
            ),
            Err(OracleError::POutOfRange { .. }) => (
                None,
                Status::Mismatch,
                Some("p is beyond the oracle's CV".into()),
            ),
            Err(e) => return Err(e.into()),
        };
        rows.push(Row {
            instance: *spec,
            k,
            p: Some(p),
            formula: Count(closed.value),
            provenance,
            oracle: value,
            packing: Some(packing),
            status,
            note,
        });
    }
    Ok(rows)
}

fn mismatch_row(spec: &FamilySpec, k: u64, p: u64, note: &str) -> Row {
    Row {
        instance: *spec,
        k,
        p: Some(p),
        formula: Count(BigUint::from(0u32)),
        provenance: Provenance::ClosedForm,
        oracle: None,
        packing: None,
        status: Status::Mismatch,
        note: Some(note.into()),
    }
}

fn render_rows(rows: &[Row]) -> String {
    let mut text = format!(
        "{:<12} {:>3} {:>3} {:>8} {:>7} {:>8}  {}\n",
        "instance", "k", "p", "formula", "oracle", "packing", "status"
    );
    let dash = |x: Option<usize>| x.map_or_else(|| "-".to_string(), |v| v.to_string());
    for r in rows {
        let status = match r.status {
            Status::Match => "match".to_string(),
            Status::Mismatch => "MISMATCH".to_string(),
            Status::Skipped => "skipped".to_string(),
        };
        let status = match &r.note {
            Some(note) => format!("{status} ({note})"),
            None => status,
        };
        let _ = writeln!(
            text,
            "{:<12} {:>3} {:>3} {:>8} {:>7} {:>8}  {status}",
            r.instance.to_string(),
            r.k,
            r.p.map_or_else(|| "-".to_string(), |p| p.to_string()),
            r.formula.to_string(),
            dash(r.oracle),
            dash(r.packing),
        );
    }
    text
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn family_names() {
        assert_eq!(
            parse_spec(&words("path 7")).unwrap(),
            FamilySpec::Path { n: 7 }
        );
        assert_eq!(
            parse_spec(&words("CompleteBipartite 2 3")).unwrap(),
            FamilySpec::CompleteBipartite { left: 2, right: 3 }
        );
        assert_eq!(
            parse_spec(&words("perfect_tree 2 3")).unwrap(),
            FamilySpec::PerfectTree {
                arity: 2,
                height: 3
            }
        );
        for bad in [
            "",
            "path",
            "path 1 2",
            "star 4",
            "path x",
            "cycle 2",
            "complete 0",
        ] {
            assert!(parse_spec(&words(bad)).is_err(), "{bad}");
        }
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..5").unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(parse_range("2..=3").unwrap(), vec![2, 3]);
        assert_eq!(parse_range("4").unwrap(), vec![4]);
        assert_eq!(parse_range("5,1,5").unwrap(), vec![1, 5]);
        for bad in ["5..2", "a..3", "", "1,,2"] {
            assert!(parse_range(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn products() {
        assert_eq!(
            cartesian(&[vec![1, 2], vec![3]]),
            vec![vec![1, 3], vec![2, 3]]
        );
    }

    #[test]
    fn mismatch_rows_exit_with_two() {
        let spec = FamilySpec::Path { n: 4 };
        let mut rows = vec![mismatch_row(&spec, 2, 9, "test")];
        assert_eq!(table_code(&rows), 2);
        rows[0].status = Status::Skipped;
        assert_eq!(table_code(&rows), 0);
        assert_eq!(table_code(&[]), 0);
    }

    #[test]
    fn error_codes() {
        assert_eq!(
            CliError::from(SpecError::TooLarge(FamilySpec::Path { n: 1 })).exit_code(),
            3
        );
        assert_eq!(
            CliError::from(OracleError::TooManyVertices { n: 30, limit: 20 }).exit_code(),
            3
        );
        assert_eq!(CliError::from(FormulaError::KTooSmall(1)).exit_code(), 1);
    }
}
