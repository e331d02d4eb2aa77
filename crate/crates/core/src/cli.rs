//! Command-line front end. [`run`] is the whole program; the binary only
//! forwards `argv` and the standard streams.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::classify::decompose;
use crate::diagram::{parse_document, parse_edge_list, parse_name, Diagram};
use crate::error::Error;
use crate::formulas::{self, PresentationGraph, TriangleParams};
use crate::oddgraph::{self, export_dot, Bounds, InvolutionClassReport, OddGraph};
use crate::oracle;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "coxinv",
    version,
    about = "Conjugacy classes of involutions in Coxeter groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count involution classes and list a representative of each.
    Cc2 {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Export the rank-k odd graph (or the isomorphism graph with --omega).
    Graphs {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        omega: bool,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lower and upper bounds on the class count.
    Bounds {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Closed-form counts for special families.
    Formulas {
        #[command(subcommand)]
        formula: Formula,
        #[command(flatten)]
        output: Output,
    },
    /// Compare the class count against brute-force enumeration of the group.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Maximum group order to enumerate.
        #[arg(long, env = "COXINV_CAP", default_value_t = oracle::DEFAULT_CAP)]
        cap: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Count involution classes of a right-angled group from its
    /// presentation graph (edges mark commuting generators).
    Racg {
        #[arg(long)]
        file: PathBuf,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Input {
    /// Type name, e.g. "A4", "~E7", "I2(8)", "Delta(2,3,inf)", "B3+A1".
    #[arg(long)]
    name: Option<String>,
    /// JSON matrix document or edge-list file.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the data here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Table,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Formula {
    A {
        n: usize,
    },
    C {
        n: usize,
    },
    AffineA {
        n: usize,
    },
    AffineC {
        n: usize,
    },
    /// Infinite triangle groups only; bonds may be `inf`.
    Triangle {
        p: String,
        q: String,
        r: String,
    },
    OddCircle {
        #[command(flatten)]
        input: Input,
    },
    /// Sum of class counts of the free factors.
    Free {
        counts: Vec<u64>,
    },
    /// Class count of order-m elements in a direct product. Maps are
    /// `order:count` lists such as `2:5,3:1`.
    Direct {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        m: u64,
    },
}

enum Failure {
    Lib(Error),
    Usage(String),
    Io(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Lib(Error::CapExceeded { .. }) => EXIT_CAP,
            Failure::Lib(Error::HashCollision { .. } | Error::NumericDegeneracy { .. }) => {
                EXIT_FAILURE
            }
            Failure::Lib(_) | Failure::Usage(_) => EXIT_VALIDATION,
            Failure::Io(_) => EXIT_FAILURE,
            Failure::Mismatch(_) => EXIT_MISMATCH,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(e) => e.to_string(),
            Failure::Usage(m) | Failure::Io(m) | Failure::Mismatch(m) => m.clone(),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// Runs one command. Data goes to `out`, diagnostics to `err`; the return
/// value is the process exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_VALIDATION
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.exit_code()
        }
    }
}

fn load(input: &Input) -> Outcome<Diagram> {
    match (&input.name, &input.file) {
        (Some(name), None) => Ok(Diagram::unlabeled(parse_name(name)?)),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
            if text.trim_start().starts_with('{') {
                Ok(parse_document(&text)?)
            } else {
                Ok(Diagram::unlabeled(parse_edge_list(&text)?))
            }
        }
        _ => Err(Failure::Usage(
            "give exactly one of --name and --file".into(),
        )),
    }
}

fn emit(data: &str, path: &Option<PathBuf>, out: &mut dyn Write) -> Outcome<()> {
    match path {
        Some(p) => std::fs::write(p, data)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", p.display()))),
        None => out
            .write_all(data.as_bytes())
            .map_err(|e| Failure::Io(format!("cannot write output: {e}"))),
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialise");
    s.push('\n');
    s
}

fn no_dot(format: Format) -> Outcome<()> {
    if format == Format::Dot {
        return Err(Failure::Usage(
            "--format dot is only available for `graphs`".into(),
        ));
    }
    Ok(())
}

fn word_text(d: &Diagram, word: &[usize]) -> String {
    let parts: Vec<String> = word.iter().map(|&g| format!("s{}", d.label(g))).collect();
    parts.join(" ")
}

fn subset_name(d: &Diagram, subset: crate::VertexSet) -> String {
    let names: Vec<String> = subset.iter().map(|i| d.label(i)).collect();
    format!("W_{{{}}}", names.join(","))
}

pub fn report_json(report: &InvolutionClassReport, bounds: &Bounds) -> Value {
    let classes: Vec<Value> = report
        .classes
        .iter()
        .map(|c| {
            json!({
                "rank": c.rank,
                "subset": c.subset.to_vec(),
                "type": c.decomposition.to_string(),
                "word": c.word,
            })
        })
        .collect();
    json!({
        "per_rank": report.per_rank,
        "total": report.total,
        "classes": classes,
        "bounds": bounds_json(bounds),
    })
}

pub fn bounds_json(b: &Bounds) -> Value {
    json!({
        "omega_lower": b.omega_lower,
        "maximal_spherical_upper": b.maximal_spherical_upper,
        "numeric_upper": u64::try_from(b.numeric_upper).unwrap_or(u64::MAX),
        "is_finite": b.is_finite,
    })
}

pub fn graph_json(g: &OddGraph) -> Value {
    json!({
        "kind": g.kind,
        "k": g.k,
        "vertices": g.vertices.iter().map(|v| v.to_vec()).collect::<Vec<_>>(),
        "edges": g.edges,
        "component_id": g.component_id,
        "components": g.component_count(),
    })
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome<()> {
    match command {
        Command::Cc2 { input, output } => {
            no_dot(output.format)?;
            let d = load(&input)?;
            let report = oddgraph::cc2(&d.matrix)?;
            let bounds = oddgraph::bounds(&d.matrix)?;
            let text = match output.format {
                Format::Json => json_text(&report_json(&report, &bounds)),
                _ => cc2_table(&d, &report, &bounds),
            };
            emit(&text, &output.out, out)
        }
        Command::Graphs {
            input,
            k,
            omega,
            format,
            out: path,
        } => {
            let d = load(&input)?;
            let g = if omega {
                oddgraph::omega_k(&d.matrix, k)?
            } else {
                oddgraph::gamma_k(&d.matrix, k)?
            };
            let text = match format {
                Format::Dot => export_dot(&g, d.labels.as_deref()),
                Format::Json => json_text(&graph_json(&g)),
                Format::Table => graph_table(&d, &g),
            };
            emit(&text, &path, out)
        }
        Command::Bounds { input, output } => {
            no_dot(output.format)?;
            let d = load(&input)?;
            let b = oddgraph::bounds(&d.matrix)?;
            let text = match output.format {
                Format::Json => json_text(&bounds_json(&b)),
                _ => format!(
                    "omega_lower              {}\nmaximal_spherical_upper  {}\nnumeric_upper            {}\nis_finite                {}\n",
                    b.omega_lower, b.maximal_spherical_upper, b.numeric_upper, b.is_finite
                ),
            };
            emit(&text, &output.out, out)
        }
        Command::Formulas { formula, output } => {
            no_dot(output.format)?;
            let (name, value) = evaluate_formula(formula)?;
            let text = match output.format {
                Format::Json => json_text(&json!({ "formula": name, "value": value })),
                _ => format!("{value}\n"),
            };
            emit(&text, &output.out, out)
        }
        Command::Verify { input, cap, output } => {
            no_dot(output.format)?;
            let d = load(&input)?;
            verify(&d, cap, &output, out, err)
        }
        Command::Racg { file, output } => {
            no_dot(output.format)?;
            let text = std::fs::read_to_string(&file)
                .map_err(|e| Failure::Io(format!("cannot read {}: {e}", file.display())))?;
            let graph = PresentationGraph::parse(&text)?;
            let count = formulas::cc2_racg(&graph);
            let text = match output.format {
                Format::Json => {
                    let value = u64::try_from(&count)
                        .map(Value::from)
                        .unwrap_or_else(|_| Value::from(count.to_string()));
                    json_text(&json!({ "vertices": graph.len(), "cc2": value }))
                }
                _ => format!("{count}\n"),
            };
            emit(&text, &output.out, out)
        }
    }
}

fn cc2_table(d: &Diagram, report: &InvolutionClassReport, bounds: &Bounds) -> String {
    let mut s = String::new();
    s.push_str(&format!(
        "type      {}\n",
        decompose(&d.matrix, d.matrix.vertices())
    ));
    s.push_str(&format!("cc2       {}\n", report.total));
    s.push_str(&format!(
        "per rank  {}\n",
        report.summation(!bounds.is_finite)
    ));
    for c in &report.classes {
        s.push_str(&format!(
            "  rank {:<3} {:<16} {:<10} {}\n",
            c.rank,
            subset_name(d, c.subset),
            c.decomposition.to_string(),
            word_text(d, &c.word)
        ));
    }
    s
}

fn graph_table(d: &Diagram, g: &OddGraph) -> String {
    let mut s = format!(
        "{} vertices, {} edges, {} components\n",
        g.vertices.len(),
        g.edges.len(),
        g.component_count()
    );
    for (c, members) in g.components().iter().enumerate() {
        let names: Vec<String> = members
            .iter()
            .map(|&v| subset_name(d, g.vertices[v]))
            .collect();
        s.push_str(&format!("  {c}: {}\n", names.join(" ")));
    }
    s
}

fn parse_bond(text: &str) -> Outcome<crate::Bond> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("inf") || t == "∞" || t == "0" {
        return Ok(crate::Bond::Infinity);
    }
    match t.parse::<u32>() {
        Ok(m) if m >= 2 => Ok(crate::Bond::Finite(m)),
        _ => Err(Failure::Usage(format!("bad triangle parameter {text:?}"))),
    }
}

fn parse_order_map(text: &str) -> Outcome<BTreeMap<u64, u64>> {
    let mut map = BTreeMap::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let parsed = item
            .split_once(':')
            .and_then(|(k, v)| Some((k.trim().parse().ok()?, v.trim().parse().ok()?)));
        match parsed {
            Some((k, v)) => {
                map.insert(k, v);
            }
            None => return Err(Failure::Usage(format!("bad order:count entry {item:?}"))),
        }
    }
    Ok(map)
}

fn evaluate_formula(formula: Formula) -> Outcome<(&'static str, u64)> {
    Ok(match formula {
        Formula::A { n } => ("a", formulas::cc2_a(n)?),
        Formula::C { n } => ("c", formulas::cc2_c(n)?),
        Formula::AffineA { n } => ("affine-a", formulas::cc2_affine_a(n)?),
        Formula::AffineC { n } => ("affine-c", formulas::cc2_affine_c(n)?),
        Formula::Triangle { p, q, r } => {
            let t = TriangleParams::new(parse_bond(&p)?, parse_bond(&q)?, parse_bond(&r)?);
            ("triangle", formulas::cc2_triangle(t)?)
        }
        Formula::OddCircle { input } => {
            let d = load(&input)?;
            ("odd-circle", formulas::cc2_odd_circle(&d.matrix)?)
        }
        Formula::Free { counts } => ("free", formulas::ccm_free_product(&counts)),
        Formula::Direct { g, h, m } => {
            if m == 0 {
                return Err(Failure::Usage("--m must be positive".into()));
            }
            let g = parse_order_map(&g)?;
            let h = parse_order_map(&h)?;
            ("direct", formulas::ccm_direct_product(&g, &h, m))
        }
    })
}

fn verify(
    d: &Diagram,
    cap: usize,
    output: &Output,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome<()> {
    let mat = &d.matrix;
    let dec = decompose(mat, mat.vertices());
    if !dec.is_spherical() {
        return Err(Error::NonSpherical(format!("diagram of type {dec}")).into());
    }
    let report = oddgraph::cc2(mat)?;
    let table = oracle::enumerate(mat, cap)?;
    let classes = oracle::involution_classes(&table, mat)?;
    let n = mat.rank();
    let oracle_per_rank = classes.per_rank(n);

    // Every representative must be an involution of the claimed rank, and
    // no two may share a class.
    let mut problems = Vec::new();
    let mut seen = BTreeMap::new();
    for c in &report.classes {
        let w = table.locate_word(&c.word)?;
        match classes.class_of(w) {
            None => problems.push(format!(
                "word for {} is not an involution",
                subset_name(d, c.subset)
            )),
            Some(id) => {
                if classes.classes[id].rank != c.rank {
                    problems.push(format!(
                        "{} has rank {} in the group, expected {}",
                        subset_name(d, c.subset),
                        classes.classes[id].rank,
                        c.rank
                    ));
                }
                if let Some(prev) = seen.insert(id, c.subset) {
                    problems.push(format!(
                        "{} and {} are conjugate",
                        subset_name(d, prev),
                        subset_name(d, c.subset)
                    ));
                }
            }
        }
    }
    let counts_match = oracle_per_rank == report.per_rank;
    let ok = counts_match && problems.is_empty();

    let text = match output.format {
        Format::Json => json_text(&json!({
            "type": dec.to_string(),
            "order": table.len(),
            "involutions": classes.involution_count(),
            "per_rank": { "oddgraph": report.per_rank, "oracle": oracle_per_rank },
            "total": { "oddgraph": report.total, "oracle": classes.classes.len() },
            "representatives_valid": problems.is_empty(),
            "match": ok,
        })),
        _ => {
            let mut s = format!(
                "type {dec}, order {}, {} involutions\nrank  odd-graph  oracle\n",
                table.len(),
                classes.involution_count()
            );
            for (k, (a, b)) in report.per_rank.iter().zip(&oracle_per_rank).enumerate() {
                let mark = if a == b { "" } else { "  <-" };
                s.push_str(&format!("{:<5} {a:<10} {b}{mark}\n", k + 1));
            }
            s.push_str(&format!(
                "total {:<10} {}\n{}\n",
                report.total,
                classes.classes.len(),
                if ok { "match" } else { "MISMATCH" }
            ));
            s
        }
    };
    emit(&text, &output.out, out)?;
    for p in &problems {
        let _ = writeln!(err, "representative check: {p}");
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!(
            "odd-graph count {} vs brute force {}",
            report.total,
            classes.classes.len()
        )))
    }
}
