//! The `leavitt` command line.
//!
//! Exit codes: `0` success, `1` unparsable input or arguments, `2` a
//! precondition of the requested computation fails.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use leavitt_core::classify::{classify_pair, graded_hom_obstruction, RingFlags};
use leavitt_core::homology::{kh_ends, uct_ends, CoefficientData};
use leavitt_core::invariants::{bf, bf_dual, bf_twisted, bf_twisted_dual, det_bf_twisted};
use leavitt_core::lifting::{kk_iso_exists, kk_iso_exists_twisted, Decision};
use leavitt_core::terms::{verify_minus_one_identity, PathAlgebra};
use leavitt_core::Graph;
use serde_json::{json, Value};

use crate::coefficients::parse_coefficients;
use crate::format::{graph_to_json, parse_graph, write_graph_json, write_graph_text};
use crate::report;

#[derive(Parser, Debug)]
#[command(name = "leavitt", version, about = "Bowen-Franks invariants and path-algebra arithmetic for finite graphs")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Vertex data, invariants, determinants and flags of a graph.
    Info { graph: PathBuf },
    /// The Bowen-Franks group coker(I - A^t) with the unit class.
    Bf {
        graph: PathBuf,
        /// Use the dual presentation I^t - A.
        #[arg(long)]
        dual: bool,
    },
    /// The twisted group coker(I - σA^t) with its σ-action.
    BfTwisted {
        graph: PathBuf,
        #[arg(long)]
        dual: bool,
    },
    /// Apply a graph move and write the resulting graph.
    Moves {
        #[arg(long, value_enum)]
        op: MoveOp,
        /// Vertex for `splice` and `elim`.
        #[arg(long)]
        vertex: Option<String>,
        /// Output file; standard output if absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
        graph: PathBuf,
    },
    /// Ends of the exact sequence for KH_n of L(E) with coefficients.
    Kh {
        graph: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
        #[arg(long)]
        twisted: bool,
        #[command(flatten)]
        coeff: CoeffArgs,
    },
    /// Ends of the universal coefficient sequence.
    Uct {
        graph: PathBuf,
        #[arg(long)]
        twisted: bool,
        #[command(flatten)]
        coeff: CoeffArgs,
    },
    /// Decide whether the BF data agree and lift to a chain-level certificate.
    Lift {
        source: PathBuf,
        target: PathBuf,
        #[arg(long)]
        twisted: bool,
    },
    /// Hypothesis report for classifying L(E) and L(F).
    Classify {
        source: PathBuf,
        target: PathBuf,
        #[arg(long)]
        regular_supercoherent: bool,
        #[arg(long)]
        two_invertible: bool,
        #[arg(long)]
        minus_one_positive: bool,
    },
    /// Whether a unital Z/2-graded homomorphism L(E) -> L(F) is ruled out.
    Obstruct { source: PathBuf, target: PathBuf },
    /// Evaluate a term in L(E), or C(E) with --cohn.
    Term {
        graph: PathBuf,
        expr: Option<String>,
        #[arg(long)]
        cohn: bool,
        #[arg(long, value_enum, default_value = "normal")]
        op: TermOp,
        /// Check that the sum of e·bar(e) over all edges is -1.
        #[arg(long)]
        minus_one: bool,
    },
    #[command(hide = true)]
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
}

#[derive(clap::Args, Debug)]
struct CoeffArgs {
    /// Built-in coefficients: `field` has KH_0 = Z[σ] and KH_-1 = 0.
    #[arg(long, value_enum, default_value = "field", conflicts_with = "coeff_file")]
    coeff: CoeffPreset,
    /// JSON file with one presented Z[σ]-module per degree.
    #[arg(long)]
    coeff_file: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CoeffPreset {
    Field,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MoveOp {
    Splice,
    Outsplit,
    Dual,
    Cover,
    Square,
    Elim,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum TermOp {
    Normal,
    Star,
    Bar,
}

#[derive(Debug)]
pub enum CliError {
    /// Unparsable input.
    Parse(String),
    /// A precondition of the computation fails.
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Precondition(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) | CliError::Precondition(m) => f.write_str(m),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Precondition(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    parse_graph(&read(path)?).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn graph_id(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn load_coefficients(c: &CoeffArgs) -> Result<CoefficientData, CliError> {
    match &c.coeff_file {
        Some(p) => parse_coefficients(&read(p)?).map_err(|e| CliError::Parse(format!("{}: {e}", p.display()))),
        None => Ok(match c.coeff {
            CoeffPreset::Field => CoefficientData::field_like(),
        }),
    }
}

/// What a command produced: a JSON value and its text rendering.
struct Output {
    json: Value,
    text: String,
}

fn group_text(v: &Value) -> String {
    let rank = v["rank"].as_u64().unwrap_or(0);
    let mut parts = Vec::new();
    match rank {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    for f in v["factors"].as_array().into_iter().flatten() {
        parts.push(format!("Z/{}", f.as_str().unwrap_or("?")));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn list_text(v: &Value) -> String {
    let items: Vec<&str> = v.as_array().into_iter().flatten().filter_map(Value::as_str).collect();
    format!("[{}]", items.join(", "))
}

fn execute(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Info { graph } => {
            let g = load_graph(graph)?;
            let r = report::invariant_report(&graph_id(graph), &g);
            let pis = &r["flags"]["pis"];
            let mut text = format!(
                "graph {}: {} vertices, {} edges\nBF = {}\ntwisted BF = {}\npurely infinite simple: {}",
                r["graph_id"].as_str().unwrap_or(""),
                r["vertices"],
                r["edges"],
                group_text(&r["bf"]),
                group_text(&r["bf_twisted"]),
                pis["purely_infinite_simple"],
            );
            if let Some(why) = pis["failure"]["text"].as_str() {
                text.push_str(&format!(" ({why})"));
            }
            if !r["dets"].is_null() {
                text.push_str(&format!(
                    "\ndet(I - A^t) = {}\ndet(I - σA^t) = {}",
                    r["dets"]["det_bf"].as_str().unwrap_or(""),
                    r["dets"]["det_bf_twisted"]["text"].as_str().unwrap_or("")
                ));
            }
            Ok(Output { json: r, text })
        }
        Command::Bf { graph, dual } => {
            let g = load_graph(graph)?;
            let d = if *dual { bf_dual(&g) } else { bf(&g) };
            let json = report::bf_json(&d);
            let text = format!("BF = {}\nunit class = {}", group_text(&json), list_text(&json["unit_class"]));
            Ok(Output { json, text })
        }
        Command::BfTwisted { graph, dual } => {
            let g = load_graph(graph)?;
            let d = if *dual { bf_twisted_dual(&g) } else { bf_twisted(&g) };
            let mut json = report::twisted_json(&d);
            if g.is_regular() {
                json["det_sigma"] = report::scalar_json(&det_bf_twisted(&g).expect("regular"));
            }
            let text = format!(
                "twisted BF = {}\ninvariant factors = {}\nunit class = {}",
                group_text(&json),
                list_text(&json["factors"]),
                list_text(&json["unit_class"])
            );
            Ok(Output { json, text })
        }
        Command::Moves { op, vertex, output, graph } => {
            let g = load_graph(graph)?;
            let need_vertex = || vertex.as_deref().ok_or_else(|| CliError::Parse("--vertex is required for this move".into()));
            let moved = match op {
                MoveOp::Splice => g.cuntz_splice(need_vertex()?),
                MoveOp::Elim => g.source_eliminate(need_vertex()?),
                MoveOp::Outsplit => Ok(g.out_split_graph()),
                MoveOp::Dual => Ok(g.dual_graph()),
                MoveOp::Cover => Ok(g.double_cover()),
                MoveOp::Square => Ok(g.square_graph()),
            }
            .map_err(|e| CliError::Precondition(e.to_string()))?;
            let file = if cli.json { write_graph_json(&moved) } else { write_graph_text(&moved) };
            match output {
                Some(path) => {
                    std::fs::write(path, &file)
                        .map_err(|e| CliError::Precondition(format!("{}: {e}", path.display())))?;
                    let json = json!({"written": path.display().to_string()});
                    Ok(Output { json, text: format!("wrote {}", path.display()) })
                }
                None => Ok(Output { json: graph_to_json(&moved), text: file.trim_end().to_string() }),
            }
        }
        Command::Kh { graph, degree, twisted, coeff } => {
            let g = load_graph(graph)?;
            let c = load_coefficients(coeff)?;
            let ends = kh_ends(&g, &c, *degree, *twisted).map_err(|e| CliError::Precondition(e.to_string()))?;
            Ok(sequence_output(report::sequence_json(&ends)))
        }
        Command::Uct { graph, twisted, coeff } => {
            let g = load_graph(graph)?;
            let c = load_coefficients(coeff)?;
            let ends = uct_ends(&g, &c, *twisted).map_err(|e| CliError::Precondition(e.to_string()))?;
            Ok(sequence_output(report::sequence_json(&ends)))
        }
        Command::Lift { source, target, twisted } => {
            let (e, f) = (load_graph(source)?, load_graph(target)?);
            let (json, text) = if *twisted {
                match kk_iso_exists_twisted(&e, &f).map_err(|err| CliError::Precondition(err.to_string()))? {
                    Decision::Iso(c) => {
                        let cert = report::sigma_certificate_json(&c, &e, &f);
                        let text = format!("isomorphic over Z[σ]; certificate verified: {}", cert["verified"]);
                        (json!({"exists": true, "certificate": cert}), text)
                    }
                    Decision::NotIso(why) => {
                        (json!({"exists": false, "reason": why.to_string()}), format!("no isomorphism: {why}"))
                    }
                }
            } else {
                match kk_iso_exists(&e, &f) {
                    Decision::Iso(c) => {
                        let cert = report::certificate_json(&c, &e, &f);
                        let text = format!("isomorphic; certificate verified: {}", cert["verified"]);
                        (json!({"exists": true, "certificate": cert}), text)
                    }
                    Decision::NotIso(why) => {
                        (json!({"exists": false, "reason": why.to_string()}), format!("no isomorphism: {why}"))
                    }
                }
            };
            Ok(Output { json, text })
        }
        Command::Classify { source, target, regular_supercoherent, two_invertible, minus_one_positive } => {
            let (e, f) = (load_graph(source)?, load_graph(target)?);
            let flags = RingFlags {
                regular_supercoherent: *regular_supercoherent,
                two_invertible: *two_invertible,
                minus_one_positive: *minus_one_positive,
            };
            let r = classify_pair(&e, &f);
            let json = report::classification_json(&r, &e, &f, &flags);
            let mut text = format!(
                "purely infinite simple: {} / {}\nBF: {} / {}\nBF isomorphic: {}\nunital isomorphism: {}",
                r.pis_e.purely_infinite_simple,
                r.pis_f.purely_infinite_simple,
                r.bf_e.group,
                r.bf_f.group,
                r.bf_iso.is_some(),
                json["unital_iso"]["status"].as_str().unwrap_or("")
            );
            for t in &r.applicable_theorems {
                let hyps: Vec<String> = t.ring_hypotheses.iter().map(ToString::to_string).collect();
                text.push_str(&format!(
                    "\n{}: needs {}; {}",
                    t.name,
                    hyps.join(", "),
                    if t.holds_under(&flags) { "applies" } else { "ring hypotheses not asserted" }
                ));
            }
            Ok(Output { json, text })
        }
        Command::Obstruct { source, target } => {
            let (e, f) = (load_graph(source)?, load_graph(target)?);
            let o = graded_hom_obstruction(&e, &f);
            Ok(Output { json: report::obstruction_json(&o), text: format!("possible={}\n{o}", o.possible) })
        }
        Command::Term { graph, expr, cohn, op, minus_one } => {
            let g = load_graph(graph)?;
            if *minus_one {
                let ok = verify_minus_one_identity(&g).map_err(|e| CliError::Precondition(e.to_string()))?;
                return Ok(Output { json: json!({"minus_one_identity": ok}), text: format!("minus-one identity holds: {ok}") });
            }
            let expr = expr.as_deref().ok_or_else(|| CliError::Parse("missing term expression".into()))?;
            let alg = if *cohn { PathAlgebra::cohn(&g) } else { PathAlgebra::leavitt(&g) };
            let t = alg.parse(expr).map_err(|e| CliError::Parse(e.to_string()))?;
            let t = match op {
                TermOp::Normal => t,
                TermOp::Star => t.star(),
                TermOp::Bar => t.bar(),
            };
            let json = json!({
                "ambient": if *cohn { "cohn" } else { "leavitt" },
                "term": t.to_string(),
                "grade": t.grade(),
                "grade_mod2": t.grade_mod2(),
                "parity": t.parity(),
            });
            Ok(Output { json, text: t.to_string() })
        }
        Command::Selftest { seed, count } => {
            let s = crate::selftest::run(*seed, *count);
            if !s.failures.is_empty() {
                return Err(CliError::Precondition(s.failures.join("\n")));
            }
            Ok(Output {
                json: json!({"seed": seed, "checks": s.checks, "failures": 0}),
                text: format!("{} checks passed (seed {seed})", s.checks),
            })
        }
    }
}

fn sequence_output(json: Value) -> Output {
    let middle = if json["middle"].is_null() { "?".to_string() } else { group_text(&json["middle"]) };
    let text = format!(
        "0 -> {} -> {} -> {} -> 0\n{}",
        group_text(&json["left"]),
        middle,
        group_text(&json["right"]),
        json["split_reason"].as_str().unwrap_or("")
    );
    Output { json, text }
}

/// Runs the command line, writing the report to `out` and diagnostics to
/// `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let res = if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("serializable"))
            } else {
                writeln!(out, "{}", o.text)
            };
            if res.is_err() {
                return 1;
            }
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
