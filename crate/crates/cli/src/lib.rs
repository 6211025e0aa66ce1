//! The `tropwdp` command-line front end.
//!
//! Exit status: 0 success, 1 infeasible or empty answer, 2 usage or input
//! error, 3 capability bound exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use tropwdp::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use tropwdp::covector::{
    covector_of_point, enumerate_cells, halfspace_membership, is_pure, projective_decomposition,
    signed_cells, tangent_digraph, tcone_membership, CellRecord, HalfspaceSystem, ProjectivePoint,
};
use tropwdp::envelope::{
    envelope_digraph, envelope_vertices, regular_subdivision, BipartiteGraph, PointConfig,
};
use tropwdp::io::{self, JsonFormat};
use tropwdp::tropical::{TropicalMatrix, TropicalValue};
use tropwdp::wdp::{self, FaceSpec, NodePartition, WeightedDigraph};
use tropwdp::{Error, Limits};

pub const EXIT_OK: i32 = 0;
pub const EXIT_EMPTY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPABILITY: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "tropwdp", version, about = "Weighted digraph polyhedra and tropical covector decompositions")]
struct Cli {
    /// Write the result to this file instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    /// Seed for the sampling checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(flatten)]
    limits: LimitArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct LimitArgs {
    /// Largest matrix whose tropical determinant is found by permutations [default: 9]
    #[arg(long, global = true)]
    max_permutation_size: Option<usize>,
    /// Largest number of strong components partitioned for a face lattice [default: 10]
    #[arg(long, global = true)]
    max_partition_nodes: Option<usize>,
    /// Most square submatrices inspected by a genericity test [default: 1000000]
    #[arg(long, global = true)]
    max_square_submatrices: Option<u64>,
    /// Most degree-one column selections in a cell enumeration [default: 1000000]
    #[arg(long, global = true)]
    max_cell_candidates: Option<u64>,
    /// Largest weak component whose subsets are searched for rays [default: 24]
    #[arg(long, global = true)]
    max_subset_nodes: Option<usize>,
    /// Most columns for which all sign vectors are enumerated [default: 20]
    #[arg(long, global = true)]
    max_sign_columns: Option<usize>,
}

impl LimitArgs {
    fn limits(&self) -> Limits {
        let d = Limits::default();
        Limits {
            max_permutation_size: self.max_permutation_size.unwrap_or(d.max_permutation_size),
            max_partition_nodes: self.max_partition_nodes.unwrap_or(d.max_partition_nodes),
            max_square_submatrices: self.max_square_submatrices.unwrap_or(d.max_square_submatrices),
            max_cell_candidates: self.max_cell_candidates.unwrap_or(d.max_cell_candidates),
            max_subset_nodes: self.max_subset_nodes.unwrap_or(d.max_subset_nodes),
            max_sign_columns: self.max_sign_columns.unwrap_or(d.max_sign_columns),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Kleene star W* of a weighted digraph.
    Kleene {
        digraph: PathBuf,
        /// Arcs `i,j` to make tight first; repeatable.
        #[arg(long = "face")]
        face: Vec<String>,
    },
    /// Feasibility, equality partition and an interior point of Q(W).
    Feasible {
        digraph: PathBuf,
        #[arg(long = "face")]
        face: Vec<String>,
    },
    /// Face lattice of the digraph cone of the arcs of W.
    Faces { digraph: PathBuf },
    /// Lineality and ray generators of the recession cone of Q(W).
    Rays { digraph: PathBuf },
    /// Vertices and recession rays of the envelope of V.
    Envelope { matrix: PathBuf },
    /// Cell catalog of the covector decomposition of the torus.
    Cells {
        matrix: PathBuf,
        /// Only cells contained in the tropical cone.
        #[arg(long)]
        tcone: bool,
        /// Check the catalog against this many random points.
        #[arg(long, value_name = "N")]
        verify: Option<usize>,
    },
    /// Maximal cells of the dual regular subdivision.
    Subdivision { matrix: PathBuf },
    /// Membership of a point in tcone(V), or in thalf(V, Ψ) with --halfspace.
    Member {
        input: PathBuf,
        /// Coordinates such as `0,3/2,inf`.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// The input is a halfspace system.
        #[arg(long)]
        halfspace: bool,
    },
    /// Pureness of thalf(V, Ψ).
    Pure { system: PathBuf },
    /// Signed cells of a halfspace system.
    Signed {
        system: PathBuf,
        /// Also list the empty inversions.
        #[arg(long)]
        all: bool,
    },
    /// Cell catalog of the covector decomposition of the projective space.
    Projective { matrix: PathBuf },
    /// Tangent digraph of a halfspace system at a cell.
    Tangent {
        system: PathBuf,
        /// A point in the relative interior of the cell.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "cell")]
        point: Option<String>,
        /// A covector graph file naming the cell.
        #[arg(long)]
        cell: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// DOT drawing of a digraph, bipartite graph, matrix support or system.
    ExportDot { input: PathBuf },
    /// SVG drawing of the covector decomposition for three rows.
    PlotSvg { matrix: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

/// A failure with its exit status.
struct Failure {
    code: i32,
    message: String,
    /// Printed to standard output, for answers that are negative but well formed.
    report: Option<String>,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
            report: None,
        }
    }

    fn from_error(context: Option<&Path>, err: Error) -> Self {
        let code = match err {
            Error::Infeasible { .. } | Error::EmptyCell { .. } => EXIT_EMPTY,
            Error::Capability { .. } => EXIT_CAPABILITY,
            _ => EXIT_USAGE,
        };
        let report = match &err {
            Error::Infeasible { cycle } | Error::EmptyCell { cycle } => Some(io::pretty(&json!({
                "feasible": false,
                "cycle": one_based(cycle),
            }))),
            _ => None,
        };
        let message = match context {
            Some(path) => format!("{}: {err}", path.display()),
            None => err.to_string(),
        };
        Failure {
            code,
            message,
            report,
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure::from_error(None, err)
    }
}

struct Success {
    code: i32,
    text: String,
    note: Option<String>,
}

impl Success {
    fn json(value: Value) -> Self {
        Success {
            code: EXIT_OK,
            text: io::pretty(&value),
            note: None,
        }
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn read<T: JsonFormat>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    T::from_json_str(&text).map_err(|e| Failure::from_error(Some(path), e))
}

/// A digraph file, or a matrix file read as the matrix of a digraph.
fn read_digraph(path: &Path) -> Result<WeightedDigraph, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let is_matrix = serde_json::from_str::<Value>(&text)
        .map(|v| v.get("rows").is_some())
        .unwrap_or(false);
    let parsed = if is_matrix {
        TropicalMatrix::from_json_str(&text).and_then(|m| WeightedDigraph::from_matrix(&m))
    } else {
        WeightedDigraph::from_json_str(&text)
    };
    parsed.map_err(|e| Failure::from_error(Some(path), e))
}

fn parse_face(specs: &[String], k: usize) -> Result<FaceSpec, Failure> {
    let mut arcs = Vec::new();
    for spec in specs {
        let parsed: Option<(usize, usize)> = spec.split_once(',').and_then(|(i, j)| {
            Some((i.trim().parse().ok()?, j.trim().parse().ok()?))
        });
        match parsed {
            Some((i, j)) if (1..=k).contains(&i) && (1..=k).contains(&j) => arcs.push((i - 1, j - 1)),
            _ => {
                return Err(Failure::usage(format!(
                    "--face `{spec}`: expected `i,j` with 1 <= i, j <= {k}"
                )))
            }
        }
    }
    Ok(FaceSpec::new(arcs))
}

fn with_face(w: WeightedDigraph, face: &[String]) -> Result<WeightedDigraph, Failure> {
    if face.is_empty() {
        return Ok(w);
    }
    let spec = parse_face(face, w.node_count())?;
    Ok(wdp::face(&w, &spec)?)
}

fn partition_json(p: &NodePartition) -> Value {
    json!(p.blocks().iter().map(|b| one_based(b)).collect::<Vec<_>>())
}

fn rationals_json(x: &[BigRational]) -> Value {
    Value::Array(x.iter().map(io::rational_json).collect())
}

fn values_json(x: &[TropicalValue]) -> Value {
    Value::Array(x.iter().map(io::value_json).collect())
}

fn graph_arcs(g: &BipartiteGraph) -> Value {
    json!(g.arcs.iter().map(|&(i, j)| [i + 1, j + 1]).collect::<Vec<_>>())
}

fn finite_point(text: &str) -> Result<Vec<BigRational>, Failure> {
    io::parse_point(text)
        .map_err(|e| Failure::usage(format!("--point: {e}")))?
        .into_iter()
        .map(|c| match c {
            TropicalValue::Finite(v) => Ok(v),
            TropicalValue::Infinity => Err(Failure::usage("--point: coordinates must be finite here")),
        })
        .collect()
}

fn random_point(rng: &mut ChaCha8Rng, d: usize) -> Vec<BigRational> {
    (0..d)
        .map(|_| {
            let q: i64 = rng.gen_range(1..=7);
            let p: i64 = rng.gen_range(-8 * q..=8 * q);
            BigRational::new(p.into(), q.into())
        })
        .collect()
}

fn execute(cli: &Cli) -> Result<Success, Failure> {
    let limits = cli.limits.limits();
    match &cli.command {
        Command::Kleene { digraph, face } => {
            let w = with_face(read_digraph(digraph)?, face)?;
            let star = wdp::kleene_star(&w)?;
            Ok(Success::json(star.to_json_value()))
        }
        Command::Feasible { digraph, face } => {
            let w = with_face(read_digraph(digraph)?, face)?;
            if let Some(cycle) = wdp::detect_negative_cycle(&w) {
                return Err(Error::Infeasible { cycle }.into());
            }
            let partition = wdp::equality_partition(&w)?;
            let mut out = json!({
                "feasible": true,
                "dimension": partition.len(),
                "equality_partition": partition_json(&partition),
                "interior_point": rationals_json(&wdp::relative_interior_point(&w)?),
            });
            if !face.is_empty() {
                out["face"] = w.to_json_value();
            }
            Ok(Success::json(out))
        }
        Command::Faces { digraph } => {
            let w = read_digraph(digraph)?;
            let lattice = wdp::cone_face_lattice(&w, &limits)?;
            let faces: Vec<Value> = lattice
                .elements
                .iter()
                .enumerate()
                .map(|(x, p)| json!({"id": x + 1, "dim": p.len(), "blocks": partition_json(p)}))
                .collect();
            let covers: Vec<[usize; 2]> = lattice.covers.iter().map(|&(a, b)| [a + 1, b + 1]).collect();
            Ok(Success::json(json!({
                "faces": faces,
                "covers": covers,
                "bottom": lattice.bottom + 1,
                "top": lattice.top + 1,
            })))
        }
        Command::Rays { digraph } => {
            let w = read_digraph(digraph)?;
            let rec = wdp::recession(&w, &limits)?;
            Ok(Success::json(json!({
                "lineality": rec.lineality_generators,
                "rays": rec.ray_generators,
                "ray_supports": rec.ray_supports().iter().map(|s| one_based(s)).collect::<Vec<_>>(),
            })))
        }
        Command::Envelope { matrix } => {
            let v: PointConfig = read(matrix)?;
            let vertices: Vec<Value> = envelope_vertices(&v, &limits)?
                .iter()
                .map(|x| {
                    json!({
                        "covector": graph_arcs(&x.graph),
                        "tuple": x.graph.tuple(),
                        "point": rationals_json(&x.point),
                    })
                })
                .collect();
            let rec = wdp::recession(&envelope_digraph(&v), &limits)?;
            let d = v.d();
            let rays: Vec<Value> = rec
                .ray_generators
                .iter()
                .zip(rec.ray_supports())
                .map(|(chi, supp)| {
                    let rows: Vec<usize> = supp.iter().filter(|&&x| x < d).map(|x| x + 1).collect();
                    let cols: Vec<usize> = supp.iter().filter(|&&x| x >= d).map(|x| x - d + 1).collect();
                    json!({"rows": rows, "cols": cols, "chi": chi})
                })
                .collect();
            Ok(Success::json(json!({
                "vertices": vertices,
                "lineality": rec.lineality_generators,
                "rays": rays,
            })))
        }
        Command::Cells { matrix, tcone, verify } => {
            let v: PointConfig = read(matrix)?;
            let cells = enumerate_cells(&v, &limits)?;
            let mut note = None;
            let mut code = EXIT_OK;
            if let Some(samples) = verify {
                let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                let mut misses = 0;
                for _ in 0..*samples {
                    let x = random_point(&mut rng, v.d());
                    let g = covector_of_point(&v, &x)?;
                    if !cells.iter().any(|c| c.graph == g) {
                        misses += 1;
                    }
                }
                if misses > 0 {
                    code = EXIT_EMPTY;
                }
                note = Some(format!(
                    "verified {samples} sample points (seed {}): {misses} not in the catalog",
                    cli.seed
                ));
            }
            let shown: Vec<CellRecord> = cells.into_iter().filter(|c| !*tcone || c.in_tcone).collect();
            Ok(Success {
                code,
                text: io::pretty(&io::cells_value(&shown)),
                note,
            })
        }
        Command::Subdivision { matrix } => {
            let v: PointConfig = read(matrix)?;
            let cells: Vec<Value> = regular_subdivision(&v, &limits)?
                .iter()
                .map(|c| json!({"vertices": graph_arcs(&c.vertices), "dim": c.dim}))
                .collect();
            Ok(Success::json(Value::Array(cells)))
        }
        Command::Member { input, point, halfspace } => {
            let (member, out) = if *halfspace {
                let h: HalfspaceSystem = read(input)?;
                let x = finite_point(point)?;
                let member = halfspace_membership(&h, &x)?;
                (member, json!({"member": member}))
            } else {
                let v: PointConfig = read(input)?;
                let coords = io::parse_point(point).map_err(|e| Failure::usage(format!("--point: {e}")))?;
                if coords.len() != v.d() {
                    return Err(Failure::usage(format!(
                        "--point has {} coordinates, the matrix has {} rows",
                        coords.len(),
                        v.d()
                    )));
                }
                let z = ProjectivePoint::new(coords)?;
                let m = tcone_membership(&v, &z)?;
                (m.member, json!({"member": m.member, "lambda": values_json(&m.lambda)}))
            };
            Ok(Success {
                code: if member { EXIT_OK } else { EXIT_EMPTY },
                ..Success::json(out)
            })
        }
        Command::Pure { system } => {
            let h: HalfspaceSystem = read(system)?;
            let report = is_pure(&h, &limits)?;
            Ok(Success::json(json!({
                "pure": report.pure,
                "full_dimensional": report.full_dimensional,
                "maximal": io::cells_value(&report.maximal),
                "offending": report.offending.map(|(a, b)| io::cells_value(&[a, b])),
            })))
        }
        Command::Signed { system, all } => {
            let h: HalfspaceSystem = read(system)?;
            let cells: Vec<Value> = signed_cells(&h, &limits)?
                .iter()
                .filter(|s| *all || !s.is_empty())
                .map(|s| {
                    json!({
                        "sign": s.sign.to_string(),
                        "empty": s.is_empty(),
                        "torus_cells": io::cells_value(&s.torus_cells),
                        "boundary_cells": io::cells_value(&s.boundary_cells),
                    })
                })
                .collect();
            Ok(Success::json(Value::Array(cells)))
        }
        Command::Projective { matrix } => {
            let v: PointConfig = read(matrix)?;
            Ok(Success::json(io::cells_value(&projective_decomposition(&v, &limits)?)))
        }
        Command::Tangent { system, point, cell, format } => {
            let h: HalfspaceSystem = read(system)?;
            let graph = match (point, cell) {
                (Some(p), None) => covector_of_point(h.config(), &finite_point(p)?)?,
                (None, Some(path)) => read(path)?,
                _ => return Err(Failure::usage("tangent needs exactly one of --point and --cell")),
            };
            let record = enumerate_cells(h.config(), &limits)?
                .into_iter()
                .find(|c| c.graph == graph)
                .ok_or_else(|| Failure::usage(format!("{graph} is not a cell of the decomposition")))?;
            let t = tangent_digraph(&h, &record)?;
            let text = match format {
                Format::Dot => io::tangent_dot(&t),
                Format::Json => io::pretty(&json!({
                    "cell": io::cell_value(&record),
                    "columns": one_based(&t.columns),
                    "row_to_column": t.row_to_column.iter().map(|&(i, j)| [i + 1, j + 1]).collect::<Vec<_>>(),
                    "column_to_row": t.column_to_row.iter().map(|&(i, j)| [i + 1, j + 1]).collect::<Vec<_>>(),
                })),
            };
            Ok(Success {
                code: EXIT_OK,
                text,
                note: None,
            })
        }
        Command::ExportDot { input } => {
            let text = fs::read_to_string(input)
                .map_err(|e| Failure::usage(format!("{}: {e}", input.display())))?;
            let probe: Value = serde_json::from_str(&text)
                .map_err(|e| Failure::usage(format!("{}: {e}", input.display())))?;
            let ctx = |e| Failure::from_error(Some(input), e);
            let dot = if probe.get("nodes").is_some() {
                io::digraph_dot(&WeightedDigraph::from_json_str(&text).map_err(ctx)?)
            } else if probe.get("d").is_some() {
                io::bipartite_dot(&BipartiteGraph::from_json_str(&text).map_err(ctx)?, None)
            } else if probe.get("matrix").is_some() {
                let h = HalfspaceSystem::from_json_str(&text).map_err(ctx)?;
                io::bipartite_dot(h.psi(), Some(h.config()))
            } else if probe.get("rows").is_some() {
                let m = TropicalMatrix::from_json_str(&text).map_err(ctx)?;
                let v = PointConfig::new(m).map_err(ctx)?;
                io::bipartite_dot(&v.support(), Some(&v))
            } else {
                return Err(Failure::usage(format!(
                    "{}: not a digraph, bipartite graph, matrix or system",
                    input.display()
                )));
            };
            Ok(Success {
                code: EXIT_OK,
                text: dot,
                note: None,
            })
        }
        Command::PlotSvg { matrix } => {
            let v: PointConfig = read(matrix)?;
            let cells = enumerate_cells(&v, &limits)?;
            Ok(Success {
                code: EXIT_OK,
                text: io::covector_svg(&v, &cells)?,
                note: None,
            })
        }
    }
}

/// Writes `text` to `path` through a temporary file in the same directory.
fn write_atomically(path: &Path, text: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn emit(output: Option<&Path>, text: &str) -> i32 {
    match output {
        Some(path) => match write_atomically(path, text) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                eprintln!("tropwdp: {}: {e}", path.display());
                EXIT_USAGE
            }
        },
        None => {
            print!("{text}");
            EXIT_OK
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit
/// status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(success) => {
            if let Some(note) = &success.note {
                eprintln!("tropwdp: {note}");
            }
            match emit(cli.output.as_deref(), &success.text) {
                EXIT_OK => success.code,
                failed => failed,
            }
        }
        Err(failure) => {
            eprintln!("tropwdp: {}", failure.message);
            if let Some(report) = &failure.report {
                let status = emit(cli.output.as_deref(), report);
                if status != EXIT_OK {
                    return status;
                }
            }
            failure.code
        }
    }
}
