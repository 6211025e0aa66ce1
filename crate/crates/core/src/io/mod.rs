//! File formats. Indices in files are 1-based; rationals are JSON integers or
//! `"p/q"` strings and `∞` is `"inf"`.
//!
//! | object | shape |
//! |---|---|
//! | matrix | `{"rows": d, "cols": n, "entries": [[...], ...]}` |
//! | digraph | `{"nodes": k, "arcs": [{"from": i, "to": j, "w": w}, ...]}` |
//! | bipartite graph | `{"d": d, "n": n, "arcs": [[i, j], ...]}` |
//! | halfspace system | `{"matrix": matrix, "psi": [[i, j], ...]}` |
//! | cell catalog | `[{"covector", "tuple", "dim", "bounded", "in_tcone", "stratum"}, ...]` |

mod dot;
mod svg;

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::covector::{CellRecord, HalfspaceSystem};
use crate::envelope::{BipartiteGraph, PointConfig};
use crate::tropical::{TropicalMatrix, TropicalValue};
use crate::wdp::WeightedDigraph;
use crate::{Error, Result};

pub use dot::{bipartite_dot, digraph_dot, tangent_dot};
pub use svg::covector_svg;

/// A tropical number as it appears in a file.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Entry(TropicalValue);

impl Serialize for Entry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match &self.0 {
            TropicalValue::Finite(v) if v.denom().is_one() => match v.numer().to_i64() {
                Some(i) => s.serialize_i64(i),
                None => s.serialize_str(&self.0.to_string()),
            },
            other => s.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Entry {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct EntryVisitor;

        impl Visitor<'_> for EntryVisitor {
            type Value = Entry;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer, a \"p/q\" string or \"inf\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Entry, E> {
                Ok(Entry(TropicalValue::int(v)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Entry, E> {
                Ok(Entry(TropicalValue::Finite(BigRational::from_integer(v.into()))))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Entry, E> {
                Err(E::custom(format!(
                    "`{v}` is not exact; write fractions as \"p/q\""
                )))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Entry, E> {
                v.parse().map(Entry).map_err(|e: Error| match e {
                    Error::Parse(msg) => E::custom(msg),
                    other => E::custom(other),
                })
            }
        }

        d.deserialize_any(EntryVisitor)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Entry>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArcJson {
    from: usize,
    to: usize,
    w: Entry,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DigraphJson {
    nodes: usize,
    arcs: Vec<ArcJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    d: usize,
    n: usize,
    arcs: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemJson {
    matrix: MatrixJson,
    psi: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CellJson {
    covector: Vec<(usize, usize)>,
    tuple: String,
    dim: usize,
    bounded: bool,
    in_tcone: bool,
    stratum: Vec<usize>,
}

/// Deserializes with the line and the path of the offending field in the
/// error message.
fn from_str<T: de::DeserializeOwned>(text: &str) -> Result<T> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(&mut de).map_err(|err| {
        let inner = err.inner();
        let mut msg = inner.to_string();
        if let Some(pos) = msg.rfind(" at line ") {
            msg.truncate(pos);
        }
        let path = err.path().to_string();
        Error::Parse(format!("line {}, field `{path}`: {msg}", inner.line()))
    })?;
    de.end().map_err(|e| Error::Parse(format!("line {}: trailing characters", e.line())))?;
    Ok(value)
}

fn field_error(path: &str, msg: impl fmt::Display) -> Error {
    Error::Parse(format!("field `{path}`: {msg}"))
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn value_json(v: &TropicalValue) -> Value {
    serde_json::to_value(Entry(v.clone())).expect("serializable")
}

pub fn rational_json(v: &BigRational) -> Value {
    value_json(&TropicalValue::Finite(v.clone()))
}

/// Pretty JSON with a trailing newline.
pub fn pretty(value: &Value) -> String {
    to_pretty(value)
}

/// Parses a point such as `0,3/2,inf`.
pub fn parse_point(text: &str) -> Result<Vec<TropicalValue>> {
    text.split(',').map(str::parse).collect()
}

fn one_based(path: &str, k: usize, index: usize) -> Result<usize> {
    if index == 0 || index > k {
        return Err(field_error(path, format!("index {index} outside 1..={k}")));
    }
    Ok(index - 1)
}

fn arcs_from_json(d: usize, n: usize, arcs: &[(usize, usize)], path: &str) -> Result<BipartiteGraph> {
    let arcs = arcs
        .iter()
        .enumerate()
        .map(|(p, &(i, j))| {
            let at = format!("{path}[{p}]");
            Ok((one_based(&at, d, i)?, one_based(&at, n, j)?))
        })
        .collect::<Result<Vec<_>>>()?;
    BipartiteGraph::new(d, n, arcs)
}

fn arcs_to_json(g: &BipartiteGraph) -> Vec<(usize, usize)> {
    g.arcs.iter().map(|&(i, j)| (i + 1, j + 1)).collect()
}

fn matrix_from(m: MatrixJson, path: &str) -> Result<TropicalMatrix> {
    if m.entries.len() != m.rows {
        return Err(field_error(
            &format!("{path}entries"),
            format!("{} rows listed, `rows` is {}", m.entries.len(), m.rows),
        ));
    }
    if let Some(r) = m.entries.iter().position(|r| r.len() != m.cols) {
        return Err(field_error(
            &format!("{path}entries[{r}]"),
            format!("{} entries, `cols` is {}", m.entries[r].len(), m.cols),
        ));
    }
    let entries = m.entries.into_iter().flatten().map(|e| e.0).collect();
    TropicalMatrix::new(m.rows, m.cols, entries)
}

fn matrix_to(m: &TropicalMatrix) -> MatrixJson {
    MatrixJson {
        rows: m.rows(),
        cols: m.cols(),
        entries: m
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(Entry).collect())
            .collect(),
    }
}

/// Objects with a JSON file format.
pub trait JsonFormat: Sized {
    fn to_json_value(&self) -> Value;

    fn from_json_str(text: &str) -> Result<Self>;

    fn to_json_string(&self) -> String {
        pretty(&self.to_json_value())
    }
}

impl JsonFormat for TropicalMatrix {
    fn to_json_value(&self) -> Value {
        serde_json::to_value(matrix_to(self)).expect("serializable")
    }

    fn from_json_str(text: &str) -> Result<Self> {
        matrix_from(from_str(text)?, "")
    }
}

impl JsonFormat for PointConfig {
    fn to_json_value(&self) -> Value {
        self.matrix().to_json_value()
    }

    fn from_json_str(text: &str) -> Result<Self> {
        PointConfig::new(TropicalMatrix::from_json_str(text)?)
    }
}

impl JsonFormat for WeightedDigraph {
    fn to_json_value(&self) -> Value {
        let json = DigraphJson {
            nodes: self.node_count(),
            arcs: self
                .arcs()
                .map(|(i, j, w)| ArcJson {
                    from: i + 1,
                    to: j + 1,
                    w: Entry(TropicalValue::Finite(w.clone())),
                })
                .collect(),
        };
        serde_json::to_value(json).expect("serializable")
    }

    fn from_json_str(text: &str) -> Result<Self> {
        let json: DigraphJson = from_str(text)?;
        let k = json.nodes;
        let mut arcs = Vec::new();
        for (p, arc) in json.arcs.into_iter().enumerate() {
            let at = format!("arcs[{p}]");
            let i = one_based(&format!("{at}.from"), k, arc.from)?;
            let j = one_based(&format!("{at}.to"), k, arc.to)?;
            if let TropicalValue::Finite(w) = arc.w.0 {
                arcs.push((i, j, w));
            }
        }
        WeightedDigraph::from_arcs(k, arcs)
    }
}

impl JsonFormat for BipartiteGraph {
    fn to_json_value(&self) -> Value {
        let json = GraphJson {
            d: self.d,
            n: self.n,
            arcs: arcs_to_json(self),
        };
        serde_json::to_value(json).expect("serializable")
    }

    fn from_json_str(text: &str) -> Result<Self> {
        let json: GraphJson = from_str(text)?;
        arcs_from_json(json.d, json.n, &json.arcs, "arcs")
    }
}

impl JsonFormat for HalfspaceSystem {
    fn to_json_value(&self) -> Value {
        let json = SystemJson {
            matrix: matrix_to(self.config().matrix()),
            psi: arcs_to_json(self.psi()),
        };
        serde_json::to_value(json).expect("serializable")
    }

    fn from_json_str(text: &str) -> Result<Self> {
        let json: SystemJson = from_str(text)?;
        let v = PointConfig::new(matrix_from(json.matrix, "matrix.")?)?;
        let psi = arcs_from_json(v.d(), v.n(), &json.psi, "psi")?;
        HalfspaceSystem::new(v, psi)
    }
}

pub fn cell_value(cell: &CellRecord) -> Value {
    let json = CellJson {
        covector: arcs_to_json(&cell.graph),
        tuple: cell.tuple(),
        dim: cell.dim,
        bounded: cell.bounded,
        in_tcone: cell.in_tcone,
        stratum: cell.stratum.iter().map(|i| i + 1).collect(),
    };
    serde_json::to_value(json).expect("serializable")
}

pub fn cells_value(cells: &[CellRecord]) -> Value {
    Value::Array(cells.iter().map(cell_value).collect())
}

/// Reads a cell catalog for a `d × n` matrix. The `tuple` field is derived
/// data and must agree with the covector.
pub fn cells_from_json(text: &str, d: usize, n: usize) -> Result<Vec<CellRecord>> {
    let json: Vec<CellJson> = from_str(text)?;
    json.into_iter()
        .enumerate()
        .map(|(p, c)| {
            let graph = arcs_from_json(d, n, &c.covector, &format!("[{p}].covector"))?;
            let stratum = c
                .stratum
                .iter()
                .map(|&i| one_based(&format!("[{p}].stratum"), d, i))
                .collect::<Result<Vec<_>>>()?;
            let cell = CellRecord {
                stratum,
                graph,
                dim: c.dim,
                bounded: c.bounded,
                in_tcone: c.in_tcone,
            };
            if cell.tuple() != c.tuple {
                return Err(field_error(
                    &format!("[{p}].tuple"),
                    format!("`{}` does not match the covector `{}`", c.tuple, cell.tuple()),
                ));
            }
            Ok(cell)
        })
        .collect()
}
