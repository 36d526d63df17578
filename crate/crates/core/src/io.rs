//! Plain-text formats for bound quivers and representations.
//!
//! Quiver files:
//!
//! ```text
//! # `*` is composition: in `a*b` the arrow `b` is traversed first.
//! quiver lambda3
//! vertices 1 2 3
//! arrow alpha: 2 -> 1
//! arrow beta: 3 -> 2
//! relations
//! alpha*beta = 0
//! ```
//!
//! Representation files give the field, the dimension vector, and one block
//! per arrow: a header line `arrow <name>` followed by `dims[target]` rows of
//! `dims[source]` entries (no rows when either is zero). Omitted arrows act
//! by zero. Relations are checked on load.
//!
//! ```text
//! field p:2
//! dims 1=1 2=1 3=0
//! arrow alpha
//! 1
//! ```
//!
//! Blank lines and `#` comments are ignored everywhere.

use std::path::Path as FsPath;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{Field, Mat, Scalar};
use crate::quiver::{BoundQuiverAlgebra, Quiver};
use crate::rep::Representation;

const QUIVER_HEADER: &str = "# `*` is composition: in `a*b` the arrow `b` is traversed first.";
const REP_HEADER: &str = "# matrices are row-major with shape dims[target] x dims[source]";

/// A named bound quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverFile {
    pub name: String,
    pub algebra: BoundQuiverAlgebra,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse(format!("line {line}: {}", msg.into()))
}

/// Non-empty lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

pub fn parse_quiver(text: &str) -> Result<QuiverFile> {
    let mut name = None;
    let mut vertices: Option<Vec<String>> = None;
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let mut relations: Vec<(usize, String)> = Vec::new();
    let mut in_relations = false;
    for (n, line) in content_lines(text) {
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match keyword {
            "quiver" => {
                if rest.is_empty() {
                    return Err(parse_err(n, "quiver needs a name"));
                }
                name = Some(rest.to_string());
                in_relations = false;
            }
            "vertices" => {
                vertices = Some(rest.split_whitespace().map(str::to_string).collect());
                in_relations = false;
            }
            "arrow" => {
                let (aname, ends) =
                    rest.split_once(':').ok_or_else(|| parse_err(n, "expected `arrow <name>: <src> -> <tgt>`"))?;
                let (s, t) =
                    ends.split_once("->").ok_or_else(|| parse_err(n, "expected `<src> -> <tgt>`"))?;
                arrows.push((aname.trim().to_string(), s.trim().to_string(), t.trim().to_string()));
                in_relations = false;
            }
            "relations" => {
                if !rest.is_empty() {
                    return Err(parse_err(n, "`relations` stands on its own line"));
                }
                in_relations = true;
            }
            _ if in_relations => relations.push((n, line.to_string())),
            other => return Err(parse_err(n, format!("unknown keyword {other:?}"))),
        }
    }
    let name = name.ok_or_else(|| Error::Parse("missing `quiver <name>` line".into()))?;
    let vertices = vertices.ok_or_else(|| Error::Parse("missing `vertices` line".into()))?;
    let quiver = Quiver::new(&vertices, &arrows)?;
    let mut rels = Vec::with_capacity(relations.len());
    for (n, line) in relations {
        let (word, rhs) =
            line.split_once('=').ok_or_else(|| parse_err(n, "expected `<word> = 0`"))?;
        if rhs.trim() != "0" {
            return Err(Error::MalformedRelation(format!(
                "line {n}: only zero relations are supported, got {line:?}"
            )));
        }
        rels.push(quiver.parse_word(word)?);
    }
    Ok(QuiverFile { name, algebra: BoundQuiverAlgebra::new(quiver, rels)? })
}

pub fn write_quiver(file: &QuiverFile) -> String {
    let q = file.algebra.quiver();
    let mut out = format!("{QUIVER_HEADER}\nquiver {}\nvertices {}\n", file.name, q.vertices().join(" "));
    for a in q.arrows() {
        out.push_str(&format!(
            "arrow {}: {} -> {}\n",
            a.name,
            q.vertex_name(a.source),
            q.vertex_name(a.target)
        ));
    }
    if !file.algebra.relations().is_empty() {
        out.push_str("relations\n");
        for r in file.algebra.relations() {
            out.push_str(&format!("{} = 0\n", r.display(q)));
        }
    }
    out
}

pub fn load_quiver(path: impl AsRef<FsPath>) -> Result<QuiverFile> {
    parse_quiver(&std::fs::read_to_string(path)?)
}

pub fn parse_rep(algebra: &Arc<BoundQuiverAlgebra>, text: &str) -> Result<Representation> {
    let q = algebra.quiver();
    let mut lines = content_lines(text).peekable();
    let mut field = None;
    let mut dims: Option<Vec<usize>> = None;
    let mut blocks: Vec<Option<Vec<Scalar>>> = vec![None; q.num_arrows()];
    while let Some((n, line)) = lines.next() {
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match keyword {
            "field" => field = Some(Field::from_str(rest).map_err(|e| parse_err(n, e.to_string()))?),
            "dims" => {
                let mut d = vec![0; q.num_vertices()];
                let mut seen = vec![false; q.num_vertices()];
                for item in rest.split_whitespace() {
                    let (v, x) =
                        item.split_once('=').ok_or_else(|| parse_err(n, "expected `<vertex>=<dim>`"))?;
                    let v = q.vertex_index(v)?;
                    if seen[v] {
                        return Err(parse_err(n, format!("vertex {} given twice", q.vertex_name(v))));
                    }
                    seen[v] = true;
                    d[v] = x.parse().map_err(|_| parse_err(n, format!("bad dimension {x:?}")))?;
                }
                dims = Some(d);
            }
            "arrow" => {
                let f = field.ok_or_else(|| parse_err(n, "`field` must precede arrow blocks"))?;
                let d = dims.as_ref().ok_or_else(|| parse_err(n, "`dims` must precede arrow blocks"))?;
                let a = q.arrow_index(rest)?;
                if blocks[a].is_some() {
                    return Err(parse_err(n, format!("arrow {rest} given twice")));
                }
                let arrow = &q.arrows()[a];
                let (rows, cols) = (d[arrow.target], d[arrow.source]);
                let mut entries = Vec::with_capacity(rows * cols);
                if cols > 0 {
                    for _ in 0..rows {
                        let (rn, row) = lines
                            .next()
                            .ok_or_else(|| parse_err(n, format!("arrow {rest}: expected {rows} rows")))?;
                        let row: Vec<&str> = row.split_whitespace().collect();
                        if row.len() != cols {
                            return Err(parse_err(
                                rn,
                                format!("arrow {rest}: expected {cols} entries, got {}", row.len()),
                            ));
                        }
                        for x in row {
                            entries.push(f.parse_scalar(x).map_err(|e| parse_err(rn, e.to_string()))?);
                        }
                    }
                }
                blocks[a] = Some(entries);
            }
            other => return Err(parse_err(n, format!("unknown keyword {other:?}"))),
        }
    }
    let field = field.ok_or_else(|| Error::Parse("missing `field` line".into()))?;
    let dims = dims.ok_or_else(|| Error::Parse("missing `dims` line".into()))?;
    let mats = q
        .arrows()
        .iter()
        .zip(blocks)
        .map(|(arrow, b)| {
            let (rows, cols) = (dims[arrow.target], dims[arrow.source]);
            match b {
                Some(entries) => Mat::from_scalars(field, rows, cols, entries),
                None => Mat::zeros(field, rows, cols),
            }
        })
        .collect();
    Representation::new(algebra.clone(), field, dims, mats)
}

pub fn write_rep(m: &Representation) -> String {
    let q = m.algebra().quiver();
    let dims: Vec<String> =
        m.dims().iter().enumerate().map(|(v, d)| format!("{}={d}", q.vertex_name(v))).collect();
    let mut out = format!("{REP_HEADER}\nfield {}\ndims {}\n", m.field(), dims.join(" "));
    for (a, arrow) in q.arrows().iter().enumerate() {
        out.push_str(&format!("arrow {}\n", arrow.name));
        let x = m.mat(a);
        if x.cols() == 0 {
            continue;
        }
        for i in 0..x.rows() {
            let row: Vec<String> = (0..x.cols()).map(|j| x.get(i, j).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}

pub fn load_rep(algebra: &Arc<BoundQuiverAlgebra>, path: impl AsRef<FsPath>) -> Result<Representation> {
    parse_rep(algebra, &std::fs::read_to_string(path)?)
}
