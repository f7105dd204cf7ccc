//! Text format for graph models.
//!
//! ```text
//! graph symmetric        # or: graph directed
//! node a [red, blue]     # brackets and commas optional
//! node b
//! edge a b
//! ```
//!
//! Points are numbered in node declaration order. A symmetric header adds
//! every edge in both directions.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use crate::error::ModelIoError;
use crate::model::ClosureModel;
use crate::pointset::PointSet;
use crate::space::{PointLabels, QuasiDiscreteSpace};

pub fn parse_graph_model(text: &str) -> Result<ClosureModel, ModelIoError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let symmetric = match lines.next() {
        Some((_, "graph symmetric")) => true,
        Some((_, "graph directed")) => false,
        Some((n, other)) => {
            return Err(ModelIoError::syntax(
                n,
                format!("expected 'graph directed' or 'graph symmetric', found '{other}'"),
            ))
        }
        None => return Err(ModelIoError::syntax(1, "missing 'graph' header")),
    };

    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut names: Vec<String> = Vec::new();
    let mut props: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (n, line) in lines {
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match keyword {
            "node" => {
                let rest = rest.trim_start();
                let (id, tail) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                if id.is_empty() {
                    return Err(ModelIoError::syntax(n, "node without identifier"));
                }
                let index = names.len();
                if ids.insert(id.to_string(), index).is_some() {
                    return Err(ModelIoError::syntax(n, format!("duplicate node '{id}'")));
                }
                names.push(id.to_string());
                let tail = tail.trim();
                let tail = match tail.strip_prefix('[') {
                    Some(t) => t
                        .strip_suffix(']')
                        .ok_or_else(|| ModelIoError::syntax(n, "unclosed '['"))?,
                    None => tail,
                };
                for p in tail.split(|c: char| c == ',' || c.is_whitespace()).filter(|p| !p.is_empty()) {
                    props.entry(p.to_string()).or_default().push(index);
                }
            }
            "edge" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let [a, b] = parts[..] else {
                    return Err(ModelIoError::syntax(n, "edge needs exactly two node identifiers"));
                };
                let lookup = |id: &str| {
                    ids.get(id)
                        .copied()
                        .ok_or_else(|| ModelIoError::syntax(n, format!("edge refers to undeclared node '{id}'")))
                };
                let (x, y) = (lookup(a)?, lookup(b)?);
                if x == y {
                    log::warn!("line {n}: dropping self-loop on '{a}'");
                    continue;
                }
                edges.push((x, y));
                if symmetric {
                    edges.push((y, x));
                }
            }
            "graph" => return Err(ModelIoError::syntax(n, "repeated 'graph' header")),
            other => return Err(ModelIoError::syntax(n, format!("unknown directive '{other}'"))),
        }
    }

    let space = QuasiDiscreteSpace::from_edges(names.len(), edges)?.with_labels(PointLabels::Names(names));
    let mut model = ClosureModel::new(space);
    for (name, points) in props {
        model = model.with_points(name, points)?;
    }
    Ok(model)
}

pub fn load_graph_model(path: impl AsRef<Path>) -> Result<ClosureModel, ModelIoError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| ModelIoError::io(path, e))?;
    parse_graph_model(&text)
}

/// Serializes a model in the graph format. Symmetric relations are written
/// with a symmetric header and one line per undirected edge.
pub fn write_graph_model(model: &ClosureModel) -> String {
    let space = model.space();
    let symmetric = space.is_symmetric();
    let mut out = String::new();
    writeln!(out, "graph {}", if symmetric { "symmetric" } else { "directed" }).unwrap();
    let mut point_props: Vec<Vec<&str>> = vec![Vec::new(); model.point_count()];
    for (name, set) in model.propositions() {
        for x in set {
            point_props[x].push(name);
        }
    }
    for (x, props) in point_props.iter().enumerate() {
        if props.is_empty() {
            writeln!(out, "node {}", space.label(x)).unwrap();
        } else {
            writeln!(out, "node {} [{}]", space.label(x), props.join(",")).unwrap();
        }
    }
    for (x, y) in space.edges() {
        if !symmetric || x < y {
            writeln!(out, "edge {} {}", space.label(x), space.label(y)).unwrap();
        }
    }
    out
}

/// Index of the node named `id`.
pub fn node_index(model: &ClosureModel, id: &str) -> Option<usize> {
    match model.space().labels() {
        PointLabels::Names(names) => names.iter().position(|n| n == id),
        _ => id.parse().ok().filter(|&x| x < model.point_count()),
    }
}

/// Points of `model` named by `ids`.
pub fn node_set(model: &ClosureModel, ids: &[String]) -> Result<PointSet, ModelIoError> {
    let mut set = model.no_points();
    for id in ids {
        let x = node_index(model, id).ok_or_else(|| ModelIoError::Invalid(format!("unknown node '{id}'")))?;
        set.insert(x);
    }
    Ok(set)
}
