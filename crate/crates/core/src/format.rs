//! Text and JSON quiver files, and DOT/JSON export of mutation graphs.
//!
//! Text form:
//!
//! ```text
//! # the (3,4,5) cycle
//! 3
//! names i j k
//! i j 3
//! j k 4
//! k i 5
//! ```
//!
//! The first non-comment line is the vertex count. An optional `names`
//! directive fixes vertex names in index order. Each further line is
//! `source target multiplicity`. When any endpoint is not a number, or a
//! `names` directive is present, endpoints are names and get indices in
//! order of first appearance.
//!
//! JSON form: `{"n": 3, "arrows": [[0, 1, 3], ...], "names": [...]}` where
//! `names` is optional and endpoints may be names.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::graph::MutationGraph;
use crate::{NodeClass, Quiver, QuiverError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("json: {0}")]
    Json(String),
    #[error("{}invalid quiver", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Semantic { line: Option<usize>, source: QuiverError },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Json,
    Text,
}

impl InputFormat {
    /// JSON when the first non-blank character is `{`.
    pub fn detect(text: &str) -> Self {
        if text.trim_start().starts_with('{') {
            InputFormat::Json
        } else {
            InputFormat::Text
        }
    }
}

/// A quiver with optional vertex names, index `i` named `names[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedQuiver {
    pub quiver: Quiver,
    pub names: Option<Vec<String>>,
}

impl NamedQuiver {
    pub fn unnamed(quiver: Quiver) -> Self {
        NamedQuiver { quiver, names: None }
    }

    pub fn name(&self, v: usize) -> String {
        match &self.names {
            Some(names) => names[v].clone(),
            None => v.to_string(),
        }
    }
}

pub fn parse_quiver(text: &str, format: InputFormat) -> Result<NamedQuiver, FormatError> {
    match format {
        InputFormat::Json => parse_json(text),
        InputFormat::Text => parse_text(text),
    }
}

pub fn parse_auto(text: &str) -> Result<NamedQuiver, FormatError> {
    parse_quiver(text, InputFormat::detect(text))
}

/// Resolves endpoint tokens to indices.
struct Labels {
    n: usize,
    named: bool,
    names: Vec<String>,
    lookup: HashMap<String, usize>,
}

impl Labels {
    fn new(n: usize, named: bool) -> Self {
        Labels { n, named, names: Vec::new(), lookup: HashMap::new() }
    }

    fn declare(&mut self, name: &str) -> Result<usize, String> {
        if let Some(&i) = self.lookup.get(name) {
            return Ok(i);
        }
        if self.names.len() == self.n {
            return Err(format!("more than {} distinct vertex names", self.n));
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.lookup.insert(name.to_string(), i);
        Ok(i)
    }

    fn resolve(&mut self, token: &str) -> Result<usize, String> {
        if self.named {
            return self.declare(token);
        }
        let i: usize = token.parse().map_err(|_| format!("bad vertex {token:?}"))?;
        self.index(i)
    }

    fn index(&self, i: usize) -> Result<usize, String> {
        if i >= self.n {
            return Err(QuiverError::IndexOutOfRange { index: i, n: self.n }.to_string());
        }
        Ok(i)
    }

    fn finish(mut self) -> Result<Option<Vec<String>>, String> {
        if !self.named {
            return Ok(None);
        }
        for i in self.names.len()..self.n {
            let fill = i.to_string();
            if self.lookup.contains_key(&fill) {
                return Err(format!("cannot name unnamed vertex {i}: name taken"));
            }
            self.names.push(fill);
        }
        Ok(Some(self.names))
    }
}

/// Checks one arrow against Def-level constraints, remembering pairs seen.
fn check_arrow(
    seen: &mut BTreeSet<(usize, usize)>,
    i: usize,
    j: usize,
    m: i64,
    line: Option<usize>,
) -> Result<(), FormatError> {
    let semantic = |source| FormatError::Semantic { line, source };
    if i == j {
        return Err(semantic(QuiverError::LoopArrow(i)));
    }
    if m <= 0 {
        return Err(semantic(QuiverError::NonPositiveMultiplicity(i, j, m)));
    }
    if !seen.insert((i.min(j), i.max(j))) {
        return Err(semantic(QuiverError::ConflictingPair(i.min(j), i.max(j))));
    }
    Ok(())
}

fn parse_text(text: &str) -> Result<NamedQuiver, FormatError> {
    let lines: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, t)| !t.is_empty())
        .collect();
    let Some((first, head)) = lines.first() else {
        return Err(FormatError::Syntax { line: 1, message: "empty input, expected vertex count".into() });
    };
    let syntax = |line: usize, message: String| FormatError::Syntax { line, message };
    if head.len() != 1 {
        return Err(syntax(*first, "first line must hold only the vertex count".into()));
    }
    let n: usize = head[0].parse().map_err(|_| syntax(*first, format!("bad vertex count {:?}", head[0])))?;
    let body = &lines[1..];
    let directive = body.iter().any(|(_, t)| t[0] == "names");
    let bare_names = body.iter().filter(|(_, t)| t[0] != "names").any(|(_, t)| {
        t.iter().take(2).any(|tok| tok.parse::<usize>().is_err())
    });
    let mut labels = Labels::new(n, directive || bare_names);
    let mut seen = BTreeSet::new();
    let mut arrows = Vec::new();
    for (idx, (line, toks)) in body.iter().enumerate() {
        if toks[0] == "names" {
            if idx != 0 {
                return Err(syntax(*line, "names directive must directly follow the vertex count".into()));
            }
            for name in &toks[1..] {
                if labels.lookup.contains_key(*name) {
                    return Err(syntax(*line, format!("duplicate name {name:?}")));
                }
                labels.declare(name).map_err(|m| syntax(*line, m))?;
            }
            continue;
        }
        if toks.len() != 3 {
            return Err(syntax(*line, format!("expected `source target multiplicity`, got {} fields", toks.len())));
        }
        let i = labels.resolve(toks[0]).map_err(|m| syntax(*line, m))?;
        let j = labels.resolve(toks[1]).map_err(|m| syntax(*line, m))?;
        let m: i64 = toks[2].parse().map_err(|_| syntax(*line, format!("bad multiplicity {:?}", toks[2])))?;
        check_arrow(&mut seen, i, j, m, Some(*line))?;
        arrows.push((i, j, m));
    }
    let names = labels.finish().map_err(|m| syntax(*first, m))?;
    let quiver = Quiver::new(n, &arrows).map_err(|source| FormatError::Semantic { line: None, source })?;
    Ok(NamedQuiver { quiver, names })
}

fn parse_json(text: &str) -> Result<NamedQuiver, FormatError> {
    let err = |m: String| FormatError::Json(m);
    let v: Value = serde_json::from_str(text).map_err(|e| err(e.to_string()))?;
    let obj = v.as_object().ok_or_else(|| err("expected an object".into()))?;
    if let Some(k) = obj.keys().find(|k| !matches!(k.as_str(), "n" | "arrows" | "names")) {
        return Err(err(format!("unknown field {k:?}")));
    }
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| err("field \"n\" must be a nonnegative integer".into()))? as usize;
    let arrows_v = obj
        .get("arrows")
        .and_then(Value::as_array)
        .ok_or_else(|| err("field \"arrows\" must be an array".into()))?;
    let declared = match obj.get("names") {
        None | Some(Value::Null) => None,
        Some(Value::Array(a)) => Some(
            a.iter()
                .map(|x| x.as_str().map(str::to_string).ok_or_else(|| err("names must be strings".into())))
                .collect::<Result<Vec<_>, _>>()?,
        ),
        Some(_) => return Err(err("field \"names\" must be an array".into())),
    };
    let string_ends = arrows_v
        .iter()
        .filter_map(Value::as_array)
        .any(|a| a.iter().take(2).any(Value::is_string));
    let mut labels = Labels::new(n, declared.is_some() || string_ends);
    for name in declared.iter().flatten() {
        if labels.lookup.contains_key(name) {
            return Err(err(format!("duplicate name {name:?}")));
        }
        labels.declare(name).map_err(err)?;
    }
    let mut seen = BTreeSet::new();
    let mut arrows = Vec::new();
    for (idx, a) in arrows_v.iter().enumerate() {
        let at = |m: String| err(format!("arrows[{idx}]: {m}"));
        let a = a.as_array().filter(|a| a.len() == 3).ok_or_else(|| at("expected [source, target, multiplicity]".into()))?;
        let mut end = |x: &Value| -> Result<usize, FormatError> {
            match x {
                Value::String(s) => labels.declare(s).map_err(at),
                Value::Number(num) => {
                    let i = num.as_u64().ok_or_else(|| at(format!("bad vertex {num}")))?;
                    labels.index(i as usize).map_err(at)
                }
                _ => Err(at("vertex must be a name or an index".into())),
            }
        };
        let i = end(&a[0])?;
        let j = end(&a[1])?;
        let m = a[2].as_i64().ok_or_else(|| at("multiplicity must be an integer".into()))?;
        check_arrow(&mut seen, i, j, m, None)?;
        arrows.push((i, j, m));
    }
    let names = labels.finish().map_err(err)?;
    let quiver = Quiver::new(n, &arrows).map_err(|source| FormatError::Semantic { line: None, source })?;
    Ok(NamedQuiver { quiver, names })
}

/// Canonical compact JSON, names last when present.
pub fn to_json(q: &NamedQuiver) -> String {
    to_json_value(q).to_string()
}

pub fn to_json_value(q: &NamedQuiver) -> Value {
    let mut v = serde_json::to_value(&q.quiver).expect("quivers serialize");
    if let Some(names) = &q.names {
        v["names"] = json!(names);
    }
    v
}

/// Canonical text form, with a `names` directive when names are present.
pub fn to_text(q: &NamedQuiver) -> String {
    let mut out = format!("{}\n", q.quiver.vertex_count());
    if let Some(names) = &q.names {
        let _ = writeln!(out, "names {}", names.join(" "));
    }
    for (i, j, m) in q.quiver.arrows() {
        let _ = writeln!(out, "{} {} {m}", q.name(i), q.name(j));
    }
    out
}

pub fn class_color(class: NodeClass) -> &'static str {
    match class {
        NodeClass::Fork => "#e06666",
        NodeClass::PreFork => "#f6b26b",
        NodeClass::Wing => "#ffd966",
        NodeClass::Tip => "#93c47d",
        NodeClass::Key => "#6fa8dc",
        NodeClass::AbundantAcyclic => "#8e7cc3",
        NodeClass::Acyclic => "#c9daf8",
        NodeClass::Other => "#d9d9d9",
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Undirected DOT rendering: one edge per mutation, nodes filled by class,
/// boundary nodes dashed.
pub fn graph_to_dot(g: &MutationGraph, names: Option<&[String]>) -> String {
    let name = |v: usize| names.map(|n| n[v].clone()).unwrap_or_else(|| v.to_string());
    let mut out = String::from("graph mutation_graph {\n  node [shape=box, style=filled, fontname=\"monospace\"];\n");
    for (idx, node) in g.nodes.iter().enumerate() {
        let arrows: Vec<String> = node
            .quiver
            .arrows()
            .iter()
            .map(|&(i, j, m)| format!("{}->{}:{m}", name(i), name(j)))
            .collect();
        let class = node.class();
        let style = if node.boundary { "filled,dashed" } else { "filled" };
        let _ = writeln!(
            out,
            "  n{idx} [label=\"{idx} {}\\n{}\", class=\"{}\", fillcolor=\"{}\", style=\"{style}\"];",
            class.name(),
            dot_escape(&arrows.join(" ")),
            class.name(),
            class_color(class),
        );
    }
    for &(a, v, b) in &g.edges {
        if a <= b {
            let _ = writeln!(out, "  n{a} -- n{b} [label=\"{}\"];", dot_escape(&name(v)));
        }
    }
    out.push_str("}\n");
    out
}

/// JSON mirror of the graph. See `docs/graph-schema.md`.
pub fn graph_to_json(g: &MutationGraph, names: Option<&[String]>) -> Value {
    let nodes: Vec<Value> = g
        .nodes
        .iter()
        .enumerate()
        .map(|(idx, node)| {
            json!({
                "id": idx,
                "quiver": node.quiver,
                "class": node.class(),
                "depth": node.depth,
                "boundary": node.boundary,
                "expanded": node.expanded,
                "parent": node.parent,
                "report": node.report,
            })
        })
        .collect();
    json!({
        "vertex_count": g.vertex_count,
        "names": names,
        "status": g.status,
        "nodes": nodes,
        "edges": g.edges,
    })
}
