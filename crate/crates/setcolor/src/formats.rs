//! Text formats for graphs, list assignments and colorings.
//!
//! Edge lists follow the DIMACS shape: optional `c label <i> <name>`
//! comment lines naming vertices, one `p edge <n> <m>` header, then one
//! `e <u> <v>` or bare `<u> <v>` line per edge, 1-indexed. List
//! assignments and colorings are JSON objects mapping labels to sorted
//! color arrays, in vertex order.

use std::fmt::Write as _;

use anyhow::{anyhow, bail, ensure, Context, Result};
use serde_json::{Map, Value};
use setcolor_core::{ColorSet, Graph, ListAssignment, SetColoring};

fn quote(label: &str) -> String {
    let mut out = String::with_capacity(label.len() + 2);
    out.push('"');
    for ch in label.chars() {
        if ch == '"' || ch == '\\' {
            out.push('\\');
        }
        out.push(ch);
    }
    out.push('"');
    out
}

fn colors_csv(set: ColorSet) -> String {
    set.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

/// Undirected DOT; lists become a `list` attribute when given.
pub fn to_dot(name: &str, graph: &Graph, lists: Option<&ListAssignment>) -> String {
    let mut out = String::new();
    writeln!(out, "graph {} {{", quote(name)).unwrap();
    for v in 0..graph.vertex_count() {
        match lists {
            Some(l) => writeln!(out, "  {} [list=\"{}\"];", quote(graph.label(v)), colors_csv(l.get(v))).unwrap(),
            None => writeln!(out, "  {};", quote(graph.label(v))).unwrap(),
        }
    }
    for (u, v) in graph.edges() {
        writeln!(out, "  {} -- {};", quote(graph.label(u)), quote(graph.label(v))).unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn to_edge_list(graph: &Graph) -> String {
    let mut out = String::new();
    for v in 0..graph.vertex_count() {
        writeln!(out, "c label {} {}", v + 1, graph.label(v)).unwrap();
    }
    writeln!(out, "p edge {} {}", graph.vertex_count(), graph.edge_count()).unwrap();
    for (u, v) in graph.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut names: Vec<(usize, String)> = Vec::new();
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        let ctx = || format!("line {}: `{line}`", no + 1);
        let mut words = line.split_whitespace();
        match words.next() {
            None => {}
            Some("c") => {
                if words.next() == Some("label") {
                    let i: usize = words
                        .next()
                        .ok_or_else(|| anyhow!("missing index"))
                        .and_then(|w| Ok(w.parse()?))
                        .with_context(ctx)?;
                    let name = words.collect::<Vec<_>>().join(" ");
                    ensure!(!name.is_empty(), "{}: empty label", ctx());
                    names.push((i, name));
                }
            }
            Some("p") => {
                ensure!(header.is_none(), "{}: second header", ctx());
                ensure!(words.next() == Some("edge"), "{}: expected `p edge n m`", ctx());
                let n =
                    words.next().ok_or_else(|| anyhow!("missing n")).and_then(|w| Ok(w.parse()?)).with_context(ctx)?;
                let m =
                    words.next().ok_or_else(|| anyhow!("missing m")).and_then(|w| Ok(w.parse()?)).with_context(ctx)?;
                header = Some((n, m));
            }
            Some(first) => {
                let first = if first == "e" { words.next().unwrap_or("") } else { first };
                let u: usize = first.parse().with_context(ctx)?;
                let v: usize = words.next().unwrap_or("").parse().with_context(ctx)?;
                edges.push((u, v, no + 1));
            }
        }
    }
    let (n, m) = header.ok_or_else(|| anyhow!("missing `p edge n m` header"))?;
    let mut labels: Vec<Option<String>> = vec![None; n];
    for (i, name) in names {
        ensure!((1..=n).contains(&i), "label index {i} outside 1..={n}");
        labels[i - 1] = Some(name);
    }
    let mut b = Graph::builder();
    for (i, l) in labels.into_iter().enumerate() {
        b.add_vertex(l.unwrap_or_else(|| (i + 1).to_string()))?;
    }
    for &(u, v, line) in &edges {
        ensure!((1..=n).contains(&u) && (1..=n).contains(&v), "line {line}: endpoint outside 1..={n}");
        b.add_edge(u - 1, v - 1).with_context(|| format!("line {line}"))?;
    }
    ensure!(edges.len() == m, "header promises {m} edges, found {}", edges.len());
    Ok(b.build())
}

fn set_json(set: ColorSet) -> Value {
    Value::Array(set.iter().map(Value::from).collect())
}

fn json_set(v: &Value, label: &str) -> Result<ColorSet> {
    let arr = v.as_array().ok_or_else(|| anyhow!("`{label}`: expected an array of colors"))?;
    let colors = arr
        .iter()
        .map(|c| c.as_u64().and_then(|c| u32::try_from(c).ok()).ok_or_else(|| anyhow!("`{label}`: bad color {c}")))
        .collect::<Result<Vec<u32>>>()?;
    let set = ColorSet::try_from_colors(colors.iter().copied())
        .ok_or_else(|| anyhow!("`{label}`: colors must lie in 1..=64"))?;
    ensure!(set.len() as usize == colors.len(), "`{label}`: repeated color");
    Ok(set)
}

pub fn lists_to_json(graph: &Graph, lists: &ListAssignment) -> Value {
    let mut map = Map::new();
    for v in 0..graph.vertex_count() {
        map.insert(graph.label(v).to_string(), set_json(lists.get(v)));
    }
    Value::Object(map)
}

pub fn lists_from_json(graph: &Graph, value: &Value) -> Result<ListAssignment> {
    let map = value.as_object().ok_or_else(|| anyhow!("lists must be a JSON object"))?;
    let mut lists = vec![None; graph.vertex_count()];
    for (label, v) in map {
        let i = graph.vertex(label).ok_or_else(|| anyhow!("unknown vertex `{label}` in lists"))?;
        lists[i] = Some(json_set(v, label)?);
    }
    let lists = lists
        .into_iter()
        .enumerate()
        .map(|(v, l)| l.ok_or_else(|| anyhow!("no list for vertex `{}`", graph.label(v))))
        .collect::<Result<Vec<_>>>()?;
    Ok(ListAssignment::new(lists))
}

/// `{"block": b, "coloring": {label: [colors]}}`; unassigned vertices are
/// left out.
pub fn coloring_to_json(graph: &Graph, coloring: &SetColoring) -> Value {
    let mut map = Map::new();
    for (v, set) in coloring.assigned() {
        map.insert(graph.label(v).to_string(), set_json(set));
    }
    serde_json::json!({ "block": coloring.block_size(), "coloring": map })
}

pub fn coloring_from_json(graph: &Graph, value: &Value) -> Result<SetColoring> {
    let block = value.get("block").and_then(Value::as_u64).ok_or_else(|| anyhow!("missing `block`"))?;
    let map = value.get("coloring").and_then(Value::as_object).ok_or_else(|| anyhow!("missing `coloring` object"))?;
    let mut c = SetColoring::empty(graph.vertex_count(), u32::try_from(block)?)?;
    for (label, v) in map {
        let i = graph.vertex(label).ok_or_else(|| anyhow!("unknown vertex `{label}` in coloring"))?;
        c.assign(i, json_set(v, label)?)?;
    }
    Ok(c)
}

/// Parses `LABEL=c,c,...` as used by the `solve` flags.
pub fn parse_vertex_colors(graph: &Graph, spec: &str) -> Result<(usize, ColorSet)> {
    let (label, colors) = spec.rsplit_once('=').ok_or_else(|| anyhow!("expected LABEL=c,c in `{spec}`"))?;
    let v = graph.vertex(label).ok_or_else(|| anyhow!("unknown vertex `{label}`"))?;
    let mut set = ColorSet::EMPTY;
    for c in colors.split(',').filter(|s| !s.is_empty()) {
        let c: u32 = c.trim().parse().with_context(|| format!("bad color in `{spec}`"))?;
        if !(1..=64).contains(&c) {
            bail!("color {c} outside 1..=64");
        }
        set.insert(c as u8);
    }
    Ok((v, set))
}
