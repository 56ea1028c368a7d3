//! Constructors for the gadget family, the uniform-list final graph and the
//! apex amplification step.
//!
//! Vertex labels are the conventional ones (`v1`, `u2`, `z_{1,7}`,
//! `w_{2,3}`, ...) and vertices are numbered in the order they are declared
//! below, so reports can be read side by side with drawings of the gadgets.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

use crate::color::{binomial, ColorSet};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, Vertex};
use crate::model::{Gadget, ListAssignment};
use crate::solver::Solver;

fn set(c: &[u8]) -> ColorSet {
    ColorSet::from_colors(c)
}

fn range(lo: u8, hi: u8) -> ColorSet {
    ColorSet::range(lo, hi)
}

/// Incrementally assembles a labelled graph with one list per vertex.
struct Draft {
    graph: GraphBuilder,
    lists: Vec<ColorSet>,
}

impl Draft {
    fn new() -> Self {
        Draft { graph: GraphBuilder::default(), lists: Vec::new() }
    }

    fn vertex(&mut self, label: &str, list: ColorSet) -> Result<Vertex> {
        let v = self.graph.add_vertex(label)?;
        self.lists.push(list);
        Ok(v)
    }

    fn edge(&mut self, u: &str, v: &str) -> Result<()> {
        self.graph.add_edge_by_label(u, v)
    }

    fn path(&mut self, labels: &[&str]) -> Result<()> {
        for w in labels.windows(2) {
            self.edge(w[0], w[1])?;
        }
        Ok(())
    }

    fn cycle(&mut self, labels: &[&str]) -> Result<()> {
        self.path(labels)?;
        self.edge(labels[labels.len() - 1], labels[0])
    }

    fn finish(self, name: &str, v1: &str, v3: &str, s: &[&str]) -> Result<Gadget> {
        let graph = self.graph.build();
        Gadget::with_labels(name, graph, ListAssignment::new(self.lists), v1, v3, s)
    }
}

/// The 5-cycle `v1..v5` whose lists admit no `(L0:2)`-coloring.
pub fn build_pentagon() -> Result<Gadget> {
    let mut d = Draft::new();
    d.vertex("v1", set(&[1, 2, 5, 6]))?;
    d.vertex("v2", set(&[1, 4, 5, 6]))?;
    d.vertex("v3", set(&[3, 4, 5, 6]))?;
    d.vertex("v4", set(&[3, 4, 5, 6]))?;
    d.vertex("v5", set(&[2, 4, 5, 6]))?;
    d.cycle(&["v1", "v2", "v3", "v4", "v5"])?;
    d.finish("pentagon", "v1", "v3", &[])
}

/// The pentagon plus the path `v1 x y v3`.
pub fn build_g1() -> Result<Gadget> {
    let mut d = Draft::new();
    d.vertex("v1", range(1, 6))?;
    d.vertex("v2", set(&[1, 4, 5, 6]))?;
    d.vertex("v3", range(1, 6))?;
    d.vertex("v4", set(&[3, 4, 5, 6]))?;
    d.vertex("v5", set(&[2, 4, 5, 6]))?;
    d.vertex("x", set(&[1, 2, 3, 4]))?;
    d.vertex("y", set(&[1, 2]))?;
    d.cycle(&["v1", "v2", "v3", "v4", "v5"])?;
    d.path(&["v1", "x", "y", "v3"])?;
    d.finish("g1", "v1", "v3", &[])
}

/// Labels of the 5-cycle shared by `g2`..`g4`, in cycle order.
pub const G2_CYCLE: [&str; 5] = ["v1", "u2", "v3", "u4", "u5"];

fn g2_draft() -> Result<Draft> {
    let mut d = Draft::new();
    // every cycle vertex has {1..6}
    for l in G2_CYCLE {
        d.vertex(l, range(1, 6))?;
    }
    d.vertex("y1", range(1, 8))?;
    d.vertex("y2", set(&[1, 2, 3, 4, 7, 8]))?;
    d.vertex("y3", set(&[1, 2, 3, 4]))?;
    d.vertex("y4", set(&[1, 2, 3, 4, 7, 8]))?;
    d.cycle(&G2_CYCLE)?;
    for l in G2_CYCLE {
        d.edge("y1", l)?;
    }
    d.edge("y1", "y2")?;
    d.cycle(&["y2", "y3", "y4"])?;
    Ok(d)
}

/// 5-cycle with a universal vertex `y1`, hanging triangle `y2 y3 y4`;
/// relaxed with `S = {y4}`.
pub fn build_g2() -> Result<Gadget> {
    g2_draft()?.finish("g2", "v1", "v3", &["y4"])
}

pub fn z(i: u8, j: u8) -> String {
    format!("z_{{{i},{j}}}")
}

pub fn w(i: u8, j: u8) -> String {
    format!("w_{{{i},{j}}}")
}

fn g3_draft() -> Result<Draft> {
    let mut d = g2_draft()?;
    for i in 1..=2u8 {
        let plus = 6 + i;
        // copy i, with the "+i" color
        d.vertex(&z(i, 1), set(&[1, 2, 3, plus]))?;
        d.vertex(&z(i, 2), set(&[4, 5, 6, plus]))?;
        d.vertex(&z(i, 3), range(1, 6))?;
        d.vertex(&z(i, 4), range(1, 8))?;
        d.vertex(&z(i, 5), set(&[1, 2, 3, 4, 7, 8]))?;
        d.vertex(&z(i, 6), set(&[1, 2, 3, 4]))?;
        d.vertex(&z(i, 7), set(&[1, 2, 3, 4, 7, 8]))?;
        d.edge("y4", &z(i, 1))?;
        d.edge("y4", &z(i, 2))?;
        for j in 1..=4u8 {
            for k in j + 1..=4u8 {
                if (j, k) != (1, 2) {
                    d.edge(&z(i, j), &z(i, k))?;
                }
            }
        }
        d.cycle(&[&z(i, 5), &z(i, 6), &z(i, 7)])?;
        d.edge(&z(i, 4), &z(i, 5))?;
    }
    Ok(d)
}

/// `g2` plus two forcing chains `z_{i,1..7}` hanging off `y4`; relaxed with
/// `S = {z_{1,7}, z_{2,7}}`.
pub fn build_g3() -> Result<Gadget> {
    g3_draft()?.finish("g3", "v1", "v3", &[&z(1, 7), &z(2, 7)])
}

fn g4_draft() -> Result<Draft> {
    let mut d = g3_draft()?;
    let red = set(&[1, 2, 3, 4, 7, 8]);
    let black = set(&[1, 2, 3, 4]);
    // outer vertices {1,2,3,4,7,8}, black ones {1,2,3,4}
    d.vertex("w1", red)?;
    d.vertex("w2", black)?;
    d.vertex("w3", red)?;
    for i in 1..=2u8 {
        d.vertex(&w(i, 1), red)?;
        d.vertex(&w(i, 2), black)?;
        d.vertex(&w(i, 3), red)?;
    }
    d.cycle(&["w1", "w2", "w3"])?;
    for i in 1..=2u8 {
        d.cycle(&[&w(i, 1), &w(i, 2), &w(i, 3)])?;
    }
    d.edge(&z(1, 7), "w1")?;
    d.edge(&z(2, 7), "w1")?;
    d.edge("w3", &w(1, 1))?;
    d.edge("w3", &w(2, 1))?;
    Ok(d)
}

/// `g3` plus the `w` triangles; relaxed with `S = {w_{1,3}, w_{2,3}}`.
pub fn build_g4() -> Result<Gadget> {
    g4_draft()?.finish("g4", "v1", "v3", &[&w(1, 3), &w(2, 3)])
}

/// `g1` and `g4` glued on `v1`, `v3` plus four connector edges; the lists of
/// `v2`, `v4`, `x`, `y` gain `{7,8}`.
pub fn build_g5() -> Result<Gadget> {
    let g1 = build_g1()?;
    let g4 = build_g4()?;
    let seven_eight = set(&[7, 8]);
    let mut d = Draft::new();
    for v in 0..g1.graph.vertex_count() {
        let label = g1.graph.label(v);
        let mut list = g1.base_lists.get(v);
        if matches!(label, "v2" | "v4" | "x" | "y") {
            list = list.union(seven_eight);
        }
        d.vertex(label, list)?;
    }
    for v in 0..g4.graph.vertex_count() {
        let label = g4.graph.label(v);
        let list = g4.base_lists.get(v);
        if let Some(shared) = g1.graph.vertex(label) {
            if g1.base_lists.get(shared) != list {
                return Err(Error::Inconsistent(format!(
                    "g1 and g4 disagree on the list of shared vertex `{label}`: {} vs {list}",
                    g1.base_lists.get(shared)
                )));
            }
            continue;
        }
        d.vertex(label, list)?;
    }
    for (u, v) in g1.graph.edges() {
        d.edge(g1.graph.label(u), g1.graph.label(v))?;
    }
    for (u, v) in g4.graph.edges() {
        d.edge(g4.graph.label(u), g4.graph.label(v))?;
    }
    d.edge(&w(1, 3), "v2")?;
    d.edge(&w(1, 3), "v4")?;
    d.edge(&w(2, 3), "x")?;
    d.edge(&w(2, 3), "y")?;
    d.finish("g5", "v1", "v3", &[])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GadgetId {
    Pentagon,
    G1,
    G2,
    G3,
    G4,
    G5,
}

impl GadgetId {
    pub const ALL: [GadgetId; 6] =
        [GadgetId::Pentagon, GadgetId::G1, GadgetId::G2, GadgetId::G3, GadgetId::G4, GadgetId::G5];

    pub fn name(self) -> &'static str {
        match self {
            GadgetId::Pentagon => "pentagon",
            GadgetId::G1 => "g1",
            GadgetId::G2 => "g2",
            GadgetId::G3 => "g3",
            GadgetId::G4 => "g4",
            GadgetId::G5 => "g5",
        }
    }

    pub fn parse(s: &str) -> Option<GadgetId> {
        GadgetId::ALL.into_iter().find(|g| g.name() == s)
    }

    /// (vertices, edges), counted by hand from the drawings.
    pub fn expected_counts(self) -> (usize, usize) {
        match self {
            GadgetId::Pentagon => (5, 5),
            GadgetId::G1 => (7, 8),
            GadgetId::G2 => (9, 14),
            GadgetId::G3 => (23, 36),
            GadgetId::G4 => (32, 49),
            GadgetId::G5 => (37, 61),
        }
    }

    pub fn build(self) -> Result<Gadget> {
        match self {
            GadgetId::Pentagon => build_pentagon(),
            GadgetId::G1 => build_g1(),
            GadgetId::G2 => build_g2(),
            GadgetId::G3 => build_g3(),
            GadgetId::G4 => build_g4(),
            GadgetId::G5 => build_g5(),
        }
    }
}

/// Number of apex vertices in the final construction.
pub const APEX_COUNT: usize = 4;

/// The uniform-list graph: an apex clique `r1..r4` and one copy of `g5` per
/// `(L':2)`-coloring of the clique.
#[derive(Clone, Debug)]
pub struct FinalConstruction {
    pub graph: Graph,
    pub lists: ListAssignment,
    pub apex: [Vertex; APEX_COUNT],
    /// Clique colorings in copy order; copy `i` was built for `psi[i]`.
    pub psi: Vec<[ColorSet; APEX_COUNT]>,
    /// The gadget every copy replicates.
    pub template: Gadget,
}

impl FinalConstruction {
    pub fn copy_count(&self) -> usize {
        self.psi.len()
    }

    /// Vertex range occupied by copy `i`; vertex `offset + v` is the copy of
    /// template vertex `v`.
    pub fn copy_range(&self, i: usize) -> Range<Vertex> {
        let n = self.template.graph.vertex_count();
        let start = APEX_COUNT + i * n;
        start..start + n
    }

    /// Copy index of the clique coloring `psi`, if it is one.
    pub fn copy_of(&self, psi: &[ColorSet; APEX_COUNT]) -> Option<usize> {
        self.psi.binary_search_by(|p| cmp_psi(p, psi)).ok()
    }

    /// Number of apex neighbors a template vertex receives.
    pub fn apex_degree(&self, template_vertex: Vertex) -> usize {
        apex_links(self.template.base_lists.get(template_vertex))
    }
}

fn cmp_psi(a: &[ColorSet; APEX_COUNT], b: &[ColorSet; APEX_COUNT]) -> core::cmp::Ordering {
    a.iter().zip(b.iter()).map(|(x, y)| x.cmp_lex(*y)).find(|o| o.is_ne()).unwrap_or(core::cmp::Ordering::Equal)
}

/// A vertex with a list of size `2k`, `k` in {2, 3}, joins `r1..r_{4-k}`;
/// every other vertex joins none.
fn apex_links(list: ColorSet) -> usize {
    match list.len() {
        4 => 2,
        6 => 1,
        _ => 0,
    }
}

/// All `(L':2)`-colorings of the apex clique, lexicographic by
/// `(psi(r1), ..., psi(r4))`.
pub fn apex_colorings(apex_list: ColorSet) -> Result<Vec<[ColorSet; APEX_COUNT]>> {
    let mut b = GraphBuilder::default();
    for i in 1..=APEX_COUNT {
        b.add_vertex(format!("r{i}"))?;
    }
    for u in 0..APEX_COUNT {
        for v in u + 1..APEX_COUNT {
            b.add_edge(u, v)?;
        }
    }
    let k = b.build();
    let lists = ListAssignment::uniform(APEX_COUNT, apex_list);
    let mut out = Vec::new();
    Solver::new(&k, &lists, 2).for_each(|sets| {
        out.push([sets[0], sets[1], sets[2], sets[3]]);
        core::ops::ControlFlow::Continue(())
    })?;
    out.sort_by(cmp_psi);
    Ok(out)
}

/// Builds the final graph with apex lists `apex_list` (normally `{9..16}`).
pub fn build_final(apex_list: ColorSet) -> Result<FinalConstruction> {
    let template = build_g5()?;
    let palette = template.base_lists.palette();
    if apex_list.len() != 8 || !apex_list.is_disjoint(palette) {
        return Err(Error::InvalidParameter(format!(
            "apex list must have 8 colors disjoint from the gadget palette {palette}, got {apex_list}"
        )));
    }
    let psi = apex_colorings(apex_list)?;
    let n = template.graph.vertex_count();
    let mut b = GraphBuilder::with_capacity(APEX_COUNT + psi.len() * n);
    let mut lists = Vec::with_capacity(APEX_COUNT + psi.len() * n);
    let mut apex = [0; APEX_COUNT];
    for (i, slot) in apex.iter_mut().enumerate() {
        *slot = b.add_vertex(format!("r{}", i + 1))?;
        lists.push(apex_list);
    }
    for u in 0..APEX_COUNT {
        for v in u + 1..APEX_COUNT {
            b.add_fresh_edge(apex[u], apex[v]);
        }
    }
    let template_edges: Vec<(Vertex, Vertex)> = template.graph.edges().collect();
    for (idx, p) in psi.iter().enumerate() {
        let offset = b.vertex_count();
        for v in 0..n {
            b.add_vertex(format!("{}#{idx}", template.graph.label(v)))?;
            let base = template.base_lists.get(v);
            let links = apex_links(base);
            let extra = p[..links].iter().fold(ColorSet::EMPTY, |acc, s| acc.union(*s));
            lists.push(base.union(extra));
        }
        for &(u, v) in &template_edges {
            b.add_fresh_edge(offset + u, offset + v);
        }
        for v in 0..n {
            for &r in &apex[..apex_links(template.base_lists.get(v))] {
                b.add_fresh_edge(offset + v, r);
            }
        }
    }
    Ok(FinalConstruction { graph: b.build(), lists: ListAssignment::new(lists), apex, psi, template })
}

/// Disjoint union of `C(2(a+1), 2)` copies of `base` plus one vertex adjacent
/// to everything else.
pub fn build_amplified(base: &Graph, a: u32) -> Result<Graph> {
    if a < 4 {
        return Err(Error::InvalidParameter(format!("amplification needs a >= 4, got {a}")));
    }
    let copies = binomial(2 * (a + 1), 2) as usize;
    let n = base.vertex_count();
    let mut b = GraphBuilder::with_capacity(copies * n + 1);
    let edges: Vec<(Vertex, Vertex)> = base.edges().collect();
    for c in 0..copies {
        let offset = b.vertex_count();
        for v in 0..n {
            b.add_vertex(format!("{}#{c}", base.label(v)))?;
        }
        for &(u, v) in &edges {
            b.add_fresh_edge(offset + u, offset + v);
        }
    }
    let apex = b.add_vertex("apex")?;
    for v in 0..apex {
        b.add_fresh_edge(v, apex);
    }
    Ok(b.build())
}
