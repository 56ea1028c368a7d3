//! Checks on the final construction: a structural audit, the reduction
//! showing no `(L':2)`-coloring exists, and the coloring procedure behind
//! 4-choosability.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use rand::seq::{index, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::choosability::Interrupt;
use crate::color::{binomial, ColorSet};
use crate::error::{Error, Result};
use crate::gadgets::{FinalConstruction, APEX_COUNT};
use crate::graph::Vertex;
use crate::model::{is_proper, respects_lists, ListAssignment, SetColoring};
use crate::solver::{Solver, Status};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Audit {
    pub copies: usize,
    pub vertices: usize,
    pub edges: usize,
    /// Every problem found; empty when the construction is sound.
    pub problems: Vec<alloc::string::String>,
}

impl Audit {
    pub fn ok(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Checks the construction against its defining properties: one copy per
/// clique coloring, every list of size 8, every copy an exact replica of
/// the template whose lists shrink back to the template lists once the
/// colors of its clique neighbors are removed, and no edges between copies.
pub fn audit_final(fc: &FinalConstruction) -> Audit {
    let mut problems = Vec::new();
    let g = &fc.graph;
    let t = &fc.template;
    let n = t.graph.vertex_count();
    let apex_list = fc.lists.get(fc.apex[0]);

    let expected_copies: u64 = (0..APEX_COUNT as u32).map(|i| binomial(apex_list.len() - 2 * i, 2)).product();
    if fc.copy_count() as u64 != expected_copies {
        problems.push(format!("{} copies, expected {expected_copies}", fc.copy_count()));
    }
    if g.vertex_count() != APEX_COUNT + fc.copy_count() * n {
        problems.push(format!("{} vertices", g.vertex_count()));
    }
    if let Some(v) = (0..g.vertex_count()).find(|&v| fc.lists.get(v).len() != 8) {
        problems.push(format!("list of `{}` has size {}", g.label(v), fc.lists.get(v).len()));
    }
    for (i, &r) in fc.apex.iter().enumerate() {
        for &s in &fc.apex[i + 1..] {
            if !g.has_edge(r, s) {
                problems.push(format!("apex vertices {r} and {s} not adjacent"));
            }
        }
    }
    for w in fc.psi.windows(2) {
        if w[0] == w[1] {
            problems.push("repeated clique coloring".into());
        }
    }
    let mut edges = APEX_COUNT * (APEX_COUNT - 1) / 2;
    for (i, psi) in fc.psi.iter().enumerate() {
        let proper = psi.iter().all(|s| s.len() == 2 && s.is_subset(apex_list))
            && (0..APEX_COUNT).all(|a| (a + 1..APEX_COUNT).all(|b| psi[a].is_disjoint(psi[b])));
        if !proper {
            problems.push(format!("copy {i} built for an improper clique coloring"));
        }
        let range = fc.copy_range(i);
        let offset = range.start;
        for v in 0..n {
            let x = offset + v;
            let mut inside = 0;
            let mut apex_colors = ColorSet::EMPTY;
            for &u in g.neighbors(x) {
                if let Some(a) = fc.apex.iter().position(|&r| r == u) {
                    apex_colors = apex_colors.union(psi[a]);
                    edges += 1;
                } else if range.contains(&u) {
                    inside += 1;
                    if !t.graph.has_edge(v, u - offset) {
                        problems.push(format!("copy {i}: extra edge at `{}`", g.label(x)));
                    }
                } else {
                    problems.push(format!("copy {i}: edge leaves the copy at `{}`", g.label(x)));
                }
            }
            edges += inside;
            if inside != t.graph.degree(v) {
                problems.push(format!("copy {i}: `{}` has degree {inside} inside the copy", g.label(x)));
            }
            if fc.lists.get(x).difference(apex_colors) != t.base_lists.get(v) {
                problems.push(format!("copy {i}: residual list of `{}` is not the template list", g.label(x)));
            }
        }
    }
    // inner edges were counted from both ends
    let copy_inner: usize = fc.psi.len() * t.graph.edge_count();
    let counted = edges - copy_inner;
    if counted != g.edge_count() {
        problems.push(format!("edge count {} disagrees with the audit's {counted}", g.edge_count()));
    }
    Audit { copies: fc.copy_count(), vertices: g.vertex_count(), edges: g.edge_count(), problems }
}

/// A uniformly random `(L':2)`-coloring of the clique, drawn by shuffling
/// the apex list and cutting it into pairs.
pub fn random_clique_coloring(apex_list: ColorSet, seed: u64, index: u64) -> [ColorSet; APEX_COUNT] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let mut colors: Vec<u8> = apex_list.iter().collect();
    colors.shuffle(&mut rng);
    core::array::from_fn(|i| ColorSet::from_colors(&colors[2 * i..2 * i + 2]))
}

/// For a hypothetical clique coloring `psi`: the copy built for it exists,
/// and deleting the colors of each vertex's clique neighbors leaves exactly
/// the template lists. A global coloring agreeing with `psi` on the clique
/// would therefore restrict to a template coloring, which does not exist.
pub fn reduction_probe(fc: &FinalConstruction, psi: &[ColorSet; APEX_COUNT]) -> Result<bool> {
    let Some(i) = fc.copy_of(psi) else {
        return Ok(false);
    };
    let offset = fc.copy_range(i).start;
    let n = fc.template.graph.vertex_count();
    Ok((0..n).all(|v| {
        let x = offset + v;
        let taken = fc
            .graph
            .neighbors(x)
            .iter()
            .filter_map(|u| fc.apex.iter().position(|r| r == u))
            .fold(ColorSet::EMPTY, |acc, a| acc.union(psi[a]));
        fc.lists.get(x).difference(taken) == fc.template.base_lists.get(v)
    }))
}

/// Size-`size` lists over `{1..universe}` for every vertex, from stream
/// `index` of `seed`.
pub fn sample_uniform_lists(n: usize, size: u32, universe: u32, seed: u64, index: u64) -> Result<ListAssignment> {
    if size > universe || universe > crate::color::MAX_COLOR as u32 {
        return Err(Error::InvalidParameter(format!("cannot draw {size} of {universe} colors")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let lists = (0..n)
        .map(|_| index::sample(&mut rng, universe as usize, size as usize).iter().map(|c| c as u8 + 1).collect())
        .collect();
    Ok(ListAssignment::new(lists))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProcedureOutcome {
    /// One color per vertex; proper and within the lists.
    pub coloring: SetColoring,
    /// Distinct copy instances handed to the solver.
    pub instances_solved: usize,
    pub max_copy_nodes: u64,
    pub total_copy_nodes: u64,
}

/// Colors the final graph from `lists` (every list of size at least 4).
///
/// The clique takes the smallest available color at each of `r1..r4`.
/// Each copy then gets the half-list assignment obtained by removing the
/// colors of its vertices' clique neighbors and keeping the smallest
/// `|L5(v)|/2` remaining colors, and is colored with one color per vertex.
/// Copies with identical half-lists share one solver call. The assembled
/// coloring is checked for properness and list membership before return.
pub fn color_by_procedure(fc: &FinalConstruction, lists: &ListAssignment, stop: Interrupt) -> Result<ProcedureOutcome> {
    let g = &fc.graph;
    if lists.len() != g.vertex_count() {
        return Err(Error::DomainMismatch { expected: g.vertex_count(), found: lists.len() });
    }
    let mut coloring = SetColoring::empty(g.vertex_count(), 1)?;
    let mut used = ColorSet::EMPTY;
    for &r in &fc.apex {
        let c = lists.get(r).difference(used).min().ok_or_else(|| {
            Error::Precondition(format!("list of `{}` too small to color the clique greedily", g.label(r)))
        })?;
        used.insert(c);
        coloring.assign(r, ColorSet::singleton(c))?;
    }

    let template = &fc.template;
    let n = template.graph.vertex_count();
    let halves = template.half_sizes();
    let mut solved: BTreeMap<Vec<ColorSet>, Vec<ColorSet>> = BTreeMap::new();
    let mut outcome_nodes = (0u64, 0u64);
    for i in 0..fc.copy_count() {
        let offset = fc.copy_range(i).start;
        let mut half = Vec::with_capacity(n);
        for (v, &h) in halves.iter().enumerate() {
            let x = offset + v;
            let taken = g
                .neighbors(x)
                .iter()
                .filter(|u| fc.apex.contains(u))
                .fold(ColorSet::EMPTY, |acc, &u| acc.union(coloring.get(u).expect("clique colored first")));
            let left = lists.get(x).difference(taken);
            if left.len() < h {
                return Err(Error::Precondition(format!(
                    "`{}` keeps {} colors after the clique, needs {}",
                    g.label(x),
                    left.len(),
                    h
                )));
            }
            half.push(left.smallest(h));
        }
        if !solved.contains_key(&half) {
            let l = ListAssignment::new(half.clone());
            let mut s = Solver::new(&template.graph, &l, 1);
            if let Some(f) = stop {
                s = s.interrupt(f);
            }
            let r = s.find()?;
            outcome_nodes.0 = outcome_nodes.0.max(r.nodes_explored);
            outcome_nodes.1 += r.nodes_explored;
            match r.status {
                Status::Sat => {
                    let w = r.witness.expect("sat result carries a witness");
                    solved.insert(half.clone(), (0..n).map(|v| w.get(v).unwrap()).collect());
                }
                Status::Unsat => {
                    return Err(Error::Inconsistent(format!("copy {i} is not colorable from its half-lists")));
                }
                Status::Interrupted => return Err(Error::Interrupted),
            }
        }
        for (v, &set) in solved[&half].iter().enumerate() {
            coloring.assign(offset + v as Vertex, set)?;
        }
    }
    if !coloring.is_total() || !is_proper(g, &coloring)? || !respects_lists(lists, &coloring)? {
        return Err(Error::Inconsistent("assembled coloring is not a proper list coloring".into()));
    }
    Ok(ProcedureOutcome {
        coloring,
        instances_solved: solved.len(),
        max_copy_nodes: outcome_nodes.0,
        total_copy_nodes: outcome_nodes.1,
    })
}
