//! Exact backtracking search for `(L:b)`-colorings.
//!
//! Depth-first over vertices. The next vertex is the uncolored one with the
//! fewest admissible `b`-subsets (ties go to the lower index), and its values
//! are tried in lexicographic order. Coloring a vertex removes its colors from
//! every uncolored neighbor's effective list; a neighbor left without an
//! admissible `b`-subset fails the branch immediately. There is no learning
//! and no restart, so runs are fully deterministic.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::color::{binomial, ColorSet, Subsets};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::model::{is_proper, respects_lists, ListAssignment, SetColoring};

/// Restrictions on the `b`-subsets a single vertex may receive. All parts
/// must hold at once.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexConstraint {
    /// When present, only these sets are admissible. An empty list makes the
    /// instance unsatisfiable.
    pub allowed: Option<Vec<ColorSet>>,
    pub forbidden: Vec<ColorSet>,
    pub must_contain: ColorSet,
    pub must_avoid: ColorSet,
}

impl VertexConstraint {
    #[inline]
    pub fn permits(&self, set: ColorSet) -> bool {
        set.is_disjoint(self.must_avoid)
            && self.must_contain.is_subset(set)
            && !self.forbidden.contains(&set)
            && self.allowed.as_ref().is_none_or(|a| a.contains(&set))
    }

    /// Every color the constraint mentions.
    pub fn referenced_colors(&self) -> ColorSet {
        let mut all = self.must_contain.union(self.must_avoid);
        for s in self.forbidden.iter().chain(self.allowed.iter().flatten()) {
            all = all.union(*s);
        }
        all
    }

    pub fn rename(&self, map: &[u8]) -> VertexConstraint {
        VertexConstraint {
            allowed: self.allowed.as_ref().map(|a| a.iter().map(|s| s.rename(map)).collect()),
            forbidden: self.forbidden.iter().map(|s| s.rename(map)).collect(),
            must_contain: self.must_contain.rename(map),
            must_avoid: self.must_avoid.rename(map),
        }
    }
}

/// Per-vertex constraints for one solver call. Vertices without an entry are
/// unconstrained.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DomainConstraint {
    per_vertex: BTreeMap<Vertex, VertexConstraint>,
}

impl DomainConstraint {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.per_vertex.is_empty()
    }

    pub fn entry(&mut self, v: Vertex) -> &mut VertexConstraint {
        self.per_vertex.entry(v).or_default()
    }

    pub fn get(&self, v: Vertex) -> Option<&VertexConstraint> {
        self.per_vertex.get(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, &VertexConstraint)> {
        self.per_vertex.iter().map(|(&v, c)| (v, c))
    }

    /// `v` must not receive exactly `set`.
    pub fn forbid(mut self, v: Vertex, set: ColorSet) -> Self {
        self.entry(v).forbidden.push(set);
        self
    }

    /// `v` must receive one of `sets`.
    pub fn allow(mut self, v: Vertex, sets: Vec<ColorSet>) -> Self {
        let e = self.entry(v);
        e.allowed = Some(match e.allowed.take() {
            Some(prev) => prev.into_iter().filter(|s| sets.contains(s)).collect(),
            None => sets,
        });
        self
    }

    pub fn require_color(mut self, v: Vertex, color: u8) -> Self {
        self.entry(v).must_contain.insert(color);
        self
    }

    pub fn avoid_colors(mut self, v: Vertex, colors: ColorSet) -> Self {
        let e = self.entry(v);
        e.must_avoid = e.must_avoid.union(colors);
        self
    }

    pub fn permits(&self, v: Vertex, set: ColorSet) -> bool {
        self.per_vertex.get(&v).is_none_or(|c| c.permits(set))
    }

    pub fn rename(&self, map: &[u8]) -> DomainConstraint {
        DomainConstraint { per_vertex: self.per_vertex.iter().map(|(&v, c)| (v, c.rename(map))).collect() }
    }

    /// Checks that every constraint targets a real vertex and only mentions
    /// colors from that vertex's list.
    pub fn validate(&self, lists: &ListAssignment) -> Result<()> {
        for (&v, c) in &self.per_vertex {
            if v >= lists.len() {
                return Err(Error::VertexOutOfRange { vertex: v, vertex_count: lists.len() });
            }
            if !c.referenced_colors().is_subset(lists.get(v)) {
                return Err(Error::ConstraintOutsideList { vertex: v });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Sat,
    Unsat,
    /// Stopped by the node limit or the interrupt hook before deciding.
    Interrupted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub status: Status,
    pub witness: Option<SetColoring>,
    pub nodes_explored: u64,
}

impl SolveResult {
    pub fn is_sat(&self) -> bool {
        self.status == Status::Sat
    }

    pub fn is_unsat(&self) -> bool {
        self.status == Status::Unsat
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountResult {
    pub count: u64,
    pub nodes_explored: u64,
    /// False when the search was interrupted; `count` is then a lower bound.
    pub complete: bool,
}

/// One configured solver call. Inputs are borrowed and never mutated, so a
/// `Solver` can be shared across threads.
pub struct Solver<'a> {
    graph: &'a Graph,
    lists: &'a ListAssignment,
    block: u32,
    constraints: Option<&'a DomainConstraint>,
    partial: Option<&'a SetColoring>,
    node_limit: Option<u64>,
    interrupt: Option<&'a (dyn Fn() -> bool + Sync)>,
}

impl<'a> Solver<'a> {
    pub fn new(graph: &'a Graph, lists: &'a ListAssignment, block: u32) -> Self {
        Solver { graph, lists, block, constraints: None, partial: None, node_limit: None, interrupt: None }
    }

    pub fn constraints(mut self, c: &'a DomainConstraint) -> Self {
        self.constraints = Some(c);
        self
    }

    /// Pins the assigned vertices of `partial`; the search only extends it.
    pub fn partial(mut self, p: &'a SetColoring) -> Self {
        self.partial = Some(p);
        self
    }

    pub fn node_limit(mut self, limit: u64) -> Self {
        self.node_limit = Some(limit);
        self
    }

    /// Polled every few thousand nodes; returning `true` stops the search.
    pub fn interrupt(mut self, f: &'a (dyn Fn() -> bool + Sync)) -> Self {
        self.interrupt = Some(f);
        self
    }

    /// Decides colorability and returns a witness when one exists.
    pub fn find(&self) -> Result<SolveResult> {
        let Some(mut search) = self.prepare()? else {
            return Ok(SolveResult { status: Status::Unsat, witness: None, nodes_explored: 0 });
        };
        let all = search.uncolored();
        let result = match search.find(&all) {
            Some(true) => {
                let sets = search.assigned.iter().map(|s| s.expect("sat search leaves a total coloring")).collect();
                let coloring = SetColoring::total(sets, self.block)?;
                self.assert_witness(&coloring);
                SolveResult { status: Status::Sat, witness: Some(coloring), nodes_explored: search.nodes }
            }
            Some(false) => SolveResult { status: Status::Unsat, witness: None, nodes_explored: search.nodes },
            None => SolveResult { status: Status::Interrupted, witness: None, nodes_explored: search.nodes },
        };
        Ok(result)
    }

    /// Counts every total coloring extending the partial one.
    pub fn count(&self) -> Result<CountResult> {
        let Some(mut search) = self.prepare()? else {
            return Ok(CountResult { count: 0, nodes_explored: 0, complete: true });
        };
        let all = search.uncolored();
        let counted = search.count(&all);
        Ok(CountResult { count: counted.unwrap_or(0), nodes_explored: search.nodes, complete: counted.is_some() })
    }

    /// Calls `visit` on every total coloring (as per-vertex sets) until it
    /// breaks. Colorings arrive in plain depth-first order without component
    /// splitting. Returns `false` if the search was interrupted.
    pub fn for_each<F>(&self, mut visit: F) -> Result<bool>
    where
        F: FnMut(&[ColorSet]) -> ControlFlow<()>,
    {
        let Some(mut search) = self.prepare()? else {
            return Ok(true);
        };
        let mut buf = Vec::with_capacity(self.graph.vertex_count());
        let finished = search.enumerate(&mut |sets: &[Option<ColorSet>]| {
            buf.clear();
            buf.extend(sets.iter().map(|s| s.unwrap()));
            visit(&buf)
        });
        Ok(finished)
    }

    fn assert_witness(&self, w: &SetColoring) {
        assert!(w.is_total(), "solver witness is not total");
        assert!(is_proper(self.graph, w).unwrap_or(false), "solver witness is not proper");
        assert!(respects_lists(self.lists, w).unwrap_or(false), "solver witness leaves the lists");
        if let Some(c) = self.constraints {
            assert!(w.assigned().all(|(v, s)| c.permits(v, s)), "solver witness violates a domain constraint");
        }
        if let Some(p) = self.partial {
            assert!(p.assigned().all(|(v, s)| w.get(v) == Some(s)), "solver witness drops a pinned vertex");
        }
    }

    /// Validates inputs and applies the partial coloring. `None` means the
    /// instance is already known to be unsatisfiable.
    fn prepare(&self) -> Result<Option<Search<'a>>> {
        let n = self.graph.vertex_count();
        if self.block == 0 {
            return Err(Error::InvalidBlockSize(self.block));
        }
        self.lists.check_domain(self.graph)?;
        let mut cons: Vec<Option<&'a VertexConstraint>> = alloc::vec![None; n];
        if let Some(c) = self.constraints {
            c.validate(self.lists)?;
            for (u, vc) in c.iter() {
                cons[u] = Some(vc);
            }
        }
        let mut search = Search {
            graph: self.graph,
            block: self.block,
            cons,
            eff: self.lists.as_slice().to_vec(),
            assigned: alloc::vec![None; n],
            trail: Vec::new(),
            stamp: alloc::vec![0; n],
            generation: 0,
            failed: BTreeSet::new(),
            counted: BTreeMap::new(),
            nodes: 0,
            node_limit: self.node_limit,
            interrupt: self.interrupt,
        };
        if let Some(p) = self.partial {
            if p.len() != n {
                return Err(Error::DomainMismatch { expected: n, found: p.len() });
            }
            if p.block_size() != self.block {
                return Err(Error::Precondition(alloc::format!(
                    "partial coloring uses blocks of {} but the solver was asked for {}",
                    p.block_size(),
                    self.block
                )));
            }
            if !is_proper(self.graph, p)? {
                return Err(Error::Precondition("partial coloring is not proper".into()));
            }
            if !respects_lists(self.lists, p)? {
                return Err(Error::Precondition("partial coloring leaves the lists".into()));
            }
            for (v, s) in p.assigned() {
                if !search.admissible(v, s) || !search.assign(v, s) {
                    return Ok(None);
                }
            }
        }
        if (0..n).any(|v| search.assigned[v].is_none() && search.domain_size(v) == 0) {
            return Ok(None);
        }
        Ok(Some(search))
    }
}

#[derive(Clone, Copy, Debug)]
enum Undo {
    /// Restore an effective list.
    List(Vertex, ColorSet),
    /// Clear an assignment.
    Color(Vertex),
}

struct Frame {
    vertex: Vertex,
    candidates: Subsets,
    trail_mark: usize,
}

struct Search<'a> {
    graph: &'a Graph,
    block: u32,
    cons: Vec<Option<&'a VertexConstraint>>,
    eff: Vec<ColorSet>,
    assigned: Vec<Option<ColorSet>>,
    trail: Vec<Undo>,
    /// Scratch marks for component splitting.
    stamp: Vec<u32>,
    generation: u32,
    /// Residual components already shown uncolorable.
    failed: BTreeSet<Vec<u64>>,
    /// Completion counts of residual components.
    counted: BTreeMap<Vec<u64>, u64>,
    nodes: u64,
    node_limit: Option<u64>,
    interrupt: Option<&'a (dyn Fn() -> bool + Sync)>,
}

const INTERRUPT_POLL: u64 = 4096;
/// Each memo table is flushed when it reaches this many entries.
const CACHE_LIMIT: usize = 1 << 20;

impl Search<'_> {
    #[inline]
    fn admissible(&self, v: Vertex, s: ColorSet) -> bool {
        s.is_subset(self.eff[v]) && self.cons[v].is_none_or(|c| c.permits(s))
    }

    fn uncolored(&self) -> Vec<Vertex> {
        (0..self.assigned.len()).filter(|&v| self.assigned[v].is_none()).collect()
    }

    /// Number of admissible `b`-subsets of `v`'s current effective list.
    fn domain_size(&self, v: Vertex) -> u64 {
        let list = self.eff[v];
        match self.cons[v] {
            None => binomial(list.len(), self.block),
            Some(c) => {
                let list = list.difference(c.must_avoid);
                if !c.must_contain.is_subset(list) || c.must_contain.len() > self.block {
                    return 0;
                }
                if c.allowed.is_none() && c.forbidden.is_empty() {
                    let free = list.difference(c.must_contain).len();
                    return binomial(free, self.block - c.must_contain.len());
                }
                list.subsets(self.block).filter(|&s| c.permits(s)).count() as u64
            }
        }
    }

    /// Colors `v` with `s` and prunes its uncolored neighbors. Returns false
    /// on a wipe-out; the caller undoes via the trail either way.
    fn assign(&mut self, v: Vertex, s: ColorSet) -> bool {
        self.assigned[v] = Some(s);
        self.trail.push(Undo::Color(v));
        let graph = self.graph;
        for &u in graph.neighbors(v) {
            if self.assigned[u].is_some() {
                continue;
            }
            let old = self.eff[u];
            if old.is_disjoint(s) {
                continue;
            }
            self.trail.push(Undo::List(u, old));
            self.eff[u] = old.difference(s);
            if self.domain_size(u) == 0 {
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().unwrap() {
                Undo::List(u, old) => self.eff[u] = old,
                Undo::Color(v) => self.assigned[v] = None,
            }
        }
    }

    /// Minimum remaining domain among `vertices`, lowest index on ties.
    fn select(&self, vertices: &[Vertex]) -> Vertex {
        let mut best = usize::MAX;
        let mut best_size = u64::MAX;
        for &v in vertices {
            if self.assigned[v].is_some() {
                continue;
            }
            let d = self.domain_size(v);
            if d < best_size || (d == best_size && v < best) {
                best = v;
                best_size = d;
            }
        }
        best
    }

    #[inline]
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.node_limit.is_some_and(|l| self.nodes > l) {
            return false;
        }
        !(self.nodes.is_multiple_of(INTERRUPT_POLL) && self.interrupt.is_some_and(|f| f()))
    }

    /// Splits the uncolored members of `vertices` into connected components
    /// of the uncolored subgraph, ordered by (size, smallest vertex).
    fn components(&mut self, vertices: &[Vertex]) -> Vec<Vec<Vertex>> {
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.generation = 1;
        }
        let scope = self.generation;
        for &v in vertices {
            if self.assigned[v].is_none() {
                self.stamp[v] = scope;
            }
        }
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.generation = scope + 1;
        }
        let seen = self.generation;
        let mut comps: Vec<Vec<Vertex>> = Vec::new();
        let mut stack = Vec::new();
        for &root in vertices {
            if self.stamp[root] != scope {
                continue;
            }
            self.stamp[root] = seen;
            let mut comp = alloc::vec![root];
            stack.push(root);
            while let Some(v) = stack.pop() {
                for &u in self.graph.neighbors(v) {
                    if self.stamp[u] == scope {
                        self.stamp[u] = seen;
                        comp.push(u);
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps.sort_by(|a, b| a.len().cmp(&b.len()).then(a[0].cmp(&b[0])));
        comps
    }

    /// Colors every uncolored vertex of `vertices`. `None` on interrupt. On
    /// failure the caller is responsible for undoing to its own mark.
    fn find(&mut self, vertices: &[Vertex]) -> Option<bool> {
        let comps = self.components(vertices);
        match comps.len() {
            0 => Some(true),
            1 => self.find_connected(&comps[0]),
            _ => {
                for comp in &comps {
                    if !self.find_connected(comp)? {
                        return Some(false);
                    }
                }
                Some(true)
            }
        }
    }

    /// A connected residual component is determined by its vertices and
    /// their effective lists: everything outside it is either colored (and
    /// already pruned from those lists) or unreachable.
    fn component_key(&self, comp: &[Vertex]) -> Vec<u64> {
        let mut key = Vec::with_capacity(2 * comp.len());
        for &v in comp {
            key.push(v as u64);
            key.push(self.eff[v].bits());
        }
        key
    }

    fn find_connected(&mut self, comp: &[Vertex]) -> Option<bool> {
        let key = self.component_key(comp);
        if self.failed.contains(&key) {
            return Some(false);
        }
        let v = self.select(comp);
        let mark = self.trail.len();
        for s in self.eff[v].subsets(self.block) {
            if !self.cons[v].is_none_or(|c| c.permits(s)) {
                continue;
            }
            if !self.tick() {
                return None;
            }
            if self.assign(v, s) && self.find(comp)? {
                return Some(true);
            }
            self.undo_to(mark);
        }
        if self.failed.len() >= CACHE_LIMIT {
            self.failed.clear();
        }
        self.failed.insert(key);
        Some(false)
    }

    /// Number of ways to complete the uncolored members of `vertices`; leaves
    /// the state as it found it.
    fn count(&mut self, vertices: &[Vertex]) -> Option<u64> {
        let comps = self.components(vertices);
        let mut total = 1u64;
        for comp in &comps {
            let c = self.count_connected(comp)?;
            if c == 0 {
                return Some(0);
            }
            total = total.saturating_mul(c);
        }
        Some(total)
    }

    fn count_connected(&mut self, comp: &[Vertex]) -> Option<u64> {
        let key = self.component_key(comp);
        if let Some(&c) = self.counted.get(&key) {
            return Some(c);
        }
        let v = self.select(comp);
        let mark = self.trail.len();
        let mut total = 0u64;
        for s in self.eff[v].subsets(self.block) {
            if !self.cons[v].is_none_or(|c| c.permits(s)) {
                continue;
            }
            if !self.tick() {
                self.undo_to(mark);
                return None;
            }
            if self.assign(v, s) {
                let sub = self.count(comp);
                self.undo_to(mark);
                total = total.saturating_add(sub?);
            } else {
                self.undo_to(mark);
            }
        }
        if self.counted.len() >= CACHE_LIMIT {
            self.counted.clear();
        }
        self.counted.insert(key, total);
        Some(total)
    }

    /// Plain depth-first enumeration of every total coloring, in the order
    /// fixed by minimum-domain selection and lexicographic values. Returns
    /// false if interrupted.
    fn enumerate(&mut self, visit: &mut dyn FnMut(&[Option<ColorSet>]) -> ControlFlow<()>) -> bool {
        let all: Vec<Vertex> = (0..self.assigned.len()).collect();
        let mut stack: Vec<Frame> = Vec::new();
        let mut descend = true;
        loop {
            if descend {
                if self.assigned.iter().all(Option::is_some) {
                    if visit(&self.assigned).is_break() {
                        return true;
                    }
                } else {
                    let v = self.select(&all);
                    stack.push(Frame {
                        vertex: v,
                        candidates: self.eff[v].subsets(self.block),
                        trail_mark: self.trail.len(),
                    });
                }
            }
            let Some(top) = stack.last_mut() else {
                return true;
            };
            let (v, mark) = (top.vertex, top.trail_mark);
            self.undo_to(mark);
            descend = false;
            while let Some(s) = stack.last_mut().unwrap().candidates.next() {
                if !self.cons[v].is_none_or(|c| c.permits(s)) {
                    continue;
                }
                if !self.tick() {
                    return false;
                }
                if self.assign(v, s) {
                    descend = true;
                    break;
                }
                self.undo_to(mark);
            }
            if !descend {
                stack.pop();
            }
        }
    }
}

/// Searches for a total `(L:b)`-coloring that extends `partial` and respects
/// `constraints`.
pub fn find_coloring(
    graph: &Graph,
    lists: &ListAssignment,
    block: u32,
    constraints: &DomainConstraint,
    partial: Option<&SetColoring>,
) -> Result<SolveResult> {
    let mut s = Solver::new(graph, lists, block).constraints(constraints);
    if let Some(p) = partial {
        s = s.partial(p);
    }
    s.find()
}

/// Exact number of total `(L:b)`-colorings respecting `constraints`.
pub fn count_colorings(
    graph: &Graph,
    lists: &ListAssignment,
    block: u32,
    constraints: &DomainConstraint,
) -> Result<u64> {
    Ok(Solver::new(graph, lists, block).constraints(constraints).count()?.count)
}

/// A claim "every `(L:b)`-coloring satisfies P" holds iff the instance
/// restricted by `negated_claim` (encoding not-P) is unsatisfiable.
///
/// Only conjunctive negations are expressible here; a claim whose negation
/// is a disjunction needs one call per disjunct.
pub fn forced_value_check(
    graph: &Graph,
    lists: &ListAssignment,
    block: u32,
    negated_claim: &DomainConstraint,
) -> Result<bool> {
    Ok(find_coloring(graph, lists, block, negated_claim, None)?.is_unsat())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn cs(c: &[u8]) -> ColorSet {
        ColorSet::from_colors(c)
    }

    fn k(n: usize) -> Graph {
        let labels: Vec<alloc::string::String> = (0..n).map(|i| alloc::format!("r{}", i + 1)).collect();
        let mut b = Graph::builder();
        for l in &labels {
            b.add_vertex(l.clone()).unwrap();
        }
        for u in 0..n {
            for v in u + 1..n {
                b.add_edge(u, v).unwrap();
            }
        }
        b.build()
    }

    #[test]
    fn single_vertex_forced() {
        let g = k(1);
        let lists = ListAssignment::new(vec![cs(&[1, 2])]);
        let r = find_coloring(&g, &lists, 2, &DomainConstraint::none(), None).unwrap();
        assert!(r.is_sat());
        assert_eq!(r.witness.unwrap().get(0), Some(cs(&[1, 2])));
    }

    #[test]
    fn k2_counts() {
        let g = k(2);
        let lists = ListAssignment::uniform(2, ColorSet::range(1, 4));
        assert_eq!(count_colorings(&g, &lists, 2, &DomainConstraint::none()).unwrap(), 6);
    }

    #[test]
    fn k4_apex_count() {
        let g = k(4);
        let lists = ListAssignment::uniform(4, ColorSet::range(9, 16));
        assert_eq!(count_colorings(&g, &lists, 2, &DomainConstraint::none()).unwrap(), 28 * 15 * 6);
    }

    #[test]
    fn c5_has_no_4_2_coloring() {
        let g = Graph::from_edges(
            &["a", "b", "c", "d", "e"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")],
        )
        .unwrap();
        let four = ListAssignment::uniform(5, ColorSet::range(1, 4));
        assert!(find_coloring(&g, &four, 2, &DomainConstraint::none(), None).unwrap().is_unsat());
        let five = ListAssignment::uniform(5, ColorSet::range(1, 5));
        assert!(find_coloring(&g, &five, 2, &DomainConstraint::none(), None).unwrap().is_sat());
    }

    #[test]
    fn rejects_zero_block() {
        let g = k(1);
        let lists = ListAssignment::new(vec![cs(&[1, 2])]);
        assert_eq!(find_coloring(&g, &lists, 0, &DomainConstraint::none(), None), Err(Error::InvalidBlockSize(0)));
    }

    #[test]
    fn rejects_improper_partial() {
        let g = k(2);
        let lists = ListAssignment::uniform(2, ColorSet::range(1, 4));
        let p = SetColoring::total(vec![cs(&[1, 2]), cs(&[2, 3])], 2).unwrap();
        assert!(matches!(
            find_coloring(&g, &lists, 2, &DomainConstraint::none(), Some(&p)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn partial_is_extended() {
        let g = k(3);
        let lists = ListAssignment::uniform(3, ColorSet::range(1, 3));
        let mut p = SetColoring::empty(3, 1).unwrap();
        p.assign(2, cs(&[1])).unwrap();
        let r = find_coloring(&g, &lists, 1, &DomainConstraint::none(), Some(&p)).unwrap();
        let w = r.witness.unwrap();
        assert_eq!(w.get(2), Some(cs(&[1])));
        assert_eq!(count_colorings(&g, &lists, 1, &DomainConstraint::none()).unwrap(), 6);
    }

    #[test]
    fn empty_allowed_set_is_unsat() {
        let g = k(1);
        let lists = ListAssignment::new(vec![cs(&[1, 2])]);
        let c = DomainConstraint::none().allow(0, vec![]);
        assert!(find_coloring(&g, &lists, 2, &c, None).unwrap().is_unsat());
    }

    #[test]
    fn constraint_outside_list_is_rejected() {
        let g = k(1);
        let lists = ListAssignment::new(vec![cs(&[1, 2])]);
        let c = DomainConstraint::none().avoid_colors(0, cs(&[7]));
        assert_eq!(find_coloring(&g, &lists, 1, &c, None), Err(Error::ConstraintOutsideList { vertex: 0 }));
    }

    #[test]
    fn constraints_filter_values() {
        let g = k(2);
        let lists = ListAssignment::uniform(2, ColorSet::range(1, 4));
        let c = DomainConstraint::none().require_color(0, 1).avoid_colors(1, cs(&[4]));
        // vertex 0 takes {1,x}; vertex 1 takes a pair from {2,3} minus x... only {2,3} when x = 4
        assert_eq!(count_colorings(&g, &lists, 2, &c).unwrap(), 1);
        let c = DomainConstraint::none().forbid(0, cs(&[1, 2]));
        assert_eq!(count_colorings(&g, &lists, 2, &c).unwrap(), 5);
    }

    #[test]
    fn node_limit_interrupts() {
        let g = Graph::from_edges(
            &["a", "b", "c", "d", "e"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")],
        )
        .unwrap();
        let four = ListAssignment::uniform(5, ColorSet::range(1, 4));
        let r = Solver::new(&g, &four, 2).node_limit(2).find().unwrap();
        assert_eq!(r.status, Status::Interrupted);
        assert!(r.witness.is_none());
    }

    #[test]
    fn empty_graph_is_sat() {
        let g = Graph::builder().build();
        let lists = ListAssignment::new(vec![]);
        let r = find_coloring(&g, &lists, 2, &DomainConstraint::none(), None).unwrap();
        assert!(r.is_sat());
        assert_eq!(count_colorings(&g, &lists, 2, &DomainConstraint::none()).unwrap(), 1);
    }
}
