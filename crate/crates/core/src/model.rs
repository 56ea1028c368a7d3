//! List assignments, set colorings, gadgets and the validity predicates
//! every other module relies on.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::color::ColorSet;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// One color list per vertex, indexed like the graph it belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ListAssignment(Vec<ColorSet>);

impl ListAssignment {
    pub fn new(lists: Vec<ColorSet>) -> Self {
        ListAssignment(lists)
    }

    pub fn uniform(n: usize, list: ColorSet) -> Self {
        ListAssignment(alloc::vec![list; n])
    }

    /// Looks every label up in `graph`; the result covers all of its vertices
    /// or fails.
    pub fn from_labels(graph: &Graph, entries: &[(&str, ColorSet)]) -> Result<Self> {
        let mut lists = alloc::vec![None; graph.vertex_count()];
        for (label, set) in entries {
            let v = graph.require(label)?;
            lists[v] = Some(*set);
        }
        let lists = lists
            .into_iter()
            .enumerate()
            .map(|(v, l)| l.ok_or_else(|| Error::Precondition(alloc::format!("no list for `{}`", graph.label(v)))))
            .collect::<Result<Vec<_>>>()?;
        Ok(ListAssignment(lists))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn get(&self, v: Vertex) -> ColorSet {
        self.0[v]
    }

    #[inline]
    pub fn set(&mut self, v: Vertex, list: ColorSet) {
        self.0[v] = list;
    }

    pub fn as_slice(&self) -> &[ColorSet] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = ColorSet> + '_ {
        self.0.iter().copied()
    }

    /// Union of all lists.
    pub fn palette(&self) -> ColorSet {
        self.0.iter().fold(ColorSet::EMPTY, |acc, &l| acc.union(l))
    }

    pub fn total_size(&self) -> u32 {
        self.0.iter().map(|l| l.len()).sum()
    }

    pub fn rename(&self, map: &[u8]) -> ListAssignment {
        ListAssignment(self.0.iter().map(|l| l.rename(map)).collect())
    }

    pub fn restrict(&self, keep: &[Vertex]) -> ListAssignment {
        ListAssignment(keep.iter().map(|&v| self.0[v]).collect())
    }

    pub(crate) fn check_domain(&self, graph: &Graph) -> Result<()> {
        if self.len() == graph.vertex_count() {
            Ok(())
        } else {
            Err(Error::DomainMismatch { expected: graph.vertex_count(), found: self.len() })
        }
    }
}

impl From<Vec<ColorSet>> for ListAssignment {
    fn from(v: Vec<ColorSet>) -> Self {
        ListAssignment(v)
    }
}

/// A partial or total assignment of `block`-element color sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetColoring {
    sets: Vec<Option<ColorSet>>,
    block: u32,
}

impl SetColoring {
    pub fn empty(n: usize, block: u32) -> Result<Self> {
        if block == 0 {
            return Err(Error::InvalidBlockSize(block));
        }
        Ok(SetColoring { sets: alloc::vec![None; n], block })
    }

    /// Builds a total coloring; every set must have exactly `block` colors.
    pub fn total(sets: Vec<ColorSet>, block: u32) -> Result<Self> {
        let mut c = SetColoring::empty(sets.len(), block)?;
        for (v, s) in sets.into_iter().enumerate() {
            c.assign(v, s)?;
        }
        Ok(c)
    }

    /// Ordinary (one color per vertex) coloring.
    pub fn from_colors(colors: &[u8]) -> Self {
        SetColoring { sets: colors.iter().map(|&c| Some(ColorSet::singleton(c))).collect(), block: 1 }
    }

    #[inline]
    pub fn block_size(&self) -> u32 {
        self.block
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    #[inline]
    pub fn get(&self, v: Vertex) -> Option<ColorSet> {
        self.sets.get(v).copied().flatten()
    }

    pub fn assign(&mut self, v: Vertex, set: ColorSet) -> Result<()> {
        if v >= self.sets.len() {
            return Err(Error::VertexOutOfRange { vertex: v, vertex_count: self.sets.len() });
        }
        if set.len() != self.block {
            return Err(Error::WrongSetSize { vertex: v, expected: self.block, found: set.len() });
        }
        self.sets[v] = Some(set);
        Ok(())
    }

    pub fn unassign(&mut self, v: Vertex) {
        if let Some(slot) = self.sets.get_mut(v) {
            *slot = None;
        }
    }

    pub fn is_total(&self) -> bool {
        self.sets.iter().all(Option::is_some)
    }

    pub fn assigned(&self) -> impl Iterator<Item = (Vertex, ColorSet)> + '_ {
        self.sets.iter().enumerate().filter_map(|(v, s)| s.map(|s| (v, s)))
    }

    pub fn as_slice(&self) -> &[Option<ColorSet>] {
        &self.sets
    }

    pub fn rename(&self, map: &[u8]) -> SetColoring {
        SetColoring { sets: self.sets.iter().map(|s| s.map(|s| s.rename(map))).collect(), block: self.block }
    }

    pub fn restrict(&self, keep: &[Vertex]) -> SetColoring {
        SetColoring { sets: keep.iter().map(|&v| self.sets[v]).collect(), block: self.block }
    }
}

/// True iff assigned adjacent vertices carry disjoint sets. Unassigned
/// vertices are ignored.
pub fn is_proper(graph: &Graph, coloring: &SetColoring) -> Result<bool> {
    if coloring.len() != graph.vertex_count() {
        return Err(Error::DomainMismatch { expected: graph.vertex_count(), found: coloring.len() });
    }
    Ok(graph.edges().all(|(u, v)| match (coloring.get(u), coloring.get(v)) {
        (Some(a), Some(b)) => a.is_disjoint(b),
        _ => true,
    }))
}

/// True iff every assigned set lies inside its vertex's list.
pub fn respects_lists(lists: &ListAssignment, coloring: &SetColoring) -> Result<bool> {
    if coloring.len() != lists.len() {
        return Err(Error::DomainMismatch { expected: lists.len(), found: coloring.len() });
    }
    Ok(coloring.assigned().all(|(v, s)| s.is_subset(lists.get(v))))
}

/// A graph with even-size base lists and the designated vertices
/// `v1`, `v3` and `S` used by the relaxedness conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gadget {
    pub name: String,
    pub graph: Graph,
    pub base_lists: ListAssignment,
    pub v1: Vertex,
    pub v3: Vertex,
    pub s_set: Vec<Vertex>,
}

impl Gadget {
    pub fn new(
        name: &str,
        graph: Graph,
        base_lists: ListAssignment,
        v1: Vertex,
        v3: Vertex,
        s_set: Vec<Vertex>,
    ) -> Result<Gadget> {
        base_lists.check_domain(&graph)?;
        for v in [v1, v3].iter().chain(s_set.iter()) {
            graph.check(*v)?;
        }
        if v1 == v3 {
            return Err(Error::Precondition("v1 and v3 must be distinct".to_string()));
        }
        if s_set.contains(&v1) || s_set.contains(&v3) {
            return Err(Error::Precondition("S must not contain v1 or v3".to_string()));
        }
        if let Some(v) = (0..graph.vertex_count()).find(|&v| !base_lists.get(v).len().is_multiple_of(2)) {
            return Err(Error::Precondition(alloc::format!(
                "base list of `{}` has odd size {}",
                graph.label(v),
                base_lists.get(v).len()
            )));
        }
        Ok(Gadget { name: name.to_string(), graph, base_lists, v1, v3, s_set })
    }

    /// Convenience constructor taking designated vertices by label.
    pub fn with_labels(
        name: &str,
        graph: Graph,
        base_lists: ListAssignment,
        v1: &str,
        v3: &str,
        s_set: &[&str],
    ) -> Result<Gadget> {
        let a = graph.require(v1)?;
        let b = graph.require(v3)?;
        let s = s_set.iter().map(|l| graph.require(l)).collect::<Result<Vec<_>>>()?;
        Gadget::new(name, graph, base_lists, a, b, s)
    }

    /// `|L0(v)| / 2` per vertex.
    pub fn half_sizes(&self) -> Vec<u32> {
        self.base_lists.iter().map(|l| l.len() / 2).collect()
    }

    /// Sum of half sizes; the color universe used for enumeration and sampling.
    pub fn half_universe(&self) -> u32 {
        self.half_sizes().iter().sum()
    }

    pub fn vertex(&self, label: &str) -> Result<Vertex> {
        self.graph.require(label)
    }
}

/// True iff `|candidate(v)| = |L0(v)| / 2` for every vertex. Candidates need
/// not be subsets of the base lists.
pub fn half_list_valid(gadget: &Gadget, candidate: &ListAssignment) -> bool {
    candidate.len() == gadget.graph.vertex_count()
        && gadget.base_lists.iter().zip(candidate.iter()).all(|(base, l)| 2 * l.len() == base.len())
}
