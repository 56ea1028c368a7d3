//! Half-list assignments up to renaming of colors.
//!
//! Whether a graph can be colored from a list assignment depends only on
//! which vertices share which colors. Describe every color by its incidence
//! column (the set of vertices whose list contains it). Two assignments are
//! related by a color bijection exactly when they have the same multiset of
//! columns, and an assignment with `sum |L(v)|` list slots uses at most that
//! many colors. So every half-list assignment is color-isomorphic to one over
//! `{1, ..., sum |L(v)|}`, and the finitely many orbits can be listed.
//!
//! The canonical representative sorts the columns in decreasing
//! lexicographic order, reading vertices along a fixed order, and numbers
//! them `1, 2, ...`. Reading the result vertex by vertex, each list reuses
//! the lowest-numbered colors available and introduces new colors as the
//! smallest unused indices, so the representative coincides with
//! first-occurrence renumbering. Colors that first appear together in the
//! same list are ordered by their later occurrences, which plain
//! first-occurrence renumbering leaves ambiguous.

use alloc::vec::Vec;

use crate::color::{ColorSet, MAX_COLOR};
use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::model::{Gadget, ListAssignment};

/// Restriction on the half-list assignments being quantified over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ListConstraint {
    Unconstrained,
    /// `L(u) = L(v)`.
    Equal(Vertex, Vertex),
    /// `|L(u) ∩ L(v)| <= k`.
    MaxIntersection(Vertex, Vertex, u32),
}

impl ListConstraint {
    pub fn holds(&self, lists: &ListAssignment) -> bool {
        match *self {
            ListConstraint::Unconstrained => true,
            ListConstraint::Equal(u, v) => lists.get(u) == lists.get(v),
            ListConstraint::MaxIntersection(u, v, k) => lists.get(u).intersection(lists.get(v)).len() <= k,
        }
    }

    fn pair(&self) -> Option<(Vertex, Vertex)> {
        match *self {
            ListConstraint::Unconstrained => None,
            ListConstraint::Equal(u, v) | ListConstraint::MaxIntersection(u, v, _) => Some((u, v)),
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if let Some((u, v)) = self.pair() {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, vertex_count: n });
                }
            }
        }
        Ok(())
    }
}

fn check_order(order: &[Vertex], n: usize) -> Result<()> {
    if order.len() != n {
        return Err(Error::DomainMismatch { expected: n, found: order.len() });
    }
    if n > 64 {
        return Err(Error::InvalidParameter(alloc::format!("canonical forms support at most 64 vertices, got {n}")));
    }
    let mut seen = alloc::vec![false; n];
    for &v in order {
        if v >= n || core::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidParameter("vertex order is not a permutation".into()));
        }
    }
    Ok(())
}

/// Canonical representative of the color-bijection orbit of `lists`, reading
/// vertices in `order`.
pub fn canonicalize(lists: &ListAssignment, order: &[Vertex]) -> Result<ListAssignment> {
    check_order(order, lists.len())?;
    let mut columns: Vec<u64> = lists
        .palette()
        .iter()
        .map(|c| {
            order
                .iter()
                .enumerate()
                .filter(|(_, &v)| lists.get(v).contains(c))
                .fold(0u64, |acc, (pos, _)| acc | (1u64 << (63 - pos)))
        })
        .collect();
    columns.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = alloc::vec![ColorSet::EMPTY; lists.len()];
    for (i, col) in columns.iter().enumerate() {
        let color = i as u8 + 1;
        for (pos, &v) in order.iter().enumerate() {
            if col & (1u64 << (63 - pos)) != 0 {
                out[v].insert(color);
            }
        }
    }
    Ok(ListAssignment::new(out))
}

/// Canonical form along the natural vertex order `0..n`.
pub fn canonicalize_natural(lists: &ListAssignment) -> Result<ListAssignment> {
    let order: Vec<Vertex> = (0..lists.len()).collect();
    canonicalize(lists, &order)
}

/// A maximal run of colors whose incidence agrees on every vertex read so
/// far. Colors `start+1 ..= start+len`.
#[derive(Clone, Copy, Debug)]
struct Block {
    start: u8,
    len: u8,
}

struct Level {
    blocks: Vec<Block>,
    used: u8,
    /// Candidate lists for this level's vertex with the per-block counts that
    /// produced them.
    choices: Vec<(ColorSet, Vec<u8>, u8)>,
    next: usize,
}

/// Streams one canonical representative per orbit of half-list assignments
/// satisfying a [`ListConstraint`].
pub struct HalfListEnumerator {
    order: Vec<Vertex>,
    sizes: Vec<u32>,
    constraint: ListConstraint,
    universe: u32,
    lists: Vec<ColorSet>,
    stack: Vec<Level>,
    pending_empty: bool,
}

impl HalfListEnumerator {
    /// Enumerates along the gadget's own vertex order.
    pub fn new(gadget: &Gadget, constraint: ListConstraint) -> Result<Self> {
        let order: Vec<Vertex> = (0..gadget.graph.vertex_count()).collect();
        Self::with_order(gadget.half_sizes(), &order, constraint)
    }

    /// `sizes[v]` is the required list size of vertex `v`.
    pub fn with_order(sizes: Vec<u32>, order: &[Vertex], constraint: ListConstraint) -> Result<Self> {
        let n = sizes.len();
        check_order(order, n)?;
        constraint.validate(n)?;
        let universe: u32 = sizes.iter().sum();
        if universe > MAX_COLOR as u32 {
            return Err(Error::Capacity { needed: universe, limit: MAX_COLOR as u32 });
        }
        let mut e = HalfListEnumerator {
            order: order.to_vec(),
            sizes,
            constraint,
            universe,
            lists: alloc::vec![ColorSet::EMPTY; n],
            stack: Vec::new(),
            pending_empty: n == 0,
        };
        if n > 0 {
            let root = e.level(0, Vec::new(), 0);
            e.stack.push(root);
        }
        Ok(e)
    }

    /// Size of the color universe, `sum |L(v)|`.
    pub fn universe(&self) -> u32 {
        self.universe
    }

    /// Builds the candidate lists for the vertex at `pos`: take the first
    /// `j_i` colors of every block plus `h - sum j_i` fresh colors, keeping
    /// only lists compatible with the constraint.
    fn level(&self, pos: usize, blocks: Vec<Block>, used: u8) -> Level {
        let v = self.order[pos];
        let h = self.sizes[v] as u8;
        let partner = self.constraint.pair().and_then(|(a, b)| {
            let earlier = |x: Vertex| self.order[..pos].contains(&x);
            if a == v && earlier(b) {
                Some(b)
            } else if b == v && earlier(a) {
                Some(a)
            } else {
                None
            }
        });
        let mut choices = Vec::new();
        let mut counts = alloc::vec![0u8; blocks.len()];
        self.compositions(&blocks, 0, h, used, &mut counts, &mut |counts, fresh| {
            let mut list = ColorSet::EMPTY;
            for (b, &j) in blocks.iter().zip(counts) {
                for c in 0..j {
                    list.insert(b.start + c + 1);
                }
            }
            for c in 0..fresh {
                list.insert(used + c + 1);
            }
            let ok = match (partner, self.constraint) {
                (Some(p), ListConstraint::Equal(..)) => list == self.lists[p],
                (Some(p), ListConstraint::MaxIntersection(_, _, k)) => list.intersection(self.lists[p]).len() <= k,
                _ => true,
            };
            if ok {
                choices.push((list, counts.to_vec(), fresh));
            }
        });
        Level { blocks, used, choices, next: 0 }
    }

    /// Calls `emit` for every way to spread `left` colors over the blocks
    /// from index `i` on, the remainder going to fresh colors. Larger counts
    /// on earlier blocks come first.
    #[allow(clippy::only_used_in_recursion)]
    fn compositions(
        &self,
        blocks: &[Block],
        i: usize,
        left: u8,
        used: u8,
        counts: &mut Vec<u8>,
        emit: &mut dyn FnMut(&[u8], u8),
    ) {
        if i == blocks.len() {
            if used as u32 + left as u32 <= MAX_COLOR as u32 {
                emit(counts, left);
            }
            return;
        }
        let top = blocks[i].len.min(left);
        for j in (0..=top).rev() {
            counts[i] = j;
            self.compositions(blocks, i + 1, left - j, used, counts, emit);
        }
        counts[i] = 0;
    }
}

fn refine(blocks: &[Block], counts: &[u8], used: u8, fresh: u8) -> (Vec<Block>, u8) {
    let mut out = Vec::with_capacity(blocks.len() * 2 + 1);
    for (b, &j) in blocks.iter().zip(counts) {
        if j > 0 {
            out.push(Block { start: b.start, len: j });
        }
        if j < b.len {
            out.push(Block { start: b.start + j, len: b.len - j });
        }
    }
    if fresh > 0 {
        out.push(Block { start: used, len: fresh });
    }
    (out, used + fresh)
}

impl Iterator for HalfListEnumerator {
    type Item = ListAssignment;

    fn next(&mut self) -> Option<ListAssignment> {
        if self.pending_empty {
            self.pending_empty = false;
            return Some(ListAssignment::new(Vec::new()));
        }
        loop {
            let depth = self.stack.len();
            let top = self.stack.last_mut()?;
            if top.next == top.choices.len() {
                self.stack.pop();
                continue;
            }
            let (list, counts, fresh) = top.choices[top.next].clone();
            top.next += 1;
            let pos = depth - 1;
            self.lists[self.order[pos]] = list;
            if pos + 1 == self.order.len() {
                return Some(ListAssignment::new(self.lists.clone()));
            }
            let (blocks, used) = refine(&top.blocks, &counts, top.used, fresh);
            let level = self.level(pos + 1, blocks, used);
            self.stack.push(level);
        }
    }
}

/// Convenience wrapper around [`HalfListEnumerator::new`].
pub fn enumerate_half_lists(gadget: &Gadget, constraint: ListConstraint) -> Result<HalfListEnumerator> {
    HalfListEnumerator::new(gadget, constraint)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::build_pentagon;
    use crate::graph::Graph;
    use alloc::collections::BTreeSet;
    use alloc::vec;

    fn cs(c: &[u8]) -> ColorSet {
        ColorSet::from_colors(c)
    }

    fn edgeless(n: usize, base: ColorSet) -> Gadget {
        let labels: Vec<alloc::string::String> = (0..n).map(|i| alloc::format!("v{i}")).collect();
        let mut b = Graph::builder();
        for l in &labels {
            b.add_vertex(l.clone()).unwrap();
        }
        Gadget::new("t", b.build(), ListAssignment::uniform(n, base), 0, n.min(2) - 1, vec![]).unwrap()
    }

    #[test]
    fn single_vertex_has_one_orbit() {
        let mut b = Graph::builder();
        b.add_vertex("a").unwrap();
        b.add_vertex("b").unwrap();
        let g = Gadget::new(
            "one",
            b.build(),
            ListAssignment::new(vec![ColorSet::range(1, 4), ColorSet::EMPTY]),
            0,
            1,
            vec![],
        )
        .unwrap();
        let all: Vec<_> = enumerate_half_lists(&g, ListConstraint::Unconstrained).unwrap().collect();
        assert_eq!(all, vec![ListAssignment::new(vec![cs(&[1, 2]), ColorSet::EMPTY])]);
    }

    #[test]
    fn equal_pair_has_one_orbit() {
        let g = edgeless(2, ColorSet::range(1, 4));
        let all: Vec<_> = enumerate_half_lists(&g, ListConstraint::Equal(0, 1)).unwrap().collect();
        assert_eq!(all, vec![ListAssignment::new(vec![cs(&[1, 2]), cs(&[1, 2])])]);
    }

    #[test]
    fn two_free_pairs() {
        // {1,2} against {1,2}, {1,3}, {3,4}
        let g = edgeless(2, ColorSet::range(1, 4));
        let all: Vec<_> = enumerate_half_lists(&g, ListConstraint::Unconstrained).unwrap().collect();
        assert_eq!(all.len(), 3);
        let max1: Vec<_> = enumerate_half_lists(&g, ListConstraint::MaxIntersection(0, 1, 1)).unwrap().collect();
        assert_eq!(max1.len(), 2);
    }

    #[test]
    fn yields_are_canonical_and_distinct() {
        let g = build_pentagon().unwrap();
        let mut seen = BTreeSet::new();
        for l in enumerate_half_lists(&g, ListConstraint::Unconstrained).unwrap() {
            assert_eq!(canonicalize_natural(&l).unwrap(), l);
            assert!(seen.insert(l));
        }
        assert!(!seen.is_empty());
    }

    #[test]
    fn canonical_form_resolves_simultaneous_new_colors() {
        // L(a) = {x, y}, L(b) = {x, z}: whichever of x, y is smaller, x
        // must become 1 because it recurs.
        let a = ListAssignment::new(vec![cs(&[5, 9]), cs(&[9, 12])]);
        let b = ListAssignment::new(vec![cs(&[5, 9]), cs(&[5, 12])]);
        let want = ListAssignment::new(vec![cs(&[1, 2]), cs(&[1, 3])]);
        assert_eq!(canonicalize_natural(&a).unwrap(), want);
        assert_eq!(canonicalize_natural(&b).unwrap(), want);
    }

    #[test]
    fn capacity_error_beyond_64_colors() {
        let g = edgeless(17, ColorSet::range(1, 8));
        assert!(matches!(
            enumerate_half_lists(&g, ListConstraint::Unconstrained),
            Err(Error::Capacity { needed: 68, limit: 64 })
        ));
    }

    #[test]
    fn rejects_bad_order() {
        let l = ListAssignment::new(vec![cs(&[1]), cs(&[2])]);
        assert!(canonicalize(&l, &[0, 0]).is_err());
        assert!(canonicalize(&l, &[0]).is_err());
    }
}
