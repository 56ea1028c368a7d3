//! Brute-force reference implementations. They share no code with the
//! engine beyond the plain data types.
#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;

use setcolor_core::{ColorSet, Gadget, Graph, ListAssignment};

/// All `b`-subsets of `list`, built from bit patterns.
pub fn subsets(list: ColorSet, b: u32) -> Vec<ColorSet> {
    let colors: Vec<u8> = (1..=64).filter(|&c| list.contains(c)).collect();
    (0u64..1 << colors.len())
        .filter(|m| m.count_ones() == b)
        .map(|m| {
            let picked: Vec<u8> = colors.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &c)| c).collect();
            ColorSet::from_colors(&picked)
        })
        .collect()
}

/// Every proper `(lists:b)`-coloring, by generating the full product of
/// choices and testing each one.
pub fn all_colorings(graph: &Graph, lists: &ListAssignment, b: u32) -> Vec<Vec<ColorSet>> {
    let n = graph.vertex_count();
    let choices: Vec<Vec<ColorSet>> = (0..n).map(|v| subsets(lists.get(v), b)).collect();
    let total: usize = choices.iter().map(|c| c.len()).product();
    let mut out = Vec::new();
    for mut code in 0..total {
        let mut col = Vec::with_capacity(n);
        for c in &choices {
            col.push(c[code % c.len()]);
            code /= c.len();
        }
        if graph.edges().all(|(u, v)| col[u].is_disjoint(col[v])) {
            out.push(col);
        }
    }
    out
}

pub fn count_colorings(graph: &Graph, lists: &ListAssignment, b: u32) -> u64 {
    all_colorings(graph, lists, b).len() as u64
}

/// Canonical form by brute force: try every order of the used colors and
/// keep the smallest resulting list vector. Lists compare by their sorted
/// color sequences, vertex by vertex.
pub fn brute_canonical(lists: &ListAssignment) -> Vec<Vec<u8>> {
    let palette: Vec<u8> = (1..=64).filter(|&c| lists.iter().any(|l| l.contains(c))).collect();
    let mut best: Option<Vec<Vec<u8>>> = None;
    permute(&mut palette.clone(), 0, &mut |perm| {
        let image: Vec<Vec<u8>> = lists
            .iter()
            .map(|l| {
                let mut v: Vec<u8> =
                    perm.iter().enumerate().filter(|(_, &c)| l.contains(c)).map(|(i, _)| i as u8 + 1).collect();
                v.sort();
                v
            })
            .collect();
        if best.as_ref().is_none_or(|b| image < *b) {
            best = Some(image);
        }
    });
    best.unwrap_or_default()
}

fn permute(items: &mut Vec<u8>, k: usize, f: &mut dyn FnMut(&[u8])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

/// Every assignment with `|L(v)| = sizes[v]` over `{1..universe}`, with
/// `first` pinned as the list of vertex 0 when given.
pub fn all_assignments(sizes: &[u32], universe: u8, first: Option<ColorSet>) -> Vec<ListAssignment> {
    let full = ColorSet::range(1, universe);
    let choices: Vec<Vec<ColorSet>> = sizes
        .iter()
        .enumerate()
        .map(|(v, &h)| match (v, first) {
            (0, Some(l)) => vec![l],
            _ => subsets(full, h),
        })
        .collect();
    let total: usize = choices.iter().map(|c| c.len()).product();
    (0..total)
        .map(|mut code| {
            let mut lists = Vec::with_capacity(sizes.len());
            for c in &choices {
                lists.push(c[code % c.len()]);
                code /= c.len();
            }
            ListAssignment::new(lists)
        })
        .collect()
}

/// Conditions (i) and (ii) evaluated from the full set of colorings.
pub fn relaxed_conditions(gadget: &Gadget, lists: &ListAssignment) -> (bool, bool) {
    let g = &gadget.graph;
    let mut pinned = vec![gadget.v1, gadget.v3];
    pinned.extend(gadget.s_set.iter().copied());
    let total = all_colorings(g, lists, 1);
    let extendable: BTreeSet<Vec<ColorSet>> = total.iter().map(|c| pinned.iter().map(|&v| c[v]).collect()).collect();
    // proper colorings of the pinned vertices
    let pinned_choices: Vec<Vec<ColorSet>> = pinned.iter().map(|&v| subsets(lists.get(v), 1)).collect();
    let size: usize = pinned_choices.iter().map(|c| c.len()).product();
    let mut local = Vec::new();
    let mut all_pinned = Vec::new();
    for mut code in 0..size {
        let mut col = Vec::new();
        for c in &pinned_choices {
            col.push(c[code % c.len()]);
            code /= c.len();
        }
        let proper = (0..pinned.len())
            .all(|i| (i + 1..pinned.len()).all(|j| !g.has_edge(pinned[i], pinned[j]) || col[i] != col[j]));
        if proper {
            local.push(col.clone());
        }
        all_pinned.push(col);
    }
    // psi0 ranges over proper colorings of the fixed vertices alone; one
    // with no proper extension satisfies the condition vacuously
    let holds_for = |fixed: &[usize]| {
        let mut heads: BTreeSet<Vec<ColorSet>> = BTreeSet::new();
        for c in &all_pinned {
            let h: Vec<ColorSet> = fixed.iter().map(|&i| c[i]).collect();
            let proper = (0..fixed.len())
                .all(|a| (a + 1..fixed.len()).all(|b| !g.has_edge(pinned[fixed[a]], pinned[fixed[b]]) || h[a] != h[b]));
            if proper {
                heads.insert(h);
            }
        }
        heads.iter().any(|h| {
            local.iter().filter(|c| fixed.iter().map(|&i| c[i]).eq(h.iter().copied())).all(|c| extendable.contains(c))
        })
    };
    let first = holds_for(&[0, 1]);
    let rest: Vec<usize> = (2..pinned.len()).collect();
    let second = lists.get(gadget.v1) == lists.get(gadget.v3) && holds_for(&rest);
    (first, second)
}

// Random instance generators shared by the property suites.

/// Keeps the brute-force product small enough to enumerate.
const PRODUCT_LIMIT: u64 = 200_000;

#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph,
    pub lists: ListAssignment,
    pub block: u32,
}

pub fn instance() -> impl Strategy<Value = Instance> {
    (1usize..=8, 1u32..=2).prop_flat_map(|(n, block)| {
        let pairs = n * (n - 1) / 2;
        (
            proptest::collection::vec(any::<bool>(), pairs),
            proptest::collection::vec(proptest::collection::btree_set(1u8..=8, 0..=6), n),
        )
            .prop_map(move |(edges, raw)| {
                let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
                let mut b = Graph::builder();
                for l in &labels {
                    b.add_vertex(l.clone()).unwrap();
                }
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if edges[k] {
                            b.add_edge(u, v).unwrap();
                        }
                        k += 1;
                    }
                }
                let mut product = 1u64;
                let lists = raw
                    .iter()
                    .map(|s| {
                        let mut set: ColorSet = s.iter().copied().collect();
                        // drop colors until the product stays small
                        while subsets(set, block).len() as u64 * product > PRODUCT_LIMIT {
                            set.remove(set.max().unwrap());
                        }
                        product *= (subsets(set, block).len() as u64).max(1);
                        set
                    })
                    .collect();
                Instance { graph: b.build(), lists: ListAssignment::new(lists), block }
            })
    })
}

pub fn permutation() -> impl Strategy<Value = Vec<u8>> {
    Just((1..=64u8).collect::<Vec<_>>()).prop_shuffle().prop_map(|p| {
        let mut map = vec![0u8];
        map.extend(p);
        map
    })
}

/// Up to four lists of at most two colors from `1..=8`.
pub fn tiny_assignment() -> impl Strategy<Value = ListAssignment> {
    proptest::collection::vec(proptest::collection::btree_set(1u8..=8, 0..=2), 1..=4)
        .prop_map(|ls| ListAssignment::new(ls.iter().map(|s| s.iter().copied().collect()).collect()))
}
